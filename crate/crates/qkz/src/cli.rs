//! Command-line arguments and the `solve`, `enumerate`, `check` and `oracle`
//! commands. Each command writes to the given sinks and returns an exit code.

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use qkz_core::conjectures::{
    check_conjecture1, check_conjecture2, check_conjecture3, check_conjecture4, check_conjecture5,
    check_identity_suite, check_specializations, check_tau_infinity, CheckReport, ReportKind,
    Status,
};
use qkz_core::exactalg::TauPoly;
use qkz_core::nilp::{
    admissible_endpoints, brute_force, paired_sum, Family, PathVariant, WeightRule,
};
use qkz_core::qkz::{sum_rule, verify_system, FullSolution, TauSolution};
use serde_json::{json, Value};

use crate::cache::{Cache, CACHE_ENV};
use crate::json::{report_to_json, tau_to_json, write_full, write_tau, Form};
use crate::pool::{run_all, Job};
use crate::AppError;

#[derive(Debug, Parser)]
#[command(
    name = "qkz",
    version,
    about = "Exact open-boundary qKZ solutions and tau-enumerations of plane partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory holding cached full solutions.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for independent checks.
    #[arg(long, global = true, env = "QKZ_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Progress messages on stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve at one size, optionally write the solution, print Π_L(τ).
    Solve {
        #[arg(short = 'L', long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Form::Tau)]
        form: Form,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// τ-enumeration of a path family, symbolic or at an exact rational τ.
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// `symbolic`, an integer or a fraction `p/q`.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        tau: TauMode,
        /// One value per endpoint tuple.
        #[arg(long)]
        refined: bool,
        /// Coefficient table as CSV instead of JSON (symbolic τ only).
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run check suites; exit 1 if any check fails.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Size `L` or range `a..b` for solution-based checks.
        #[arg(short = 'L', long)]
        size: Option<SizeRange>,
        /// `n` or range for the specialization and identity suites.
        #[arg(long)]
        n: Option<SizeRange>,
        /// `p` or range for the Pfaffian conjecture.
        #[arg(long)]
        p: Option<SizeRange>,
        /// Include runtimes in the report (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive path enumeration against the determinant formulas.
    Oracle {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Tsscpp,
    Cstcpp,
    Vsasm,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Tsscpp => Family::Tsscpp,
            FamilyArg::Cstcpp => Family::Cstcpp,
            FamilyArg::Vsasm => Family::Vsasm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    System,
    Conjectures,
    Identities,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::System => "system",
            Suite::Conjectures => "conjectures",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TauMode {
    Symbolic,
    Value(BigRational),
}

impl FromStr for TauMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(TauMode::Symbolic);
        }
        let (num, den) = s.split_once('/').unwrap_or((s, "1"));
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("not an exact rational: {s}"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("not an exact rational: {s}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator: {s}"));
        }
        Ok(TauMode::Value(BigRational::new(num, den)))
    }
}

impl fmt::Display for TauMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauMode::Symbolic => f.write_str("symbolic"),
            TauMode::Value(r) => write!(f, "{r}"),
        }
    }
}

/// Inclusive range written `a` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl SizeRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size: {s}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("empty or zero range: {s}"));
        }
        Ok(SizeRange { lo, hi })
    }
}

pub fn eval_rational(p: &TauPoly, tau: &BigRational) -> BigRational {
    p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * tau + BigRational::from_integer(c.to_bigint())
    })
}

pub fn rational_to_json(r: &BigRational) -> Value {
    if r.denom().is_one() {
        if let Some(v) = r.numer().to_i64() {
            return Value::from(v);
        }
    }
    Value::String(r.to_string())
}

struct Context<'a> {
    cache: Cache,
    threads: usize,
    verbose: bool,
    err: &'a mut dyn Write,
}

impl Context<'_> {
    fn note(&mut self, msg: &str) {
        if self.verbose {
            let _ = writeln!(self.err, "{msg}");
        }
    }

    fn full(&mut self, l: usize) -> Result<Arc<FullSolution>, AppError> {
        if l == 0 {
            return Err(AppError::Usage("size must be positive".into()));
        }
        let (verbose, err) = (self.verbose, &mut *self.err);
        self.cache.full_solution(l, &mut |m| {
            if verbose {
                let _ = writeln!(err, "{m}");
            }
        })
    }

    fn tau(&mut self, l: usize) -> Result<TauSolution, AppError> {
        if l == 0 {
            return Err(AppError::Usage("size must be positive".into()));
        }
        let (verbose, err) = (self.verbose, &mut *self.err);
        self.cache.tau_solution(l, &mut |m| {
            if verbose {
                let _ = writeln!(err, "{m}");
            }
        })
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), AppError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| AppError::io(p, e)),
        None => writeln!(out, "{text}").map_err(|e| AppError::io("<stdout>", e)),
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String, AppError> {
    serde_json::to_string_pretty(v).map_err(|e| AppError::Format(e.into()))
}

/// Runs a parsed command. Errors are reported on `err` and mapped to their
/// exit codes.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut ctx = Context {
        cache: Cache::new(cli.cache_dir),
        threads: cli.threads.max(1),
        verbose: cli.verbose,
        err,
    };
    let result = match cli.command {
        Command::Solve {
            size,
            form,
            out: path,
        } => cmd_solve(&mut ctx, size, form, path.as_deref(), out),
        Command::Enumerate {
            family,
            n,
            tau,
            refined,
            csv,
            out: path,
        } => cmd_enumerate(family.into(), n, &tau, refined, csv, path.as_deref(), out),
        Command::Check {
            suite,
            size,
            n,
            p,
            timings,
            out: path,
        } => cmd_check(&mut ctx, suite, size, n, p, timings, path.as_deref(), out),
        Command::Oracle { family, n } => cmd_oracle(family.into(), n, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_solve(
    ctx: &mut Context,
    size: usize,
    form: Form,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, AppError> {
    let start = Instant::now();
    let tau = ctx.tau(size)?;
    if let Some(p) = path {
        let file = File::create(p).map_err(|e| AppError::io(p, e))?;
        match form {
            Form::Full => write_full(&*ctx.full(size)?, file)?,
            Form::Tau => write_tau(&tau, file)?,
        }
    }
    ctx.note(&format!(
        "L = {size}: {} components in {:.1?}",
        tau.patterns.len(),
        start.elapsed()
    ));
    write_output(None, &tau_to_json(&sum_rule(&tau)).to_string(), out)?;
    Ok(0)
}

fn cmd_enumerate(
    family: Family,
    n: usize,
    tau: &TauMode,
    refined: bool,
    csv: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, AppError> {
    if n == 0 {
        return Err(AppError::Usage("n must be positive".into()));
    }
    if csv && *tau != TauMode::Symbolic {
        return Err(AppError::Usage(
            "CSV output is only for symbolic coefficient tables".into(),
        ));
    }
    let rows: Vec<(Option<Vec<usize>>, TauPoly)> = if refined {
        family
            .refined(n)?
            .into_iter()
            .map(|(t, v)| (Some(t.values().to_vec()), v))
            .collect()
    } else {
        vec![(None, family.total(n)?)]
    };
    if csv {
        let width = rows
            .iter()
            .filter_map(|(_, v)| v.degree())
            .max()
            .unwrap_or(0)
            + 1;
        let mut text = String::from("endpoints");
        for k in 0..width {
            text.push_str(&format!(",tau^{k}"));
        }
        for (t, v) in &rows {
            let label = t.as_ref().map_or("all".to_string(), |t| {
                t.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            });
            text.push('\n');
            text.push_str(&label);
            for k in 0..width {
                text.push_str(&format!(",{}", v.coeff(k)));
            }
        }
        write_output(path, &text, out)?;
        return Ok(0);
    }
    let render = |v: &TauPoly| match tau {
        TauMode::Symbolic => tau_to_json(v),
        TauMode::Value(r) => rational_to_json(&eval_rational(v, r)),
    };
    let values: Vec<Value> = rows
        .iter()
        .map(|(t, v)| match t {
            Some(t) => json!({"endpoints": t, "value": render(v)}),
            None => render(v),
        })
        .collect();
    let doc = json!({
        "n": n,
        "family": family.name(),
        "tau": tau.to_string(),
        "refined": refined,
        "values": values,
    });
    write_output(path, &doc.to_string(), out)?;
    Ok(0)
}

struct Planned<'a> {
    reproduce: String,
    job: Job<'a, Vec<CheckReport>>,
}

fn timed<'a>(reproduce: String, f: impl FnOnce() -> Vec<CheckReport> + Send + 'a) -> Planned<'a> {
    Planned {
        reproduce,
        job: Box::new(move || {
            let start = Instant::now();
            let mut reports = f();
            let t = start.elapsed();
            for r in &mut reports {
                r.runtime = Some(t);
            }
            reports
        }),
    }
}

fn system_report(l: usize, full: &FullSolution) -> CheckReport {
    let outcome = verify_system(full)
        .map_err(|e| e.to_string())
        .and_then(|rep| {
            let bad: Vec<String> = rep
                .failures()
                .take(5)
                .map(|c| format!("{:?} at {}", c.kind, c.pattern))
                .collect();
            if bad.is_empty() {
                Ok(())
            } else {
                Err(bad.join("; "))
            }
        });
    CheckReport::new("system", &[("L", l)], ReportKind::ProvedIdentity, outcome)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    ctx: &mut Context,
    suite: Suite,
    size: Option<SizeRange>,
    n: Option<SizeRange>,
    p: Option<SizeRange>,
    timings: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, AppError> {
    let system = matches!(suite, Suite::System | Suite::All);
    let conj = matches!(suite, Suite::Conjectures | Suite::All);
    let ident = matches!(suite, Suite::Identities | Suite::All);
    let wanted = (system || conj) && size.is_some() || ident && n.is_some() || conj && p.is_some();
    if !wanted {
        return Err(AppError::Usage(format!(
            "suite {} needs {}",
            suite.name(),
            match suite {
                Suite::System => "--size",
                Suite::Conjectures => "--size or --p",
                Suite::Identities => "--n",
                Suite::All => "--size, --n or --p",
            }
        )));
    }

    let mut solved: Vec<(usize, Option<Arc<FullSolution>>, Option<TauSolution>)> = Vec::new();
    if system || conj {
        for l in size.into_iter().flat_map(SizeRange::iter) {
            let full = if system && l % 2 == 0 {
                Some(ctx.full(l)?)
            } else {
                None
            };
            let tau = if conj { Some(ctx.tau(l)?) } else { None };
            solved.push((l, full, tau));
        }
    }

    let mut plan: Vec<Planned> = Vec::new();
    for (l, full, tau) in &solved {
        let l = *l;
        if system {
            let rep = format!("qkz check --suite system --size {l}");
            match full {
                Some(full) => plan.push(timed(rep, move || vec![system_report(l, full)])),
                None => {
                    let why = "odd sizes are covered by their even parent";
                    let r = CheckReport::skipped(
                        "system",
                        &[("L", l)],
                        ReportKind::ProvedIdentity,
                        why,
                    );
                    plan.push(timed(rep, move || vec![r]));
                }
            }
        }
        if let Some(tau) = tau {
            let rep = format!("qkz check --suite conjectures --size {l}");
            plan.push(timed(rep.clone(), move || vec![check_conjecture1(tau)]));
            plan.push(timed(rep.clone(), move || vec![check_conjecture2(tau)]));
            plan.push(timed(rep.clone(), move || vec![check_conjecture3(tau)]));
            plan.push(timed(rep.clone(), move || vec![check_conjecture4(tau)]));
            plan.push(timed(rep, move || vec![check_tau_infinity(tau)]));
        }
    }
    if ident {
        for k in n.into_iter().flat_map(SizeRange::iter) {
            let rep = format!("qkz check --suite identities --n {k}");
            plan.push(timed(rep.clone(), move || check_specializations(k)));
            plan.push(timed(rep, move || check_identity_suite(k)));
        }
    }
    if conj {
        for q in p.into_iter().flat_map(SizeRange::iter) {
            plan.push(timed(
                format!("qkz check --suite conjectures --p {q}"),
                move || vec![check_conjecture5(q)],
            ));
        }
    }

    let (reproduce, jobs): (Vec<String>, Vec<_>) =
        plan.into_iter().map(|p| (p.reproduce, p.job)).unzip();
    let results = run_all(ctx.threads, jobs);
    let mut docs = Vec::new();
    let mut failed = false;
    for (reports, rep) in results.iter().zip(&reproduce) {
        for r in reports {
            failed |= r.status == Status::Fail;
            if let Some(t) = r.runtime {
                ctx.note(&format!(
                    "{} {:?}: {:?} in {t:.1?}",
                    r.id, r.params, r.status
                ));
            }
            docs.push(report_to_json(r, rep, timings));
        }
    }
    write_output(path, &pretty(&docs)?, out)?;
    Ok(i32::from(failed))
}

fn cmd_oracle(family: Family, n: usize, out: &mut dyn Write) -> Result<i32, AppError> {
    let tss = brute_force(n, PathVariant::Tsscpp, WeightRule::AllVertical)?;
    let second = match family {
        Family::Tsscpp => None,
        Family::Cstcpp => Some(brute_force(
            n,
            PathVariant::SecondCstcpp,
            WeightRule::LastStepFree,
        )?),
        Family::Vsasm => Some(brute_force(
            n,
            PathVariant::SecondVsasm,
            WeightRule::LastStepFree,
        )?),
    };
    let zero = TauPoly::zero();
    let mut lines = vec![
        format!("{} n = {n}", family.name()),
        "endpoints | brute force | determinant | status".to_string(),
    ];
    let mut matched = 0;
    let refined = family.refined(n)?;
    for (t, det) in &refined {
        let first = tss.get(t.values()).unwrap_or(&zero);
        let brute = match &second {
            Some(b) => first * b.get(t.values()).unwrap_or(&zero),
            None => first.clone(),
        };
        let ok = brute == *det;
        matched += usize::from(ok);
        lines.push(format!(
            "{:?} | {brute} | {det} | {}",
            t.values(),
            if ok { "match" } else { "MISMATCH" }
        ));
    }
    let brute_total = match &second {
        Some(b) => paired_sum(&tss, b),
        None => admissible_endpoints(n)
            .iter()
            .filter_map(|t| tss.get(t.values()))
            .cloned()
            .sum(),
    };
    let total = family.total(n)?;
    let total_ok = brute_total == total;
    lines.push(format!("{matched} of {} tuples match", refined.len()));
    lines.push(format!(
        "sum {} | {brute_total} | {total}",
        if total_ok { "match" } else { "MISMATCH" }
    ));
    write_output(None, &lines.join("\n"), out)?;
    Ok(i32::from(matched != refined.len() || !total_ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_modes() {
        assert_eq!("symbolic".parse::<TauMode>().unwrap(), TauMode::Symbolic);
        let half: TauMode = "2/4".parse().unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!("-1".parse::<TauMode>().unwrap().to_string(), "-1");
        assert!("0.5".parse::<TauMode>().is_err());
        assert!("1/0".parse::<TauMode>().is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(
            "5".parse::<SizeRange>().unwrap(),
            SizeRange { lo: 5, hi: 5 }
        );
        assert_eq!("2..8".parse::<SizeRange>().unwrap().iter().count(), 7);
        assert_eq!(
            "2..=3".parse::<SizeRange>().unwrap(),
            SizeRange { lo: 2, hi: 3 }
        );
        assert!("0".parse::<SizeRange>().is_err());
        assert!("4..2".parse::<SizeRange>().is_err());
    }

    #[test]
    fn rational_evaluation() {
        let p = TauPoly::from_i64s(&[1, 3, 4, 2, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(eval_rational(&p, &half).to_string(), "61/16");
        assert_eq!(
            rational_to_json(&eval_rational(&p, &BigRational::from_integer(2.into()))),
            json!(55)
        );
    }
}
