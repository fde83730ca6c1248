//! Sparse multivariate polynomials in `z_1..z_L` with `Z[q, q⁻¹]` coefficients.
//!
//! Terms are stored flattened: one entry per `(z-monomial, power of q)` pair,
//! keyed by a packed `u128` whose integer order is graded-lex on the
//! z-exponents with ascending powers of `q` inside a monomial. A polynomial
//! is a strictly increasing vector of keys with nonzero integer
//! coefficients, so equality is structural.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{ExactAlgError, Int, LaurentQ};

/// Largest number of z-variables a [`MultiPoly`] can carry.
pub const MAX_VARS: usize = 12;
/// Largest exponent of a single z-variable.
pub const MAX_EXP: u32 = 127;
/// Largest absolute power of `q`.
pub const MAX_Q_EXP: i32 = (1 << 18) - 1;

mod key {
    use super::{MAX_EXP, MAX_Q_EXP, MAX_VARS};

    pub type Key = u128;

    const DEG_SHIFT: u32 = 116;
    const Q_BITS: u32 = 20;
    pub const Q_MASK: Key = (1 << Q_BITS) - 1;
    pub const Q_BIAS: Key = 1 << 19;
    const FIELD: Key = 0xFF;

    const fn high_bits() -> Key {
        let mut m: Key = 0;
        let mut k = 0;
        while k < MAX_VARS {
            m |= 0x80 << shift(k);
            k += 1;
        }
        m
    }
    const EXP_HIGH: Key = high_bits();

    #[inline]
    pub const fn shift(var: usize) -> u32 {
        108 - 8 * var as u32
    }

    #[inline]
    pub fn pack(exps: &[u32], q: i32) -> Key {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        assert!(q.abs() <= MAX_Q_EXP, "q exponent {q} out of range");
        let mut k: Key = 0;
        let mut deg: Key = 0;
        for (v, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent {e} exceeds {MAX_EXP}");
            k |= (e as Key) << shift(v);
            deg += e as Key;
        }
        k | (deg << DEG_SHIFT) | ((q as i64 + Q_BIAS as i64) as Key)
    }

    #[inline]
    pub fn q(k: Key) -> i32 {
        ((k & Q_MASK) as i64 - Q_BIAS as i64) as i32
    }

    #[inline]
    pub fn mono(k: Key) -> Key {
        k & !Q_MASK
    }

    #[inline]
    pub fn exp(k: Key, var: usize) -> u32 {
        ((k >> shift(var)) & FIELD) as u32
    }

    #[inline]
    pub fn degree(k: Key) -> u32 {
        (k >> DEG_SHIFT) as u32
    }

    #[inline]
    pub fn set_exp(k: Key, var: usize, e: u32) -> Key {
        debug_assert!(e <= MAX_EXP);
        let old = exp(k, var) as Key;
        let e = e as Key;
        let s = shift(var);
        k - (old << s) + (e << s) - (old << DEG_SHIFT) + (e << DEG_SHIFT)
    }

    /// Sets the exponents of `var` and `var + 1` together.
    #[inline]
    pub fn set_pair(k: Key, var: usize, a: u32, b: u32) -> Key {
        set_exp(set_exp(k, var, a), var + 1, b)
    }

    #[inline]
    pub fn shift_q(k: Key, dq: i32) -> Key {
        let nq = q(k) + dq;
        assert!(nq.abs() <= MAX_Q_EXP, "q exponent {nq} out of range");
        (k & !Q_MASK) | ((nq as i64 + Q_BIAS as i64) as Key)
    }

    /// Key of the product of two terms.
    #[inline]
    pub fn mul(a: Key, b: Key) -> Key {
        let s = a + b - Q_BIAS;
        assert!(s & EXP_HIGH == 0, "exponent overflow in monomial product");
        assert!(q(s).abs() <= MAX_Q_EXP, "q exponent out of range");
        s
    }

    /// Key with every field of `var < upto` and the degree kept; the rest cleared.
    #[inline]
    pub fn prefix(k: Key, upto: usize) -> Key {
        if upto == 0 {
            return k >> DEG_SHIFT << DEG_SHIFT;
        }
        let low = shift(upto - 1);
        k >> low << low
    }

    /// Adds `x` to `var`, `y` to `var + 1` and `dq` to the power of `q`
    /// (caller checked the ranges).
    #[inline]
    pub fn with_pair(base: Key, var: usize, x: u32, y: u32, dq: i32) -> Key {
        debug_assert!(x <= MAX_EXP && y <= MAX_EXP);
        let s = shift(var);
        let add = ((x as Key) << s) + ((y as Key) << (s - 8)) + (((x + y) as Key) << DEG_SHIFT);
        (base + add).wrapping_add_signed(dq as i128)
    }

    /// Swaps the exponents of `var` and `var + 1`.
    #[inline]
    pub fn swap(k: Key, var: usize) -> Key {
        let a = exp(k, var);
        let b = exp(k, var + 1);
        set_pair(k, var, b, a)
    }

    pub fn divides(d: Key, k: Key, nvars: usize) -> bool {
        (0..nvars).all(|v| exp(d, v) <= exp(k, v))
    }

    /// Key of `k / d` (caller checked divisibility).
    pub fn quotient(k: Key, d: Key, nvars: usize) -> Key {
        let exps: [u32; MAX_VARS] =
            core::array::from_fn(|v| if v < nvars { exp(k, v) - exp(d, v) } else { 0 });
        pack(&exps[..nvars], q(k) - q(d))
    }
}

use key::Key;

/// Value assigned to a variable by [`MultiPoly::substitute`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignment {
    Zero,
    One,
    Value(LaurentQ),
}

/// A `z`-monomial with its `Z[q, q⁻¹]` coefficient, as yielded by [`MultiPoly::terms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: LaurentQ,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Key, Int)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: &LaurentQ) -> Self {
        MultiPoly::monomial(nvars, &[], c)
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, &LaurentQ::one())
    }

    /// `coeff · Π z_k^{exponents[k-1]}`; missing trailing exponents are zero.
    pub fn monomial(nvars: usize, exponents: &[u32], coeff: &LaurentQ) -> Self {
        assert!(exponents.len() <= nvars);
        let mut p = MultiPoly::zero(nvars);
        p.terms = coeff
            .terms()
            .map(|(e, c)| (key::pack(exponents, e), c.clone()))
            .collect();
        p
    }

    /// The variable `z_k`, 1-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= nvars, "variable index {k} out of range");
        let mut exps = [0u32; MAX_VARS];
        exps[k - 1] = 1;
        MultiPoly::monomial(nvars, &exps[..nvars], &LaurentQ::one())
    }

    /// Builds a polynomial from `(exponents, q-power, coefficient)` triples.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, i32, Int)>,
    {
        let raw = terms
            .into_iter()
            .map(|(e, q, c)| {
                assert!(e.len() <= nvars);
                (key::pack(&e, q), c)
            })
            .collect();
        MultiPoly::from_raw(nvars, raw)
    }

    fn from_raw(nvars: usize, mut raw: Vec<(Key, Int)>) -> Self {
        normalize(&mut raw);
        MultiPoly { nvars, terms: raw }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored `(monomial, power of q)` entries.
    pub fn flat_len(&self) -> usize {
        self.terms.len()
    }

    pub fn num_monomials(&self) -> usize {
        let mut count = 0;
        let mut last = None;
        for (k, _) in &self.terms {
            let m = key::mono(*k);
            if last != Some(m) {
                count += 1;
                last = Some(m);
            }
        }
        count
    }

    /// Terms grouped by z-monomial, in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        let nvars = self.nvars;
        let mut idx = 0;
        core::iter::from_fn(move || {
            if idx >= self.terms.len() {
                return None;
            }
            let m = key::mono(self.terms[idx].0);
            let mut coeff = LaurentQ::zero();
            while idx < self.terms.len() && key::mono(self.terms[idx].0) == m {
                let (k, c) = &self.terms[idx];
                coeff.add_term(key::q(*k), c);
                idx += 1;
            }
            let exponents = (0..nvars).map(|v| key::exp(m, v)).collect();
            Some(Term { exponents, coeff })
        })
    }

    /// Total degree in the z-variables; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|(k, _)| key::degree(*k))
    }

    /// Largest exponent of `z_k` (1-based) across all terms.
    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms
            .iter()
            .map(|(key, _)| key::exp(*key, k - 1))
            .max()
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if let (Some(lo), Some(hi)) = (c.low_degree(), c.high_degree()) {
            if lo == hi {
                let f = c.coeff(lo);
                let terms = self
                    .terms
                    .iter()
                    .map(|(k, x)| (key::shift_q(*k, lo), x * &f))
                    .collect();
                return MultiPoly {
                    nvars: self.nvars,
                    terms,
                };
            }
        }
        let mut raw = Vec::with_capacity(self.terms.len() * 2);
        for (k, x) in &self.terms {
            for (e, f) in c.terms() {
                raw.push((key::shift_q(*k, e), x * f));
            }
        }
        MultiPoly::from_raw(self.nvars, raw)
    }

    /// The action of `τ_i`, exchanging `z_i` and `z_{i+1}` (1-based).
    pub fn swap_vars(&self, i: usize) -> Result<Self, ExactAlgError> {
        self.apply_pair_operator(i, |a, b, out| out.push((b, a, 0, Int::ONE)))
    }

    /// Whether the polynomial is invariant under `z_i ↔ z_{i+1}`.
    pub fn is_symmetric_in(&self, i: usize) -> Result<bool, ExactAlgError> {
        self.check_pair(i)?;
        Ok(self.terms.iter().all(|(k, c)| {
            let s = key::swap(*k, i - 1);
            s == *k || self.lookup(s) == Some(c)
        }))
    }

    fn lookup(&self, k: Key) -> Option<&Int> {
        self.terms
            .binary_search_by_key(&k, |(x, _)| *x)
            .ok()
            .map(|idx| &self.terms[idx].1)
    }

    fn check_pair(&self, i: usize) -> Result<(), ExactAlgError> {
        if i == 0 || i >= self.nvars {
            return Err(ExactAlgError::IndexOutOfRange {
                index: i,
                len: self.nvars,
            });
        }
        Ok(())
    }

    /// Substitutes values for some variables; the substituted variables no
    /// longer occur in the result (the variable count is unchanged).
    pub fn substitute(&self, assignments: &[(usize, Assignment)]) -> Self {
        let mut raw = self.terms.clone();
        for (var, value) in assignments {
            assert!(
                *var >= 1 && *var <= self.nvars,
                "variable index out of range"
            );
            let v = var - 1;
            raw = match value {
                Assignment::Zero => raw
                    .into_iter()
                    .filter(|(k, _)| key::exp(*k, v) == 0)
                    .collect(),
                Assignment::One => raw
                    .into_iter()
                    .map(|(k, c)| (key::set_exp(k, v, 0), c))
                    .collect(),
                Assignment::Value(val) => {
                    let mut powers: Vec<LaurentQ> = alloc::vec![LaurentQ::one()];
                    let mut out = Vec::with_capacity(raw.len());
                    for (k, c) in raw {
                        let e = key::exp(k, v) as usize;
                        while powers.len() <= e {
                            let next = powers.last().unwrap() * val;
                            powers.push(next);
                        }
                        let base = key::set_exp(k, v, 0);
                        for (qe, f) in powers[e].terms() {
                            out.push((key::shift_q(base, qe), &c * f));
                        }
                    }
                    out
                }
            };
        }
        MultiPoly::from_raw(self.nvars, raw)
    }

    /// The value of a polynomial with no z-dependence left.
    pub fn as_constant(&self) -> Option<LaurentQ> {
        if self.terms.iter().any(|(k, _)| key::degree(*k) != 0) {
            return None;
        }
        Some(LaurentQ::from_terms(
            self.terms.iter().map(|(k, c)| (key::q(*k), c.clone())),
        ))
    }

    /// Value at `z_1 = … = z_L = 1`.
    pub fn sum_at_ones(&self) -> LaurentQ {
        let mut acc = LaurentQ::zero();
        for (k, c) in &self.terms {
            acc.add_term(key::q(*k), c);
        }
        acc
    }

    /// Reinterprets the polynomial in the first `nvars` variables; fails if
    /// a dropped variable still occurs.
    pub fn truncate_vars(&self, nvars: usize) -> Result<Self, ExactAlgError> {
        assert!(nvars <= self.nvars);
        for v in nvars..self.nvars {
            if self.terms.iter().any(|(k, _)| key::exp(*k, v) != 0) {
                return Err(ExactAlgError::VariableStillPresent { var: v + 1 });
            }
        }
        Ok(MultiPoly {
            nvars,
            terms: self.terms.clone(),
        })
    }

    /// `z_k^m · p(…, q^s / z_k, …)`, or `None` when some exponent of `z_k`
    /// exceeds `m` (the result would not be a polynomial).
    pub fn invert_var(&self, k: usize, m: u32, s: i32) -> Option<Self> {
        assert!(k >= 1 && k <= self.nvars);
        let v = k - 1;
        let mut raw = Vec::with_capacity(self.terms.len());
        for (key, c) in &self.terms {
            let e = key::exp(*key, v);
            if e > m {
                return None;
            }
            let nk = key::shift_q(key::set_exp(*key, v, m - e), s * e as i32);
            raw.push((nk, c.clone()));
        }
        Some(MultiPoly::from_raw(self.nvars, raw))
    }

    /// Applies a linear operator acting only on `x = z_i`, `y = z_{i+1}`.
    ///
    /// `f(a, b, out)` receives the exponents of `x^a y^b` and appends the
    /// image as `(x-exponent, y-exponent, q-shift, multiplier)` terms.
    /// When every image has the degree of its source shifted by the same
    /// amount, the output is sorted run by run over equal leading exponents
    /// instead of globally.
    pub fn apply_pair_operator<F>(&self, i: usize, mut f: F) -> Result<Self, ExactAlgError>
    where
        F: FnMut(u32, u32, &mut Vec<(u32, u32, i32, Int)>),
    {
        self.check_pair(i)?;
        let v = i - 1;
        let mut out: Vec<(Key, Int)> = Vec::with_capacity(self.terms.len() * 2);
        let mut scratch: Vec<(Key, Int)> = Vec::new();
        let mut image: Vec<(u32, u32, i32, Int)> = Vec::new();
        // (x, y, start, end) of each sorted run in `scratch`.
        let mut runs: Vec<(u32, u32, usize, usize)> = Vec::new();
        let mut heads: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        while start < self.terms.len() {
            let pre = key::prefix(self.terms[start].0, v);
            let mut end = start;
            while end < self.terms.len() && key::prefix(self.terms[end].0, v) == pre {
                end += 1;
            }
            // Inside a run of equal leading exponents the terms sharing the
            // exponents of z_i, z_{i+1} are contiguous and sorted by the
            // remaining fields, so every image template turns such a slice
            // into a sorted run with fixed (x, y). Output order is (x, y,
            // rest), so runs are grouped by (x, y) and merged.
            scratch.clear();
            runs.clear();
            let mut s0 = start;
            while s0 < end {
                let pair = key::prefix(self.terms[s0].0, v + 2);
                let mut s1 = s0;
                while s1 < end && key::prefix(self.terms[s1].0, v + 2) == pair {
                    s1 += 1;
                }
                let slice = &self.terms[s0..s1];
                let (a, b) = (key::exp(slice[0].0, v), key::exp(slice[0].0, v + 1));
                image.clear();
                f(a, b, &mut image);
                for (x, y, dq, m) in &image {
                    if m.is_zero() {
                        continue;
                    }
                    let st = scratch.len();
                    for (k, c) in slice {
                        assert!(
                            (key::q(*k) + dq).abs() <= MAX_Q_EXP,
                            "q exponent out of range"
                        );
                        let nk = key::with_pair(key::set_pair(*k, v, 0, 0), v, *x, *y, *dq);
                        let coeff = if m.is_one() { c.clone() } else { c * m };
                        scratch.push((nk, coeff));
                    }
                    runs.push((*x, *y, st, scratch.len()));
                }
                s0 = s1;
            }
            runs.sort_unstable_by_key(|r| (r.0, r.1));
            let mut g0 = 0;
            while g0 < runs.len() {
                let mut g1 = g0;
                while g1 < runs.len() && (runs[g1].0, runs[g1].1) == (runs[g0].0, runs[g0].1) {
                    g1 += 1;
                }
                if g1 - g0 == 1 {
                    let (_, _, st, en) = runs[g0];
                    out.extend(
                        scratch[st..en]
                            .iter_mut()
                            .map(|(k, c)| (*k, core::mem::take(c))),
                    );
                } else {
                    heads.clear();
                    heads.extend(runs[g0..g1].iter().map(|r| (r.2, r.3)));
                    merge_runs(&mut scratch, &mut heads, &mut out);
                }
                g0 = g1;
            }
            start = end;
        }
        if out.windows(2).any(|w| w[0].0 >= w[1].0) {
            normalize(&mut out);
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: out,
        })
    }

    /// `(α z_i + β z_{i+1}) · ∂_i p` where `∂_i p = (p − τ_i p)/(z_i − z_{i+1})`
    /// and `α = α_c q^{α_e}`, `β = β_c q^{β_e}` are single q-terms.
    ///
    /// Uses the closed form of the divided difference on a monomial,
    /// `∂(x^a y^b) = ±(xy)^{min(a,b)} Σ_{k<d} x^k y^{d−1−k}` with `d = |a − b|`.
    pub fn linear_times_divided_difference(
        &self,
        i: usize,
        alpha: (&Int, i32),
        beta: (&Int, i32),
    ) -> Result<Self, ExactAlgError> {
        self.apply_pair_operator(i, |a, b, out| {
            if a == b {
                return;
            }
            let (lo, d, neg) = if a > b {
                (b, a - b, false)
            } else {
                (a, b - a, true)
            };
            let (ca, cb) = if neg {
                (-alpha.0, -beta.0)
            } else {
                (alpha.0.clone(), beta.0.clone())
            };
            for t in 0..d {
                let x = lo + t;
                let y = lo + d - 1 - t;
                if !ca.is_zero() {
                    out.push((x + 1, y, alpha.1, ca.clone()));
                }
                if !cb.is_zero() {
                    out.push((x, y + 1, beta.1, cb.clone()));
                }
            }
        })
    }

    /// The divided difference `(p − τ_i p)/(z_i − z_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Result<Self, ExactAlgError> {
        // Run the kernel with prefactor `z_i`, then strip that factor.
        let shifted = self.linear_times_divided_difference(i, (&Int::ONE, 0), (&Int::ZERO, 0))?;
        let v = i - 1;
        let terms = shifted
            .terms
            .into_iter()
            .map(|(k, c)| (key::set_exp(k, v, key::exp(k, v) - 1), c))
            .collect();
        Ok(MultiPoly::from_raw(self.nvars, terms))
    }

    /// Product with `c · q^e · z_k` (or `c · q^e` when `k` is `None`). Keeps
    /// the term order, so no re-sort is needed.
    pub fn mul_term(&self, k: Option<usize>, c: &Int, e: i32) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut exps = [0u32; MAX_VARS];
        if let Some(k) = k {
            assert!(k >= 1 && k <= self.nvars, "variable index out of range");
            exps[k - 1] = 1;
        }
        let t = key::pack(&exps[..self.nvars], e);
        let terms = self
            .terms
            .iter()
            .map(|(x, y)| (key::mul(*x, t), y * c))
            .collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Exact quotient `self / d` in `Z[q, q⁻¹][z]`.
    pub fn exact_divide(&self, d: &MultiPoly) -> Result<Self, ExactAlgError> {
        assert_eq!(self.nvars, d.nvars, "variable count mismatch");
        let Some(&(lead_key, ref lead_coeff)) = d.terms.last() else {
            return Err(ExactAlgError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(MultiPoly::zero(self.nvars));
        }
        let min_q = |p: &MultiPoly| p.terms.iter().map(|(k, _)| key::q(*k)).min().unwrap();
        let q_floor = min_q(self) - min_q(d);
        let mut rem: BTreeMap<Key, Int> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Key, Int)> = Vec::new();
        while let Some((&rk, rc)) = rem.iter().next_back() {
            if !key::divides(lead_key, rk, self.nvars) {
                return Err(ExactAlgError::NotDivisible);
            }
            let tk = key::quotient(rk, lead_key, self.nvars);
            if key::q(tk) < q_floor {
                return Err(ExactAlgError::NotDivisible);
            }
            let tc = rc
                .div_exact(lead_coeff)
                .ok_or(ExactAlgError::NotDivisible)?;
            for (dk, dc) in &d.terms {
                let pk = key::mul(tk, *dk);
                let prod = &tc * dc;
                let entry = rem.entry(pk).or_insert(Int::ZERO);
                *entry -= &prod;
                if entry.is_zero() {
                    rem.remove(&pk);
                }
            }
            quot.push((tk, tc));
        }
        Ok(MultiPoly::from_raw(self.nvars, quot))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = MultiPoly::one(self.nvars);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }
}

/// Sorts by key, merges equal keys and drops zero coefficients.
fn normalize(raw: &mut Vec<(Key, Int)>) {
    if raw.len() <= 1 {
        raw.retain(|(_, c)| !c.is_zero());
        return;
    }
    raw.sort_unstable_by_key(|(k, _)| *k);
    combine_sorted(raw);
}

/// Merges the strictly increasing runs `src[a..b]` for `(a, b)` in `heads`
/// onto `out`, adding coefficients of equal keys and dropping zeros.
fn merge_runs(src: &mut [(Key, Int)], heads: &mut Vec<(usize, usize)>, out: &mut Vec<(Key, Int)>) {
    loop {
        heads.retain(|(a, b)| a < b);
        let Some(min) = heads.iter().map(|(a, _)| src[*a].0).min() else {
            return;
        };
        let mut acc = Int::ZERO;
        for (a, _) in heads.iter_mut() {
            if src[*a].0 == min {
                acc += &core::mem::take(&mut src[*a].1);
                *a += 1;
            }
        }
        if !acc.is_zero() {
            out.push((min, acc));
        }
    }
}

/// Merges equal adjacent keys of a sorted vector and drops zeros.
fn combine_sorted(raw: &mut Vec<(Key, Int)>) {
    let mut w = 0;
    for r in 0..raw.len() {
        if w > 0 && raw[w - 1].0 == raw[r].0 {
            let c = core::mem::take(&mut raw[r].1);
            raw[w - 1].1 += &c;
        } else {
            if w > 0 && raw[w - 1].1.is_zero() {
                w -= 1;
            }
            raw.swap(w, r);
            w += 1;
        }
    }
    if w > 0 && raw[w - 1].1.is_zero() {
        w -= 1;
    }
    raw.truncate(w);
}

fn merge(a: &[(Key, Int)], b: &[(Key, Int)], negate_b: bool) -> Vec<(Key, Int)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let neg = |c: &Int| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push((b[j].0, neg(&b[j].1)));
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                let s = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(k, c)| (*k, neg(c))));
    out
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        MultiPoly {
            nvars: self.nvars,
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        MultiPoly {
            nvars: self.nvars,
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut raw = Vec::with_capacity(small.terms.len() * large.terms.len());
        for (ka, ca) in &small.terms {
            for (kb, cb) in &large.terms {
                raw.push((key::mul(*ka, *kb), ca * cb));
            }
        }
        MultiPoly::from_raw(self.nvars, raw)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<Term> = self.terms().collect();
        for (n, t) in terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let mono: Vec<_> = t
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .collect();
            let unit = t.coeff == LaurentQ::one();
            if !unit || mono.is_empty() {
                write!(f, "({})", t.coeff)?;
            }
            for (v, e) in mono {
                if *e == 1 {
                    write!(f, "z{}", v + 1)?;
                } else {
                    write!(f, "z{}^{}", v + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(n: usize, k: usize) -> MultiPoly {
        MultiPoly::var(n, k)
    }

    fn cq(c: i64, e: i32) -> MultiPoly {
        MultiPoly::constant(4, &LaurentQ::monomial(Int::small(c), e))
    }

    #[test]
    fn key_order_is_graded_lex() {
        let a = key::pack(&[0, 2], 0);
        let b = key::pack(&[1, 0], 5);
        let c = key::pack(&[1, 1], -3);
        assert!(b < a && a < c);
        assert_eq!(key::q(c), -3);
        assert_eq!(key::exp(c, 1), 1);
        assert_eq!(key::degree(c), 2);
        assert_eq!(key::mul(b, c), key::pack(&[2, 1], 2));
    }

    #[test]
    fn commuted_product_collects() {
        let p = &(&z(2, 1) * &z(2, 2)) + &(&z(2, 2) * &z(2, 1));
        assert_eq!(
            p,
            MultiPoly::monomial(2, &[1, 1], &LaurentQ::constant(Int::small(2)))
        );
    }

    #[test]
    fn swap_examples() {
        let p = z(3, 1);
        assert_eq!(p.swap_vars(1).unwrap(), z(3, 2));
        let sym = &z(3, 1) * &z(3, 2);
        assert_eq!(sym.swap_vars(1).unwrap(), sym);
        assert!(sym.is_symmetric_in(1).unwrap());
        assert!(!sym.is_symmetric_in(2).unwrap());
        let q = |e| MultiPoly::constant(3, &LaurentQ::q_pow(e));
        let lhs = &(&q(1) * &z(3, 2)) - &(&q(-1) * &z(3, 3));
        let rhs = &(&q(1) * &z(3, 3)) - &(&q(-1) * &z(3, 2));
        assert_eq!(lhs.swap_vars(2).unwrap(), rhs);
        assert!(matches!(
            lhs.swap_vars(3),
            Err(ExactAlgError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            lhs.swap_vars(0),
            Err(ExactAlgError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn exact_divide_examples() {
        let n = 2;
        let num = &(&z(n, 1) * &z(n, 1)) - &(&z(n, 2) * &z(n, 2));
        let den = &z(n, 1) - &z(n, 2);
        assert_eq!(num.exact_divide(&den).unwrap(), &z(n, 1) + &z(n, 2));
        // ((τ_1 − 1) z_1) / (z_2 − z_1) = 1
        let p = z(n, 1);
        let anti = &p.swap_vars(1).unwrap() - &p;
        let den2 = &z(n, 2) - &z(n, 1);
        assert_eq!(anti.exact_divide(&den2).unwrap(), MultiPoly::one(n));
        let prod = &z(n, 1) * &z(n, 2);
        assert_eq!(prod.exact_divide(&den), Err(ExactAlgError::NotDivisible));
    }

    #[test]
    fn exact_divide_with_laurent_coefficients() {
        let a = &(&cq(1, 1) * &z(4, 1)) - &(&cq(1, -1) * &z(4, 2));
        let b = &(&cq(1, 0) - &(&cq(1, -1) * &(&z(4, 1) * &z(4, 2)))) + &cq(3, 2);
        let prod = &a * &b;
        assert_eq!(prod.exact_divide(&a).unwrap(), b);
        assert_eq!(prod.exact_divide(&b).unwrap(), a);
        let one_plus = &cq(1, 0) + &cq(1, -1);
        assert_eq!(
            cq(1, 0).exact_divide(&one_plus),
            Err(ExactAlgError::NotDivisible)
        );
    }

    #[test]
    fn divided_difference_matches_exact_division() {
        let p = &(&(&z(4, 1) * &z(4, 1)) * &z(4, 3)) + &(&cq(5, 2) * &z(4, 2).pow(3));
        for i in 1..4 {
            let anti = &p - &p.swap_vars(i).unwrap();
            let den = &z(4, i) - &z(4, i + 1);
            assert_eq!(
                p.divided_difference(i).unwrap(),
                anti.exact_divide(&den).unwrap()
            );
        }
    }

    #[test]
    fn substitute_examples() {
        let n = 4;
        let q = |e| MultiPoly::constant(n, &LaurentQ::q_pow(e));
        let f = &(&q(1) * &z(n, 1)) - &(&q(-1) * &z(n, 2));
        let at_one = f.substitute(&[(1, Assignment::One), (2, Assignment::One)]);
        assert_eq!(at_one.as_constant().unwrap(), LaurentQ::q_minus_qinv());
        let g = &(&q(-2) * &(&z(n, 3) * &z(n, 4))) - &q(2);
        let at_zero = g.substitute(&[(4, Assignment::Zero)]);
        assert_eq!(at_zero, -q(2));
        let h = &z(n, 2) * &z(n, 2);
        let val = h.substitute(&[(2, Assignment::Value(LaurentQ::q_pow(3)))]);
        assert_eq!(val, q(6));
        assert_eq!(f.sum_at_ones(), LaurentQ::q_minus_qinv());
    }

    #[test]
    fn invert_var_and_truncate() {
        let p = &z(2, 1) + &MultiPoly::one(2);
        assert_eq!(p.invert_var(1, 1, 0).unwrap(), p);
        assert!(p.invert_var(1, 0, 0).is_none());
        let t = MultiPoly::from_terms(3, vec![(vec![1, 0, 0], 0, Int::ONE)]);
        assert_eq!(t.truncate_vars(1).unwrap(), z(1, 1));
        assert!(z(3, 3).truncate_vars(2).is_err());
    }
}
