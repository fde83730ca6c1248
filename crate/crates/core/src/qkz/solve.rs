use alloc::vec;
use alloc::vec::Vec;

use super::{FullSolution, QkzError};
use crate::exactalg::{Int, LaurentQ, MultiPoly};
use crate::linkpattern::{enumerate_patterns, LinkPattern};

/// Which exchange operator links the components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeOperator {
    /// `Δ_i = (q z_i − q⁻¹ z_{i+1}) ∂_i`.
    QDeformed,
    /// `Δ_i^∞ = z_i ∂_i`, the leading part of `Δ_i` as `τ → ∞`.
    Degenerate,
}

fn q_lin(n: usize, a: (i64, i32, usize), b: (i64, i32, usize)) -> MultiPoly {
    let term = |(c, e, k): (i64, i32, usize)| {
        let mut exps = vec![0u32; n];
        if k > 0 {
            exps[k - 1] = 1;
        }
        MultiPoly::monomial(n, &exps, &LaurentQ::monomial(Int::small(c), e))
    };
    &term(a) + &term(b)
}

fn q_pair(n: usize, c1: (i64, i32), c2: (i64, i32), i: usize, j: usize) -> MultiPoly {
    let mut exps = vec![0u32; n];
    exps[i - 1] = 1;
    exps[j - 1] = 1;
    &MultiPoly::constant(n, &LaurentQ::monomial(Int::small(c1.0), c1.1))
        + &MultiPoly::monomial(n, &exps, &LaurentQ::monomial(Int::small(c2.0), c2.1))
}

/// The component of the fully nested pattern in size `2n`.
pub fn base_component(n: usize) -> MultiPoly {
    let l = 2 * n;
    // Build each half separately and multiply once; the halves share no variable.
    let mut left = MultiPoly::one(l);
    for i in 1..=n {
        for j in i + 1..=n {
            left = &left * &q_lin(l, (1, 1, i), (-1, -1, j));
            left = &left * &q_pair(l, (1, 1), (-1, -1), i, j);
        }
    }
    let mut right = MultiPoly::one(l);
    for i in n + 1..=l {
        for j in i + 1..=l {
            right = &right * &q_lin(l, (1, 1, i), (-1, -1, j));
            right = &right * &q_pair(l, (-1, 2), (1, -2), i, j);
        }
    }
    &left * &right
}

/// `z_1^{n−1} z_2^{n−2} ⋯ z_{n−1} · z_{n+1}^{n−1} ⋯ z_{2n−1}`.
pub fn degenerate_base_component(n: usize) -> MultiPoly {
    let l = 2 * n;
    let mut exps = vec![0u32; l];
    for k in 1..n {
        exps[k - 1] = (n - k) as u32;
        exps[n + k - 1] = (n - k) as u32;
    }
    MultiPoly::monomial(l, &exps, &LaurentQ::one())
}

pub fn delta(i: usize, p: &MultiPoly) -> Result<MultiPoly, QkzError> {
    Ok(p.linear_times_divided_difference(i, (&Int::ONE, 1), (&Int::small(-1), -1))?)
}

pub fn delta_infinity(i: usize, p: &MultiPoly) -> Result<MultiPoly, QkzError> {
    Ok(p.linear_times_divided_difference(i, (&Int::ONE, 0), (&Int::ZERO, 0))?)
}

impl ExchangeOperator {
    pub fn apply(self, i: usize, p: &MultiPoly) -> Result<MultiPoly, QkzError> {
        match self {
            ExchangeOperator::QDeformed => delta(i, p),
            ExchangeOperator::Degenerate => delta_infinity(i, p),
        }
    }
}

/// The exchange relations `Σ_{π'} Ψ_{π'} = Δ_i Ψ_π`, one per pattern `π`
/// with an arc `(i, i+1)`; `π'` runs over the other patterns sent to `π` by `e_i`.
#[derive(Debug, Clone)]
pub struct Relations {
    pub patterns: Vec<LinkPattern>,
    /// `(π, i, preimages of π under e_i)`, as indices into `patterns`.
    pub relations: Vec<(usize, usize, Vec<usize>)>,
    preimages: Vec<Vec<Vec<usize>>>,
}

impl Relations {
    pub fn new(l: usize) -> Result<Self, QkzError> {
        let patterns = enumerate_patterns(l);
        let index = |p: &LinkPattern| {
            patterns
                .iter()
                .position(|x| x == p)
                .expect("closed under e_i")
        };
        let mut pre: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); l]; patterns.len()];
        for (k, p) in patterns.iter().enumerate() {
            for i in 1..l {
                let (img, looped) = p.tl_apply(i)?;
                if !looped {
                    pre[index(&img)][i].push(k);
                }
            }
        }
        let mut relations = Vec::new();
        for (k, p) in patterns.iter().enumerate() {
            for i in 1..l {
                if p.has_arc(i, i + 1) {
                    relations.push((k, i, pre[k][i].clone()));
                }
            }
        }
        Ok(Relations {
            patterns,
            relations,
            preimages: pre,
        })
    }

    /// Indices of the patterns other than `patterns[k]` sent to it by `e_i`.
    pub fn preimages(&self, k: usize, i: usize) -> &[usize] {
        &self.preimages[k][i]
    }
}

/// The full solution for even `l`.
pub fn solve(l: usize) -> Result<FullSolution, QkzError> {
    solve_with(l, ExchangeOperator::QDeformed, base_component(l / 2))
}

/// The `q → ∞` limit of the system, with base `z_1^{n−1}⋯`. Components grow
/// by one power of `q` per box removed, so a relation at `π` only keeps the
/// preimages with one box less than `π`.
pub fn solve_degenerate(l: usize) -> Result<FullSolution, QkzError> {
    solve_with(
        l,
        ExchangeOperator::Degenerate,
        degenerate_base_component(l / 2),
    )
}

fn solve_with(l: usize, op: ExchangeOperator, base: MultiPoly) -> Result<FullSolution, QkzError> {
    if l == 0 || l % 2 == 1 {
        return Err(QkzError::BadSize(l));
    }
    let rel = Relations::new(l)?;
    let n_pat = rel.patterns.len();
    let nested = LinkPattern::fully_nested(l);
    let start = rel
        .patterns
        .iter()
        .position(|p| *p == nested)
        .expect("present");
    let mut comps: Vec<Option<MultiPoly>> = vec![None; n_pat];
    comps[start] = Some(base);
    let boxes: Vec<usize> = rel.patterns.iter().map(LinkPattern::box_count).collect();
    let relations: Vec<(usize, usize, Vec<usize>)> = match op {
        ExchangeOperator::QDeformed => rel.relations.clone(),
        ExchangeOperator::Degenerate => rel
            .relations
            .iter()
            .map(|(p, i, pre)| {
                let kept = pre
                    .iter()
                    .copied()
                    .filter(|&k| boxes[k] + 1 == boxes[*p])
                    .collect();
                (*p, *i, kept)
            })
            .collect(),
    };
    let mut used = vec![false; relations.len()];
    loop {
        let mut progress = false;
        for (r, (p, i, pre)) in relations.iter().enumerate() {
            if used[r] {
                continue;
            }
            let Some(psi) = &comps[*p] else { continue };
            let unknown: Vec<usize> = pre
                .iter()
                .copied()
                .filter(|&k| comps[k].is_none())
                .collect();
            if unknown.len() > 1 {
                continue;
            }
            used[r] = true;
            let Some(&target) = unknown.first() else {
                continue;
            };
            let mut val = op.apply(*i, psi)?;
            for &k in pre {
                if k != target {
                    val = &val - comps[k].as_ref().expect("known");
                }
            }
            comps[target] = Some(val);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    if comps.iter().any(Option::is_none) {
        let unresolved = rel
            .patterns
            .iter()
            .zip(&comps)
            .filter(|(_, c)| c.is_none())
            .map(|(p, _)| p.clone())
            .collect();
        return Err(QkzError::Stalled { unresolved });
    }
    Ok(FullSolution {
        size: l,
        patterns: rel.patterns,
        components: comps.into_iter().map(|c| c.expect("checked")).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        let n = 3;
        let c = MultiPoly::constant(n, &LaurentQ::q_pow(2));
        assert!(delta(1, &c).unwrap().is_zero());
        let sym = &MultiPoly::var(n, 1) * &MultiPoly::var(n, 2);
        assert!(delta(1, &sym).unwrap().is_zero());
        let want = q_lin(n, (1, 1, 1), (-1, -1, 2));
        assert_eq!(delta(1, &MultiPoly::var(n, 1)).unwrap(), want);
    }

    #[test]
    fn delta_matches_definition() {
        // Δ_i p = (q⁻¹ z_{i+1} − q z_i)(τ_i p − p)/(z_i − z_{i+1}), computed
        // with the general exact division.
        let p = base_component(2);
        for i in 1..4 {
            let anti = &p.swap_vars(i).unwrap() - &p;
            let den = &MultiPoly::var(4, i) - &MultiPoly::var(4, i + 1);
            let pref = q_lin(4, (1, -1, i + 1), (-1, 1, i));
            let want = &pref * &anti.exact_divide(&den).unwrap();
            assert_eq!(delta(i, &p).unwrap(), want);
        }
    }

    #[test]
    fn base_small() {
        assert_eq!(base_component(1), MultiPoly::one(2));
        let b = base_component(2);
        let want = &(&q_lin(4, (1, 1, 1), (-1, -1, 2)) * &q_pair(4, (1, 1), (-1, -1), 1, 2))
            * &(&q_lin(4, (1, 1, 3), (-1, -1, 4)) * &q_pair(4, (-1, 2), (1, -2), 3, 4));
        assert_eq!(b, want);
        assert_eq!(degenerate_base_component(3).degree_in(1), Some(2));
    }

    #[test]
    fn solve_small_sizes() {
        for l in [2, 4, 6] {
            let s = solve(l).unwrap();
            assert_eq!(s.components.len(), s.patterns.len());
        }
        assert!(matches!(solve(3), Err(QkzError::BadSize(3))));
    }

    /// The part of `p` carrying the highest power of `q`, with `q` set to 1.
    fn top_q_part(p: &MultiPoly) -> MultiPoly {
        let top = p
            .terms()
            .filter_map(|t| t.coeff.high_degree())
            .max()
            .unwrap();
        let terms = p
            .terms()
            .map(|t| (t.exponents.clone(), 0, t.coeff.coeff(top)))
            .filter(|t| !t.2.is_zero());
        MultiPoly::from_terms(p.nvars(), terms.collect::<Vec<_>>())
    }

    #[test]
    fn degenerate_solution_is_leading_q_part() {
        for l in [2, 4, 6] {
            let s = solve(l).unwrap();
            let d = solve_degenerate(l).unwrap();
            let sign = if (l / 2) * (l / 2 - 1) / 2 % 2 == 0 {
                1
            } else {
                -1
            };
            for (full, deg) in s.components.iter().zip(&d.components) {
                let want = if sign == 1 { deg.clone() } else { -deg.clone() };
                assert_eq!(top_q_part(full), want);
            }
        }
    }
}
