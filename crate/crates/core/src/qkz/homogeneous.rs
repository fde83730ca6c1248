use alloc::vec::Vec;

use super::{FullSolution, QkzError, TauSolution};
use crate::exactalg::{laurent_to_tau, Assignment, Int, LaurentQ, Parity, TauPoly};

/// Specializes `z_L = 0`, relabelling each component by the pattern with
/// point `L` deleted.
pub fn reduce_to_odd(s: &FullSolution) -> Result<FullSolution, QkzError> {
    let l = s.size;
    if l % 2 == 1 {
        return Err(QkzError::BadSize(l));
    }
    let mut patterns = Vec::with_capacity(s.patterns.len());
    let mut components = Vec::with_capacity(s.patterns.len());
    for (p, psi) in s.patterns.iter().zip(&s.components) {
        patterns.push(p.reduce_even_to_odd()?);
        components.push(
            psi.substitute(&[(l, Assignment::Zero)])
                .truncate_vars(l - 1)?,
        );
    }
    Ok(FullSolution {
        size: l - 1,
        patterns,
        components,
    })
}

/// The factor removed from every component at `z_i = 1`:
/// `(q − q⁻¹)^{2n(n−1)}` for `L = 2n` and `(−q)^{3n−3} (q − q⁻¹)^{2(n−1)²}` for `L = 2n − 1`.
pub fn global_factor(l: usize) -> LaurentQ {
    let n = l.div_ceil(2) as u32;
    let d = LaurentQ::q_minus_qinv();
    if l % 2 == 0 {
        d.pow(2 * n * (n - 1))
    } else {
        let sign = LaurentQ::monomial(Int::small(-1), 1).pow(3 * n - 3);
        &sign * &d.pow(2 * (n - 1) * (n - 1))
    }
}

/// Exposed for serialization of the normalization record.
pub const HOMOGENEOUS_SCALE: &str =
    "z_i = 1; even L=2n: /(q-1/q)^(2n(n-1)); odd L=2n-1: /((-q)^(3n-3) (q-1/q)^(2(n-1)^2))";

pub fn homogenize(s: &FullSolution) -> Result<TauSolution, QkzError> {
    let factor = global_factor(s.size);
    let mut components = Vec::with_capacity(s.components.len());
    for (p, psi) in s.patterns.iter().zip(&s.components) {
        let fail = |reason| QkzError::NormalizationFailure {
            pattern: p.clone(),
            reason,
        };
        let scalar = psi.sum_at_ones();
        let reduced = scalar
            .div_exact(&factor)
            .ok_or_else(|| fail("global factor does not divide"))?;
        let t = laurent_to_tau(&reduced).map_err(|_| fail("not symmetric under q <-> 1/q"))?;
        if !t.is_nonnegative() {
            return Err(fail("negative coefficient"));
        }
        components.push(t);
    }
    Ok(TauSolution {
        size: s.size,
        patterns: s.patterns.clone(),
        components,
    })
}

pub fn sum_rule(t: &TauSolution) -> TauPoly {
    t.components.iter().cloned().sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentStats {
    pub degree: usize,
    pub valuation: usize,
    /// `+1` for even polynomials, `−1` for odd ones.
    pub parity_sign: i8,
}

pub fn component_stats(t: &TauSolution, k: usize) -> Result<ComponentStats, QkzError> {
    let c = &t.components[k];
    let pattern = t.patterns[k].clone();
    let parity_sign = match c.parity() {
        Parity::Even => 1,
        Parity::Odd => -1,
        Parity::Mixed | Parity::Zero => return Err(QkzError::MixedParity { pattern }),
    };
    Ok(ComponentStats {
        degree: c.degree().expect("nonzero"),
        valuation: c.valuation().expect("nonzero"),
        parity_sign,
    })
}
