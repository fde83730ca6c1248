use alloc::vec::Vec;

use super::{delta, FullSolution, QkzError, Relations};
use crate::exactalg::{Int, LaurentQ, MultiPoly};
use crate::linkpattern::LinkPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `Σ_{e_i π' = π, π' ≠ π} Ψ_{π'} = Δ_i Ψ_π`, for `π` with the arc `(i, i+1)`.
    Exchange(usize),
    /// `τ_i Ψ = Ř_{i,i+1}(z_{i+1}, z_i) Ψ` in the component `π`, with the
    /// denominator cleared:
    /// `(q z_i − q⁻¹ z_{i+1}) τ_i Ψ_π = (q z_{i+1} − q⁻¹ z_i) Ψ_π + (z_{i+1} − z_i) (e_i Ψ)_π`.
    RMatrix(usize),
    /// `z_1^{2n−2} Ψ(1/z_1, z_2, …) = Ψ`.
    LeftBoundary,
    /// `z_L^{2n−2} Ψ(…, q⁶/z_L) = q^{3(2n−2)} Ψ`.
    RightBoundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemCheck {
    pub kind: CheckKind,
    pub pattern: LinkPattern,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport {
    pub size: usize,
    pub checks: Vec<SystemCheck>,
}

impl SystemReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SystemCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks the exchange relations, the R-matrix form of the system in every
/// component, and both boundary conditions, as exact polynomial identities.
pub fn verify_system(s: &FullSolution) -> Result<SystemReport, QkzError> {
    let l = s.size;
    if l % 2 == 1 {
        return Err(QkzError::BadSize(l));
    }
    let rel = Relations::new(l)?;
    if rel.patterns != s.patterns {
        return Err(QkzError::BadSize(l));
    }
    let m = (l - 2) as u32;
    let mut checks = Vec::new();
    let mut push = |kind, pattern: &LinkPattern, passed| {
        checks.push(SystemCheck {
            kind,
            pattern: pattern.clone(),
            passed,
        })
    };
    let one = || Int::ONE;
    let neg = || Int::small(-1);
    for (k, (pat, psi)) in s.patterns.iter().zip(&s.components).enumerate() {
        for i in 1..l {
            let mut others = MultiPoly::zero(l);
            for &j in rel.preimages(k, i) {
                others = &others + &s.components[j];
            }
            let has_arc = pat.has_arc(i, i + 1);
            if has_arc {
                push(CheckKind::Exchange(i), pat, others == delta(i, psi)?);
            }
            // Everything involving Ψ_π on one side, the other preimages on
            // the other; with the loop term τ Ψ_π when the arc is present.
            let lhs = psi.apply_pair_operator(i, |a, b, out| {
                out.push((b + 1, a, 1, one()));
                out.push((b, a + 1, -1, neg()));
                out.push((a, b + 1, 1, neg()));
                out.push((a + 1, b, -1, one()));
                if has_arc {
                    out.push((a, b + 1, 1, one()));
                    out.push((a, b + 1, -1, one()));
                    out.push((a + 1, b, 1, neg()));
                    out.push((a + 1, b, -1, neg()));
                }
            })?;
            let rhs = others.apply_pair_operator(i, |a, b, out| {
                out.push((a, b + 1, 0, one()));
                out.push((a + 1, b, 0, neg()));
            })?;
            push(CheckKind::RMatrix(i), pat, lhs == rhs);
        }
        let left = psi.invert_var(1, m, 0);
        push(CheckKind::LeftBoundary, pat, left.as_ref() == Some(psi));
        let right = psi.invert_var(l, m, 6);
        let want = psi.scale(&LaurentQ::q_pow(3 * m as i32));
        push(CheckKind::RightBoundary, pat, right.as_ref() == Some(&want));
    }
    Ok(SystemReport { size: l, checks })
}
