//! Conversion between symmetric Laurent polynomials in `q` and polynomials
//! in `τ = −q − q⁻¹`.

use alloc::vec::Vec;

use super::{ExactAlgError, Int, LaurentQ, TauPoly};

/// `p_k = q^k + q^{−k}` as a polynomial in `τ`, for `k ≥ 1`, with `p_0 = 2`.
fn power_sums(max: usize) -> Vec<TauPoly> {
    let mut p = Vec::with_capacity(max + 1);
    p.push(TauPoly::constant(Int::small(2)));
    if max >= 1 {
        p.push(-TauPoly::tau());
    }
    for k in 1..max {
        let next = &(&(-TauPoly::tau()) * &p[k]) - &p[k - 1];
        p.push(next);
    }
    p
}

/// Rewrites a `q ↔ q⁻¹` symmetric Laurent polynomial as a polynomial in `τ`.
pub fn laurent_to_tau(p: &LaurentQ) -> Result<TauPoly, ExactAlgError> {
    if !p.is_symmetric() {
        return Err(ExactAlgError::NotSymmetric);
    }
    let Some(top) = p.high_degree() else {
        return Ok(TauPoly::zero());
    };
    let ps = power_sums(top as usize);
    let mut acc = TauPoly::constant(p.coeff(0));
    for k in 1..=top {
        let c = p.coeff(k);
        if !c.is_zero() {
            acc = &acc + &ps[k as usize].scale(&c);
        }
    }
    Ok(acc)
}

/// Substitutes `τ = −q − q⁻¹`.
pub fn tau_to_laurent(p: &TauPoly) -> LaurentQ {
    let tau = -(&LaurentQ::q_pow(1) + &LaurentQ::q_pow(-1));
    let mut acc = LaurentQ::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &tau) + &LaurentQ::constant(c.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let q = LaurentQ::q_pow;
        let sum = &q(1) + &q(-1);
        assert_eq!(laurent_to_tau(&sum).unwrap(), TauPoly::from_i64s(&[0, -1]));
        let s2 = &(&q(2) + &q(-2)) + &LaurentQ::constant(Int::small(1));
        // q² + 1 + q⁻² = τ² − 1
        assert_eq!(
            laurent_to_tau(&s2).unwrap(),
            TauPoly::from_i64s(&[-1, 0, 1])
        );
        assert_eq!(laurent_to_tau(&q(1)), Err(ExactAlgError::NotSymmetric));
        let d4 = LaurentQ::q_minus_qinv().pow(4);
        let t = laurent_to_tau(&d4).unwrap();
        assert_eq!(tau_to_laurent(&t), d4);
    }
}
