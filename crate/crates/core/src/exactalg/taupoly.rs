//! Dense univariate integer polynomials in the loop weight `τ = −q − q⁻¹`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Int, Ring};

/// Parity of a polynomial in `τ` under `τ ↦ −τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
    /// The zero polynomial, which is both even and odd.
    Zero,
}

/// Ascending coefficient list; the last stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TauPoly {
    coeffs: Vec<Int>,
}

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly::default()
    }

    pub fn one() -> Self {
        TauPoly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Self {
        TauPoly::from_coeffs(vec![c])
    }

    /// `τ`.
    pub fn tau() -> Self {
        TauPoly::monomial(Int::ONE, 1)
    }

    /// `c · τ^k`.
    pub fn monomial(c: Int, k: usize) -> Self {
        let mut coeffs = vec![Int::ZERO; k + 1];
        coeffs[k] = c;
        TauPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Int::is_zero) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        TauPoly::from_coeffs(coeffs.iter().map(|&c| Int::small(c)).collect())
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or(Int::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power present; `None` stands for the `−∞` degree of zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power present; `None` stands for the `+∞` valuation of zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of the lowest power, i.e. the `τ → 0` leading coefficient.
    pub fn lowest_coeff(&self) -> Option<&Int> {
        self.valuation().map(|v| &self.coeffs[v])
    }

    pub fn leading_coeff(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn parity(&self) -> Parity {
        let even = self.coeffs.iter().step_by(2).any(|c| !c.is_zero());
        let odd = self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero());
        match (even, odd) {
            (false, false) => Parity::Zero,
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, tau: &Int) -> Int {
        let mut acc = Int::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * tau) + c;
        }
        acc
    }

    /// The polynomial `P(−τ)`.
    pub fn reflect(&self) -> Self {
        TauPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Int) -> Self {
        TauPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `τ^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return TauPoly::zero();
        }
        let mut coeffs = vec![Int::ZERO; k];
        coeffs.extend(self.coeffs.iter().cloned());
        TauPoly { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = TauPoly::one();
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Quotient in `Z[τ]` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &TauPoly) -> Option<TauPoly> {
        let dd = d.degree()?;
        let Some(sd) = self.degree() else {
            return Some(TauPoly::zero());
        };
        if sd < dd {
            return None;
        }
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Int::ZERO; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let t = top.div_exact(lead)?;
            for (j, c) in d.coeffs.iter().enumerate() {
                let prod = &t * c;
                rem[k + j] -= &prod;
            }
            quot[k] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(TauPoly::from_coeffs(quot))
    }
}

impl<'a> Add<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &'a TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Int::ZERO; n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] += c;
        }
        TauPoly::from_coeffs(out)
    }
}

impl<'a> Sub<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &'a TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Int::ZERO; n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] -= c;
        }
        TauPoly::from_coeffs(out)
    }
}

impl<'a> Mul<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: &'a TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let mut out = vec![Int::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        TauPoly::from_coeffs(out)
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        -&self
    }
}

impl Add for TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: TauPoly) -> TauPoly {
        &self + &rhs
    }
}

impl Sub for TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: TauPoly) -> TauPoly {
        &self - &rhs
    }
}

impl Mul for TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: TauPoly) -> TauPoly {
        &self * &rhs
    }
}

impl core::iter::Sum for TauPoly {
    fn sum<I: Iterator<Item = TauPoly>>(iter: I) -> TauPoly {
        iter.fold(TauPoly::zero(), |acc, p| &acc + &p)
    }
}

impl Ring for TauPoly {
    fn zero() -> Self {
        TauPoly::zero()
    }
    fn one() -> Self {
        TauPoly::one()
    }
    fn is_zero(&self) -> bool {
        TauPoly::is_zero(self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        TauPoly::div_exact(self, d)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            super::write_term(f, c, "τ", k as i64, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn square_of_one_plus_tau() {
        let p = TauPoly::from_i64s(&[1, 1]);
        assert_eq!(&p * &p, TauPoly::from_i64s(&[1, 2, 1]));
        assert_eq!((&p * &p).to_string(), "1 + 2τ + τ^2");
    }

    #[test]
    fn degree_conventions() {
        let z = TauPoly::zero();
        assert_eq!(z.degree(), None);
        assert_eq!(z.valuation(), None);
        assert_eq!(z.parity(), Parity::Zero);
        let p = TauPoly::from_i64s(&[0, 0, 2, 0, 1]);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.lowest_coeff(), Some(&Int::small(2)));
        assert_eq!(p.parity(), Parity::Even);
        assert_eq!(TauPoly::from_i64s(&[0, 1, 0, 3]).parity(), Parity::Odd);
        assert_eq!(TauPoly::from_i64s(&[1, 1]).parity(), Parity::Mixed);
    }

    #[test]
    fn exact_division_and_eval() {
        let a = TauPoly::from_i64s(&[1, 3, 7, 6, 6, 2, 1]);
        let b = TauPoly::from_i64s(&[2, -1, 5]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&TauPoly::from_i64s(&[0, 2])), None);
        assert_eq!(a.eval(&Int::ONE), Int::small(26));
        assert_eq!(a.eval(&Int::small(-1)), Int::small(4));
        assert_eq!(a.reflect().eval(&Int::ONE), Int::small(4));
    }
}
