//! Laurent polynomials in the quantum parameter `q`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Int, Ring};

/// `Σ c_k q^k` with `k` ranging over a window of integers (negative allowed).
///
/// Stored densely: `coeffs[j]` is the coefficient of `q^(low + j)`. The first
/// and last stored coefficients are nonzero; the zero polynomial has no
/// coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQ {
    low: i32,
    coeffs: Vec<Int>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        LaurentQ::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Self {
        LaurentQ::monomial(c, 0)
    }

    /// `c · q^exp`.
    pub fn monomial(c: Int, exp: i32) -> Self {
        if c.is_zero() {
            return LaurentQ::zero();
        }
        LaurentQ {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        LaurentQ::monomial(Int::ONE, exp)
    }

    /// `q − q⁻¹`.
    pub fn q_minus_qinv() -> Self {
        LaurentQ::from_terms([(1, Int::ONE), (-1, Int::small(-1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Int)>>(terms: I) -> Self {
        let mut acc = LaurentQ::zero();
        for (e, c) in terms {
            acc.add_term(e, &c);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> Int {
        let idx = exp as i64 - self.low as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Int::ZERO
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Int)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.low + j as i32, c))
    }

    /// Adds `c · q^exp` in place.
    pub fn add_term(&mut self, exp: i32, c: &Int) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.low = exp;
            self.coeffs.push(c.clone());
            return;
        }
        if exp < self.low {
            let pad = (self.low - exp) as usize;
            let mut grown = Vec::with_capacity(pad + self.coeffs.len());
            grown.push(c.clone());
            grown.resize(pad, Int::ZERO);
            grown.append(&mut self.coeffs);
            self.coeffs = grown;
            self.low = exp;
            return;
        }
        let idx = (exp - self.low) as usize;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, Int::ZERO);
        }
        self.coeffs[idx] += c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Int::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return LaurentQ::zero();
        }
        LaurentQ {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return LaurentQ::zero();
        }
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The image under `q ↦ q⁻¹`.
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return LaurentQ::zero();
        }
        let high = self.high_degree().unwrap_or(0);
        LaurentQ {
            low: -high,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    /// True when the polynomial is invariant under `q ↔ q⁻¹`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_q()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = LaurentQ::one();
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Quotient by `d` in `Z[q, q⁻¹]`, if it exists.
    pub fn div_exact(&self, d: &LaurentQ) -> Option<LaurentQ> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentQ::zero());
        }
        // Both operands become ordinary polynomials after factoring out their
        // lowest powers; long division from the top then needs only integer
        // exact division by the leading coefficient of `d`.
        let mut rem: Vec<Int> = self.coeffs.clone();
        let dc = &d.coeffs;
        if rem.len() < dc.len() {
            return None;
        }
        let lead = dc.last().expect("nonzero divisor");
        let qlen = rem.len() - dc.len() + 1;
        let mut quot = vec![Int::ZERO; qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dc.len() - 1];
            if top.is_zero() {
                continue;
            }
            let t = top.div_exact(lead)?;
            for (j, c) in dc.iter().enumerate() {
                let prod = &t * c;
                rem[k + j] -= &prod;
            }
            quot[k] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = LaurentQ {
            low: self.low - d.low,
            coeffs: quot,
        };
        out.trim();
        Some(out)
    }
}

impl<'a> Add<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &'a LaurentQ) -> LaurentQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().unwrap().max(rhs.high_degree().unwrap());
        let mut coeffs = vec![Int::ZERO; (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - low) as usize] += c;
        }
        let mut out = LaurentQ { low, coeffs };
        out.trim();
        out
    }
}

impl<'a> Sub<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &'a LaurentQ) -> LaurentQ {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &'a LaurentQ) -> LaurentQ {
        if self.is_zero() || rhs.is_zero() {
            return LaurentQ::zero();
        }
        let mut coeffs = vec![Int::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        let mut out = LaurentQ {
            low: self.low + rhs.low,
            coeffs,
        };
        out.trim();
        out
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: LaurentQ) -> LaurentQ {
        &self + &rhs
    }
}

impl Sub for LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: LaurentQ) -> LaurentQ {
        &self - &rhs
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        &self * &rhs
    }
}

impl Ring for LaurentQ {
    fn zero() -> Self {
        LaurentQ::zero()
    }
    fn one() -> Self {
        LaurentQ::one()
    }
    fn is_zero(&self) -> bool {
        LaurentQ::is_zero(self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        LaurentQ::div_exact(self, d)
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            super::write_term(f, c, "q", e as i64, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
