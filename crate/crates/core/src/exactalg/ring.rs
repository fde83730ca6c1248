use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use super::Int;

/// A commutative ring with exact division, as needed by fraction-free
/// elimination. `div_exact` returns `None` when the divisor does not
/// divide the dividend.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Ring for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn one() -> Self {
        Int::ONE
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Int::div_exact(self, d)
    }
}
