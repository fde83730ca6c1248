//! Exact arithmetic: integers, Laurent polynomials in `q`, polynomials in
//! `τ`, multivariate polynomials over `Z[q, q⁻¹]` and matrices over any
//! [`Ring`].

use core::fmt;

mod binomial;
mod int;
mod laurent;
mod matrix;
mod multipoly;
mod ring;
mod tauconv;
mod taupoly;

pub use binomial::binomial;
pub use int::{Int, ParseIntError};
pub use laurent::LaurentQ;
pub use matrix::RingMatrix;
pub use multipoly::{Assignment, MultiPoly, Term, MAX_EXP, MAX_Q_EXP, MAX_VARS};
pub use ring::Ring;
pub use tauconv::{laurent_to_tau, tau_to_laurent};
pub use taupoly::{Parity, TauPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not exact")]
    NotDivisible,
    #[error("variable z{var} still occurs")]
    VariableStillPresent { var: usize },
    #[error("Laurent polynomial is not symmetric under q <-> 1/q")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("Pfaffian of odd dimension {0}")]
    OddDimension(usize),
    #[error("shape mismatch: {0}x{1} times {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
}

/// Writes `c·var^exp` as one term of a sum; `first` suppresses the leading ` + `.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Int,
    var: &str,
    exp: i64,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if exp == 0 {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}")?;
    }
    if exp == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{exp}")
    }
}
