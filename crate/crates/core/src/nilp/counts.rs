use alloc::vec::Vec;

use super::{admissible_endpoints, av_tau, n10_tau, n8_tau, NilpError};
use crate::exactalg::{binomial, Int, RingMatrix};

/// `N_10(2n)`, `N_8(2n)` and `A_V(2n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub n: usize,
    pub n10: Int,
    pub n8: Int,
    pub av: Int,
}

fn factorial(k: u64) -> Int {
    (1..=k).fold(Int::ONE, |acc, j| &acc * &Int::from(j))
}

fn ratio(num: Int, den: Int) -> Int {
    num.div_exact(&den).expect("product formula is integral")
}

/// `Π_{i<n} (3i+1)! / (n+i)!`.
pub fn n10_product(n: usize) -> Int {
    let n = n as u64;
    let (mut num, mut den) = (Int::ONE, Int::ONE);
    for i in 0..n {
        num *= &factorial(3 * i + 1);
        den *= &factorial(n + i);
    }
    ratio(num, den)
}

/// `Π_{i<n} (3i+1) (6i)! (2i)! / ((4i+1)! (4i)!)`.
pub fn n8_product(n: usize) -> Int {
    let (mut num, mut den) = (Int::ONE, Int::ONE);
    for i in 0..n as u64 {
        num *= &(&Int::from(3 * i + 1) * &(&factorial(6 * i) * &factorial(2 * i)));
        den *= &(&factorial(4 * i + 1) * &factorial(4 * i));
    }
    ratio(num, den)
}

/// `Π_{1≤i≤n} (3i−1) (6i−3)! (2i−1)! / ((4i−1)! (4i−2)!)`.
pub fn av_product(n: usize) -> Int {
    let (mut num, mut den) = (Int::ONE, Int::ONE);
    for i in 1..=n as u64 {
        num *= &(&Int::from(3 * i - 1) * &(&factorial(6 * i - 3) * &factorial(2 * i - 1)));
        den *= &(&factorial(4 * i - 1) * &factorial(4 * i - 2));
    }
    ratio(num, den)
}

fn binomial_det(n: usize, f: impl Fn(i64, i64) -> Int) -> Result<Int, NilpError> {
    let m = n.saturating_sub(1);
    Ok(RingMatrix::from_fn(m, m, |i, j| f(i as i64 + 1, j as i64 + 1)).det()?)
}

/// `Σ_t det(C(i, r_j−i)) · det(C(i+s, r_j−i))` over admissible `t`.
fn minor_sum(n: usize, s: i64) -> Result<Int, NilpError> {
    let m = n.saturating_sub(1);
    let mut acc = Int::ZERO;
    for t in admissible_endpoints(n) {
        let r: Vec<i64> = t.values().iter().map(|&r| r as i64).collect();
        let a =
            RingMatrix::from_fn(m, m, |i, j| binomial(i as i64 + 1, r[j] - i as i64 - 1)).det()?;
        if a.is_zero() {
            continue;
        }
        let b = RingMatrix::from_fn(m, m, |i, j| binomial(i as i64 + 1 + s, r[j] - i as i64 - 1))
            .det()?;
        acc += &(&a * &b);
    }
    Ok(acc)
}

fn agree(quantity: &'static str, n: usize, routes: &[Int]) -> Result<Int, NilpError> {
    if routes.windows(2).any(|w| w[0] != w[1]) {
        return Err(NilpError::RouteMismatch { quantity, n });
    }
    Ok(routes[0].clone())
}

/// Every count by each available route; any disagreement is an error.
pub fn counts(n: usize) -> Result<Counts, NilpError> {
    let one = Int::ONE;
    let n10 = agree("N10", n, &[n10_product(n), n10_tau(n).eval(&one)])?;
    let n8 = agree(
        "N8",
        n,
        &[
            n8_product(n),
            binomial_det(n, |i, j| binomial(i + j, 2 * i - j))?,
            minor_sum(n, 0)?,
            n8_tau(n)?.eval(&one),
        ],
    )?;
    let av = agree(
        "AV",
        n,
        &[
            av_product(n),
            binomial_det(n, |i, j| binomial(i + j + 1, 2 * i - j))?,
            minor_sum(n, 1)?,
            av_tau(n)?.eval(&one),
        ],
    )?;
    Ok(Counts { n, n10, n8, av })
}
