//! τ-weighted enumeration of non-intersecting lattice path families with
//! vertical `(0,1)` and diagonal `(1,1)` steps: TSSCPPs, the paired families
//! behind CSTCPPs and holed-hexagon VSASM tilings, and an exhaustive oracle.

mod bruteforce;
mod counts;

use alloc::vec::Vec;

use crate::exactalg::{binomial, ExactAlgError, Int, RingMatrix, TauPoly};
use crate::linkpattern::EndpointTuple;

pub use crate::linkpattern::admissible_endpoints;
pub use bruteforce::{brute_force, paired_sum, BRUTE_FORCE_MAX_N};
pub use counts::{av_product, counts, n10_product, n8_product, Counts};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NilpError {
    #[error("brute force limited to n <= {max}, got {n}")]
    SizeLimit { n: usize, max: usize },
    #[error("{family}: pair-sum and single-determinant forms differ at n = {n}")]
    MismatchedForms { family: &'static str, n: usize },
    #[error("{quantity}: routes disagree at n = {n}")]
    RouteMismatch { quantity: &'static str, n: usize },
    #[error(transparent)]
    Exact(#[from] ExactAlgError),
}

/// Starting data of a path family; path `i` runs from `(i, −s_i)` to the
/// line `y = 0` in `s_i` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathVariant {
    /// `s_i = i`.
    Tsscpp,
    /// Same paths as [`Tsscpp`](Self::Tsscpp), used as the second half of a
    /// CSTCPP pair.
    SecondCstcpp,
    /// `s_i = i + 1`.
    SecondVsasm,
    /// `s_i = i − 1`.
    Short,
}

impl PathVariant {
    pub fn length(self, i: usize) -> usize {
        match self {
            PathVariant::Tsscpp | PathVariant::SecondCstcpp => i,
            PathVariant::SecondVsasm => i + 1,
            PathVariant::Short => i - 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightRule {
    /// `τ` per vertical step.
    AllVertical,
    /// `τ` per vertical step other than the final step of each path.
    LastStepFree,
    /// `τ` per diagonal step.
    AllDiagonal,
}

/// `c · τ^e`; the exponent only matters when `c ≠ 0`.
fn weighted(e: i64, c: Int) -> TauPoly {
    if c.is_zero() {
        return TauPoly::zero();
    }
    assert!(e >= 0, "negative power of tau with nonzero coefficient");
    TauPoly::monomial(c, e as usize)
}

fn b(n: usize, k: i64) -> Int {
    binomial(n as i64, k)
}

/// `(n−1) × (2n−2)` matrix with entries `f(i, r)`, both indices from 1.
fn path_matrix(n: usize, f: impl Fn(usize, usize) -> TauPoly) -> RingMatrix<TauPoly> {
    let m = n.saturating_sub(1);
    RingMatrix::from_fn(m, 2 * m, |i, r| f(i + 1, r + 1))
}

/// `τ^{2i−r} C(i, r−i)`.
pub fn tsscpp_matrix(n: usize) -> RingMatrix<TauPoly> {
    path_matrix(n, |i, r| {
        weighted(2 * i as i64 - r as i64, b(i, r as i64 - i as i64))
    })
}

/// `τ^{2i−r} C(i−1, r−i−1) + τ^{2i−r−1} C(i−1, r−i)`.
pub fn second_cstcpp_matrix(n: usize) -> RingMatrix<TauPoly> {
    path_matrix(n, |i, r| {
        let (i, r) = (i as i64, r as i64);
        let last_diag = weighted(2 * i - r, binomial(i - 1, r - i - 1));
        let last_vert = weighted(2 * i - r - 1, binomial(i - 1, r - i));
        &last_diag + &last_vert
    })
}

/// `τ^{2i−r+1} C(i, r−i−1) + τ^{2i−r} C(i, r−i)`.
pub fn second_vsasm_matrix(n: usize) -> RingMatrix<TauPoly> {
    path_matrix(n, |i, r| {
        let (i, r) = (i as i64, r as i64);
        let last_diag = weighted(2 * i - r + 1, binomial(i, r - i - 1));
        let last_vert = weighted(2 * i - r, binomial(i, r - i));
        &last_diag + &last_vert
    })
}

fn minor(a: &RingMatrix<TauPoly>, t: &[usize]) -> Result<TauPoly, NilpError> {
    let rows: Vec<usize> = (0..a.rows()).collect();
    let cols: Vec<usize> = t.iter().map(|r| r - 1).collect();
    Ok(a.select(&rows, &cols).det()?)
}

/// `Σ_t det(a|_t) · det(b|_t)` over admissible tuples `t`.
fn minor_pair_sum(
    n: usize,
    a: &RingMatrix<TauPoly>,
    b: &RingMatrix<TauPoly>,
) -> Result<TauPoly, NilpError> {
    let mut acc = TauPoly::zero();
    for t in admissible_endpoints(n) {
        let x = minor(a, t.values())?;
        if x.is_zero() {
            continue;
        }
        acc = &acc + &(&x * &minor(b, t.values())?);
    }
    Ok(acc)
}

/// TSSCPPs with endpoints `t`, weighted by `τ` per vertical step.
pub fn refined_tsscpp(t: &EndpointTuple) -> TauPoly {
    minor(&tsscpp_matrix(t.n()), t.values()).expect("square minor")
}

/// Refined TSSCPP polynomials over [`admissible_endpoints`] in order.
pub fn theta_vector(n: usize) -> Vec<TauPoly> {
    let a = tsscpp_matrix(n);
    admissible_endpoints(n)
        .iter()
        .map(|t| minor(&a, t.values()).expect("square minor"))
        .collect()
}

pub fn n10_tau(n: usize) -> TauPoly {
    theta_vector(n).into_iter().sum()
}

pub fn n8_tau_pair_sum(n: usize) -> Result<TauPoly, NilpError> {
    minor_pair_sum(n, &tsscpp_matrix(n), &second_cstcpp_matrix(n))
}

/// `det_{i,j} Σ_r τ^{2j−r} C(j, 2j−r) {τ^{2i−r} C(i−1, 2i−r) + τ^{2i−r−1} C(i−1, 2i−r−1)}`.
pub fn n8_tau_single_det(n: usize) -> Result<TauPoly, NilpError> {
    let m = n.saturating_sub(1) as i64;
    let mat = RingMatrix::from_fn(m as usize, m as usize, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        let mut acc = TauPoly::zero();
        for r in 1..=2 * m {
            let left = weighted(2 * j - r, binomial(j, 2 * j - r));
            if left.is_zero() {
                continue;
            }
            let right = &weighted(2 * i - r, binomial(i - 1, 2 * i - r))
                + &weighted(2 * i - r - 1, binomial(i - 1, 2 * i - r - 1));
            acc = &acc + &(&left * &right);
        }
        acc
    });
    Ok(mat.det()?)
}

/// `N_8(2n; τ)`, computed both as a sum over endpoints and as one determinant.
pub fn n8_tau(n: usize) -> Result<TauPoly, NilpError> {
    let a = n8_tau_pair_sum(n)?;
    if a != n8_tau_single_det(n)? {
        return Err(NilpError::MismatchedForms { family: "N8", n });
    }
    Ok(a)
}

pub fn av_tau_pair_sum(n: usize) -> Result<TauPoly, NilpError> {
    minor_pair_sum(n, &tsscpp_matrix(n), &second_vsasm_matrix(n))
}

/// `det_{i,j} Σ_r τ^{2i−r} C(i, 2i−r) {τ^{2j−r+1} C(j, 2j−r+1) + τ^{2j−r} C(j, 2j−r)}`.
pub fn av_tau_single_det(n: usize) -> Result<TauPoly, NilpError> {
    let m = n.saturating_sub(1) as i64;
    let mat = RingMatrix::from_fn(m as usize, m as usize, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        let mut acc = TauPoly::zero();
        for r in 1..=2 * m {
            let left = weighted(2 * i - r, binomial(i, 2 * i - r));
            if left.is_zero() {
                continue;
            }
            let right = &weighted(2 * j - r + 1, binomial(j, 2 * j - r + 1))
                + &weighted(2 * j - r, binomial(j, 2 * j - r));
            acc = &acc + &(&left * &right);
        }
        acc
    });
    Ok(mat.det()?)
}

/// `A_V(2n+1; τ)`, computed both as a sum over endpoints and as one determinant.
pub fn av_tau(n: usize) -> Result<TauPoly, NilpError> {
    let a = av_tau_pair_sum(n)?;
    if a != av_tau_single_det(n)? {
        return Err(NilpError::MismatchedForms { family: "AV", n });
    }
    Ok(a)
}

/// The three enumerated families, each a TSSCPP family possibly paired
/// with a second half sharing its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Tsscpp,
    Cstcpp,
    Vsasm,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Tsscpp => "tsscpp",
            Family::Cstcpp => "cstcpp",
            Family::Vsasm => "vsasm",
        }
    }

    fn second_half(self, n: usize) -> Option<RingMatrix<TauPoly>> {
        match self {
            Family::Tsscpp => None,
            Family::Cstcpp => Some(second_cstcpp_matrix(n)),
            Family::Vsasm => Some(second_vsasm_matrix(n)),
        }
    }

    /// `N_10(2n; τ)`, `N_8(2n; τ)` or `A_V(2n+1; τ)`.
    pub fn total(self, n: usize) -> Result<TauPoly, NilpError> {
        match self {
            Family::Tsscpp => Ok(n10_tau(n)),
            Family::Cstcpp => n8_tau(n),
            Family::Vsasm => av_tau(n),
        }
    }

    /// Contribution of each admissible tuple: `Θ_t`, or `Θ_t` times the
    /// second-half minor for paired families.
    pub fn refined(self, n: usize) -> Result<Vec<(EndpointTuple, TauPoly)>, NilpError> {
        let first = tsscpp_matrix(n);
        let second = self.second_half(n);
        admissible_endpoints(n)
            .into_iter()
            .map(|t| {
                let mut v = minor(&first, t.values())?;
                if let Some(b) = &second {
                    v = &v * &minor(b, t.values())?;
                }
                Ok((t, v))
            })
            .collect()
    }
}

/// Conjectured component of the pattern joining `2i−1` to `2i`, or for odd
/// `l` with `reflected` set, of its mirror image leaving point 1 unmatched.
pub fn max_component_formula(l: usize, reflected: bool) -> TauPoly {
    assert!(l >= 1, "size must be positive");
    let n = l.div_ceil(2);
    let (a, b) = if l % 2 == 0 {
        (tsscpp_matrix(n), tsscpp_matrix(n))
    } else if !reflected {
        (
            tsscpp_matrix(n),
            path_matrix(n, |i, r| {
                let (i, r) = (i as i64, r as i64);
                weighted(2 * i - r - 1, binomial(i - 1, 2 * i - r - 1))
            }),
        )
    } else {
        (
            path_matrix(n, |i, r| {
                weighted(r as i64 - i as i64, b(i, r as i64 - i as i64))
            }),
            path_matrix(n, |i, r| {
                weighted(r as i64 - i as i64, b(i - 1, r as i64 - i as i64))
            }),
        )
    };
    minor_pair_sum(n, &a, &b).expect("square minors")
}
