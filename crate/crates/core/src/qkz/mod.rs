//! Minimal polynomial solution of the open-boundary qKZ system in the
//! link-pattern basis, its verification, and its homogeneous specialization.

mod homogeneous;
mod solve;
mod verify;

use alloc::vec::Vec;

use crate::exactalg::{ExactAlgError, MultiPoly, TauPoly};
use crate::linkpattern::{LinkPattern, LinkPatternError};

pub use homogeneous::{
    component_stats, global_factor, homogenize, reduce_to_odd, sum_rule, ComponentStats,
    HOMOGENEOUS_SCALE,
};
pub use solve::{
    base_component, degenerate_base_component, delta, delta_infinity, solve, solve_degenerate,
    ExchangeOperator, Relations,
};
pub use verify::{verify_system, CheckKind, SystemCheck, SystemReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QkzError {
    #[error("size {0} not supported here")]
    BadSize(usize),
    #[error("propagation stalled with {} unknown components", .unresolved.len())]
    Stalled { unresolved: Vec<LinkPattern> },
    #[error("normalization failed for {pattern}: {reason}")]
    NormalizationFailure {
        pattern: LinkPattern,
        reason: &'static str,
    },
    #[error("component of {pattern} mixes even and odd powers of tau")]
    MixedParity { pattern: LinkPattern },
    #[error(transparent)]
    Exact(#[from] ExactAlgError),
    #[error(transparent)]
    Pattern(#[from] LinkPatternError),
}

/// Components in the variables `z_1..z_L`, indexed like `patterns`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSolution {
    pub size: usize,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<MultiPoly>,
}

/// Components after `z_i → 1` and removal of the global factor.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSolution {
    pub size: usize,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<TauPoly>,
}

impl FullSolution {
    pub fn component(&self, p: &LinkPattern) -> Option<&MultiPoly> {
        self.patterns
            .iter()
            .position(|x| x == p)
            .map(|k| &self.components[k])
    }
}

impl TauSolution {
    pub fn component(&self, p: &LinkPattern) -> Option<&TauPoly> {
        self.patterns
            .iter()
            .position(|x| x == p)
            .map(|k| &self.components[k])
    }
}
