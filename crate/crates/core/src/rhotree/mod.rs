//! The tree `T(ρ₀)` of restricted code functions `ρ₀(·,β)↾α` over a finite
//! arena, ordered by inclusion.
//!
//! Code functions at limit levels have infinite domains, so nodes are
//! compared on finite probe sets: a disagreement is a sound witness, an
//! agreement is only "equal on probes". Callers that need equality escalate
//! the probe budget before trusting it.

mod arena;
mod view;
mod witness;

pub use arena::{build_arena, build_arena_with, Arena, ArenaBuilder, ArenaConfig};
pub use view::{
    check_nonsplitting, node, regressive_r, tree_leq, NonSplittingReport, SplitViolation, TreeView, Verdict,
};
pub use witness::{
    chain_signatures, fragment, regressive_witness, verify_witness, Fragment, WitnessData, WitnessReport,
};

use crate::ordinal::Ordinal;
use crate::walks::WalkError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RhoTreeError {
    #[error("arena closure exceeds the cap of {cap} ordinals")]
    Overflow { cap: usize },
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("level {0} is not a limit above ω, so the regressive map is undefined there")]
    NotInD(Ordinal),
    #[error("code of ρ₀ at level {level} does not fit in 64 bits")]
    CodeTooLarge { level: Ordinal },
    #[error("node source {beta} lies below its level {level}")]
    SourceBelowLevel { level: Ordinal, beta: Ordinal },
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
}

/// A node `ρ₀(·,source)↾level`. Nodes returned by [`node`] are canonical:
/// `source` is the least arena member at or above `level` that agrees with
/// the given representative on the probes of `level`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeNode {
    pub level: Ordinal,
    pub source: Ordinal,
}

impl TreeNode {
    /// The restriction of `ρ₀(·,source)` to `level`, not canonicalized.
    pub fn restriction(level: Ordinal, source: Ordinal) -> Self {
        TreeNode { level, source }
    }

    pub fn is_root(&self) -> bool {
        self.level.is_zero()
    }
}

impl core::fmt::Display for TreeNode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}@{}", self.level, self.source)
    }
}
