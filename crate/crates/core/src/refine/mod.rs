//! Compatible refinements: Δ-systems, the support-product pipeline and the
//! Knaster pipeline for specialization conditions.

mod delta;
mod knaster;
mod product;

use alloc::vec::Vec;

pub use delta::{delta_system, is_delta_system, DeltaSystem, EXHAUSTIVE_LIMIT};
pub use knaster::{knaster_refinement, Fingerprint, KnasterCondition, KnasterTrace};
pub use product::{compatible_refinement_product, product_coloring, ColoringTable, ProductTrace, PRODUCT_CLIQUE_CAP};

use crate::specforcing::TreeWitnessViolation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefineError {
    #[error("no two conditions are compatible")]
    Empty,
    #[error("witness is invalid: {0:?}")]
    WitnessInvalid(Vec<TreeWitnessViolation>),
    #[error("tree splits at level {level} (node {node})")]
    SplittingDetected { level: u32, node: usize },
    #[error("condition {0} sits at a level outside the witness levels")]
    LevelNotInS(usize),
    #[error("condition {0} is not a valid specializing condition")]
    InvalidCondition(usize),
    #[error("condition {0} is not in the product")]
    OutOfRange(usize),
    #[error("refinement produced incompatible conditions {0} and {1}")]
    NotCompatible(usize, usize),
}

/// One grouping pass: a partition of the positions still in play, and the
/// group carried forward.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StageTrace {
    pub name: alloc::string::String,
    pub groups: Vec<Vec<usize>>,
    pub selected: usize,
}

impl StageTrace {
    pub fn selected_group(&self) -> &[usize] {
        &self.groups[self.selected]
    }
}
