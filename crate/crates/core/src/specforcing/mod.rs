//! The specialization forcing `P(T)` on a finite tree — finite partial maps
//! from nodes to colours that are injective on chains, ordered by reverse
//! inclusion — and the linked poset of pairs `⟨s, a⟩` whose reducts fail.

mod linked;
mod pt;
mod tree;

pub use linked::{
    build_linked_poset, linked_leq, linked_reduct_refuter, syntactic_incompatible, BitString, LinkedCondition,
    LinkedError, LinkedFragment, LinkedParams,
};
pub use pt::{
    pt_compatible, pt_enumerate, pt_enumerate_capped, pt_union, pt_validate, tree_reduct_refuter, PtError,
    RefuterClause, SpecCondition,
};
pub use tree::{FiniteTree, TreeError, TreeWitness, TreeWitnessViolation};
