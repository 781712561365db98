//! Desk-scale combinatorics of walks on ordinals and finite forcing posets.
//!
//! * [`ordinal`]: Cantor normal form arithmetic below ε₀ and sequence codes.
//! * [`cseq`], [`walks`], [`rhotree`]: C-sequences, walks with their full
//!   codes ρ₀, and the tree of restricted code functions with its regressive
//!   map.
//! * [`poset`]: finite partial orders, regular suborders, reducts and
//!   support products.
//! * [`specforcing`]: the specialization forcing on finite trees and the
//!   linked counterexample poset, with reduct refuters.
//! * [`refine`]: Δ-systems and the compatible-refinement pipelines.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod cseq;
pub mod ordinal;
pub mod poset;
pub mod refine;
pub mod rhotree;
pub mod specforcing;
pub mod walks;

mod clique;
mod fnv;

pub use ordinal::Ordinal;
