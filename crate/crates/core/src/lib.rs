//! Exact combinatorics for uniform-witness set families.
//!
//! A family `𝓕 ⊆ C([n], d+1)` is an *`s`-witness family* when every member
//! `F` has a size-`s` subset `B_F` that is never equal to `F ∩ F'` for a
//! member `F'`. The crate verifies that property, reduces a family to its
//! per-witness sunflower models, builds the named constructions and searches
//! for extremal families at small `n`.

pub mod constructions;
pub mod error;
pub mod family;
pub mod search;
pub mod structure;
pub mod witness;

pub use error::{Error, Result};
pub use family::{binomial, canonicalize, k_subsets, Element, ElementSet, GroundParams, SetFamily};
pub use witness::{WitnessAssignment, WitnessVerdict};
