//! Finite involutive quantaloids and the constructions built on them:
//! residuation and adjoints, the allegory-style predicates, idempotent
//! splitting, quantaloid-enriched categories and distributors, Cauchy and
//! symmetric completion, closed-crible quantaloids of finite sites, and
//! sheaf enumeration up to Morita equivalence.
//!
//! Everything here is `no_std` + `alloc`; values are immutable after
//! construction and all operations are pure.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod completion;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod iso;
pub mod lattice;
pub mod qcat;
pub mod quantaloid;
pub mod sites;

pub use error::{Error, Result};
pub use lattice::{Elt, FiniteSupLattice};
pub use quantaloid::{FiniteQuantaloid, Morphism, Obj};
