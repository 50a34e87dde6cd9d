//! Maximal subgroups of the free idempotent generated semigroup `IG(E)` where
//! `E` is the biordered set of idempotents of `End F_n(G)`, the endomorphism
//! monoid of a free `G`-act of rank `n`.
//!
//! The crate builds the rank-`r` D-class of `End F_n(G)` as a Rees matrix
//! structure, writes down presentations for the maximal subgroup of `IG(E)` at
//! a rank-`r` idempotent, reduces them with the connectivity and rising-point
//! machinery, and checks the result against `G ≀ S_r` by coset enumeration.
//!
//! Conventions: maps act on the right and compose left to right; group tables
//! put the identity at index 0; indices are 0-based internally and 1-based in
//! every text format.

pub mod biorder;
pub mod cli;
pub mod endo;
pub mod error;
pub mod fpgroup;
pub mod group;
pub mod presentation;
pub mod reduction;
pub mod rees;
pub mod wreath;

pub use endo::{Endo, KernelData};
pub use error::{Error, Result};
pub use group::{make_group, Elem, Group, GroupSpec, IDENTITY};
pub use presentation::{Letter, Presentation, RelTag, Word};
pub use rees::{LambdaIndex, SandwichMatrix};
pub use wreath::WreathElem;
