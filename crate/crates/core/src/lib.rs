//! Exact character theory of finite permutation groups.
//!
//! The crate computes character tables over cyclotomic integers, splits the
//! irreducible characters by whether `χ(1)²` divides `|G : ker χ|`, decides
//! whether the remaining characters form a single Galois orbit, and checks
//! the structure of the groups for which they do.

#![allow(clippy::needless_range_loop)]

pub mod char_table;
pub mod classify;
pub mod constructors;
pub mod corpus;
pub mod cyclotomic;
pub mod fp;
pub mod io;
pub mod number_theory;
pub mod oracle;
pub mod perm_group;
pub mod suite;

pub use char_table::{character_table, CharTableError, Character, CharacterTable};
pub use classify::{analyze_structure, classify, CaseTag, ClassificationReport, ClassifyError, Verdict};
pub use constructors::{construct_case, CaseParams, ConstructError};
pub use cyclotomic::{CyclotomicError, CyclotomicNumber};
pub use fp::FpMatrix;
pub use io::{GroupFile, RunConfig};
pub use number_theory::{NumberTheoryError, PrimePower};
pub use perm_group::{GroupError, PermGroup, Permutation, Subgroup};
