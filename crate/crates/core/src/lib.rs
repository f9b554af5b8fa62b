//! Finite-group engine for exact factorizations `G = MN` and `G = MNP`.
//!
//! From a factorization it derives the matched-pair actions `ᵐn` and `mⁿ`,
//! checks their compatibility identities exhaustively, rebuilds the group as
//! a bicrossproduct, models the squares of the associated double groupoid,
//! and tests a candidate multiplication on triples `(m, n, p)` against the
//! ambient group.

pub mod double_groupoid;
pub mod error;
pub mod factorization;
pub mod group;
pub mod group_spec;
pub mod matched_pair;
pub mod matched_triple;
pub mod perm;
pub mod report;
pub mod survey;

pub use error::{Error, Result};
pub use group::{GroupTable, SubgroupRef};
pub use group_spec::GroupSpec;
pub use perm::Perm;
pub use report::{Check, Status, VerificationReport};
