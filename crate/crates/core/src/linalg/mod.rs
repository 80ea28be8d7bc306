//! Exact integer linear algebra: Smith and Hermite normal forms, cokernels,
//! and the abelian-group invariants every multiplier computation reports.

mod abelian;
mod hnf;
mod matrix;
mod snf;
mod sparse;

pub use abelian::{
    abelian_tests, cokernel_invariants, embeds_as_subgroup, is_direct_factor, is_quotient, AbelianInvariants,
    AbelianTests,
};
pub use hnf::{hermite_normal_form, Lattice};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};
pub use sparse::SparseMatrix;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("test requires finite abelian groups")]
    InfiniteGroup,
}
