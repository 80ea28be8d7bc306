//! Computational toolkit for c-nilpotent multipliers (Baer invariants with
//! respect to the variety of nilpotent groups of class at most c) of
//! semidirect, free and standard wreath products.
//!
//! The pipeline is: textual presentations ([`words`], [`presentations`]) →
//! nilpotent quotients ([`nq`]) → subgroup arithmetic in the resulting
//! polycyclic groups ([`pcgroup`]) → multipliers ([`baer`]). Cayley-table groups
//! and a bar-resolution H₂ oracle ([`finite`]) provide an independent check,
//! and [`harness`] runs scenario files against all of it.

pub mod baer;
pub mod finite;
pub mod harness;
pub mod linalg;
pub mod nq;
pub mod pc;
pub mod pcgroup;
pub mod presentations;
pub mod scalar;
pub mod words;

pub use linalg::AbelianInvariants;
pub use scalar::Int;

/// Arbitrary-precision integer used wherever exponents or matrix entries are
/// stored by default.
pub type Integer = num_bigint::BigInt;

pub type IntMatrix = linalg::Matrix<Integer>;
pub type IntMatrix64 = linalg::Matrix<i64>;

pub type PcPresentation = pc::PcPresentation<Integer>;
pub type PcPresentation64 = pc::PcPresentation<i64>;
pub type PcElement = pc::ExpVec<Integer>;
pub type PcSubgroup = pcgroup::PcSubgroup<Integer>;
pub type PcSubgroup64 = pcgroup::PcSubgroup<i64>;
pub type NqResult = nq::NqResult<Integer>;
