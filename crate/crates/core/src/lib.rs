//! Exact combinatorics of factor types.
//!
//! This crate computes, exactly where possible, the joint distribution of
//! irreducible-factor degrees of random monic polynomials over a prime field
//! F_p, the cycle-type distribution of uniform random permutations, and a
//! collection of integer-polynomial invariants (discriminants, degree sieves,
//! real root counts) used to compare the two worlds at desk scale.
//!
//! Everything that can be a rational number is a rational number
//! ([`num_rational::BigRational`]); floating point only appears in summary
//! statistics and in the double-double root-finding oracle, which verifies
//! its own output by exact integer division before reporting anything.

pub mod arith;
pub mod bitset;
pub mod dist;
pub mod error;
pub mod factor;
pub mod ffpoly;
pub mod matrix;
pub mod multiset;
pub mod partitions;
pub mod perm;
pub mod rng;
pub mod roots;
pub mod sieve;
pub mod stats;
pub mod sturm;
pub mod zpoly;

pub use bitset::BitSet;
pub use dist::{DistributionKind, FactorTypeDistribution};
pub use error::{Error, Result};
pub use ffpoly::{FieldPoly, Prime};
pub use matrix::IntMatrix;
pub use multiset::DegreeMultiset;
pub use perm::Permutation;
pub use rng::{RandomStream, StreamFamily};
pub use sieve::{SieveStatus, SieveVerdict};
pub use stats::FreqEstimate;
pub use zpoly::{CoefficientModel, DiscriminantReport, IntPoly};
