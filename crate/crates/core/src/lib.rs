//! Computable models of semigroup compactifications.
//!
//! This crate computes and numerically certifies concrete dual objects of
//! abelian (and one non-abelian) semigroups:
//!
//! * [`semichar`] - bounded-semicharacter duals of subsemigroups of the
//!   nonnegative integers (disc duals) and of open product cones in ℝⁿ
//!   (half-plane duals);
//! * [`spine`] - semilattice-graded unions of group completions with a
//!   graded product, absorbing zero and cocompact-neighbourhood topology;
//! * [`op`] - finite-dimensional operator numerics: the tensor (Walter)
//!   multiplicativity residual, polar decomposition inside contraction
//!   balls, convex unitary splitting and classical-group spectra;
//! * [`xform`] - Laplace and Cayley transform identities on the half-plane,
//!   span-equality ranks and Šilov-boundary maximum-modulus sampling;
//! * [`axb`] - the ax+b group, its analytic extension semigroup, its
//!   grid-discretized representation and the tensor-square residual check;
//! * [`verify`] - deterministic verification suites over all of the above,
//!   consumed by the `eberlein` command-line tool.

pub mod axb;
pub mod error;
pub mod op;
pub mod report;
pub mod semichar;
pub mod spec;
pub mod spine;
pub mod verify;
pub mod xform;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Complex matrix used throughout.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Complex vector used throughout.
pub type CVector = nalgebra::DVector<C64>;
