//! Exact rational linear algebra for totally positive upper triangular
//! matrices, together with a high-precision verifier for the family of
//! Rogers-dilogarithm identities attached to them.
//!
//! The crate is organized around three layers:
//!
//! * exact layer — [`Rational`](rational::Rational) scalars,
//!   [`SquareMatrix`](matrix::SquareMatrix) with fraction-free minors,
//!   Jacobi coordinates and the factorization of unitriangular totally
//!   positive matrices ([`jacobi`]), the Gauss-type decomposition and the
//!   two involutions it defines ([`involutions`]), coordinate transforms
//!   satisfying the tetrahedron equation ([`tetra`]), Y-variables
//!   ([`yvars`]) and the constrained subvariety machinery ([`s3action`]);
//! * floating layer — [`BigFloat`](bigfloat::BigFloat), an
//!   arbitrary-precision radix-2 float, and the Rogers dilogarithm with
//!   its functional equations ([`dilog`]);
//! * verification layer — dilogarithm sums over the discrete tetrahedron
//!   and identity reports ([`identities`]), plus the finite-difference
//!   two-form surrogate for the wedge relations ([`wedge`]).
//!
//! Everything is `no_std` + `alloc`; all values are immutable after
//! construction and all operations are pure, so the whole library is safe
//! to share across threads.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod bigfloat;
pub mod dilog;
pub mod identities;
pub mod index;
pub mod involutions;
pub mod jacobi;
pub mod matrix;
pub mod rational;
pub mod s3action;
pub mod sample;
pub mod tetra;
pub mod wedge;
pub mod yvars;

pub use bigfloat::BigFloat;
pub use error::{Error, Result};
pub use index::{IndexSet, Triple};
pub use jacobi::JacobiCoords;
pub use matrix::{DiagonalMatrix, SquareMatrix, UpperUnitriangular};
pub use rational::Rational;

/// Default significand precision, in bits, for dilogarithm evaluation.
pub const DEFAULT_PRECISION: u32 = 128;
