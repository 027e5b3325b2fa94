//! Exact symbolic toolkit for actions of solvable groups on the real line.
//!
//! The central example is the lamplighter group `Z wr Z` acting on the
//! Laurent polynomial ring `Z[X, X^-1]` ordered lexicographically. Everything
//! here is exact: integers and rationals of arbitrary size, no floating point.

pub mod affine;
pub mod base_group;
pub mod classify;
pub mod counterexample;
pub mod error;
mod json;
pub mod lamination;
pub mod orders;
pub mod pl;
pub mod poly;
pub mod realization;
pub mod sample;
pub mod scalar;
pub mod suite;
pub mod svg;
pub mod wreath;

pub use base_group::{compare_b, BElement};
pub use error::{Error, ParseError, Result};
pub use orders::{between, compare, sign, OrderTag, Sign};
pub use poly::LaurentPoly;
pub use scalar::{Coeff, Scalar};
pub use wreath::{Generator, Word, WreathElement};

/// Arbitrary-precision Laurent polynomial.
pub type Poly = LaurentPoly<num_bigint::BigInt>;
/// Arbitrary-precision lamplighter element.
pub type Element = WreathElement<num_bigint::BigInt>;
/// Arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision affine map of the line.
pub type Affine = affine::AffineMap<Rat>;
/// Arbitrary-precision piecewise-linear map of the line.
pub type PlMap = pl::PLMap<Rat>;
