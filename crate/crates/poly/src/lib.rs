//! Exact sparse multivariate polynomials.
//!
//! Polynomials live in an explicit [`VarContext`]; mixing contexts is an
//! error. Coefficients are generic over a commutative ring (see [`Coeff`]),
//! with [`IntPoly`] over arbitrary-precision integers being the workhorse.

mod context;
mod error;
mod matrix;
mod monomial;
mod multiplicity;
mod polynomial;
mod text;

pub use context::{Context, VarContext};
pub use error::PolyError;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use multiplicity::{diagonal_multiplicity, diagonal_multiplicity_shifted};
pub use polynomial::{Coeff, Polynomial};
pub use text::parse;

use num_bigint::BigInt;

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Polynomial<BigInt>;
/// Matrix of integer polynomials.
pub type IntMatrix = PolyMatrix<BigInt>;
/// Polynomial with machine-integer coefficients, handy for small fuzzing.
pub type SmallPoly = Polynomial<i64>;

pub type Result<T> = std::result::Result<T, PolyError>;
