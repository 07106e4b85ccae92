//! Hypertrees on the moduli space of stable rational curves.
//!
//! The crate covers the combinatorics (axioms, capacity, wheels, genericity,
//! enumeration up to relabeling, sphere triangulations), the exact divisor
//! side (determinantal equations, Kapranov class coefficients), numerical
//! planar realizations, and the diagonal-multiplicity route from explicit
//! polynomials to divisor classes.

mod bits;
pub mod canon;
pub mod constructions;
pub mod divisor;
pub mod enumerate;
mod error;
pub mod hypertree;
pub mod pullback;
pub mod realize;
pub mod stability;

pub use canon::{canonical_form, is_isomorphic, CanonicalHypertree};
pub use error::{Error, Result};
pub use hypertree::{capacity, Hypertree, SubsetCollection, ValidationReport, Witness};
pub use stability::{gieseker_stable, stable_model, StableCurveGraph};

/// Vertex label; hypertree labels are `1..=n`, label 0 is the contraction point.
pub type Label = u32;

pub use hypertree_poly::{IntMatrix, IntPoly};
