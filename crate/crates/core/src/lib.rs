//! Reduced triply graded (HHH) link homology of positive and negative braids in
//! their extreme homological degrees, full tables for two-strand torus links,
//! and the normalization to the reduced superpolynomial.
//!
//! The engine is generic over the coefficient field; [`Rational`] and the prime
//! fields [`Fp`] are provided.

pub mod braid;
pub mod complex;
pub mod diff_rules;
pub mod error;
pub mod grading_ring;
pub mod hh_basis;
pub mod homology;
pub mod invariant;
pub mod koszul;
pub mod linalg;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Fp, Scalar};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Integers modulo 10007.
pub type F10007 = Fp<10007>;
/// Integers modulo 32003.
pub type F32003 = Fp<32003>;
/// Integers modulo 65521.
pub type F65521 = Fp<65521>;

pub type RationalPoly = grading_ring::Poly<Rational>;
pub type RationalComplex = complex::FreeComplex<Rational>;
