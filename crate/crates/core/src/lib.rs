//! Exact computations in universal nonassociative enveloping algebras of
//! finite-dimensional Malcev algebras.
//!
//! The engine is generic over the coefficient field ([`Scalar`]); the
//! aliases below fix it to the rationals, which is what every closed-form
//! result in the crate is stated over.

pub mod algebra;
pub mod catalog;
pub mod closedform;
pub mod combinat;
pub mod envelope;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod octonion;
pub mod polyops;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod split;

pub use algebra::{verify_variety, FiniteAlgebra, Variety, Vector};
pub use envelope::{EnvContext, EnvElement, Monomial, Polynomial};
pub use error::{Error, Result};
pub use report::VerificationReport;
pub use scalar::{GaussianRational, Rational, Scalar};

/// Structure-constant algebra over the rationals.
pub type QAlgebra = FiniteAlgebra<Rational>;
/// Element of an enveloping algebra over the rationals.
pub type QElement = EnvElement<Rational>;
/// Enveloping-algebra context over the rationals.
pub type QContext = EnvContext<Rational>;
/// Coordinate vector over the rationals.
pub type QVector = Vector<Rational>;
/// Structure-constant algebra over the Gaussian rationals.
pub type GaussianAlgebra = FiniteAlgebra<GaussianRational>;
