//! Exact symbolic computation in tautological rings of flat vector bundles,
//! their arithmetic (Arakelov) refinements and the related characteristic
//! class algebra.

pub mod arith;
pub mod classes;
pub mod commands;
pub mod echelon;
pub mod error;
pub mod formulas;
pub mod graded;
pub mod json;
pub mod numbers;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod series;
pub mod verify;

pub use arith::{APart, ArithClass, ArithRing, HarmonicMode};
pub use error::{Error, Result};
pub use graded::{GeneratorSet, Gens, GradedPoly, Monomial};
pub use numbers::Rational;
pub use quotient::{QuotientRing, RingPresentation, Witness};
pub use scalar::{Scalar, Symbol};
pub use series::FormalSeries;
