//! Root-system combinatorics, colored fans, and classification tables for
//! smooth projective varieties of Picard number one with two orbits.

pub mod dynkin;
pub mod error;
pub mod horoclass;
pub mod horofan;
pub mod linalg;
pub mod octonion;
pub mod report;
pub mod rootsys;
pub mod scalar;
pub mod twoorbits;

pub use error::{Error, Result};
pub use rootsys::{RootSystem, SimpleType, Weight};

/// Exact scalars `Q(i, √2)` over arbitrary-precision rationals.
pub type ExactScalar = scalar::Qi2<num_rational::BigRational>;
/// Rationals used for exact linear algebra over `Q`.
pub type Rational = num_rational::BigRational;
pub type ExactOctonion = octonion::Octonion<ExactScalar>;
pub type FloatOctonion = octonion::Octonion<f64>;
