//! Exact equivariant and orbifold elliptic genera from isolated fixed-point
//! data of circle actions on almost complex orbifolds, together with the
//! machinery to check rigidity, modularity, vanishing and divisibility on
//! concrete models.

pub mod error;
pub mod exactnum;
pub mod genera;
pub mod groups;
pub mod model;
pub mod numeric;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Rational exponent of `t`, `ζ` or `q`.
pub type Exponent = num_rational::Rational64;
