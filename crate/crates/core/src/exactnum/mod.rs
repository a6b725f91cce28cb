//! Exact arithmetic in real quadratic fields.

pub mod approx;
mod parse;
mod profile;
mod quadratic;
mod ring;
mod serial;
mod squarefree;

pub use parse::parse_literal;
pub use profile::{classify, AlgebraicProfile, MinimalPolynomial};
pub use quadratic::QuadraticReal;
pub use ring::{RingElem, ZTheta};
pub use squarefree::{split_square, MAX_RADICAND};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;
