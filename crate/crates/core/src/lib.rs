//! Exact one-dimensional cut-and-project sequences.
//!
//! The crate is organised in layers:
//!
//! * [`exactnum`] exact arithmetic in real quadratic fields and the lattices `Z[θ]`;
//! * [`capcore`] cut-and-project point sets, their stepping function and coded words;
//! * [`wordcomb`] factor languages, complexity, Rauzy graphs and breakpoint sets;
//! * [`betanum`] beta-expansions and beta-integers;
//! * [`selfsim`] self-similarity factors and geometric representations of substitutions;
//! * [`substderive`] morphisms and the derivation of a substitution generating a coded word.

pub mod betanum;
pub mod capcore;
pub mod error;
pub mod exactnum;
pub mod selfsim;
pub mod substderive;
pub mod wordcomb;

pub use error::{Error, Result};
pub use exactnum::{QuadraticReal, Rational};
