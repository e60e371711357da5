//! Certified lemniscate areas for monic polynomials with constrained zeros.
//!
//! Polynomials are stored as root multisets ([`polycore::MonicPolynomial`]);
//! areas of `{|p| < level}` are enclosed by an adaptive quadtree
//! ([`lemniscate::certified_area`]); the [`claims`] registry runs the
//! reproducible checks exposed by the `lemni` binary.

// `!(x > 0.0)` style checks deliberately reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod chebyshev;
pub mod claims;
pub mod cli;
pub mod error;
pub mod fekete;
mod json;
pub mod lemniscate;
pub mod polycore;
pub mod roots;

pub use error::{Error, Result};
pub use polycore::{ComplexPoint, MonicPolynomial};
