//! Exact arithmetic kernels for multiplicative and elliptic dependence
//! experiments: integer polynomials, finite fields, Weierstrass curves,
//! division and summation polynomials, relation resultants, and brute-force
//! dependence loci over small finite fields.

pub mod arith;
pub mod ecurve;
pub mod error;
pub mod ffield;
pub mod ffpoly;
pub mod golden;
pub mod locus;
pub mod poly;
pub mod relations;
pub mod semaev;
pub mod serde_util;

pub use error::{Error, Result};
