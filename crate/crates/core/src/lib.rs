//! Exact spanning-tree counts, resistance distances and Kirchhoff indices
//! of generalized blow-up graphs, with the matrix-based oracles and the
//! network rewrites that the closed forms are checked against.
//!
//! All arithmetic is exact over `BigRational`; no floating point is used.

pub mod blowup;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod netcore;
pub mod rational;
pub mod transforms;

pub use error::{Error, Result};
