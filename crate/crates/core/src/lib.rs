//! Exact computations with finite-dimensional Hopf algebras: duals and
//! opposites, convolution and cocycle twists, Drinfel'd doubles and
//! Yetter–Drinfel'd modules, over ℚ, GF(p) or ℚ(t).

// Structure constants are indexed by basis position throughout.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod convolution;
pub mod double;
pub mod error;
pub mod hopf;
pub mod hopfspec;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod yd;

pub use error::{Error, Result};
