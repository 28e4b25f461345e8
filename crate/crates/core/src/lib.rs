//! Jacobi diagram algebras, Lie algebra weight systems, the wheeling map and
//! truncated ribbon link invariants, all over exact rationals.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod relations;
pub mod ribbon;
pub mod series;
pub mod tensor;
pub mod weights;
pub mod wheeling;

pub use error::{Error, Result};
