//! Exact symbolic toolkit for the quantum rational H₃ integrable system.

pub mod coxeter;
pub mod diffop;
pub mod discrete;
pub mod error;
pub mod gauge;
pub mod hiddenalg;
pub mod integral;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod qes;
pub mod scalar;

pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly, VariableSpace};
pub use scalar::{GoldenScalar, Rational};
