//! Exact arithmetic over quadratic irrationals, Sturmian word generation,
//! the factor/interval bijection, and abelian repetition detection.

pub mod abelian;
pub mod bijection;
pub mod cli;
pub mod error;
pub mod exact;
pub mod formulas;
pub mod numtheory;
pub mod words;

pub use error::{Error, Result};
pub use exact::QuadraticNumber;
