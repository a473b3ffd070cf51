pub mod cli;
pub mod coeffs;
pub mod error;
pub mod families;
pub mod functionals;
pub mod grammar;
pub mod harness;
pub mod io;
pub mod metric;
pub mod scalar;
pub mod schwarzian;
pub mod series;
pub mod symbolic;

pub use error::{Error, Result};
