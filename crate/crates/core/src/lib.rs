pub mod cli;
pub mod coeff;
pub mod consistency;
pub mod diffring;
pub mod error;
pub mod limit;
pub mod monomial;
pub mod pdering;
pub mod polynomial;
pub mod ranking;

pub use error::{Error, Result};
