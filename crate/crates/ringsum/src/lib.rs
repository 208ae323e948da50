pub mod arith;
pub mod builder;
pub mod error;
pub mod pflde;
pub mod pmt;
pub mod tower;

pub use error::{Error, Result};
