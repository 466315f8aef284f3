pub mod cli;
pub mod error;
pub mod factorization;
pub mod group;
pub mod hecke;
pub mod numerics;
pub mod report;
pub mod repr;
pub mod suites;

pub use error::{Error, Result};
