//! Exact counting of t-core and self-conjugate t-core partitions, together
//! with the class-number, sums-of-three-squares and q-series machinery used
//! to cross-check the counts.

pub mod abacus;
pub mod arith;
pub mod class_numbers;
pub mod cli;
pub mod error;
pub mod other_cores;
pub mod partitions;
pub mod qseries;
pub mod quadform;
pub mod sc7;
pub mod three_squares;

pub use error::{Error, Result};
