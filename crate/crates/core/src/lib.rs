//! Exact computations for noncommutative graded algebras, their projective
//! module categories, and small dg categories.

pub mod error;
pub mod exactla;

pub use error::{Error, Result};
pub mod freealg;
pub mod bigr;
pub mod grmod;
pub mod dgcore;
pub mod dgmod;
pub mod cli;
