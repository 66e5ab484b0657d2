//! Exact algorithms for difference-logic constraint satisfaction: instances
//! whose constraints are disjunctions of `x - y in I` with integer interval
//! endpoints, over the rationals.
#![no_std]

extern crate alloc;

pub mod bounded;
pub mod cd;
pub mod error;
pub mod formula;
pub mod gen;
pub mod instance;
pub mod interval;
pub mod pa;
pub mod sidon;
pub mod split;
pub mod structure;
pub mod stp;
pub mod twdp;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
pub use instance::{Assignment, Atom, Constraint, Instance};
pub use interval::{Bound, Interval};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Index of a variable in an instance.
pub type VarId = usize;
