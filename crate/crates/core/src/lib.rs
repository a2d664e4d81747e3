//! Exact arithmetic for overpartition polynomials: divisor sums, the
//! polynomial recursion, brute-force enumeration of (colored) overpartitions,
//! executable injections with an exhaustive auditor, and the inequality and
//! root-table checks built on top of them.

pub mod biject;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod numth;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use numth::{Nat, Rational};
pub use poly::Poly;
