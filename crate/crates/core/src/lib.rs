//! Cyclic codes generated by Fibonacci polynomials over prime fields, and
//! Massey secret sharing on their duals.
//!
//! - [`galois`]: F_p arithmetic, polynomials and linear solving.
//! - [`fibseq`]: Pisano periods and sequence invariants.
//! - [`fibcodes`]: code construction, weight distributions, bound checks.
//! - [`sss`]: minimal codewords, access structures, dealing and recovery.

pub mod error;
pub mod fibcodes;
pub mod fibseq;
pub mod galois;
pub mod sss;

pub use error::{Error, Result};
