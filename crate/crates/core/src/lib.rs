//! Finite commutative semirings and semimodules given by operation tables,
//! the expectation semiring `S ⊕̃ M` built from them, and brute-force
//! decision procedures for their ideals and distinguished elements.
//!
//! The [`numeric`] module carries the same construction over nonnegative
//! reals and real vectors, where it computes expectations of additive path
//! features over weighted DAGs.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod expectation;
pub mod format;
pub mod ideals;
pub mod numeric;
pub mod tables;
pub mod theorems;

pub use error::{Error, Result};
pub use expectation::ExpectationInstance;
pub use tables::{AdditiveMonoid, Elem, FiniteSemimodule, FiniteSemiring, Subset};
