//! Exact computation with cyclotomic generating functions (CGFs).
//!
//! A CGF is a nonzero polynomial with nonnegative integer coefficients
//! whose complex roots are all roots of unity or zero. Every CGF can be
//! written as `alpha * q^beta * prod Phi_n(q)` (the cyclotomic form) and as
//! `alpha * q^beta * prod [a_j]_q / [b_j]_q` (the rational form).
//!
//! This crate is `no_std` and only needs `alloc`. It contains:
//!
//! - [`poly`]: dense big-integer polynomials and coefficient profiles.
//! - [`cyclotomic`]: number-theoretic helpers and `Phi_n` construction.
//! - [`forms`]: CGF membership and conversion between canonical forms.
//! - [`stats`]: exact cumulants and moments, characteristic functions.
//! - [`asymptotics`]: asymptotic-normality diagnostics for families.
//! - [`families`]: named CGF families and brute-force oracles.
//! - [`monoids`]: enumeration of the cyclotomic monoids by degree.
//!
//! IO, command-line handling and parallel drivers live in the `cgf`
//! companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod cyclotomic;
mod error;
pub mod families;
pub mod forms;
pub mod monoids;
pub mod partitions;
pub mod poly;
pub mod stats;

pub use error::Error;
pub use forms::{CycloForm, RationalForm};
pub use poly::IntPoly;
pub use stats::Rat;
