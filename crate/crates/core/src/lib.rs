//! Exact composition multiplicities of simple modules in Verma modules for
//! Takiff Lie algebras `g ⊗ C[ε]/(ε²)` over a reductive `g`.
//!
//! The pipeline: find the centraliser Levi of `μ`, move it to a standard
//! Levi by a minimal Weyl element, transport `λ` by the `2ρ`-shifted action,
//! and sum Kostant-partition-weighted BGG multiplicities of the Levi, which
//! in turn come from Kazhdan–Lusztig polynomials.

// index loops read more naturally for the matrix code
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod klbgg;
pub mod kostant;
mod linalg;
pub mod rootdata;
pub mod selftest;
pub mod takiffmult;
pub mod weyl;

pub use error::{Error, Result};
