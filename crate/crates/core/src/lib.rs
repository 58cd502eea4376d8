//! Abelian rigidity of lattice patterns.
//!
//! A pattern (a finite figure of `Z^2` or `Z`, possibly weighted, up to
//! translation) is abelian rigid when every configuration in which all
//! translates of the figure have the same weighted letter counts is fully
//! periodic. This crate decides rigidity for convex patterns with two
//! independent certificates, builds explicit witnesses for non-rigid
//! patterns, and checks everything against exact brute-force oracles.

pub mod error;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod rigidity;
pub mod witness;

pub use error::{Error, Result};
