//! Construction and finite-prefix verification of the Collatz graph.
//!
//! The graph generated by the inverse Collatz map decomposes into two
//! forests: the doubling chains `o * 2^d` over odd roots `o`, and the
//! matching of branch edges `(y, (y - 1) / 3)` over branch values
//! `y > 4, y ≡ 4 (mod 6)`. This crate materializes bounded windows of
//! both forests, builds the level tree rooted at 1 breadth-first, and
//! checks the structural claims (edge disjointness, degree
//! classification, coverage, acyclicity, convergence) against
//! independent brute-force oracles.

#![forbid(unsafe_code)]

pub mod core_maps;
pub mod error;
pub mod export;
pub mod forests;
pub mod tree_builder;
pub mod verifier;

pub use error::CollatzError;

/// Vertex values are 128-bit with checked arithmetic throughout; any
/// step of `3n + 1` or `2n` that would wrap reports an overflow error
/// instead of producing a silently corrupt value.
pub type Value = u128;
