//! Exact combinatorics and polyhedral computations for r-stable hypersimplices.
//!
//! The crate builds the polytopes from their vertices, computes and checks
//! their facets, enumerates the circuit triangulation of the hypersimplex and
//! its r-stable restriction, and computes Ehrhart δ-vectors, codegrees and
//! Gorenstein verdicts. All arithmetic is exact.

pub mod circuit;
pub mod cli;
pub mod ehrhart;
pub mod error;
pub mod hrep;
pub mod polytope;
pub mod stable;
pub mod verify;

pub use error::{Error, Result};
