//! Exact plumbing calculus for plumbed integral homology spheres.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod constructions;
pub mod contfrac;
mod error;
pub mod graded_roots;
pub mod graph_core;
pub mod invariants;
pub mod seifert_splice;

pub use error::{Error, Result};
pub use graph_core::{Arrow, GraphBuilder, IntegerMatrix, InvariantReport, PlumbingGraph, Vertex};
