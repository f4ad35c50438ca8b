//! Extremal graphs for the spectral radius under a connectivity bound and a
//! minimum-degree bound.
//!
//! Among connected graphs of order `n` with vertex connectivity at most `k`
//! and minimum degree at least `delta`, the spectral radius is maximised by
//! `K_k + (K_{delta-k+1} ∪ K_{n-delta-1})`. This crate builds those graphs,
//! computes their spectra with self-contained solvers, and checks the
//! surrounding results exhaustively at small orders.

pub mod census;
pub mod connectivity;
pub mod error;
pub mod graph;
pub mod quotient;
pub mod report;
pub mod rewiring;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{ExtremalParams, Graph};
