//! Eigensolvers for adjacency matrices: the Perron pair by power iteration,
//! full spectra by Jacobi rotations, and exact integer characteristic
//! polynomials for tie-breaking.

mod charpoly;
mod exact;
mod jacobi;
mod matrix;
mod perron;
pub mod poly;

pub use charpoly::{int_charpoly, IntCharPoly, CHARPOLY_ORDER_CAP};
pub use exact::{compare_largest_roots, exact_compare_rho, isolate_rho, RhoOrdering, RootInterval};
pub use jacobi::{full_spectrum, Spectrum};
pub use matrix::DenseMatrix;
pub use perron::{perron, perron_with, PerronOptions, PerronPair, DEFAULT_MAX_ITER, DEFAULT_TOL, RESIDUAL_TOL};

use crate::error::Result;
use crate::graph::Graph;

/// Spectrum of the adjacency matrix.
pub fn graph_spectrum(g: &Graph) -> Result<Spectrum> {
    full_spectrum(&g.adjacency_matrix())
}

/// Spectral radius of any graph: the largest component radius.
pub fn spectral_radius(g: &Graph) -> Result<f64> {
    let mut best: f64 = 0.0;
    for comp in g.components() {
        let h = g.induced_subgraph(&comp)?;
        best = best.max(perron(&h, DEFAULT_TOL)?.rho);
    }
    Ok(best)
}
