//! Cyclic Jacobi eigenvalue iteration for real symmetric matrices.

use serde::{Deserialize, Serialize};

use super::DenseMatrix;
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigs: Vec<f64>,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        *self.eigs.last().expect("spectrum of a nonempty matrix")
    }

    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }

    /// Eigenvalues largest first, `λ_1 >= λ_2 >= ...`.
    pub fn descending(&self) -> impl Iterator<Item = f64> + '_ {
        self.eigs.iter().rev().copied()
    }
}

pub fn full_spectrum(m: &DenseMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let (gap, row, col) = m.asymmetry();
    let scale = m.frobenius_norm().max(1.0);
    if gap > SYMMETRY_TOL * scale {
        return Err(Error::Asymmetric { row, col, gap });
    }
    let mut a = m.clone();
    // symmetrise exactly so rotations stay consistent
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }

    let norm = a.frobenius_norm();
    let threshold = OFF_DIAGONAL_TOL * norm;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eigs.sort_by(f64::total_cmp);
    Ok(Spectrum { eigs })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Zeroes `a[p][q]` with a two-sided rotation.
fn rotate(a: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    let n = a.dim();
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = arp - s * (arq + tau * arp);
        let new_rq = arq + s * (arp - tau * arq);
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
}
