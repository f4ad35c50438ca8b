//! Exact characteristic polynomials by the Faddeev–LeVerrier recurrence.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CHARPOLY_ORDER_CAP: usize = 32;

/// `det(xI - A)` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntCharPoly {
    pub poly: IntPoly,
}

impl IntCharPoly {
    /// Coefficient of `x^power`.
    pub fn coeff(&self, power: usize) -> BigInt {
        self.poly.coeff(power)
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

impl std::fmt::Display for IntCharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

/// Recurrence: `M_1 = I`, `c_{n-k} = -tr(A M_k) / k`, `M_{k+1} = A M_k + c_{n-k} I`.
/// Every division is exact over the integers.
pub fn int_charpoly(g: &Graph) -> Result<IntCharPoly> {
    let n = g.order();
    if n > CHARPOLY_ORDER_CAP {
        return Err(Error::OrderCap {
            order: n,
            cap: CHARPOLY_ORDER_CAP,
            what: "exact characteristic polynomials",
        });
    }
    let neighbours: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();

    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    // m holds M_k, row-major
    let mut m = vec![BigInt::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = BigInt::from(1);
    }
    for k in 1..=n {
        // am = A * M_k
        let mut am = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for &l in &neighbours[i] {
                for j in 0..n {
                    let v = &m[l * n + j];
                    if !v.is_zero() {
                        am[i * n + j] += v;
                    }
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let c = -(trace / BigInt::from(k));
        if k < n {
            for i in 0..n {
                am[i * n + i] += &c;
            }
            m = am;
        }
        coeffs[n - k] = c;
    }
    Ok(IntCharPoly {
        poly: IntPoly::new(coeffs),
    })
}
