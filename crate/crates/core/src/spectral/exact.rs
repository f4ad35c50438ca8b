//! Exact comparison of spectral radii through integer characteristic
//! polynomials, rational root isolation and Sturm counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::charpoly::int_charpoly;
use super::poly::{sturm_count, IntPoly};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoOrdering {
    Less,
    /// Same largest root, different characteristic polynomials.
    EqualRoot,
    /// Identical characteristic polynomials.
    EqualPoly,
    Greater,
}

impl RhoOrdering {
    pub fn is_tie(self) -> bool {
        matches!(self, Self::EqualRoot | Self::EqualPoly)
    }

    pub fn to_ordering(self) -> std::cmp::Ordering {
        match self {
            Self::Less => std::cmp::Ordering::Less,
            Self::Greater => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        }
    }
}

/// Half-open rational interval `(lo, hi]` holding exactly one root of a
/// square-free polynomial, namely its largest.
#[derive(Debug, Clone)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    chain: Vec<IntPoly>,
}

impl RootInterval {
    /// Isolates the largest real root of `p`, which must lie in `(-bound, bound)`.
    pub fn largest(p: &IntPoly, bound: &BigInt) -> Option<Self> {
        let chain = p.sturm_chain();
        let lo = BigRational::from_integer(-bound.clone());
        let hi = BigRational::from_integer(bound.clone());
        if sturm_count(&chain, &lo, &hi) == 0 {
            return None;
        }
        let mut iv = Self { lo, hi, chain };
        while iv.count() > 1 {
            let mid = iv.split_point();
            if sturm_count(&iv.chain, &mid, &iv.hi) >= 1 {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        Some(iv)
    }

    fn count(&self) -> usize {
        sturm_count(&self.chain, &self.lo, &self.hi)
    }

    /// A point strictly inside the interval that is not a root.
    fn split_point(&self) -> BigRational {
        let head = &self.chain[0];
        let width = &self.hi - &self.lo;
        let mut denom = BigInt::from(2);
        loop {
            // lo + width/2, lo + width/3, lo + width/4, ...
            let cand = &self.lo + &width / BigRational::from_integer(denom.clone());
            if head.sign_at_rational(&cand) != 0 {
                return cand;
            }
            denom += 1;
        }
    }

    /// Halves the interval, keeping the root inside.
    pub fn refine(&mut self) {
        let mid = self.split_point();
        if sturm_count(&self.chain, &mid, &self.hi) == 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// True when `q` vanishes at the isolated root. `q` must divide the
    /// polynomial this interval was built from.
    fn divisor_vanishes(&self, q: &IntPoly) -> bool {
        if q.degree().unwrap_or(0) == 0 {
            return false;
        }
        sturm_count(&q.sturm_chain(), &self.lo, &self.hi) >= 1
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        num_traits::ToPrimitive::to_f64(&mid).unwrap_or(f64::NAN)
    }
}

/// Compares the largest real roots of two integer polynomials exactly.
/// Both must have at least one real root within `(-bound, bound)`.
pub fn compare_largest_roots(p: &IntPoly, q: &IntPoly, bound: &BigInt) -> RhoOrdering {
    if p.primitive() == q.primitive() {
        return RhoOrdering::EqualPoly;
    }
    let mut ip = RootInterval::largest(p, bound).expect("p has a real root in range");
    let mut iq = RootInterval::largest(q, bound).expect("q has a real root in range");

    let g = p.gcd(q);
    let p_root_in_q = ip.divisor_vanishes(&g);
    let q_root_in_p = iq.divisor_vanishes(&g);
    match (p_root_in_q, q_root_in_p) {
        (true, true) => return RhoOrdering::EqualRoot,
        // ρ_p is a root of q, so ρ_p <= ρ_q, and ρ_q is not a root of p
        (true, false) => return RhoOrdering::Less,
        (false, true) => return RhoOrdering::Greater,
        (false, false) => {}
    }
    loop {
        if ip.hi <= iq.lo {
            return RhoOrdering::Less;
        }
        if iq.hi <= ip.lo {
            return RhoOrdering::Greater;
        }
        if (&ip.hi - &ip.lo) >= (&iq.hi - &iq.lo) {
            ip.refine();
        } else {
            iq.refine();
        }
    }
}

/// Exact comparison of `ρ(g)` and `ρ(h)` for connected graphs of order ≤ 32.
pub fn exact_compare_rho(g: &Graph, h: &Graph) -> Result<RhoOrdering> {
    if !g.is_connected() || !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let p = int_charpoly(g)?;
    let q = int_charpoly(h)?;
    // every eigenvalue lies in [-Δ, Δ]
    let bound = BigInt::from(g.max_degree().max(h.max_degree()) + 1);
    Ok(compare_largest_roots(&p.poly, &q.poly, &bound))
}

/// Spectral radius isolated to an interval of width at most `2^-bits`.
pub fn isolate_rho(g: &Graph, bits: u32) -> Result<(BigRational, BigRational)> {
    let p = int_charpoly(g)?;
    let bound = BigInt::from(g.max_degree() + 1);
    let mut iv = RootInterval::largest(&p.poly, &bound).expect("characteristic polynomials have real roots");
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    while &iv.hi - &iv.lo > target {
        iv.refine();
    }
    Ok((iv.lo, iv.hi))
}
