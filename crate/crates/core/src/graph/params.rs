use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(n, k, delta)` of `K_k + (K_{delta-k+1} ∪ K_{n-delta-1})`.
///
/// Construction enforces `1 <= k <= delta <= n - 2`, which keeps both cliques
/// nonempty. Whether the resulting graph actually has minimum degree `delta`
/// is reported separately by [`ExtremalParams::realizes_min_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalParams {
    n: usize,
    k: usize,
    delta: usize,
}

impl ExtremalParams {
    pub fn new(n: usize, k: usize, delta: usize) -> Result<Self> {
        let violated = if k < 1 {
            Some("1 <= k")
        } else if k > delta {
            Some("k <= delta")
        } else if delta + 2 > n {
            Some("delta <= n - 2 (clique K_{n-delta-1} must be nonempty)")
        } else {
            None
        };
        match violated {
            Some(violated) => Err(Error::InvalidParams { n, k, delta, violated }),
            None => Ok(Self { n, k, delta }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// True iff the minimum degree of the extremal graph equals `delta`,
    /// i.e. `n >= 2*delta + 2 - k`. Otherwise the vertices of the second
    /// clique have degree `n - delta - 2 + k < delta`.
    pub fn realizes_min_degree(&self) -> bool {
        self.n + self.k >= 2 * self.delta + 2
    }

    /// Sizes of the blocks `(S, A, B)`.
    pub fn block_sizes(&self) -> [usize; 3] {
        [self.k, self.delta - self.k + 1, self.n - self.delta - 1]
    }

    /// Vertex ranges of the canonical layout: join block, first clique, second clique.
    pub fn blocks(&self) -> [Range<usize>; 3] {
        let [s, a, _] = self.block_sizes();
        [0..s, s..s + a, s + a..self.n]
    }

    /// Every valid triple with `n` in `orders`, in lexicographic `(n, k, delta)` order.
    pub fn grid(orders: Range<usize>, require_min_degree: bool) -> impl Iterator<Item = Self> {
        orders.flat_map(move |n| {
            (1..n.saturating_sub(1)).flat_map(move |k| {
                (k..n - 1).filter_map(move |delta| {
                    let p = Self { n, k, delta };
                    (!require_min_degree || p.realizes_min_degree()).then_some(p)
                })
            })
        })
    }
}

impl std::fmt::Display for ExtremalParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, k={}, delta={})", self.n, self.k, self.delta)
    }
}
