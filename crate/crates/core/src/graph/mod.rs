//! Simple undirected graphs stored as dense symmetric bit matrices.
//!
//! Every row is a packed bitset of `ceil(n / 64)` words. Edge toggles and
//! neighbourhood intersections are word operations, which is what the
//! exhaustive census and the equitable refinement lean on.

mod edgelist;
mod families;
mod graph6;
mod params;
mod refine;

pub use edgelist::{parse_edge_list, write_edge_list, MAX_TEXT_ORDER};
pub use families::{complete, cycle, disjoint_union, empty, extremal_graph, join, path, shiu_graph, star};
pub use graph6::{g6_decode, g6_encode};
pub use params::ExtremalParams;
pub use refine::equitable_refinement;

use crate::error::{Error, Result};
use crate::spectral::DenseMatrix;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = n.div_ceil(WORD);
        Ok(Self {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a packed upper-triangle mask. Bit `p` corresponds
    /// to the `p`-th pair in column-major order: (0,1), (0,2), (1,2), (0,3), ...
    /// This is the same pair order graph6 uses.
    pub fn from_upper_mask(n: usize, mask: u64) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        if pairs > 64 {
            return Err(Error::OrderCap {
                order: n,
                cap: 11,
                what: "upper-triangle masks",
            });
        }
        let mut g = Self::new(n)?;
        let mut p = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> p & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                p += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_upper_mask`]. Returns `None` above order 11.
    pub fn to_upper_mask(&self) -> Option<u64> {
        if self.n * (self.n - 1) / 2 > 64 {
            return None;
        }
        let mut mask = 0u64;
        let mut p = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    mask |= 1 << p;
                }
                p += 1;
            }
        }
        Some(mask)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        debug_assert!(u != v);
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.words + b / WORD];
            if on {
                *w |= 1 << (b % WORD);
            } else {
                *w &= !(1 << (b % WORD));
            }
        }
    }

    /// Sets row bits `v -> w` for every `w` in `range` except `v`. Only one
    /// direction is written; callers keep the matrix symmetric.
    pub(crate) fn fill_row(&mut self, v: usize, range: std::ops::Range<usize>) {
        let row = &mut self.bits[v * self.words..(v + 1) * self.words];
        let (lo, hi) = (range.start, range.end);
        for (i, word) in row.iter_mut().enumerate() {
            let (a, b) = (lo.max(i * WORD), hi.min((i + 1) * WORD));
            if a < b {
                let width = b - a;
                let ones = if width == WORD {
                    u64::MAX
                } else {
                    ((1u64 << width) - 1) << (a - i * WORD)
                };
                *word |= ones;
            }
        }
        if range.contains(&v) {
            row[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    /// Copy of this graph with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut g = self.clone();
        g.set_edge(u, v, true);
        Ok(g)
    }

    /// Copy of this graph with the edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        if u != v {
            g.set_edge(u, v, false);
        }
        Ok(g)
    }

    /// Packed neighbourhood bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.components_excluding(&[]).len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_excluding(&[])
    }

    /// Components of `G - removed`.
    pub fn components_excluding(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut alive = vec![0u64; self.words];
        for v in 0..self.n {
            alive[v / WORD] |= 1 << (v % WORD);
        }
        for &v in removed {
            if v < self.n {
                alive[v / WORD] &= !(1 << (v % WORD));
            }
        }
        let mut comps = Vec::new();
        let mut frontier = vec![0u64; self.words];
        loop {
            let first = iter_bits(&alive).next();
            let Some(start) = first else { break };
            let mut comp = vec![0u64; self.words];
            frontier.iter_mut().for_each(|w| *w = 0);
            frontier[start / WORD] |= 1 << (start % WORD);
            alive[start / WORD] &= !(1 << (start % WORD));
            comp[start / WORD] |= 1 << (start % WORD);
            while frontier.iter().any(|&w| w != 0) {
                let mut next = vec![0u64; self.words];
                for v in iter_bits(&frontier) {
                    for (i, w) in self.row(v).iter().enumerate() {
                        next[i] |= w & alive[i];
                    }
                }
                for i in 0..self.words {
                    alive[i] &= !next[i];
                    comp[i] |= next[i];
                }
                frontier = next;
            }
            comps.push(iter_bits(&comp).collect());
        }
        comps
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::SizeMismatch(format!("vertex {v} listed twice")));
            }
        }
        let mut h = Self::new(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    h.set_edge(a, b, true);
                }
            }
        }
        Ok(h)
    }

    /// Graph with `v` deleted; remaining vertices keep their relative order.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "permutation of length {} for order {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::SizeMismatch("relabelling is not a permutation".into()));
            }
        }
        let mut h = Self::new(self.n)?;
        for (u, v) in self.edges() {
            h.set_edge(perm[u], perm[v], true);
        }
        Ok(h)
    }

    /// True when every edge of `self` is an edge of `other` (same order).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        for (v, out) in y.iter_mut().enumerate().take(self.n) {
            *out = self.neighbors(v).map(|u| x[u]).sum();
        }
    }

    /// Number of neighbours of `v` inside the vertex bitset `set`.
    #[inline]
    pub fn neighbors_in(&self, v: usize, set: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(set)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n);
        for (u, v) in self.edges() {
            m[(u, v)] = 1.0;
            m[(v, u)] = 1.0;
        }
        m
    }
}

/// Bitset over `0..n` with the given members.
pub(crate) fn bitset_of(n: usize, members: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut set = vec![0u64; n.div_ceil(WORD).max(1)];
    for v in members {
        set[v / WORD] |= 1 << (v % WORD);
    }
    set
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_order_rejected() {
        assert_eq!(Graph::new(0), Err(Error::EmptyGraph));
    }

    #[test]
    fn out_of_range_and_loops() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        let g = complete(3).unwrap();
        assert!(g.induced_subgraph(&[0, 5]).is_err());
        assert!(g.induced_subgraph(&[]).is_err());
    }

    #[test]
    fn upper_mask_order_matches_graph6_pairs() {
        // bit 0 = (0,1), bit 1 = (0,2), bit 2 = (1,2)
        let g = Graph::from_upper_mask(3, 0b100).unwrap();
        assert!(g.has_edge(1, 2) && !g.has_edge(0, 1) && !g.has_edge(0, 2));
        for mask in 0..1u64 << 10 {
            assert_eq!(Graph::from_upper_mask(5, mask).unwrap().to_upper_mask(), Some(mask));
        }
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let g = path(130).unwrap();
        assert_eq!(g.edge_count(), 129);
        assert!(g.has_edge(63, 64) && g.has_edge(127, 128));
        assert!(g.is_connected());
        assert_eq!(g.components_excluding(&[64]).len(), 2);
    }

    #[test]
    fn min_degree_connectivity_and_induced() {
        assert_eq!(complete(5).unwrap().min_degree(), 4);
        let two = disjoint_union(&complete(2).unwrap(), &complete(2).unwrap());
        assert!(!two.is_connected());
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);

        let g = extremal_graph(ExtremalParams::new(7, 2, 3).unwrap());
        // S = {0,1}, A = {2,3}
        let sa = g.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert!(sa.is_complete());
        // S = {0,1} plus B = {4,5,6} is K_5
        assert!(g.induced_subgraph(&[0, 1, 4, 5, 6]).unwrap().is_complete());
    }

    #[test]
    fn permute_preserves_edges() {
        let g = cycle(5).unwrap();
        let h = g.permute(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert!(h.has_edge(4, 3) && h.has_edge(0, 4));
        assert!(g.permute(&[0, 0, 1, 2, 3]).is_err());
    }
}
