//! Vertex connectivity by unit-capacity max-flow on the vertex-split digraph.
//!
//! For non-adjacent `s`, `t`, every vertex `w` other than `s`, `t` becomes an
//! arc `w_in -> w_out` of capacity one and every edge `ab` becomes arcs
//! `a_out -> b_in` and `b_out -> a_in` of unbounded capacity. The flow value
//! is the number of internally vertex-disjoint `s`-`t` paths (Menger), and the
//! saturated split arcs leaving the residual reachable set form a minimum
//! separating vertex set.
//!
//! Global connectivity only needs a few pairs: with `u` of minimum degree,
//! some minimum cut either misses `u` (so it separates `u` from a
//! non-neighbour) or contains it (so it separates two non-adjacent
//! neighbours of `u`).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A vertex cut together with the components it leaves behind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub cut: Vec<usize>,
    pub side_components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ConnectivityWitness {
    /// `K_n`: no vertex set disconnects it.
    Complete,
    Cut(CutWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub kappa: usize,
    pub witness: ConnectivityWitness,
}

pub fn vertex_connectivity(g: &Graph) -> Connectivity {
    let n = g.order();
    if g.is_complete() {
        return Connectivity {
            kappa: n - 1,
            witness: ConnectivityWitness::Complete,
        };
    }
    let comps = g.components();
    if comps.len() > 1 {
        return Connectivity {
            kappa: 0,
            witness: ConnectivityWitness::Cut(CutWitness {
                cut: Vec::new(),
                side_components: comps,
            }),
        };
    }

    let mut net = SplitNetwork::new(g);
    let u = (0..n).min_by_key(|&v| g.degree(v)).expect("nonempty");
    let mut best: Option<(usize, Vec<usize>)> = None;

    let consider = |net: &mut SplitNetwork, s: usize, t: usize, best: &mut Option<(usize, Vec<usize>)>| {
        let limit = best.as_ref().map_or(usize::MAX, |b| b.0);
        if let Some((flow, cut)) = net.min_separator(s, t, limit) {
            if flow < limit {
                *best = Some((flow, cut));
            }
        }
    };

    for v in (0..n).filter(|&v| v != u && !g.has_edge(u, v)) {
        consider(&mut net, u, v, &mut best);
    }
    let nbrs: Vec<usize> = g.neighbors(u).collect();
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) {
                consider(&mut net, x, y, &mut best);
            }
        }
    }

    let (kappa, mut cut) = best.expect("a non-complete connected graph has a non-adjacent pair");
    cut.sort_unstable();
    let side_components = g.components_excluding(&cut);
    Connectivity {
        kappa,
        witness: ConnectivityWitness::Cut(CutWitness { cut, side_components }),
    }
}

pub fn kappa(g: &Graph) -> usize {
    vertex_connectivity(g).kappa
}

/// `g` is `k`-connected: it is `K_{k+1}`, or it has at least `k + 2`
/// vertices and no separating set of fewer than `k` vertices.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if n == k + 1 && g.is_complete() {
        return true;
    }
    n >= k + 2 && kappa(g) >= k
}

/// Degree condition `delta > (n + k)/2 + 1` guaranteeing `(k+1)`-connectivity,
/// evaluated over the rationals.
pub fn lemma_guarantee(n: usize, k: usize, delta: usize) -> bool {
    let lhs = Ratio::from_integer(delta as u128);
    let rhs = Ratio::new((n + k) as u128, 2) + Ratio::from_integer(1u128);
    lhs > rhs
}

/// Maximum number of internally vertex-disjoint paths between non-adjacent
/// `s` and `t`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    assert!(
        s != t && !g.has_edge(s, t),
        "local connectivity needs a non-adjacent pair"
    );
    SplitNetwork::new(g)
        .min_separator(s, t, usize::MAX)
        .map(|(f, _)| f)
        .expect("unbounded limit always completes")
}

/// Minimum `s`-`t` vertex separator for non-adjacent `s`, `t`.
pub fn min_vertex_separator(g: &Graph, s: usize, t: usize) -> Vec<usize> {
    assert!(s != t && !g.has_edge(s, t), "separator needs a non-adjacent pair");
    let mut cut = SplitNetwork::new(g)
        .min_separator(s, t, usize::MAX)
        .map(|(_, c)| c)
        .expect("unbounded limit always completes");
    cut.sort_unstable();
    cut
}

const INF: u32 = u32::MAX / 2;

/// Residual network over `2n` nodes: `v_in = 2v`, `v_out = 2v + 1`.
struct SplitNetwork {
    n: usize,
    head: Vec<u32>,
    cap: Vec<u32>,
    base_cap: Vec<u32>,
    adj: Vec<Vec<u32>>,
    split_arc: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut net = Self {
            n,
            head: Vec::new(),
            cap: Vec::new(),
            base_cap: Vec::new(),
            adj: vec![Vec::new(); 2 * n],
            split_arc: vec![0; n],
            parent: vec![u32::MAX; 2 * n],
            queue: Vec::with_capacity(2 * n),
        };
        for v in 0..n {
            net.split_arc[v] = net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for (a, b) in g.edges() {
            net.add_arc(2 * a + 1, 2 * b, INF);
            net.add_arc(2 * b + 1, 2 * a, INF);
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) -> u32 {
        let id = self.head.len() as u32;
        self.head.push(to as u32);
        self.cap.push(cap);
        self.adj[from].push(id);
        self.head.push(from as u32);
        self.cap.push(0);
        self.adj[to].push(id + 1);
        id
    }

    /// Max-flow from `s_out` to `t_in`, stopping once it reaches `limit`.
    /// Returns `None` if the limit was reached, else the flow value and the
    /// minimum separator.
    fn min_separator(&mut self, s: usize, t: usize, limit: usize) -> Option<(usize, Vec<usize>)> {
        if self.base_cap.is_empty() {
            self.base_cap = self.cap.clone();
        } else {
            self.cap.copy_from_slice(&self.base_cap);
        }
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0usize;
        while self.augment(source, sink) {
            flow += 1;
            if flow >= limit {
                return None;
            }
        }
        // after the failed search, parent marks the residual-reachable set
        let reach = |node: usize, parent: &[u32]| node == source || parent[node] != u32::MAX;
        let cut = (0..self.n)
            .filter(|&w| w != s && w != t)
            .filter(|&w| reach(2 * w, &self.parent) && !reach(2 * w + 1, &self.parent))
            .collect::<Vec<_>>();
        debug_assert_eq!(cut.len(), flow);
        debug_assert!(cut.iter().all(|&w| self.cap[self.split_arc[w] as usize] == 0));
        Some((flow, cut))
    }

    /// One BFS augmenting path; pushes a unit of flow if found.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        self.parent.iter_mut().for_each(|p| *p = u32::MAX);
        self.queue.clear();
        self.queue.push(source as u32);
        let mut qi = 0;
        let mut found = false;
        'bfs: while qi < self.queue.len() {
            let node = self.queue[qi] as usize;
            qi += 1;
            for &arc in &self.adj[node] {
                let to = self.head[arc as usize] as usize;
                if self.cap[arc as usize] > 0 && to != source && self.parent[to] == u32::MAX {
                    self.parent[to] = arc;
                    if to == sink {
                        found = true;
                        break 'bfs;
                    }
                    self.queue.push(to as u32);
                }
            }
        }
        if !found {
            return false;
        }
        let mut node = sink;
        while node != source {
            let arc = self.parent[node] as usize;
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            node = self.head[arc ^ 1] as usize;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, extremal_graph, path, ExtremalParams};

    /// Smallest vertex set whose removal disconnects `g` (or leaves one vertex).
    fn brute_kappa(g: &Graph) -> usize {
        let n = g.order();
        if g.is_complete() {
            return n - 1;
        }
        for size in 0..n {
            for mask in 0u32..1 << n {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let removed: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if g.components_excluding(&removed).len() > 1 {
                    return size;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn named_graphs() {
        let c = vertex_connectivity(&complete(5).unwrap());
        assert_eq!((c.kappa, c.witness), (4, ConnectivityWitness::Complete));
        assert_eq!(kappa(&cycle(6).unwrap()), 2);
        assert_eq!(kappa(&path(4).unwrap()), 1);
        assert_eq!(kappa(&complete(1).unwrap()), 0);
    }

    #[test]
    fn extremal_cut_is_the_join_block() {
        let g = extremal_graph(ExtremalParams::new(7, 2, 3).unwrap());
        assert_eq!(brute_kappa(&g), 2);
        let c = vertex_connectivity(&g);
        assert_eq!(c.kappa, 2);
        match c.witness {
            ConnectivityWitness::Cut(w) => {
                assert_eq!(w.cut, vec![0, 1]);
                assert_eq!(w.side_components, vec![vec![2, 3], vec![4, 5, 6]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disconnected_graph_has_component_witness() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let c = vertex_connectivity(&g);
        assert_eq!(c.kappa, 0);
        assert!(
            matches!(c.witness, ConnectivityWitness::Cut(ref w) if w.cut.is_empty() && w.side_components.len() == 3)
        );
    }

    #[test]
    fn k_connectivity_definition() {
        assert!(is_k_connected(&complete(3).unwrap(), 2));
        assert!(!is_k_connected(&path(4).unwrap(), 2));
        let g = extremal_graph(ExtremalParams::new(8, 3, 4).unwrap());
        assert!(!is_k_connected(&g, 4));
        assert!(is_k_connected(&g, 3));
        // K_3 is not 3-connected: it would need 5 vertices or be K_4
        assert!(!is_k_connected(&complete(3).unwrap(), 3));
    }

    #[test]
    fn lemma_inequality() {
        assert!(lemma_guarantee(8, 1, 6));
        assert!(!lemma_guarantee(8, 1, 5));
        // boundary: (7+1)/2 + 1 = 5, strict
        assert!(!lemma_guarantee(7, 1, 5));
        assert!(lemma_guarantee(7, 1, 6));
    }

    #[test]
    fn matches_brute_force_on_all_graphs_of_order_six() {
        for mask in 0..1u64 << 15 {
            let g = Graph::from_upper_mask(6, mask).unwrap();
            assert_eq!(kappa(&g), brute_kappa(&g), "mask {mask}");
        }
    }
}
