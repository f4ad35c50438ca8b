//! Constructors for the graph families used throughout the crate.

use super::{ExtremalParams, Graph};
use crate::error::Result;

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v, true);
        }
    }
    Ok(g)
}

/// `n` isolated vertices.
pub fn empty(n: usize) -> Result<Graph> {
    Graph::new(n)
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// `C_n` for `n >= 3`; smaller orders fall back to the path.
pub fn cycle(n: usize) -> Result<Graph> {
    let mut g = path(n)?;
    if n >= 3 {
        g.set_edge(0, n - 1, true);
    }
    Ok(g)
}

/// `K_{1,leaves}` with the centre at vertex 0.
pub fn star(leaves: usize) -> Result<Graph> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// `g ∪ h`: vertices of `h` are shifted past those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.order();
    let mut out = Graph::new(shift + h.order()).expect("nonempty");
    for (u, v) in g.edges() {
        out.set_edge(u, v, true);
    }
    for (u, v) in h.edges() {
        out.set_edge(u + shift, v + shift, true);
    }
    out
}

/// `g + h`: disjoint union plus every edge between the two vertex sets.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let shift = g.order();
    let mut out = disjoint_union(g, h);
    for u in 0..shift {
        for v in 0..h.order() {
            out.set_edge(u, v + shift, true);
        }
    }
    out
}

/// `K_k + (K_{delta-k+1} ∪ K_{n-delta-1})` in the canonical layout: vertices
/// `0..k` are the join block, then the first clique, then the second.
pub fn extremal_graph(p: ExtremalParams) -> Graph {
    let [s, a, b] = p.blocks();
    let mut g = Graph::new(p.n()).expect("n >= 3");
    for v in s.clone() {
        g.fill_row(v, 0..p.n());
    }
    for block in [a, b] {
        for v in block.clone() {
            g.fill_row(v, s.clone());
            g.fill_row(v, block.clone());
        }
    }
    g
}

/// `K_k + (K_1 ∪ K_{n-k-1})`: a vertex joined by `k` edges to `K_{n-1}`.
/// For `k = n - 1` this is `K_n`.
pub fn shiu_graph(n: usize, k: usize) -> Result<Graph> {
    if k + 1 == n && k >= 1 {
        return complete(n);
    }
    let p = ExtremalParams::new(n, k, k)?;
    Ok(extremal_graph(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn complete_graphs() {
        let k1 = complete(1).unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let k4 = complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        assert!(complete(0).is_err());
    }

    #[test]
    fn join_and_union_of_completes() {
        let k1 = complete(1).unwrap();
        assert_eq!(join(&k1, &k1), complete(2).unwrap());
        assert_eq!(join(&complete(2).unwrap(), &complete(3).unwrap()), complete(5).unwrap());

        let two = disjoint_union(&k1, &k1);
        assert_eq!((two.order(), two.edge_count()), (2, 0));
        let u = disjoint_union(&complete(2).unwrap(), &complete(3).unwrap());
        assert_eq!((u.order(), u.edge_count(), u.components().len()), (5, 4, 2));
    }

    #[test]
    fn union_of_the_two_cliques_has_min_degree_delta_minus_k() {
        for (n, k, delta) in [(7, 2, 3), (9, 1, 3), (10, 3, 5)] {
            let a = delta - k + 1;
            let b = n - delta - 1;
            assert!(a <= b);
            let u = disjoint_union(&complete(a).unwrap(), &complete(b).unwrap());
            assert_eq!(u.min_degree(), delta - k);
        }
    }

    #[test]
    fn extremal_small_cases() {
        let paw = extremal_graph(ExtremalParams::new(4, 1, 1).unwrap());
        assert_eq!(paw.edge_count(), 4);
        assert_eq!(sorted_degrees(&paw), vec![3, 2, 2, 1]);

        let g = extremal_graph(ExtremalParams::new(7, 2, 3).unwrap());
        assert_eq!(g.degrees(), vec![6, 6, 3, 3, 4, 4, 4]);
        assert_eq!(g.min_degree(), 3);

        for k in 1..6 {
            let g = extremal_graph(ExtremalParams::new(k + 2, k, k).unwrap());
            let kk = complete(k + 2).unwrap();
            assert_eq!(g.edge_count(), kk.edge_count() - 1);
            // the missing edge joins the two singleton cliques
            assert!(!g.has_edge(k, k + 1));
        }
    }

    #[test]
    fn shiu_family() {
        let paw = shiu_graph(4, 1).unwrap();
        assert_eq!(sorted_degrees(&paw), vec![3, 2, 2, 1]);
        for n in 2..8 {
            assert_eq!(shiu_graph(n, n - 1).unwrap(), complete(n).unwrap());
        }
        assert_eq!(sorted_degrees(&shiu_graph(5, 2).unwrap()), vec![4, 4, 3, 3, 2]);
        assert!(shiu_graph(4, 0).is_err());
        assert!(shiu_graph(4, 4).is_err());
    }
}
