use proptest::prelude::*;

use specrad::connectivity::{kappa, vertex_connectivity, ConnectivityWitness};
use specrad::graph::{extremal_graph, g6_decode, g6_encode, parse_edge_list, write_edge_list, ExtremalParams, Graph};
use specrad::quotient::{
    charpoly_3x3, check_interlacing, cubic_coefficients, largest_cubic_root, quotient_matrix, three_part_quotient,
    Partition,
};
use specrad::rewiring::{rewire, RewireSpec};
use specrad::spectral::{exact_compare_rho, full_spectrum, int_charpoly, perron, RhoOrdering};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("connected", |g| g.is_connected())
}

fn params(max_n: usize) -> impl Strategy<Value = ExtremalParams> {
    (3..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n - 2))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), k..=n - 2))
        .prop_map(|(n, k, d)| ExtremalParams::new(n, k, d).unwrap())
}

fn rewire_case() -> impl Strategy<Value = (Graph, RewireSpec)> {
    (connected_graph(9), any::<u64>()).prop_map(|(g, bits)| {
        let n = g.order();
        let v = (bits as usize) % n;
        let del = g.neighbors(v).filter(|&w| bits >> (w + 8) & 1 == 1).collect();
        let add = (0..n)
            .filter(|&w| w != v && !g.has_edge(v, w) && bits >> (w + 24) & 1 == 1)
            .collect();
        (g, RewireSpec::new(v, del, add))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trips(g in graph(70)) {
        let text = g6_encode(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(g6_decode(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn edge_lists_round_trip(g in graph(20)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn extremal_degrees_and_size(p in params(40)) {
        let g = extremal_graph(p);
        let (n, k, d) = (p.n(), p.k(), p.delta());
        let [s, a, b] = p.blocks();
        prop_assert!(s.clone().all(|v| g.degree(v) == n - 1));
        prop_assert!(a.clone().all(|v| g.degree(v) == d));
        prop_assert!(b.clone().all(|v| g.degree(v) == n - d - 2 + k));
        prop_assert_eq!(g.min_degree() == d, p.realizes_min_degree());
        prop_assert_eq!(kappa(&g), k);
    }

    #[test]
    fn cubic_is_the_quotient_determinant(p in params(300)) {
        let q = three_part_quotient(p).integer_entries().unwrap();
        prop_assert_eq!(charpoly_3x3(&q), cubic_coefficients(p));
    }

    #[test]
    fn cubic_root_is_the_radius(p in params(60)) {
        let r = perron(&extremal_graph(p), 1e-13).unwrap().rho;
        prop_assert!((largest_cubic_root(cubic_coefficients(p)) - r).abs() <= 1e-9);
    }

    #[test]
    fn perron_pair_is_positive_and_exact(g in connected_graph(12)) {
        let pair = perron(&g, 1e-13).unwrap();
        prop_assert!(pair.vec.iter().all(|&x| x > 0.0));
        let norm: f64 = pair.vec.iter().map(|x| x * x).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        let mut ax = vec![0.0; g.order()];
        g.mul_vec(&pair.vec, &mut ax);
        for (a, x) in ax.iter().zip(&pair.vec) {
            prop_assert!((a - pair.rho * x).abs() <= 1e-10 * pair.rho.max(1.0));
        }
        let top = full_spectrum(&g.adjacency_matrix()).unwrap().largest();
        prop_assert!((top - pair.rho).abs() <= 1e-9);
        prop_assert!(pair.rho <= g.max_degree() as f64 + 1e-12);
        prop_assert!(pair.rho >= 2.0 * g.edge_count() as f64 / g.order() as f64 - 1e-12);
    }

    #[test]
    fn charpoly_low_coefficients(g in graph(14)) {
        let p = int_charpoly(&g).unwrap();
        let n = g.order();
        prop_assert_eq!(p.degree(), n);
        if n >= 2 {
            prop_assert_eq!(p.coeff(n - 1), 0.into());
            prop_assert_eq!(p.coeff(n - 2), (-(g.edge_count() as i64)).into());
        }
    }

    #[test]
    fn exact_comparison_is_antisymmetric(g in connected_graph(8), h in connected_graph(8)) {
        let gh = exact_compare_rho(&g, &h).unwrap();
        let hg = exact_compare_rho(&h, &g).unwrap();
        prop_assert_eq!(gh.to_ordering(), hg.to_ordering().reverse());
        let (a, b) = (perron(&g, 1e-13).unwrap().rho, perron(&h, 1e-13).unwrap().rho);
        match gh {
            RhoOrdering::Less => prop_assert!(a < b + 1e-9),
            RhoOrdering::Greater => prop_assert!(a > b - 1e-9),
            _ => prop_assert!((a - b).abs() < 1e-9),
        }
    }

    #[test]
    fn connectivity_witness_is_a_cut(g in graph(10)) {
        let c = vertex_connectivity(&g);
        prop_assert!(c.kappa <= g.min_degree());
        match c.witness {
            ConnectivityWitness::Complete => prop_assert!(g.is_complete()),
            ConnectivityWitness::Cut(w) => {
                prop_assert_eq!(w.cut.len(), c.kappa);
                prop_assert!(g.components_excluding(&w.cut).len() >= 2);
                prop_assert_eq!(w.side_components, g.components_excluding(&w.cut));
            }
        }
    }

    #[test]
    fn interlacing_for_random_partitions(g in graph(10), seed in any::<u64>()) {
        let n = g.order();
        let m = 1 + (seed as usize) % n;
        let mut blocks = vec![Vec::new(); m];
        for v in 0..n {
            let b = if v < m { v } else { (seed >> (v % 48)) as usize % m };
            blocks[b].push(v);
        }
        let part = Partition::new(n, blocks).unwrap();
        let q = quotient_matrix(&g, &part).unwrap();
        let full = full_spectrum(&g.adjacency_matrix()).unwrap();
        prop_assert!(check_interlacing(&q.spectrum().unwrap(), &full).unwrap());
    }

    #[test]
    fn rewire_only_touches_the_pivot((g, s) in rewire_case()) {
        let h = rewire(&g, &s).unwrap();
        prop_assert_eq!(h.edge_count() + s.del.len(), g.edge_count() + s.add.len());
        for u in 0..g.order() {
            for w in 0..g.order() {
                if u != s.pivot && w != s.pivot && u != w {
                    prop_assert_eq!(g.has_edge(u, w), h.has_edge(u, w));
                }
            }
        }
        prop_assert_eq!(rewire(&h, &s.inverse()).unwrap(), g);
        prop_assert_eq!(s.to_string().parse::<RewireSpec>().unwrap(), s);
    }
}
