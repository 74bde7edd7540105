mod oracle;

use fixedbitset::FixedBitSet;
use num_traits::Zero;
use proptest::prelude::*;

use ltop_core::completion::nst::nst_lengths;
use ltop_core::cyclespace::{circuit_decomposition, cycle_basis, cycle_space_dimension, is_circuit, thin_sum, CircuitFamily, CycleSpaceElement};
use ltop_core::generators::build;
use ltop_core::linegraph::line_graph;
use ltop_core::metric::{dist, quotient, Point};
use ltop_core::tours::{euler_tour, odd_cut_check, verify_euler};
use ltop_core::{Rational, WeightedGraph};

use oracle::floyd_warshall;

type Raw = (usize, Vec<(usize, usize, i64, i64)>);

/// Multigraphs with loops on up to 7 vertices and rational lengths.
fn raw_graph() -> impl Strategy<Value = Raw> {
    (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 1i64..=20, 1i64..=6), 0..=14)))
}

fn rational_graph((n, es): &Raw) -> WeightedGraph<Rational> {
    WeightedGraph::from_edges(*n, &es.iter().map(|&(u, v, a, b)| (u, v, Rational::new(a, b))).collect::<Vec<_>>()).unwrap()
}

fn float_graph((n, es): &Raw) -> WeightedGraph<f64> {
    WeightedGraph::from_edges(*n, &es.iter().map(|&(u, v, a, b)| (u, v, a as f64 / b as f64)).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #[test]
    fn json_round_trip_is_identity(raw in raw_graph()) {
        let g = float_graph(&raw);
        let back = WeightedGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn distances_match_floyd_warshall(raw in raw_graph()) {
        let g = rational_graph(&raw);
        let edges: Vec<(usize, usize)> = raw.1.iter().map(|&(u, v, _, _)| (u, v)).collect();
        let lens: Vec<Rational> = g.edges().iter().map(|e| e.len).collect();
        let fw = floyd_warshall(raw.0, &edges, &lens);
        for x in 0..raw.0 {
            for y in 0..raw.0 {
                let d = dist(&g, &Point::Vertex(x), &Point::Vertex(y)).unwrap();
                prop_assert_eq!(d.value.finite().copied(), fw[x][y]);
            }
        }
    }

    #[test]
    fn points_inside_edges_obey_the_triangle_inequality(raw in raw_graph(), t in 1i64..8) {
        let g = rational_graph(&raw);
        prop_assume!(g.edge_count() > 0);
        let e = 0;
        let p = Point::OnEdge { edge: e, offset: g.edge(e).len * Rational::new(t, 8) };
        for x in 0..raw.0 {
            for y in 0..raw.0 {
                let (dxy, dxp, dpy) = (
                    dist(&g, &Point::Vertex(x), &Point::Vertex(y)).unwrap().value,
                    dist(&g, &Point::Vertex(x), &p).unwrap().value,
                    dist(&g, &p, &Point::Vertex(y)).unwrap().value,
                );
                if let (Some(a), Some(b), Some(c)) = (dxy.finite(), dxp.finite(), dpy.finite()) {
                    prop_assert!(*a <= *b + *c);
                }
            }
        }
    }

    #[test]
    fn line_graph_counts_and_lengths(raw in raw_graph()) {
        let g = rational_graph(&raw);
        prop_assume!(g.edge_count() > 0);
        let l = line_graph(&g).unwrap();
        prop_assert_eq!(l.vertex_count(), g.edge_count());
        let pairs: usize = (0..g.vertex_count()).map(|v| { let k = g.incident(v).len(); k * k.saturating_sub(1) / 2 }).sum();
        prop_assert_eq!(l.edge_count(), pairs);
        for le in l.edges() {
            let (a, b) = (g.edge(le.u).len, g.edge(le.v).len);
            prop_assert_eq!(le.len, (a + b) / Rational::from_integer(2));
        }
    }

    #[test]
    fn basis_has_the_right_dimension_and_consists_of_circuits(raw in raw_graph()) {
        let g = rational_graph(&raw);
        let basis = cycle_basis(&g);
        prop_assert_eq!(basis.len(), cycle_space_dimension(&g));
        let masks: Vec<FixedBitSet> = basis.iter().map(|b| b.edges.clone()).collect();
        prop_assert_eq!(ltop_core::cyclespace::gf2_rank(&masks), basis.len());
        for b in &basis {
            prop_assert!(is_circuit(&g, &b.edges).is_ok());
        }
    }

    #[test]
    fn decomposition_partitions_cycle_space_elements(raw in raw_graph(), pick in any::<u64>()) {
        let g = rational_graph(&raw);
        let basis = cycle_basis(&g);
        let mut z = CycleSpaceElement::empty(&g);
        for (i, b) in basis.iter().enumerate() {
            if pick >> (i % 64) & 1 == 1 {
                z = z.sum(b, &g);
            }
        }
        let fam = circuit_decomposition(&g, &z).unwrap();
        prop_assert!(fam.occurrences(g.edge_count()).iter().all(|&k| k <= 1));
        prop_assert_eq!(&fam.fold(&g).edges, &z.edges);
        prop_assert_eq!(fam.total_length(), z.length);
        let s = thin_sum(&g, &fam).unwrap();
        prop_assert_eq!(s.sum.edges, z.edges);
    }

    #[test]
    fn thin_sum_is_a_fold_of_symmetric_differences(raw in raw_graph(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let g = rational_graph(&raw);
        let basis = cycle_basis(&g);
        prop_assume!(!basis.is_empty());
        let circuits: Vec<_> = picks.iter().map(|i| basis[i.index(basis.len())].clone()).collect();
        let mut expect = vec![false; g.edge_count()];
        for c in &circuits {
            for e in c.edge_list() {
                expect[e] = !expect[e];
            }
        }
        let s = thin_sum(&g, &CircuitFamily { circuits }).unwrap();
        let got: Vec<bool> = (0..g.edge_count()).map(|e| s.sum.edges.contains(e)).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn euler_tours_exist_exactly_for_connected_even_graphs(raw in raw_graph()) {
        let g = rational_graph(&raw);
        let even = odd_cut_check(&g).pass;
        let connected = g.is_connected();
        match euler_tour(&g) {
            Ok(t) => {
                prop_assert!(even && connected);
                verify_euler(&g, &t.edges, t.start).unwrap();
            }
            Err(_) => prop_assert!(!(even && connected) || g.edge_count() == 0),
        }
    }

    #[test]
    fn nst_tree_distance_telescopes(parents in prop::collection::vec(any::<prop::sample::Index>(), 0..12), extra in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..12)) {
        // random tree plus extra non-loop edges
        let n = parents.len() + 1;
        let mut es: Vec<(usize, usize, f64)> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1, 1.0)).collect();
        es.extend(extra.iter().map(|(a, b)| (a.index(n), b.index(n), 1.0)).filter(|(a, b, _)| a != b));
        let g = WeightedGraph::from_edges(n, &es).unwrap();
        let a = nst_lengths::<Rational, f64>(&g, 0).unwrap();
        for x in 0..g.vertex_count() {
            let direct: Rational = a.path_to_root(&g, x).iter().map(|&e| a.lengths[e]).sum();
            prop_assert_eq!(a.tree_distance(&g, x, 0), direct);
            // closed form of the root path: 1 - 2^-level
            prop_assert_eq!(direct, Rational::from_integer(1) - Rational::new(1, 1 << a.level[x]));
        }
    }

    #[test]
    fn quotient_classes_coarsen_as_tau_grows(level in 1usize..6, k in 1i32..6) {
        let g = build("fan?leg=0.5&ray=0.75").unwrap();
        let fine = quotient(g.as_ref(), level, 2f64.powi(-k - 1));
        let coarse = quotient(g.as_ref(), level, 2f64.powi(-k));
        for class in &fine.classes {
            let c = coarse.class_of(&class[0]);
            prop_assert!(class.iter().all(|v| coarse.class_of(v) == c));
        }
    }

    #[test]
    fn truncations_are_nested(level in 0usize..6, name in prop::sample::select(vec!["ladder-strip", "double-ray", "hyperbolic-strip", "fan", "grid", "binary-tree", "antares"])) {
        let g = build(name).unwrap();
        let a = g.truncate(level);
        let b = g.truncate(level + 1);
        prop_assert!(a.graph.is_subgraph_of(&b.graph));
        prop_assert!(a.graph.total_length() <= b.graph.total_length());
        prop_assert!(!a.graph.total_length().is_zero() || a.graph.edge_count() == 0);
    }
}
