mod common;

use common::{brute_edge_connectivity, brute_node_connectivity, hall_for, random_demand, random_roadmap, rng};
use proptest::prelude::*;
use rand::Rng;
use roadmap_core::graph::{self, Graph, Mask};
use roadmap_core::metrics::{
    algebraic_connectivity, astar, kansky_counts, local_connectivity, mean_connectivity, ConnectivityMode,
};
use roadmap_core::{Node, NodeKind, Point, Roadmap};

#[test]
fn connectivity_matches_exhaustive_removal() {
    let mut r = rng(5);
    for round in 0..50 {
        let n = r.gen_range(3..=8);
        let rm = random_roadmap(&mut r, n, 0.45);
        let g = rm.graph();
        let env = hall_for(&rm);
        let demand = random_demand(&mut r, n, 0.5, 2);
        for mode in [ConnectivityMode::Node, ConnectivityMode::Edge] {
            let pairs = demand.unordered_pairs();
            let expected: usize = pairs
                .iter()
                .map(|&(i, j)| match mode {
                    ConnectivityMode::Node => brute_node_connectivity(&g, i, j),
                    ConnectivityMode::Edge => brute_edge_connectivity(&g, i, j),
                })
                .sum();
            let got = mean_connectivity(&rm, &env, &demand, mode).unwrap();
            let mean = if pairs.is_empty() { 0.0 } else { expected as f64 / pairs.len() as f64 };
            assert_eq!(got.mean, mean, "round {round} {mode:?}");
        }
        for s in 0..n {
            for t in s + 1..n {
                let kn = local_connectivity(&g, s, t, ConnectivityMode::Node);
                let ke = local_connectivity(&g, s, t, ConnectivityMode::Edge);
                assert!(kn <= ke && ke <= g.degree(s).min(g.degree(t)));
            }
        }
    }
}

#[test]
fn astar_agrees_with_dijkstra() {
    let mut r = rng(9);
    for _ in 0..100 {
        let n = r.gen_range(3..=15);
        let rm = random_roadmap(&mut r, n, 0.3);
        let g = rm.graph();
        let pos: Vec<Point> = rm.nodes().iter().map(|n| n.pos).collect();
        let w = rm.lengths();
        let (dist, _) = graph::dijkstra(&g, &w, 0, None, Mask::default());
        for t in 1..n {
            let a = astar(&g, &pos, &w, 0, t, true);
            let d = astar(&g, &pos, &w, 0, t, false);
            match (a, d) {
                (Some(a), Some(d)) => {
                    assert!((a.length - dist[t]).abs() < 1e-9);
                    assert!((d.length - dist[t]).abs() < 1e-9);
                    assert!(a.expansions <= d.expansions);
                }
                (None, None) => assert!(dist[t].is_infinite()),
                _ => panic!("A* and Dijkstra disagree on reachability"),
            }
        }
    }
}

fn roadmap_of(n: usize, edges: &[(usize, usize)]) -> Roadmap {
    let nodes = (0..n)
        .map(|i| Node {
            pos: Point::new(i as f64 * 2.0, (i % 3) as f64),
            kind: NodeKind::Grid,
        })
        .collect::<Vec<_>>();
    let e: Vec<_> = edges.iter().map(|&(a, b)| (a, b, 0)).collect();
    Roadmap::from_parts(nodes, &e).unwrap()
}

#[test]
fn eigenvalue_closed_forms() {
    assert!((algebraic_connectivity(&roadmap_of(2, &[(0, 1)])) - 2.0).abs() < 1e-8);
    assert!((algebraic_connectivity(&roadmap_of(3, &[(0, 1), (1, 2)])) - 1.0).abs() < 1e-8);
    for n in 2..=6 {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        assert!((algebraic_connectivity(&roadmap_of(n, &e)) - n as f64).abs() < 1e-8);
    }
    assert_eq!(algebraic_connectivity(&roadmap_of(2, &[])), 0.0);
    assert_eq!(algebraic_connectivity(&roadmap_of(4, &[(0, 1), (2, 3)])), 0.0);
    // cycle C_n: 2 - 2 cos(2 pi / n)
    for n in [5, 8, 13] {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).map(|(a, b)| (a.min(b), a.max(b))).collect();
        let exact = 2.0 - 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
        assert!((algebraic_connectivity(&roadmap_of(n, &e)) - exact).abs() < 1e-8);
    }
}

#[test]
fn kansky_values_for_all_reference_pairs() {
    for (v, e, a, b, g) in [
        (44usize, 64usize, 0.253, 1.454, 0.508),
        (94, 157, 0.350, 1.670, 0.569),
        (250, 351, 0.206, 1.404, 0.471),
    ] {
        let k = kansky_counts(v, e).unwrap();
        for (got, want) in [(k.alpha, a), (k.beta, b), (k.gamma, g)] {
            assert!((got - want).abs() <= 1e-3, "{v}/{e}: {got} vs {want}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fiedler_value_sign_tracks_connectivity(seed in 0u64..10_000, n in 2usize..12, p in 0.05f64..0.9) {
        let mut r = rng(seed);
        let rm = random_roadmap(&mut r, n, p);
        let l2 = algebraic_connectivity(&rm);
        prop_assert!(l2 >= 0.0);
        prop_assert_eq!(l2 > 1e-9, rm.graph().is_connected());
    }

    #[test]
    fn kansky_formulas(v in 3usize..500, e in 0usize..1500) {
        let k = kansky_counts(v, e).unwrap();
        let (vf, ef) = (v as f64, e as f64);
        prop_assert!((k.beta * vf - ef).abs() < 1e-9);
        prop_assert!((k.gamma * 3.0 * (vf - 2.0) - ef).abs() < 1e-9);
        prop_assert!((k.alpha * (2.0 * vf - 5.0) - (ef - vf + 1.0)).abs() < 1e-9);
    }
}

#[test]
fn node_split_counts_direct_edge_once() {
    let g = Graph::new(3, &[(0, 1), (0, 2), (2, 1)]);
    assert_eq!(local_connectivity(&g, 0, 1, ConnectivityMode::Node), 2);
    assert_eq!(brute_node_connectivity(&g, 0, 1), 2);
}
