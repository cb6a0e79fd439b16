//! Brute-force oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roadmap_core::graph::Graph;
use roadmap_core::{
    Environment, InteractionPoint, Node, NodeKind, Point, Polygon, Roadmap, Robot, Station, TransportMatrix,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Polygon {
    Polygon::new(vec![
        Point::new(x0, y0),
        Point::new(x1, y0),
        Point::new(x1, y1),
        Point::new(x0, y1),
    ])
    .unwrap()
}

/// `n` points in `[lo, hi]^2` at least `spacing` apart.
pub fn spaced_points(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64, spacing: f64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < n {
        let p = Point::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        if pts.iter().all(|q| q.dist(p) >= spacing) {
            pts.push(p);
        }
    }
    pts
}

/// Random graph on random points; each pair is an edge with probability `p`.
pub fn random_roadmap(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Roadmap {
    let pts = spaced_points(rng, n, 1.0, 29.0, 1.5);
    let nodes = pts
        .iter()
        .map(|&pos| Node {
            pos,
            kind: NodeKind::Station,
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b, 0));
            }
        }
    }
    Roadmap::from_parts(nodes, &edges).unwrap()
}

/// Open 30 x 30 hall with one interaction point on every node of `rm`.
pub fn hall_for(rm: &Roadmap) -> Environment {
    let stations = rm
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| Station {
            id: format!("n{i}"),
            footprint: None,
            interaction_points: vec![InteractionPoint {
                id: format!("n{i}"),
                pos: n.pos,
            }],
            is_obstacle: false,
        })
        .collect();
    Environment::new(rect(0.0, 0.0, 30.0, 30.0), vec![], stations, Robot::default()).unwrap()
}

pub fn random_demand(rng: &mut ChaCha8Rng, n: usize, p: f64, max: i64) -> TransportMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i != j && rng.gen_bool(p) { rng.gen_range(1..=max) } else { 0 })
                .collect()
        })
        .collect();
    TransportMatrix::new(&rows, n).unwrap()
}

/// Every loopless `s`-`t` path.
pub fn simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, t: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for &(w, _) in g.neighbors(v) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                walk(g, t, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.node_count()];
    on[s] = true;
    walk(g, t, &mut vec![s], &mut on, &mut out);
    out
}

pub fn path_length(rm: &Roadmap, path: &[usize]) -> f64 {
    path.windows(2).map(|w| rm.edges()[rm.edge_id(w[0], w[1]).unwrap()].length).sum()
}

/// The `k` shortest loopless paths by (length, node count, lexicographic).
pub fn brute_k_shortest(rm: &Roadmap, s: usize, t: usize, k: usize) -> Vec<(Vec<usize>, f64)> {
    let mut all: Vec<(Vec<usize>, f64)> = simple_paths(&rm.graph(), s, t)
        .into_iter()
        .map(|p| {
            let l = path_length(rm, &p);
            (p, l)
        })
        .collect();
    all.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.len().cmp(&b.0.len())).then_with(|| a.0.cmp(&b.0)));
    all.truncate(k);
    all
}

fn connected_without(g: &Graph, s: usize, t: usize, node_out: &[bool], edge_out: &[bool]) -> bool {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(v) = stack.pop() {
        if v == t {
            return true;
        }
        for &(w, e) in g.neighbors(v) {
            if !seen[w] && !node_out[w] && !edge_out[e] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::new(), f)
}

/// Smallest number of edges whose removal separates `s` and `t`.
pub fn brute_edge_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let m = g.edge_count();
    let nodes = vec![false; g.node_count()];
    for k in 0..=m {
        let found = combinations(m, k, &mut |cut| {
            let mut out = vec![false; m];
            cut.iter().for_each(|&e| out[e] = true);
            !connected_without(g, s, t, &nodes, &out)
        });
        if found {
            return k;
        }
    }
    unreachable!("removing every edge separates the pair")
}

/// One for a direct edge plus the smallest set of other nodes whose removal
/// separates `s` and `t` once that edge is gone.
pub fn brute_node_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.node_count();
    let mut edges_out = vec![false; g.edge_count()];
    let direct = g.edge_between(s, t);
    if let Some(e) = direct {
        edges_out[e] = true;
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    for k in 0..=others.len() {
        let found = combinations(others.len(), k, &mut |cut| {
            let mut out = vec![false; n];
            cut.iter().for_each(|&i| out[others[i]] = true);
            !connected_without(g, s, t, &out, &edges_out)
        });
        if found {
            return k + usize::from(direct.is_some());
        }
    }
    unreachable!("removing every other node separates a non-adjacent pair")
}

/// Small random environment: a box with a few rectangular obstacles and
/// three or four interaction points, every one reachable from the others.
pub fn random_small_env(seed: u64) -> (Environment, TransportMatrix) {
    let mut attempt = 0u64;
    loop {
        let mut r = rng(seed.wrapping_mul(7919).wrapping_add(attempt));
        attempt += 1;
        let w = r.gen_range(12.0..18.0);
        let h = r.gen_range(9.0..13.0);
        let mut obstacles = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            let ow = r.gen_range(1.0..4.0);
            let oh = r.gen_range(1.0..4.0);
            let x = r.gen_range(2.5..(w - 2.5 - ow));
            let y = r.gen_range(2.5..(h - 2.5 - oh));
            let o = rect(x, y, x + ow, y + oh);
            if obstacles.iter().all(|p: &Polygon| !p.bbox().expanded(0.5).intersects(&o.bbox())) {
                obstacles.push(o);
            }
        }
        let n = r.gen_range(3..=4);
        let boundary = rect(0.0, 0.0, w, h);
        let probe = match Environment::new(boundary.clone(), obstacles.clone(), vec![], Robot::default()) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let fs = probe.free_space();
        let mut ips: Vec<Point> = Vec::new();
        let mut tries = 0;
        while ips.len() < n && tries < 1000 {
            tries += 1;
            let p = Point::new(r.gen_range(0.7..w - 0.7), r.gen_range(0.7..h - 0.7));
            if roadmap_core::geometry::in_free_space(p, fs) && ips.iter().all(|q| q.dist(p) >= 3.0) {
                ips.push(p);
            }
        }
        if ips.len() < n {
            continue;
        }
        let stations = ips
            .iter()
            .enumerate()
            .map(|(i, &pos)| Station {
                id: format!("s{i}"),
                footprint: None,
                interaction_points: vec![InteractionPoint { id: format!("s{i}"), pos }],
                is_obstacle: false,
            })
            .collect();
        let env = Environment::new(boundary, obstacles, stations, Robot::default()).unwrap();
        let mut demand = random_demand(&mut r, n, 0.6, 3);
        if demand.demand_pairs().is_empty() {
            demand = TransportMatrix::uniform(n, 1);
        }
        if reachable_in_free_space(&env) {
            return (env, demand);
        }
    }
}

/// Whether all interaction points lie in one free-space component.
pub fn reachable_in_free_space(env: &Environment) -> bool {
    let fs = env.free_space();
    let mut pts: Vec<Point> = env.interaction_points().iter().map(|ip| ip.pos).collect();
    let n = pts.len();
    pts.extend(roadmap_core::geometry::corner_points(fs, std::f64::consts::PI / 12.0));
    let edges: Vec<(usize, usize)> = roadmap_core::geometry::visibility_graph(&pts, fs)
        .into_iter()
        .map(|(a, b, _)| (a, b))
        .collect();
    let g = Graph::new(pts.len(), &edges);
    let r = g.reachable(0);
    (0..n).all(|i| r[i])
}
