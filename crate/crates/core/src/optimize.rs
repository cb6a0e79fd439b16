//! Demand-driven roadmap optimization.
//!
//! For every pair of interaction points with positive demand a set of
//! loopless paths is found with a penalized variant of Yen's algorithm. The
//! union of those paths is kept, crossing edges are resolved by their
//! importance factor, and the result is structurally refined.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::edges::NodeClearance;
use crate::error::{Error, Result};
use crate::geometry::{self, Point, Segment, GEO_TOL};
use crate::graph::{self, Graph, Mask};
use crate::model::{Environment, NodeKind, Roadmap, TransportMatrix};

/// Edge-cost penalty and path-count rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenaltyPolicy {
    /// Cost of an edge is `length * base^u` where `u` counts its uses in the
    /// paths already accepted for the current pair.
    pub base: f64,
    /// Upper bound on paths per pair.
    pub k_max: u32,
    /// Demand is multiplied by this before choosing `k` (the length of the
    /// time unit the matrix refers to).
    pub time_unit_scale: f64,
}

impl Default for PenaltyPolicy {
    fn default() -> Self {
        PenaltyPolicy {
            base: 1.1,
            k_max: 5,
            time_unit_scale: 1.0,
        }
    }
}

impl PenaltyPolicy {
    /// Plain Yen: no penalty, so the `k` shortest loopless paths are returned.
    pub fn unpenalized(k_max: u32) -> Self {
        PenaltyPolicy {
            base: 1.0,
            k_max,
            time_unit_scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.base >= 1.0 && self.base.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "penalty base must be >= 1, got {}",
                self.base
            )));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidParameter("k_max must be at least 1".into()));
        }
        if !(self.time_unit_scale > 0.0 && self.time_unit_scale.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "time unit scale must be positive, got {}",
                self.time_unit_scale
            )));
        }
        Ok(())
    }
}

/// Number of redundant paths for a pair with `demand` tasks per time unit.
pub fn select_k(demand: u32, policy: &PenaltyPolicy) -> usize {
    let scaled = libm::round(demand as f64 * policy.time_unit_scale).max(1.0);
    (scaled as u64).min(policy.k_max as u64).max(1) as usize
}

/// Loopless path with its geometric length.
#[derive(Clone, Debug, PartialEq)]
pub struct KPath {
    pub nodes: Vec<usize>,
    pub length: f64,
}

/// Up to `k` loopless `s`-`t` paths in the order they were accepted.
///
/// After each accepted path the cost of every edge becomes
/// `length * base^u`, with `u` the number of accepted paths of this search
/// that use it; pending candidates are re-priced with the new costs. With
/// `base == 1` this is Yen's algorithm.
pub fn yen_k_shortest(rm: &Roadmap, s: usize, t: usize, k: usize, policy: &PenaltyPolicy) -> Result<Vec<KPath>> {
    for id in [s, t] {
        if id >= rm.node_count() {
            return Err(Error::NodeOutOfRange { id, len: rm.node_count() });
        }
    }
    if s == t {
        return Err(Error::InvalidParameter(alloc::format!("path endpoints coincide ({})", s)));
    }
    let g = rm.graph();
    let lengths = rm.lengths();
    let paths = yen_on_graph(&g, &lengths, s, t, k, policy.base);
    if paths.is_empty() {
        return Err(Error::Unreachable {
            from: s.to_string(),
            to: t.to_string(),
        });
    }
    Ok(paths)
}

fn path_cost(edges: &[usize], lengths: &[f64], usage: &[u32], base: f64) -> f64 {
    edges.iter().map(|&e| lengths[e] * libm::pow(base, usage[e] as f64)).sum()
}

pub(crate) fn yen_on_graph(g: &Graph, lengths: &[f64], s: usize, t: usize, k: usize, base: f64) -> Vec<KPath> {
    let mut usage = vec![0u32; g.edge_count()];
    let mut accepted: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();

    match graph::shortest_path(g, lengths, s, t, Mask::default()) {
        Some((_, nodes)) => {
            let edges = graph::path_edges(g, &nodes).expect("path follows edges");
            seen.insert(nodes.clone());
            accepted.push((nodes, edges));
        }
        None => return Vec::new(),
    }

    let mut banned_nodes = vec![false; g.node_count()];
    let mut banned_edges = vec![false; g.edge_count()];
    let mut costs = vec![0.0; g.edge_count()];

    while accepted.len() < k {
        let (last_nodes, last_edges) = accepted.last().cloned().expect("non-empty");
        for &e in &last_edges {
            usage[e] += 1;
        }
        for (c, (&l, &u)) in costs.iter_mut().zip(lengths.iter().zip(&usage)) {
            *c = l * libm::pow(base, u as f64);
        }

        for i in 0..last_nodes.len() - 1 {
            let spur = last_nodes[i];
            let root = &last_nodes[..=i];
            banned_nodes.iter_mut().for_each(|b| *b = false);
            banned_edges.iter_mut().for_each(|b| *b = false);
            for (p, pe) in &accepted {
                if p.len() > i + 1 && &p[..=i] == root {
                    banned_edges[pe[i]] = true;
                }
            }
            for &v in &root[..i] {
                banned_nodes[v] = true;
            }
            let mask = Mask {
                nodes: Some(&banned_nodes),
                edges: Some(&banned_edges),
            };
            if let Some((_, spur_path)) = graph::shortest_path(g, &costs, spur, t, mask) {
                let mut nodes = root[..i].to_vec();
                nodes.extend_from_slice(&spur_path);
                if seen.insert(nodes.clone()) {
                    let edges = graph::path_edges(g, &nodes).expect("path follows edges");
                    candidates.push((nodes, edges));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let best = candidates
            .iter()
            .enumerate()
            .map(|(idx, (n, e))| (idx, path_cost(e, lengths, &usage, base), n))
            .min_by(|a, b| {
                a.1.total_cmp(&b.1)
                    .then(a.2.len().cmp(&b.2.len()))
                    .then_with(|| a.2.cmp(b.2))
            })
            .map(|(idx, _, _)| idx)
            .expect("non-empty");
        accepted.push(candidates.swap_remove(best));
    }

    accepted
        .into_iter()
        .map(|(nodes, edges)| KPath {
            length: edges.iter().map(|&e| lengths[e]).sum(),
            nodes,
        })
        .collect()
}

/// Paths found for one directed demand pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairPaths {
    /// Interaction-point indices.
    pub from: usize,
    pub to: usize,
    pub demand: u32,
    pub paths: Vec<KPath>,
}

/// All demand paths with the global edge usage counter.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PathSet {
    pub pairs: Vec<PairPaths>,
    usage: BTreeMap<(usize, usize), u32>,
    nodes: BTreeSet<usize>,
}

impl PathSet {
    /// Global usage of edge `a`-`b` (0 if unused).
    pub fn usage(&self, a: usize, b: usize) -> u32 {
        self.usage.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    /// Used edges as `(a, b) -> u(e)` with `a < b`.
    pub fn edge_usage(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.usage
    }

    /// Nodes on at least one path.
    pub fn used_nodes(&self) -> &BTreeSet<usize> {
        &self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Sums edge occurrences over every path of every pair.
pub fn accumulate_usage(pairs: Vec<PairPaths>) -> PathSet {
    let mut usage = BTreeMap::new();
    let mut nodes = BTreeSet::new();
    for pp in &pairs {
        for p in &pp.paths {
            nodes.extend(p.nodes.iter().copied());
            for w in p.nodes.windows(2) {
                *usage.entry((w[0].min(w[1]), w[0].max(w[1]))).or_insert(0) += 1;
            }
        }
    }
    PathSet { pairs, usage, nodes }
}

/// Runs the penalized search for every directed demand pair, in row-major
/// order. `stations[i]` is the node of interaction point `i`.
pub fn demand_paths(
    rm: &Roadmap,
    env: &Environment,
    demand: &TransportMatrix,
    stations: &[usize],
    policy: &PenaltyPolicy,
) -> Result<PathSet> {
    policy.validate()?;
    let g = rm.graph();
    let lengths = rm.lengths();
    let ips = env.interaction_points();
    let mut pairs = Vec::new();
    for (i, j, t) in demand.demand_pairs() {
        let k = select_k(t, policy);
        let paths = yen_on_graph(&g, &lengths, stations[i], stations[j], k, policy.base);
        if paths.is_empty() {
            return Err(Error::Unreachable {
                from: ips[i].id.clone(),
                to: ips[j].id.clone(),
            });
        }
        pairs.push(PairPaths {
            from: i,
            to: j,
            demand: t,
            paths,
        });
    }
    Ok(accumulate_usage(pairs))
}

/// Keeps exactly the used nodes and edges plus every station node, with the
/// global usage stored on the edges.
pub fn prune_unused(rm: &Roadmap, ps: &PathSet) -> Roadmap {
    let keep_node: Vec<bool> = rm
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| n.kind == NodeKind::Station || ps.used_nodes().contains(&i))
        .collect();
    let keep_edge: Vec<bool> = rm.edges().iter().map(|e| ps.usage(e.a, e.b) > 0).collect();
    let mut with_usage = rm.clone();
    for (id, e) in rm.edges().iter().enumerate() {
        with_usage.set_usage(id, ps.usage(e.a, e.b));
    }
    with_usage.retain(&keep_node, &keep_edge)
}

/// All crossing edge pairs `(i, j)`, `i < j`.
pub fn crossing_pairs(rm: &Roadmap) -> Vec<(usize, usize)> {
    let segs: Vec<Segment> = (0..rm.edge_count()).map(|e| rm.segment(e)).collect();
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by(|&a, &b| segs[a].bbox().min.x.total_cmp(&segs[b].bbox().min.x).then(a.cmp(&b)));
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let bi = segs[i].bbox();
        for &j in &order[pos + 1..] {
            let bj = segs[j].bbox();
            if bj.min.x > bi.max.x + GEO_TOL {
                break;
            }
            if geometry::segments_cross(&segs[i], &segs[j]) {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Importance factor of every edge: own usage minus the usage of all
/// crossing edges that are still alive.
pub fn importance(rm: &Roadmap, crossings: &[(usize, usize)], alive: &[bool]) -> Vec<i64> {
    let mut imp: Vec<i64> = rm.edges().iter().map(|e| e.usage as i64).collect();
    for &(a, b) in crossings {
        if alive[a] && alive[b] {
            imp[a] -= rm.edges()[b].usage as i64;
            imp[b] -= rm.edges()[a].usage as i64;
        }
    }
    imp
}

/// Removes crossings group by group until the roadmap is planar.
///
/// A conflict group is a connected component of the crossing relation among
/// surviving edges. In each group the edge with the highest importance is
/// kept (ties: higher usage, then smaller edge id) and every edge crossing it
/// is removed; importance is recomputed before the next round.
pub fn planarize(rm: &Roadmap) -> Roadmap {
    let m = rm.edge_count();
    let crossings = crossing_pairs(rm);
    let mut alive = vec![true; m];
    loop {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(a, b) in &crossings {
            if alive[a] && alive[b] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        if adj.iter().all(Vec::is_empty) {
            break;
        }
        let imp = importance(rm, &crossings, &alive);
        let mut group_of = vec![usize::MAX; m];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in 0..m {
            if adj[start].is_empty() || group_of[start] != usize::MAX {
                continue;
            }
            let gid = groups.len();
            let mut members = vec![start];
            group_of[start] = gid;
            let mut k = 0;
            while k < members.len() {
                let e = members[k];
                for &f in &adj[e] {
                    if group_of[f] == usize::MAX {
                        group_of[f] = gid;
                        members.push(f);
                    }
                }
                k += 1;
            }
            groups.push(members);
        }
        for members in &groups {
            let keep = *members
                .iter()
                .max_by(|&&a, &&b| {
                    imp[a]
                        .cmp(&imp[b])
                        .then(rm.edges()[a].usage.cmp(&rm.edges()[b].usage))
                        .then(b.cmp(&a))
                })
                .expect("non-empty group");
            for &f in &adj[keep] {
                alive[f] = false;
            }
        }
    }
    rm.retain(&vec![true; rm.node_count()], &alive)
}

/// Demand pairs (as interaction-point id strings) that `rm` does not connect.
pub fn disconnected_pairs(rm: &Roadmap, env: &Environment, demand: &TransportMatrix) -> Result<Vec<(usize, usize)>> {
    let ips = env.interaction_points();
    let stations = rm.locate_stations(&ips)?;
    let g = rm.graph();
    let mut reach: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, j, _) in demand.demand_pairs() {
        let r = reach.entry(stations[i]).or_insert_with(|| g.reachable(stations[i]));
        if !r[stations[j]] {
            out.push((i, j));
        }
    }
    Ok(out)
}

/// Mutable working copy used by [`refine`].
struct Work {
    pos: Vec<Point>,
    kind: Vec<NodeKind>,
    alive: Vec<bool>,
    edges: BTreeMap<(usize, usize), u32>,
    adj: Vec<BTreeSet<usize>>,
}

impl Work {
    fn from_roadmap(rm: &Roadmap) -> Work {
        let mut adj = vec![BTreeSet::new(); rm.node_count()];
        let mut edges = BTreeMap::new();
        for e in rm.edges() {
            adj[e.a].insert(e.b);
            adj[e.b].insert(e.a);
            edges.insert((e.a, e.b), e.usage);
        }
        Work {
            pos: rm.nodes().iter().map(|n| n.pos).collect(),
            kind: rm.nodes().iter().map(|n| n.kind).collect(),
            alive: vec![true; rm.node_count()],
            edges,
            adj,
        }
    }

    fn add_node(&mut self, p: Point, kind: NodeKind) -> usize {
        self.pos.push(p);
        self.kind.push(kind);
        self.alive.push(true);
        self.adj.push(BTreeSet::new());
        self.pos.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, usage: u32) {
        self.edges.insert((a.min(b), a.max(b)), usage);
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    fn remove_edge(&mut self, a: usize, b: usize) -> u32 {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        self.edges.remove(&(a.min(b), a.max(b))).unwrap_or(0)
    }

    fn remove_node(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        for w in nbrs {
            self.remove_edge(v, w);
        }
        self.alive[v] = false;
    }

    fn removable(&self, v: usize) -> bool {
        self.alive[v] && self.kind[v] != NodeKind::Station
    }

    fn into_roadmap(self) -> Roadmap {
        let mut remap = vec![usize::MAX; self.pos.len()];
        let mut rm = Roadmap::new();
        for v in 0..self.pos.len() {
            if self.alive[v] {
                remap[v] = rm.add_node(self.pos[v], self.kind[v]);
            }
        }
        for (&(a, b), &u) in &self.edges {
            rm.add_edge(remap[a], remap[b], u).expect("work graph is simple");
        }
        rm
    }
}

/// Maximal chain of degree-2 non-station nodes between two end nodes.
#[derive(Clone, Debug, PartialEq)]
struct Chain {
    ends: (usize, usize),
    interior: Vec<usize>,
}

fn find_chains(w: &Work) -> Vec<Chain> {
    let is_inner = |v: usize| w.removable(v) && w.adj[v].len() == 2;
    let mut visited = vec![false; w.pos.len()];
    let mut chains = Vec::new();
    for v in 0..w.pos.len() {
        if !is_inner(v) || visited[v] {
            continue;
        }
        // walk both directions from v
        let mut sides: Vec<(Vec<usize>, usize)> = Vec::new();
        let nbrs: Vec<usize> = w.adj[v].iter().copied().collect();
        visited[v] = true;
        let mut cyclic = false;
        for &first in &nbrs {
            let mut prev = v;
            let mut cur = first;
            let mut run = Vec::new();
            while is_inner(cur) && cur != v {
                visited[cur] = true;
                run.push(cur);
                let next = *w.adj[cur].iter().find(|&&x| x != prev).expect("degree 2");
                prev = cur;
                cur = next;
            }
            if cur == v {
                cyclic = true;
                break;
            }
            sides.push((run, cur));
        }
        if cyclic {
            continue;
        }
        let (mut left, a) = sides.remove(0);
        let (right, b) = sides.remove(0);
        left.reverse();
        left.push(v);
        left.extend(right);
        chains.push(Chain { ends: (a, b), interior: left });
    }
    chains
}

/// Structural refinement of a planar roadmap.
///
/// 1. Non-station nodes of degree at most one are removed until none is left.
/// 2. Every maximal chain of degree-2 non-station nodes is replaced by the
///    straight edge between its ends when that edge is free, keeps the
///    node-edge distance to all other nodes and crosses no edge. Nodes are
///    then reinserted along it at the largest equal subdivision whose spacing
///    and clearances still hold.
pub fn refine(rm: &Roadmap, env: &Environment) -> Roadmap {
    let c = env.constraints();
    let fs = env.free_space();
    let mut w = Work::from_roadmap(rm);

    // (i) dead ends
    let mut stack: Vec<usize> = (0..w.pos.len()).filter(|&v| w.removable(v) && w.adj[v].len() <= 1).collect();
    while let Some(v) = stack.pop() {
        if !w.removable(v) || w.adj[v].len() > 1 {
            continue;
        }
        let nbrs: Vec<usize> = w.adj[v].iter().copied().collect();
        w.remove_node(v);
        for n in nbrs {
            if w.removable(n) && w.adj[n].len() <= 1 {
                stack.push(n);
            }
        }
    }

    // (ii) chains
    for chain in find_chains(&w) {
        let (a, b) = chain.ends;
        if a == b || w.adj[a].contains(&b) {
            continue;
        }
        let seg = Segment::new(w.pos[a], w.pos[b]);
        if !geometry::segment_in_free_space(&seg, fs) {
            continue;
        }
        let others: Vec<usize> = (0..w.pos.len())
            .filter(|&v| w.alive[v] && v != a && v != b && !chain.interior.contains(&v))
            .collect();
        let clear = others
            .iter()
            .all(|&v| geometry::segment_point_distance(&seg, w.pos[v]) >= c.d_ve_min() - GEO_TOL);
        if !clear {
            continue;
        }
        let mut path = vec![a];
        path.extend(&chain.interior);
        path.push(b);
        let chain_edges: BTreeSet<(usize, usize)> = path.windows(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        let crosses = w.edges.keys().any(|&(x, y)| {
            !chain_edges.contains(&(x, y)) && geometry::segments_cross(&seg, &Segment::new(w.pos[x], w.pos[y]))
        });
        if crosses {
            continue;
        }

        let mut usage = 0;
        for p in path.windows(2) {
            usage = usage.max(w.remove_edge(p[0], p[1]));
        }
        for &v in &chain.interior {
            w.remove_node(v);
        }

        let inserted = subdivision(&w, &seg, a, b, c.d_v_min(), c.d_ve_min());
        let mut prev = a;
        for p in inserted {
            let v = w.add_node(p, NodeKind::Reinserted);
            w.add_edge(prev, v, usage);
            prev = v;
        }
        w.add_edge(prev, b, usage);
    }
    w.into_roadmap()
}

/// Interior points of the finest equal subdivision of `seg` whose points
/// keep `d_v_min` to all live nodes and `d_ve_min` to all live edges.
fn subdivision(w: &Work, seg: &Segment, a: usize, b: usize, d_v_min: f64, d_ve_min: f64) -> Vec<Point> {
    let len = seg.length();
    let max_parts = libm::floor(len / d_v_min + 1e-12) as usize;
    let live: Vec<Point> = (0..w.pos.len()).filter(|&v| w.alive[v]).map(|v| w.pos[v]).collect();
    let nodes = NodeClearance::new(&live, d_v_min);
    let edge_segs: Vec<Segment> = w
        .edges
        .keys()
        .filter(|&&(x, y)| !(x == a && y == b) && !(x == b && y == a))
        .map(|&(x, y)| Segment::new(w.pos[x], w.pos[y]))
        .collect();
    for parts in (2..=max_parts).rev() {
        let pts: Vec<Point> = (1..parts).map(|k| seg.a.lerp(seg.b, k as f64 / parts as f64)).collect();
        let ok = pts.iter().all(|&p| {
            let probe = Segment::new(p, p);
            nodes.clear(&probe, &[])
                && edge_segs
                    .iter()
                    .all(|s| geometry::segment_point_distance(s, p) >= d_ve_min - GEO_TOL)
        });
        if ok {
            return pts;
        }
    }
    Vec::new()
}

/// Intermediate and final roadmaps of [`optimize_roadmap`].
#[derive(Clone, Debug)]
pub struct Optimized {
    pub paths: PathSet,
    /// Unused nodes and edges removed.
    pub reduced: Roadmap,
    /// Crossings removed.
    pub planar: Roadmap,
    /// Refined final roadmap.
    pub optimized: Roadmap,
}

/// Paths, pruning, planarization and refinement. Fails if planarization
/// disconnects a demand pair.
pub fn optimize_roadmap(
    full: &Roadmap,
    demand: &TransportMatrix,
    env: &Environment,
    policy: &PenaltyPolicy,
) -> Result<Optimized> {
    let ips = env.interaction_points();
    let stations = full.locate_stations(&ips)?;
    let paths = demand_paths(full, env, demand, &stations, policy)?;
    let reduced = prune_unused(full, &paths);
    let planar = planarize(&reduced);
    if let Some(&(i, j)) = disconnected_pairs(&planar, env, demand)?.first() {
        return Err(Error::Unreachable {
            from: ips[i].id.clone(),
            to: ips[j].id.clone(),
        });
    }
    let optimized = refine(&planar, env);
    Ok(Optimized {
        paths,
        reduced,
        planar,
        optimized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Node;

    fn grid_node(x: f64, y: f64) -> Node {
        Node {
            pos: Point::new(x, y),
            kind: NodeKind::Grid,
        }
    }

    fn station(x: f64, y: f64) -> Node {
        Node {
            pos: Point::new(x, y),
            kind: NodeKind::Station,
        }
    }

    #[test]
    fn k_rule() {
        let p = PenaltyPolicy::default();
        assert_eq!(select_k(3, &p), 3);
        assert_eq!(select_k(1, &p), 1);
        assert_eq!(select_k(12, &p), 5);
        let half = PenaltyPolicy {
            time_unit_scale: 0.5,
            ..p
        };
        assert_eq!(select_k(1, &half), 1);
        assert_eq!(select_k(4, &half), 2);
    }

    /// s=0, a=1, t=2, b=3: s-a-t has length 2, s-b-t has length 2.2.
    fn diamond() -> Roadmap {
        let nodes = vec![station(0.0, 0.0), grid_node(1.0, 0.0), station(2.0, 0.0), grid_node(1.0, 0.458_257_569_495_584)];
        Roadmap::from_parts(nodes, &[(0, 1, 0), (1, 2, 0), (0, 3, 0), (3, 2, 0)]).unwrap()
    }

    #[test]
    fn first_path_is_the_shortest() {
        let rm = diamond();
        let p = yen_k_shortest(&rm, 0, 2, 1, &PenaltyPolicy::default()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].nodes, vec![0, 1, 2]);
        assert!((p[0].length - 2.0).abs() < 1e-12);
    }

    #[test]
    fn diamond_second_path_avoids_used_edges() {
        let rm = diamond();
        assert!((rm.edges()[2].length + rm.edges()[3].length - 2.2).abs() < 1e-12);
        let p = yen_k_shortest(&rm, 0, 2, 2, &PenaltyPolicy::default()).unwrap();
        assert_eq!(p[1].nodes, vec![0, 3, 2]);
    }

    #[test]
    fn exhausted_alternatives() {
        let rm = diamond();
        let p = yen_k_shortest(&rm, 0, 2, 3, &PenaltyPolicy::default()).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn yen_errors() {
        let rm = diamond();
        assert!(matches!(yen_k_shortest(&rm, 0, 9, 1, &PenaltyPolicy::default()), Err(Error::NodeOutOfRange { .. })));
        let split = Roadmap::from_parts(vec![station(0.0, 0.0), station(5.0, 0.0)], &[]).unwrap();
        assert!(matches!(yen_k_shortest(&split, 0, 1, 1, &PenaltyPolicy::default()), Err(Error::Unreachable { .. })));
    }

    #[test]
    fn penalty_prefers_disjoint_routes() {
        // a long shared corridor where the penalty is not enough to detour
        // and a short branch where it is
        let rm = diamond();
        let strict = PenaltyPolicy { base: 1.0, ..PenaltyPolicy::default() };
        let p = yen_k_shortest(&rm, 0, 2, 2, &strict).unwrap();
        assert_eq!(p[1].nodes, vec![0, 3, 2]);
    }

    #[test]
    fn usage_counting() {
        let single = accumulate_usage(vec![PairPaths {
            from: 0,
            to: 1,
            demand: 1,
            paths: vec![KPath { nodes: vec![0, 1, 2, 3], length: 3.0 }],
        }]);
        assert_eq!(single.usage(0, 1), 1);
        assert_eq!(single.usage(2, 1), 1);
        assert_eq!(single.usage(3, 2), 1);

        let corridor = |from, to, a, b| PairPaths {
            from,
            to,
            demand: 2,
            paths: vec![KPath { nodes: vec![a, 5, 6, b], length: 0.0 }, KPath { nodes: vec![a, 7, 5, 6, 8, b], length: 0.0 }],
        };
        let two = accumulate_usage(vec![corridor(0, 1, 0, 1), corridor(2, 3, 2, 3)]);
        assert_eq!(two.usage(5, 6), 4);
        assert!(accumulate_usage(Vec::new()).edge_usage().is_empty());
    }

    #[test]
    fn importance_of_two_crossing_edges() {
        let nodes = vec![grid_node(0.0, 0.0), grid_node(2.0, 2.0), grid_node(0.0, 2.0), grid_node(2.0, 0.0)];
        let rm = Roadmap::from_parts(nodes, &[(0, 1, 5), (2, 3, 2)]).unwrap();
        let cr = crossing_pairs(&rm);
        assert_eq!(cr, vec![(0, 1)]);
        assert_eq!(importance(&rm, &cr, &[true, true]), vec![3, -3]);
        let out = planarize(&rm);
        assert_eq!(out.edge_count(), 1);
        assert_eq!(out.edges()[0].usage, 5);
    }

    #[test]
    fn three_mutually_crossing_edges() {
        // three diameters of a hexagon
        let mut nodes = Vec::new();
        for k in 0..6 {
            let a = core::f64::consts::PI / 3.0 * k as f64;
            nodes.push(grid_node(5.0 * libm::cos(a), 5.0 * libm::sin(a)));
        }
        let rm = Roadmap::from_parts(nodes, &[(0, 3, 4), (1, 4, 3), (2, 5, 3)]).unwrap();
        let cr = crossing_pairs(&rm);
        assert_eq!(cr.len(), 3);
        assert_eq!(importance(&rm, &cr, &[true; 3]), vec![-2, -4, -4]);
        let out = planarize(&rm);
        assert_eq!(out.edge_count(), 1);
        assert_eq!(out.edges()[0].usage, 4);
    }

    #[test]
    fn planar_input_is_unchanged() {
        let rm = diamond();
        assert_eq!(planarize(&rm), rm);
    }

    #[test]
    fn prune_keeps_used_elements_and_stations() {
        let mut nodes = vec![station(0.0, 0.0), station(6.0, 0.0), station(0.0, 6.0)];
        nodes.push(grid_node(3.0, 0.0));
        nodes.push(grid_node(3.0, 3.0));
        let rm = Roadmap::from_parts(nodes, &[(0, 3, 0), (3, 1, 0), (0, 4, 0), (4, 1, 0)]).unwrap();
        let ps = accumulate_usage(vec![PairPaths {
            from: 0,
            to: 1,
            demand: 1,
            paths: vec![KPath { nodes: vec![0, 3, 1], length: 6.0 }],
        }]);
        let out = prune_unused(&rm, &ps);
        // station 2 is unused but kept, node 4 and its edges go
        assert_eq!(out.node_count(), 4);
        assert_eq!(out.edge_count(), 2);
        assert!(out.edges().iter().all(|e| e.usage == 1));
    }
}
