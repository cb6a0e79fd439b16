//! Graph-theoretical evaluation of roadmaps.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{self, Point};
use crate::graph::{self, Graph, Mask};
use crate::model::{Environment, Roadmap, TransportMatrix};

/// Arc step of the corner points used for the reference shortest paths.
pub const REFERENCE_ARC_STEP: f64 = core::f64::consts::PI / 12.0;

/// Size above which the eigensolver switches from dense to iterative.
pub const DENSE_EIGEN_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kansky {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Alpha, beta and gamma index from the node and edge counts.
pub fn kansky_counts(v: usize, e: usize) -> Result<Kansky> {
    if v < 3 {
        return Err(Error::TooFewNodes { needed: 3, got: v });
    }
    let (v, e) = (v as f64, e as f64);
    Ok(Kansky {
        alpha: (e - v + 1.0) / (2.0 * v - 5.0),
        beta: e / v,
        gamma: e / (3.0 * (v - 2.0)),
    })
}

pub fn kansky_indices(rm: &Roadmap) -> Result<Kansky> {
    kansky_counts(rm.node_count(), rm.edge_count())
}

/// Outcome of one best-first search.
#[derive(Clone, Debug, PartialEq)]
pub struct Search {
    pub length: f64,
    pub path: Vec<usize>,
    /// Nodes popped from the open set, goal included.
    pub expansions: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Open {
    f: f64,
    g: f64,
    node: usize,
}

impl Eq for Open {}

impl Ord for Open {
    // BinaryHeap is a max-heap: smallest f, then largest g, then smallest id
    fn cmp(&self, o: &Self) -> Ordering {
        o.f.total_cmp(&self.f)
            .then_with(|| self.g.total_cmp(&o.g))
            .then_with(|| o.node.cmp(&self.node))
    }
}

impl PartialOrd for Open {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A* from `s` to `t` with the Euclidean heuristic, or Dijkstra with the same
/// tie-breaking when `heuristic` is false.
pub fn astar(g: &Graph, pos: &[Point], lengths: &[f64], s: usize, t: usize, heuristic: bool) -> Option<Search> {
    let n = g.node_count();
    let h = |v: usize| if heuristic { pos[v].dist(pos[t]) } else { 0.0 };
    let mut best = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    best[s] = 0.0;
    open.push(Open { f: h(s), g: 0.0, node: s });
    let mut expansions = 0;
    while let Some(Open { g: cost, node, .. }) = open.pop() {
        if closed[node] || cost > best[node] {
            continue;
        }
        closed[node] = true;
        expansions += 1;
        if node == t {
            let mut path = vec![t];
            let mut v = t;
            while v != s {
                v = pred[v];
                path.push(v);
            }
            path.reverse();
            return Some(Search {
                length: cost,
                path,
                expansions,
            });
        }
        for &(w, e) in g.neighbors(node) {
            let c = cost + lengths[e];
            if !closed[w] && c < best[w] {
                best[w] = c;
                pred[w] = node;
                open.push(Open { f: c + h(w), g: c, node: w });
            }
        }
    }
    None
}

/// Total A* expansions over all directed demand pairs.
pub fn astar_expansions(rm: &Roadmap, env: &Environment, demand: &TransportMatrix) -> Result<usize> {
    let ips = env.interaction_points();
    let stations = rm.locate_stations(&ips)?;
    let g = rm.graph();
    let pos: Vec<Point> = rm.nodes().iter().map(|n| n.pos).collect();
    let lengths = rm.lengths();
    let mut total = 0;
    for (i, j, _) in demand.demand_pairs() {
        let found = astar(&g, &pos, &lengths, stations[i], stations[j], true).ok_or_else(|| Error::Unreachable {
            from: ips[i].id.clone(),
            to: ips[j].id.clone(),
        })?;
        total += found.expansions;
    }
    Ok(total)
}

/// Unit-capacity flow network.
struct FlowNet {
    // (to, capacity, index of reverse arc)
    adj: Vec<Vec<(usize, u32, usize)>>,
}

impl FlowNet {
    fn new(n: usize) -> FlowNet {
        FlowNet { adj: vec![Vec::new(); n] }
    }

    /// Arc `a -> b` with capacity `c` and reverse capacity `rc`.
    fn arc(&mut self, a: usize, b: usize, c: u32, rc: u32) {
        let ia = self.adj[a].len();
        let ib = self.adj[b].len();
        self.adj[a].push((b, c, ib));
        self.adj[b].push((a, rc, ia));
    }

    fn max_flow(&mut self, s: usize, t: usize, bound: u32) -> u32 {
        let n = self.adj.len();
        let mut flow = 0;
        while flow < bound {
            let mut from: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut queue = VecDeque::new();
            queue.push_back(s);
            let mut seen = vec![false; n];
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for (k, &(w, c, _)) in self.adj[v].iter().enumerate() {
                    if c > 0 && !seen[w] {
                        seen[w] = true;
                        from[w] = Some((v, k));
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while let Some((u, k)) = from[v] {
                let (_, _, rev) = self.adj[u][k];
                self.adj[u][k].1 -= 1;
                self.adj[v][rev].1 += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnectivityMode {
    Node,
    Edge,
}

/// Local connectivity between `s` and `t`: the number of edge-disjoint
/// (`Edge`) or internally node-disjoint (`Node`) paths. An edge `s`-`t` counts
/// as one node-disjoint path.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, mode: ConnectivityMode) -> usize {
    if s == t {
        return 0;
    }
    let bound = g.degree(s).min(g.degree(t)) as u32;
    let flow = match mode {
        ConnectivityMode::Edge => {
            let mut net = FlowNet::new(g.node_count());
            for e in 0..g.edge_count() {
                let (a, b) = g.edge(e);
                net.arc(a, b, 1, 1);
            }
            net.max_flow(s, t, bound)
        }
        ConnectivityMode::Node => {
            let n = g.node_count();
            let big = g.edge_count() as u32 + 1;
            let mut net = FlowNet::new(2 * n);
            for v in 0..n {
                let cap = if v == s || v == t { big } else { 1 };
                net.arc(2 * v, 2 * v + 1, cap, 0);
            }
            for e in 0..g.edge_count() {
                let (a, b) = g.edge(e);
                net.arc(2 * a + 1, 2 * b, 1, 0);
                net.arc(2 * b + 1, 2 * a, 1, 0);
            }
            net.max_flow(2 * s + 1, 2 * t, bound)
        }
    };
    flow as usize
}

/// Mean local connectivity over unordered demand pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityMean {
    pub mean: f64,
    /// Interaction-point index pairs with connectivity 0.
    pub disconnected: Vec<(usize, usize)>,
}

pub fn mean_connectivity(
    rm: &Roadmap,
    env: &Environment,
    demand: &TransportMatrix,
    mode: ConnectivityMode,
) -> Result<ConnectivityMean> {
    let stations = rm.locate_stations(&env.interaction_points())?;
    let g = rm.graph();
    let pairs = demand.unordered_pairs();
    let mut sum = 0usize;
    let mut disconnected = Vec::new();
    for &(i, j) in &pairs {
        let k = local_connectivity(&g, stations[i], stations[j], mode);
        if k == 0 {
            disconnected.push((i, j));
        }
        sum += k;
    }
    let mean = if pairs.is_empty() { 0.0 } else { sum as f64 / pairs.len() as f64 };
    Ok(ConnectivityMean { mean, disconnected })
}

/// Second-smallest eigenvalue of the combinatorial Laplacian; 0 for
/// disconnected graphs and graphs with fewer than two nodes.
pub fn algebraic_connectivity(rm: &Roadmap) -> f64 {
    let g = rm.graph();
    if g.node_count() < 2 || !g.is_connected() {
        return 0.0;
    }
    if g.node_count() <= DENSE_EIGEN_LIMIT {
        dense_fiedler_value(&g)
    } else {
        iterative_fiedler_value(&g, 1e-10, 10_000)
    }
}

fn laplacian(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut l = vec![vec![0.0; n]; n];
    for e in 0..g.edge_count() {
        let (a, b) = g.edge(e);
        l[a][b] -= 1.0;
        l[b][a] -= 1.0;
        l[a][a] += 1.0;
        l[b][b] += 1.0;
    }
    l
}

/// All eigenvalues of the Laplacian in ascending order.
pub fn laplacian_spectrum(g: &Graph) -> Vec<f64> {
    let mut a = laplacian(g);
    let (mut d, mut e) = tridiagonalize(&mut a);
    tridiagonal_ql(&mut d, &mut e);
    d.sort_by(f64::total_cmp);
    d
}

pub(crate) fn dense_fiedler_value(g: &Graph) -> f64 {
    laplacian_spectrum(g)[1].max(0.0)
}

/// Householder reduction of a symmetric matrix to tridiagonal form. Returns
/// the diagonal and the subdiagonal (`e[0]` unused).
fn tridiagonalize(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i][..=l].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let gg = if f >= 0.0 { -libm::sqrt(h) } else { libm::sqrt(h) };
                e[i] = scale * gg;
                h -= f * gg;
                a[i][l] = f - gg;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut gj = 0.0;
                    for k in 0..=j {
                        gj += a[j][k] * a[i][k];
                    }
                    for k in (j + 1)..=l {
                        gj += a[k][j] * a[i][k];
                    }
                    e[j] = gj / h;
                    f += e[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let fj = a[i][j];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        a[j][k] -= fj * e[k] + gj * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[i][i];
    }
    (d, e)
}

/// Implicit QL iteration on a symmetric tridiagonal matrix; eigenvalues are
/// left in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n < 2 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

fn laplacian_mul(g: &Graph, x: &[f64], out: &mut [f64]) {
    for v in 0..g.node_count() {
        let mut acc = g.degree(v) as f64 * x[v];
        for &(w, _) in g.neighbors(v) {
            acc -= x[w];
        }
        out[v] = acc;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn center(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

/// Conjugate gradients for `L x = b` on the complement of the constant
/// vector.
fn cg_solve(g: &Graph, b: &[f64], tol: f64) -> Vec<f64> {
    let n = b.len();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    center(&mut r);
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let stop = tol * tol * rr.max(f64::MIN_POSITIVE);
    for _ in 0..(4 * n).max(100) {
        if rr <= stop {
            break;
        }
        laplacian_mul(g, &p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for k in 0..n {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        for k in 0..n {
            p[k] = r[k] + beta * p[k];
        }
        rr = rr_new;
    }
    center(&mut x);
    x
}

/// Inverse iteration with the constant vector deflated.
pub(crate) fn iterative_fiedler_value(g: &Graph, tol: f64, max_iter: usize) -> f64 {
    let n = g.node_count();
    // deterministic start vector with no constant component
    let mut x: Vec<f64> = (0..n).map(|i| libm::sin(1.0 + i as f64 * 0.618_033_988_7)).collect();
    center(&mut x);
    let mut lx = vec![0.0; n];
    let mut lambda = f64::INFINITY;
    for _ in 0..max_iter {
        let norm = libm::sqrt(dot(&x, &x));
        x.iter_mut().for_each(|v| *v /= norm);
        laplacian_mul(g, &x, &mut lx);
        let next = dot(&x, &lx);
        if (lambda - next).abs() <= tol * next.abs().max(1.0) {
            return next;
        }
        lambda = next;
        x = cg_solve(g, &x, 1e-12);
    }
    lambda
}

/// Mean roadmap shortest-path length over directed demand pairs divided by
/// the mean shortest free-space path length over the same pairs.
pub fn normalized_mean_spl(rm: &Roadmap, env: &Environment, demand: &TransportMatrix) -> Result<f64> {
    let ips = env.interaction_points();
    let pairs = demand.demand_pairs();
    if pairs.is_empty() {
        return Ok(1.0);
    }
    let stations = rm.locate_stations(&ips)?;
    let roadmap_len = pair_lengths(&rm.graph(), &rm.lengths(), &stations, &pairs);

    let mut points: Vec<Point> = ips.iter().map(|ip| ip.pos).collect();
    points.extend(geometry::corner_points(env.free_space(), REFERENCE_ARC_STEP));
    let vis = geometry::visibility_graph(&points, env.free_space());
    let ends: Vec<(usize, usize)> = vis.iter().map(|&(a, b, _)| (a, b)).collect();
    let vis_len: Vec<f64> = vis.iter().map(|&(_, _, l)| l).collect();
    let ip_nodes: Vec<usize> = (0..ips.len()).collect();
    let reference = pair_lengths(&Graph::new(points.len(), &ends), &vis_len, &ip_nodes, &pairs);

    let mut num = 0.0;
    let mut den = 0.0;
    for (k, &(i, j, _)) in pairs.iter().enumerate() {
        let unreachable = || Error::Unreachable {
            from: ips[i].id.clone(),
            to: ips[j].id.clone(),
        };
        num += roadmap_len[k].ok_or_else(unreachable)?;
        den += reference[k].ok_or_else(unreachable)?;
    }
    Ok(num / den)
}

fn pair_lengths(g: &Graph, lengths: &[f64], nodes: &[usize], pairs: &[(usize, usize, u32)]) -> Vec<Option<f64>> {
    let mut cache: Vec<Option<Vec<f64>>> = vec![None; nodes.len()];
    pairs
        .iter()
        .map(|&(i, j, _)| {
            let dist = cache[i].get_or_insert_with(|| graph::dijkstra(g, lengths, nodes[i], None, Mask::default()).0);
            let d = dist[nodes[j]];
            d.is_finite().then_some(d)
        })
        .collect()
}

/// Preferred direction of a metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ideal {
    Min,
    Max,
    /// Closest to one.
    One,
}

impl Ideal {
    pub fn as_str(self) -> &'static str {
        match self {
            Ideal::Min => "min",
            Ideal::Max => "max",
            Ideal::One => "1",
        }
    }

    /// True iff `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Ideal::Min => a < b,
            Ideal::Max => a > b,
            Ideal::One => (a - 1.0).abs() < (b - 1.0).abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub expanded_astar: usize,
    pub mean_node_conn: f64,
    pub mean_edge_conn: f64,
    pub algebraic_conn: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_idx: f64,
    pub norm_mean_spl: f64,
    /// Demand pairs (interaction-point indices) the roadmap does not connect.
    pub disconnected: Vec<(usize, usize)>,
}

/// Row of a report table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricRow {
    pub key: &'static str,
    pub label: &'static str,
    pub value: f64,
    pub ideal: Ideal,
    pub integer: bool,
}

impl MetricsReport {
    /// Metrics in table order.
    pub fn rows(&self) -> [MetricRow; 10] {
        let row = |key, label, value, ideal, integer| MetricRow {
            key,
            label,
            value,
            ideal,
            integer,
        };
        [
            row("n_nodes", "number of nodes", self.n_nodes as f64, Ideal::Min, true),
            row("n_edges", "number of edges", self.n_edges as f64, Ideal::Min, true),
            row("expanded_astar", "expanded nodes A*", self.expanded_astar as f64, Ideal::Min, true),
            row("mean_node_conn", "mean node connectivity", self.mean_node_conn, Ideal::Max, false),
            row("mean_edge_conn", "mean edge connectivity", self.mean_edge_conn, Ideal::Max, false),
            row("algebraic_conn", "algebraic connectivity", self.algebraic_conn, Ideal::One, false),
            row("alpha", "alpha index", self.alpha, Ideal::One, false),
            row("beta", "beta index", self.beta, Ideal::Max, false),
            row("gamma_idx", "gamma index", self.gamma_idx, Ideal::One, false),
            row("norm_mean_spl", "norm. shortest path len.", self.norm_mean_spl, Ideal::One, false),
        ]
    }

    /// For each row, whether `self` is strictly better than `other`.
    pub fn improved_over(&self, other: &MetricsReport) -> [bool; 10] {
        let a = self.rows();
        let b = other.rows();
        core::array::from_fn(|k| a[k].ideal.better(a[k].value, b[k].value))
    }
}

/// Index of the best report for every row; ties go to the earliest report.
pub fn best_per_row(reports: &[MetricsReport]) -> [Option<usize>; 10] {
    core::array::from_fn(|k| {
        let mut best: Option<usize> = None;
        for (i, r) in reports.iter().enumerate() {
            let v = r.rows()[k];
            match best {
                None => best = Some(i),
                Some(b) if v.ideal.better(v.value, reports[b].rows()[k].value) => best = Some(i),
                _ => {}
            }
        }
        best
    })
}

/// Every metric for one roadmap.
pub fn evaluate(rm: &Roadmap, env: &Environment, demand: &TransportMatrix) -> Result<MetricsReport> {
    let k = kansky_indices(rm)?;
    let node_conn = mean_connectivity(rm, env, demand, ConnectivityMode::Node)?;
    let edge_conn = mean_connectivity(rm, env, demand, ConnectivityMode::Edge)?;
    Ok(MetricsReport {
        n_nodes: rm.node_count(),
        n_edges: rm.edge_count(),
        expanded_astar: astar_expansions(rm, env, demand)?,
        mean_node_conn: node_conn.mean,
        mean_edge_conn: edge_conn.mean,
        algebraic_conn: algebraic_connectivity(rm),
        alpha: k.alpha,
        beta: k.beta,
        gamma_idx: k.gamma,
        norm_mean_spl: normalized_mean_spl(rm, env, demand)?,
        disconnected: node_conn.disconnected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn kansky_reference_values() {
        for (v, e, a, b, g) in [
            (44, 64, 0.253, 1.454, 0.508),
            (94, 157, 0.350, 1.670, 0.569),
            (250, 351, 0.206, 1.404, 0.471),
        ] {
            let k = kansky_counts(v, e).unwrap();
            assert!(close(k.alpha, a, 1e-3) && close(k.beta, b, 1e-3) && close(k.gamma, g, 1e-3), "{v} {e} {k:?}");
        }
        assert!(kansky_counts(2, 1).is_err());
    }

    fn path_graph(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &e)
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::new(n, &e)
    }

    #[test]
    fn small_spectra() {
        assert!(close(dense_fiedler_value(&path_graph(2)), 2.0, 1e-12));
        assert!(close(dense_fiedler_value(&path_graph(3)), 1.0, 1e-12));
        for n in 2..=6 {
            assert!(close(dense_fiedler_value(&complete(n)), n as f64, 1e-10));
        }
        let s = laplacian_spectrum(&path_graph(3));
        assert!(close(s[0], 0.0, 1e-12) && close(s[2], 3.0, 1e-12));
    }

    #[test]
    fn path_spectrum_closed_form() {
        for n in [5, 17, 40] {
            let exact = 2.0 - 2.0 * libm::cos(core::f64::consts::PI / n as f64);
            assert!(close(dense_fiedler_value(&path_graph(n)), exact, 1e-10));
            assert!(close(iterative_fiedler_value(&path_graph(n), 1e-13, 20_000), exact, 1e-8));
        }
    }

    #[test]
    fn connectivity_basics() {
        let tree = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(local_connectivity(&tree, 0, 3, ConnectivityMode::Node), 1);
        assert_eq!(local_connectivity(&tree, 0, 3, ConnectivityMode::Edge), 1);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(local_connectivity(&c4, 0, 2, ConnectivityMode::Node), 2);
        assert_eq!(local_connectivity(&c4, 0, 2, ConnectivityMode::Edge), 2);
        assert_eq!(local_connectivity(&c4, 0, 1, ConnectivityMode::Node), 2);
        let split = Graph::new(3, &[(0, 1)]);
        assert_eq!(local_connectivity(&split, 0, 2, ConnectivityMode::Node), 0);
    }

    #[test]
    fn astar_straight_path() {
        let pos = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
        let g = Graph::new(3, &[(0, 1), (1, 2)]);
        let s = astar(&g, &pos, &[1.0, 1.0], 0, 2, true).unwrap();
        assert_eq!(s.expansions, 3);
        assert_eq!(s.path, vec![0, 1, 2]);
        assert_eq!(s.length, 2.0);
    }

    #[test]
    fn ideal_directions() {
        assert!(Ideal::Min.better(1.0, 2.0));
        assert!(Ideal::Max.better(2.0, 1.0));
        assert!(Ideal::One.better(1.05, 0.9));
        assert!(!Ideal::One.better(1.2, 0.9));
    }
}
