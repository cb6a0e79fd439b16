//! Free-space discretization: interaction points, convex corners ordered by
//! their centrality for the demand, then local grids grown ring by ring
//! around those seeds.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{self, Point};
use crate::graph::{self, Graph, Mask};
use crate::model::{Environment, NodeKind, Roadmap, TransportMatrix};
use crate::spatial::BucketGrid;

/// Placed nodes with the minimum-distance filter applied on insertion.
#[derive(Clone, Debug)]
pub struct NodeSet {
    placed: Vec<(Point, NodeKind)>,
    stations: Vec<usize>,
    corners: Vec<usize>,
    d_v_min: f64,
    index: BucketGrid,
}

impl NodeSet {
    pub fn new(d_v_min: f64) -> NodeSet {
        NodeSet {
            placed: Vec::new(),
            stations: Vec::new(),
            corners: Vec::new(),
            d_v_min,
            index: BucketGrid::new(d_v_min),
        }
    }

    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    pub fn placed(&self) -> &[(Point, NodeKind)] {
        &self.placed
    }

    pub fn points(&self) -> Vec<Point> {
        self.placed.iter().map(|p| p.0).collect()
    }

    /// Ids of interaction-point nodes.
    pub fn station_ids(&self) -> &[usize] {
        &self.stations
    }

    /// Ids of corner nodes, in placement order.
    pub fn corner_ids(&self) -> &[usize] {
        &self.corners
    }

    /// Distance from `p` to the nearest placed node, if any is within reach.
    fn nearest_within(&self, p: Point, reach: f64) -> Option<f64> {
        self.index
            .query_radius(p, reach)
            .into_iter()
            .map(|i| self.placed[i].0.dist(p))
            .filter(|&d| d < reach)
            .reduce(f64::min)
    }

    pub fn respects_spacing(&self, p: Point) -> bool {
        self.nearest_within(p, self.d_v_min - geometry::GEO_TOL).is_none()
    }

    /// Adds `p` unconditionally and returns its id.
    pub fn push(&mut self, p: Point, kind: NodeKind) -> usize {
        let id = self.placed.len();
        self.placed.push((p, kind));
        self.index.insert(id, p);
        match kind {
            NodeKind::Station => self.stations.push(id),
            NodeKind::Corner => self.corners.push(id),
            _ => {}
        }
        id
    }

    /// Adds `p` if it keeps the minimum node distance to every placed node.
    pub fn try_push(&mut self, p: Point, kind: NodeKind) -> Option<usize> {
        self.respects_spacing(p).then(|| self.push(p, kind))
    }

    pub fn to_roadmap(&self) -> Roadmap {
        let mut rm = Roadmap::new();
        for &(p, k) in &self.placed {
            rm.add_node(p, k);
        }
        rm
    }
}

/// Resolution and extent of the local grids.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridConfig {
    pub d_g: f64,
    pub max_size: usize,
}

impl GridConfig {
    /// Smallest resolution, rounded up to the centimeter, whose diagonals
    /// keep the node-edge distance; grids large enough to span the
    /// environment.
    pub fn for_environment(env: &Environment) -> GridConfig {
        let c = env.constraints();
        GridConfig::with_resolution(env, default_resolution(c.d_ve_min()).max(c.d_v_min()))
    }

    /// Resolution `d_g` with grids large enough to span the environment.
    pub fn with_resolution(env: &Environment, d_g: f64) -> GridConfig {
        let bb = env.bbox();
        let max_size = libm::ceil(bb.width().max(bb.height()) / d_g).max(1.0) as usize;
        GridConfig { d_g, max_size }
    }

    pub fn validate(&self, env: &Environment) -> Result<()> {
        let c = env.constraints();
        let min = core::f64::consts::SQRT_2 * c.d_ve_min();
        if !(self.d_g.is_finite() && self.d_g >= min - geometry::GEO_TOL) {
            return Err(Error::InvalidParameter(alloc::format!(
                "grid resolution {} is below sqrt(2) * d_ve_min = {:.4}",
                self.d_g,
                min
            )));
        }
        if self.d_g < c.d_v_min() - geometry::GEO_TOL {
            return Err(Error::InvalidParameter(alloc::format!(
                "grid resolution {} is below d_v_min = {}",
                self.d_g,
                c.d_v_min()
            )));
        }
        if self.max_size == 0 {
            return Err(Error::InvalidParameter("grid max_size must be at least 1".into()));
        }
        Ok(())
    }
}

/// `sqrt(2) * d_ve_min` rounded up to the next centimeter.
pub fn default_resolution(d_ve_min: f64) -> f64 {
    // the 1e-9 guard keeps exact centimeter values from rounding up again
    libm::ceil(core::f64::consts::SQRT_2 * d_ve_min * 100.0 - 1e-9) / 100.0
}

/// One node per interaction point, in station order.
pub fn place_station_nodes(env: &Environment) -> Result<NodeSet> {
    let d_v_min = env.constraints().d_v_min();
    let ips = env.interaction_points();
    for i in 0..ips.len() {
        for j in (i + 1)..ips.len() {
            let d = ips[i].pos.dist(ips[j].pos);
            if d < d_v_min - geometry::GEO_TOL {
                return Err(Error::InteractionPointsTooClose {
                    a: ips[i].id.clone(),
                    b: ips[j].id.clone(),
                    distance: d,
                    required: d_v_min,
                });
            }
        }
    }
    let mut ns = NodeSet::new(d_v_min);
    for ip in ips {
        ns.push(ip.pos, NodeKind::Station);
    }
    Ok(ns)
}

/// Corner candidate with the number of demand shortest paths through it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CornerCandidate {
    pub pos: Point,
    pub centrality: u32,
}

/// Convex-corner candidates with their betweenness over the visibility-graph
/// shortest paths of all directed demand pairs, in enumeration order.
pub fn corner_centrality(env: &Environment, demand: &TransportMatrix) -> Vec<CornerCandidate> {
    let fs = env.free_space();
    let candidates = geometry::convex_corner_candidates(fs);
    let ips = env.interaction_points();
    let n_ip = ips.len();
    let mut pts: Vec<Point> = ips.iter().map(|ip| ip.pos).collect();
    pts.extend_from_slice(&candidates);

    let mut counts = alloc::vec![0u32; candidates.len()];
    let pairs = demand.demand_pairs();
    if !pairs.is_empty() {
        let vis = geometry::visibility_graph(&pts, fs);
        let ends: Vec<(usize, usize)> = vis.iter().map(|e| (e.0, e.1)).collect();
        let w: Vec<f64> = vis.iter().map(|e| e.2).collect();
        let g = Graph::new(pts.len(), &ends);
        for (s, t, _) in pairs {
            if let Some((_, path)) = graph::shortest_path(&g, &w, s, t, Mask::default()) {
                for &v in &path[1..path.len() - 1] {
                    if v >= n_ip {
                        counts[v - n_ip] += 1;
                    }
                }
            }
        }
    }
    candidates
        .into_iter()
        .zip(counts)
        .map(|(pos, centrality)| CornerCandidate { pos, centrality })
        .collect()
}

/// Adds corner candidates in descending centrality (ties by enumeration
/// order), skipping those that violate the minimum node distance.
pub fn place_corner_nodes(mut ns: NodeSet, env: &Environment, demand: &TransportMatrix) -> NodeSet {
    let mut ranked: Vec<(usize, CornerCandidate)> = corner_centrality(env, demand).into_iter().enumerate().collect();
    ranked.sort_by(|a, b| b.1.centrality.cmp(&a.1.centrality).then(a.0.cmp(&b.0)));
    for (_, c) in ranked {
        ns.try_push(c.pos, NodeKind::Corner);
    }
    ns
}

/// The ring `max(|i|, |j|) == size` of the local grid around `center`, in
/// lexicographic `(i, j)` order. A ring of size `s` has `8s` points.
pub fn local_grid_points(center: Point, size: usize, d_g: f64) -> Vec<Point> {
    let s = size as i64;
    let mut out = Vec::with_capacity(8 * size);
    for i in -s..=s {
        for j in -s..=s {
            if i.abs().max(j.abs()) == s {
                out.push(Point::new(center.x + i as f64 * d_g, center.y + j as f64 * d_g));
            }
        }
    }
    out
}

/// Grows local grids around every station and corner node, one ring size at
/// a time across all seeds, keeping points that are free and far enough from
/// all placed nodes.
pub fn discretize_free_space(mut ns: NodeSet, env: &Environment, cfg: &GridConfig) -> NodeSet {
    let fs = env.free_space();
    let bb = env.bbox().expanded(cfg.d_g);
    let seeds: Vec<Point> = ns
        .station_ids()
        .iter()
        .chain(ns.corner_ids())
        .map(|&i| ns.placed[i].0)
        .collect();
    for size in 1..=cfg.max_size {
        for &seed in &seeds {
            for p in local_grid_points(seed, size, cfg.d_g) {
                if p.x < bb.min.x || p.x > bb.max.x || p.y < bb.min.y || p.y > bb.max.y {
                    continue;
                }
                if ns.respects_spacing(p) && geometry::in_free_space(p, fs) {
                    ns.push(p, NodeKind::Grid);
                }
            }
        }
    }
    ns
}
