//! Comparison roadmaps: regular 4- and 8-connected lattices and random
//! sampling, connected by a Delaunay triangulation and reduced to the edges
//! used by the demand paths.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spade::{DelaunayTriangulation, Point2, Triangulation};

use crate::discretize::{default_resolution, place_station_nodes, NodeSet};
use crate::error::{Error, Result};
use crate::geometry::{self, Point, Segment};
use crate::model::{Environment, NodeKind, Roadmap, TransportMatrix};
use crate::optimize::{demand_paths, prune_unused, PenaltyPolicy};

/// Consecutive rejected darts after which random sampling stops.
pub const MAX_REJECTIONS: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaselineMethod {
    Grid4,
    Grid8,
    Random,
}

impl BaselineMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BaselineMethod::Grid4 => "grid4",
            BaselineMethod::Grid8 => "grid8",
            BaselineMethod::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Option<BaselineMethod> {
        match s {
            "grid4" => Some(BaselineMethod::Grid4),
            "grid8" => Some(BaselineMethod::Grid8),
            "random" => Some(BaselineMethod::Random),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaselineConfig {
    pub method: BaselineMethod,
    /// Used by [`BaselineMethod::Random`] only.
    pub seed: u64,
    /// Lattice spacing, or minimum separation for random sampling.
    pub spacing: f64,
}

impl BaselineConfig {
    /// Spacing derived from the environment's robot: `d_v_min` for the
    /// 4-connected grid and random sampling, the diagonal-safe resolution for
    /// the 8-connected grid.
    pub fn new(method: BaselineMethod, seed: u64, env: &Environment) -> BaselineConfig {
        let c = env.constraints();
        let spacing = match method {
            BaselineMethod::Grid4 | BaselineMethod::Random => c.d_v_min(),
            BaselineMethod::Grid8 => default_resolution(c.d_ve_min()),
        };
        BaselineConfig { method, seed, spacing }
    }
}

fn lattice(env: &Environment, spacing: f64) -> Vec<Point> {
    let bb = env.boundary().bbox();
    let r = env.free_space().clearance_radius();
    let fs = env.free_space();
    let nx = libm::floor((bb.width() - 2.0 * r) / spacing + 1e-9);
    let ny = libm::floor((bb.height() - 2.0 * r) / spacing + 1e-9);
    let mut out = Vec::new();
    if nx < 0.0 || ny < 0.0 {
        return out;
    }
    for j in 0..=(ny as usize) {
        for i in 0..=(nx as usize) {
            let p = Point::new(bb.min.x + r + i as f64 * spacing, bb.min.y + r + j as f64 * spacing);
            if geometry::in_free_space(p, fs) {
                out.push(p);
            }
        }
    }
    out
}

/// Interaction points first, then lattice points or random darts that keep
/// the minimum node distance.
pub fn generate_baseline_nodes(env: &Environment, cfg: &BaselineConfig) -> Result<NodeSet> {
    let mut ns = place_station_nodes(env)?;
    match cfg.method {
        BaselineMethod::Grid4 | BaselineMethod::Grid8 => {
            for p in lattice(env, cfg.spacing) {
                ns.try_push(p, NodeKind::Grid);
            }
        }
        BaselineMethod::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let bb = env.boundary().bbox();
            let fs = env.free_space();
            let mut rejected = 0;
            while rejected < MAX_REJECTIONS {
                let p = Point::new(
                    bb.min.x + rng.gen::<f64>() * bb.width(),
                    bb.min.y + rng.gen::<f64>() * bb.height(),
                );
                if geometry::in_free_space(p, fs) && ns.try_push(p, NodeKind::Grid).is_some() {
                    rejected = 0;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    Ok(ns)
}

/// Delaunay triangulation of the nodes, keeping edges that stay in free
/// space. Points are inserted in lexicographic order.
pub fn delaunay_edges(ns: &NodeSet, env: &Environment) -> Result<Roadmap> {
    let mut rm = ns.to_roadmap();
    let pts = ns.points();
    let fs = env.free_space();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if pts.len() < 3 {
        if pts.len() == 2 {
            pairs.push((0, 1));
        }
    } else {
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[a].lex_cmp(&pts[b]));
        let mut dt: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
        let mut by_handle = BTreeMap::new();
        for &i in &order {
            let h = dt
                .insert(Point2::new(pts[i].x, pts[i].y))
                .map_err(|e| Error::InvalidParameter(alloc::format!("triangulation failed: {:?}", e)))?;
            by_handle.insert(h.index(), i);
        }
        for e in dt.undirected_edges() {
            let [u, v] = e.vertices();
            let (a, b) = (by_handle[&u.fix().index()], by_handle[&v.fix().index()]);
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
    }
    for (a, b) in pairs {
        if geometry::segment_in_free_space(&Segment::new(pts[a], pts[b]), fs) {
            rm.add_edge(a, b, 0)?;
        }
    }
    Ok(rm)
}

/// Baseline nodes, Delaunay edges, then only the elements used by the
/// demand paths.
pub fn generate_baseline(
    env: &Environment,
    demand: &TransportMatrix,
    cfg: &BaselineConfig,
    policy: &PenaltyPolicy,
) -> Result<Roadmap> {
    let ns = generate_baseline_nodes(env, cfg)?;
    let full = delaunay_edges(&ns, env)?;
    let stations = ns.station_ids().to_vec();
    let paths = demand_paths(&full, env, demand, &stations, policy)?;
    Ok(prune_unused(&full, &paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polygon;
    use crate::model::{InteractionPoint, Robot, Station};
    use alloc::vec;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Polygon {
        Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
        .unwrap()
    }

    fn env_with(ips: &[(f64, f64)], obstacles: Vec<Polygon>) -> Environment {
        let stations = ips
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| Station {
                id: alloc::format!("s{k}"),
                footprint: None,
                interaction_points: vec![InteractionPoint {
                    id: alloc::format!("s{k}"),
                    pos: Point::new(x, y),
                }],
                is_obstacle: false,
            })
            .collect();
        Environment::new(rect(0.0, 0.0, 10.0, 10.0), obstacles, stations, Robot::default()).unwrap()
    }

    #[test]
    fn grid4_lattice_in_empty_box() {
        let env = env_with(&[(0.7, 0.7)], vec![]);
        assert_eq!(lattice(&env, 1.4).len(), 49);
        let cfg = BaselineConfig::new(BaselineMethod::Grid4, 0, &env);
        assert_eq!(cfg.spacing, 1.4);
        // the station coincides with a lattice corner, which is dropped
        assert_eq!(generate_baseline_nodes(&env, &cfg).unwrap().len(), 49);
    }

    #[test]
    fn grid8_spacing() {
        let env = env_with(&[(5.0, 5.0)], vec![]);
        let cfg = BaselineConfig::new(BaselineMethod::Grid8, 0, &env);
        assert!(cfg.spacing >= 1.53 - 1e-12);
        assert!((cfg.spacing - 1.53).abs() < 1e-9);
    }

    #[test]
    fn random_is_deterministic() {
        let env = env_with(&[(5.0, 5.0)], vec![rect(2.0, 2.0, 3.0, 3.0)]);
        let cfg = BaselineConfig::new(BaselineMethod::Random, 7, &env);
        let a = generate_baseline_nodes(&env, &cfg).unwrap();
        let b = generate_baseline_nodes(&env, &cfg).unwrap();
        assert_eq!(a.placed(), b.placed());
        let other = BaselineConfig { seed: 8, ..cfg };
        assert_ne!(a.placed(), generate_baseline_nodes(&env, &other).unwrap().placed());
        let pts = a.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert!(pts[i].dist(pts[j]) >= 1.4 - 1e-9);
            }
        }
    }

    fn node_set(pts: &[(f64, f64)]) -> NodeSet {
        let mut ns = NodeSet::new(1.4);
        for &(x, y) in pts {
            ns.push(Point::new(x, y), NodeKind::Grid);
        }
        ns
    }

    #[test]
    fn delaunay_small_cases() {
        let env = env_with(&[(1.0, 9.0)], vec![]);
        let tri = delaunay_edges(&node_set(&[(2.0, 2.0), (6.0, 2.0), (4.0, 5.0)]), &env).unwrap();
        assert_eq!(tri.edge_count(), 3);
        let sq = delaunay_edges(&node_set(&[(2.0, 2.0), (6.0, 2.0), (6.0, 6.0), (2.0, 6.0)]), &env).unwrap();
        assert_eq!(sq.edge_count(), 5);
        let pair = delaunay_edges(&node_set(&[(2.0, 2.0), (6.0, 2.0)]), &env).unwrap();
        assert_eq!(pair.edge_count(), 1);
    }

    #[test]
    fn delaunay_drops_blocked_edges() {
        let env = env_with(&[(1.0, 9.0)], vec![rect(3.5, 1.0, 4.5, 3.0)]);
        let rm = delaunay_edges(&node_set(&[(2.0, 2.0), (6.0, 2.0), (4.0, 6.0)]), &env).unwrap();
        assert_eq!(rm.edge_count(), 2);
        assert!(rm.edge_id(0, 1).is_none());
    }

    #[test]
    fn zero_demand_keeps_stations_only() {
        let env = env_with(&[(1.0, 1.0), (9.0, 9.0)], vec![]);
        let cfg = BaselineConfig::new(BaselineMethod::Grid4, 0, &env);
        let rm = generate_baseline(&env, &TransportMatrix::zeros(2), &cfg, &PenaltyPolicy::default()).unwrap();
        assert_eq!(rm.node_count(), 2);
        assert_eq!(rm.edge_count(), 0);
    }
}
