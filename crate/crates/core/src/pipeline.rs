//! End-to-end roadmap generation and the structural checks every generated
//! roadmap must pass.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::discretize::{discretize_free_space, place_corner_nodes, place_station_nodes, GridConfig, NodeSet};
use crate::edges::{build_full_edges, EdgeConfig};
use crate::error::{Error, Result};
use crate::geometry;
use crate::model::{Environment, NodeKind, Roadmap, TransportMatrix};
use crate::optimize::{crossing_pairs, optimize_roadmap, PathSet, PenaltyPolicy};
use crate::spatial::BucketGrid;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenerateConfig {
    pub grid: GridConfig,
    pub edges: EdgeConfig,
    pub policy: PenaltyPolicy,
}

impl GenerateConfig {
    pub fn for_environment(env: &Environment) -> GenerateConfig {
        let grid = GridConfig::for_environment(env);
        GenerateConfig {
            edges: EdgeConfig::for_resolution(grid.d_g),
            grid,
            policy: PenaltyPolicy::default(),
        }
    }
}

/// Every intermediate roadmap of one run.
#[derive(Clone, Debug)]
pub struct Generated {
    /// Interaction points and corner candidates with their visibility edges.
    pub visibility: Roadmap,
    pub nodes: NodeSet,
    /// All admissible edges.
    pub full: Roadmap,
    pub paths: PathSet,
    /// Only elements on demand paths.
    pub reduced: Roadmap,
    /// Crossings resolved.
    pub planar: Roadmap,
    /// Final refined roadmap.
    pub optimized: Roadmap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Visibility,
    Full,
    Reduced,
    Planar,
    Optimized,
}

impl Stage {
    pub fn parse(s: &str) -> Option<Stage> {
        match s {
            "visibility" => Some(Stage::Visibility),
            "full" => Some(Stage::Full),
            "reduced" => Some(Stage::Reduced),
            "planar" => Some(Stage::Planar),
            "optimized" => Some(Stage::Optimized),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Visibility => "visibility",
            Stage::Full => "full",
            Stage::Reduced => "reduced",
            Stage::Planar => "planar",
            Stage::Optimized => "optimized",
        }
    }
}

impl Generated {
    pub fn stage(&self, s: Stage) -> &Roadmap {
        match s {
            Stage::Visibility => &self.visibility,
            Stage::Full => &self.full,
            Stage::Reduced => &self.reduced,
            Stage::Planar => &self.planar,
            Stage::Optimized => &self.optimized,
        }
    }
}

/// Interaction points and all corner candidates joined by every free
/// straight segment.
pub fn visibility_roadmap(env: &Environment) -> Roadmap {
    let mut rm = Roadmap::new();
    for ip in env.interaction_points() {
        rm.add_node(ip.pos, NodeKind::Station);
    }
    for p in geometry::convex_corner_candidates(env.free_space()) {
        rm.add_node(p, NodeKind::Corner);
    }
    let pts: Vec<_> = rm.nodes().iter().map(|n| n.pos).collect();
    for (a, b, _) in geometry::visibility_graph(&pts, env.free_space()) {
        rm.add_edge(a, b, 0).expect("distinct pairs");
    }
    rm
}

/// Stations, corners and local grids, then full edges and optimization.
pub fn generate(env: &Environment, demand: &TransportMatrix, cfg: &GenerateConfig) -> Result<Generated> {
    if demand.size() != env.interaction_point_count() {
        return Err(Error::MatrixSize {
            expected: env.interaction_point_count(),
            got: demand.size(),
        });
    }
    cfg.grid.validate(env)?;
    cfg.policy.validate()?;
    let ns = place_station_nodes(env)?;
    let ns = place_corner_nodes(ns, env, demand);
    let ns = discretize_free_space(ns, env, &cfg.grid);
    log::debug!("placed {} nodes", ns.len());
    let full = build_full_edges(&ns, env, &cfg.edges);
    log::debug!("full roadmap: {} edges", full.edge_count());
    let opt = optimize_roadmap(&full, demand, env, &cfg.policy)?;
    Ok(Generated {
        visibility: visibility_roadmap(env),
        nodes: ns,
        full,
        paths: opt.paths,
        reduced: opt.reduced,
        planar: opt.planar,
        optimized: opt.optimized,
    })
}

/// Which structural properties [`check_invariants`] asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub node_spacing: bool,
    pub node_edge_distance: bool,
    pub planar: bool,
}

impl InvariantSet {
    pub const ALL: InvariantSet = InvariantSet {
        node_spacing: true,
        node_edge_distance: true,
        planar: true,
    };
}

/// Human-readable violations of the roadmap constraints; empty when the
/// roadmap is valid. Nodes and edges are always checked against free space
/// and every interaction point must be a node.
pub fn check_invariants(rm: &Roadmap, env: &Environment, which: InvariantSet) -> Vec<String> {
    let mut out = Vec::new();
    let fs = env.free_space();
    let c = env.constraints();
    let tol = 1e-7;
    if let Err(e) = rm.locate_stations(&env.interaction_points()) {
        out.push(format!("{e}"));
    }
    for (i, n) in rm.nodes().iter().enumerate() {
        if !geometry::in_free_space(n.pos, fs) {
            out.push(format!("node {i} outside free space"));
        }
    }
    for (k, e) in rm.edges().iter().enumerate() {
        if !geometry::segment_in_free_space(&rm.segment(k), fs) {
            out.push(format!("edge {}-{} leaves free space", e.a, e.b));
        }
    }
    let mut grid = BucketGrid::new(c.d_v_min().max(c.d_ve_min()));
    for (i, n) in rm.nodes().iter().enumerate() {
        grid.insert(i, n.pos);
    }
    if which.node_spacing {
        for (i, n) in rm.nodes().iter().enumerate() {
            for j in grid.query_radius(n.pos, c.d_v_min()) {
                if j > i && n.pos.dist(rm.pos(j)) < c.d_v_min() - tol {
                    out.push(format!("nodes {i} and {j} closer than {}", c.d_v_min()));
                }
            }
        }
    }
    if which.node_edge_distance {
        for (k, e) in rm.edges().iter().enumerate() {
            let s = rm.segment(k);
            for v in grid.query(&s.bbox().expanded(c.d_ve_min())) {
                if v != e.a && v != e.b && geometry::segment_point_distance(&s, rm.pos(v)) < c.d_ve_min() - tol {
                    out.push(format!("node {v} closer than {} to edge {}-{}", c.d_ve_min(), e.a, e.b));
                }
            }
        }
    }
    if which.planar {
        for (a, b) in crossing_pairs(rm) {
            let (ea, eb) = (&rm.edges()[a], &rm.edges()[b]);
            out.push(format!("edges {}-{} and {}-{} cross", ea.a, ea.b, eb.a, eb.b));
        }
    }
    out
}
