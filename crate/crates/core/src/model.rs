//! Robot, environment, demand and roadmap data model.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{self, Aabb, FreeSpace, Point, Polygon};
use crate::graph::Graph;

/// Dimensions of the (homogeneous) fleet's robots, in meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Robot {
    /// Rotation radius: center to outermost point.
    pub r_rob: f64,
    pub w_rob: f64,
    /// Safety distance, which also budgets allowed path deviations.
    pub d_s: f64,
}

impl Robot {
    pub fn new(r_rob: f64, w_rob: f64, d_s: f64) -> Result<Robot> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !(ok(r_rob) && ok(w_rob) && ok(d_s)) {
            return Err(Error::InvalidParameter(alloc::format!(
                "robot dimensions must be positive (r_rob={}, w_rob={}, d_s={})",
                r_rob,
                w_rob,
                d_s
            )));
        }
        if w_rob > 2.0 * r_rob {
            return Err(Error::InvalidParameter(alloc::format!(
                "robot width {} exceeds twice the rotation radius {}",
                w_rob,
                r_rob
            )));
        }
        Ok(Robot { r_rob, w_rob, d_s })
    }

    /// Obstacle expansion radius `r_rob + d_s`.
    pub fn clearance_radius(&self) -> f64 {
        self.r_rob + self.d_s
    }

    pub fn constraints(&self) -> Constraints {
        Constraints {
            d_v_min: 2.0 * (self.r_rob + self.d_s),
            d_ve_min: self.r_rob + self.w_rob / 2.0 + 2.0 * self.d_s,
        }
    }
}

impl Default for Robot {
    /// Square robot with 0.5 m rotation radius, 0.35 m width and 0.2 m
    /// safety distance.
    fn default() -> Self {
        Robot {
            r_rob: 0.5,
            w_rob: 0.35,
            d_s: 0.2,
        }
    }
}

/// Minimum distances every roadmap must respect. Only obtainable from a
/// [`Robot`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constraints {
    d_v_min: f64,
    d_ve_min: f64,
}

impl Constraints {
    /// Minimum distance between two nodes.
    pub fn d_v_min(&self) -> f64 {
        self.d_v_min
    }

    /// Minimum distance between an edge and a node that is not one of its
    /// endpoints.
    pub fn d_ve_min(&self) -> f64 {
        self.d_ve_min
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteractionPoint {
    pub id: String,
    pub pos: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Station {
    pub id: String,
    pub footprint: Option<Polygon>,
    pub interaction_points: Vec<InteractionPoint>,
    /// Footprint joins the obstacle set.
    pub is_obstacle: bool,
}

/// Validated world model.
#[derive(Clone, Debug, PartialEq)]
pub struct Environment {
    boundary: Polygon,
    obstacles: Vec<Polygon>,
    stations: Vec<Station>,
    robot: Robot,
    free_space: FreeSpace,
}

impl Environment {
    pub fn new(boundary: Polygon, obstacles: Vec<Polygon>, stations: Vec<Station>, robot: Robot) -> Result<Environment> {
        let mut holes = obstacles.clone();
        let mut seen = BTreeMap::new();
        for st in &stations {
            if st.interaction_points.is_empty() {
                return Err(Error::InvalidParameter(alloc::format!(
                    "station {} has no interaction point",
                    st.id
                )));
            }
            if st.is_obstacle {
                match &st.footprint {
                    Some(f) => holes.push(f.clone()),
                    None => {
                        return Err(Error::InvalidParameter(alloc::format!(
                            "station {} is an obstacle but has no footprint",
                            st.id
                        )))
                    }
                }
            }
            for ip in &st.interaction_points {
                if seen.insert(ip.id.clone(), ()).is_some() {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "duplicate interaction point id {}",
                        ip.id
                    )));
                }
            }
        }
        let free_space = FreeSpace::new(boundary.clone(), holes, robot.clearance_radius())?;
        for st in &stations {
            for ip in &st.interaction_points {
                if !ip.pos.is_finite() {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "interaction point {} has non-finite coordinates",
                        ip.id
                    )));
                }
                if !geometry::in_free_space(ip.pos, &free_space) {
                    return Err(Error::InteractionPointBlocked {
                        station: st.id.clone(),
                        point: ip.id.clone(),
                        clearance: geometry::clearance(ip.pos, &free_space),
                        required: free_space.clearance_radius(),
                    });
                }
            }
        }
        Ok(Environment {
            boundary,
            obstacles,
            stations,
            robot,
            free_space,
        })
    }

    pub fn boundary(&self) -> &Polygon {
        &self.boundary
    }

    pub fn obstacles(&self) -> &[Polygon] {
        &self.obstacles
    }

    pub fn stations(&self) -> &[Station] {
        &self.stations
    }

    pub fn robot(&self) -> &Robot {
        &self.robot
    }

    pub fn constraints(&self) -> Constraints {
        self.robot.constraints()
    }

    pub fn free_space(&self) -> &FreeSpace {
        &self.free_space
    }

    pub fn bbox(&self) -> Aabb {
        self.boundary.bbox()
    }

    /// All interaction points in station order; this order indexes the
    /// transport matrix.
    pub fn interaction_points(&self) -> Vec<&InteractionPoint> {
        self.stations.iter().flat_map(|s| s.interaction_points.iter()).collect()
    }

    pub fn interaction_point_count(&self) -> usize {
        self.stations.iter().map(|s| s.interaction_points.len()).sum()
    }
}

/// Transport tasks per time unit between interaction points, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl TransportMatrix {
    /// Validates an `n x n` matrix with non-negative entries and a zero
    /// diagonal.
    pub fn new(rows: &[Vec<i64>], n: usize) -> Result<TransportMatrix> {
        if rows.len() != n {
            return Err(Error::MatrixSize { expected: n, got: rows.len() });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MatrixSize { expected: n, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 0 {
                    return Err(Error::NegativeDemand { row: i, col: j });
                }
                if i == j && v != 0 {
                    return Err(Error::NonZeroDiagonal { index: i });
                }
                let v = u32::try_from(v)
                    .map_err(|_| Error::InvalidParameter(alloc::format!("demand ({}, {}) too large", i, j)))?;
                entries.push(v);
            }
        }
        Ok(TransportMatrix { n, entries })
    }

    pub fn zeros(n: usize) -> TransportMatrix {
        TransportMatrix {
            n,
            entries: alloc::vec![0; n * n],
        }
    }

    /// Every off-diagonal entry set to `tasks`.
    pub fn uniform(n: usize, tasks: u32) -> TransportMatrix {
        let mut m = TransportMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.entries[i * n + j] = tasks;
                }
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    /// Directed pairs `(i, j, T_ij)` with positive demand, row-major.
    pub fn demand_pairs(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let t = self.get(i, j);
                if t > 0 {
                    out.push((i, j, t));
                }
            }
        }
        out
    }

    /// Unordered pairs `i < j` with demand in at least one direction.
    pub fn unordered_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) > 0 || self.get(j, i) > 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Station,
    Corner,
    Grid,
    Reinserted,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Station => "station",
            NodeKind::Corner => "corner",
            NodeKind::Grid => "grid",
            NodeKind::Reinserted => "reinserted",
        }
    }

    pub fn parse(s: &str) -> Option<NodeKind> {
        Some(match s {
            "station" => NodeKind::Station,
            "corner" => NodeKind::Corner,
            "grid" => NodeKind::Grid,
            "reinserted" => NodeKind::Reinserted,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub pos: Point,
    pub kind: NodeKind,
}

/// Undirected edge, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
    pub usage: u32,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Graph of positioned nodes and straight edges with usage counters. Node
/// ids are dense indices into [`Roadmap::nodes`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Roadmap {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    index: BTreeMap<(usize, usize), usize>,
}

impl Roadmap {
    pub fn new() -> Roadmap {
        Roadmap::default()
    }

    /// Builds a roadmap from raw parts, recomputing edge lengths.
    pub fn from_parts(nodes: Vec<Node>, edges: &[(usize, usize, u32)]) -> Result<Roadmap> {
        let mut rm = Roadmap {
            nodes,
            ..Roadmap::default()
        };
        if let Some(n) = rm.nodes.iter().find(|n| !n.pos.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "non-finite node position ({}, {})",
                n.pos.x,
                n.pos.y
            )));
        }
        for &(a, b, u) in edges {
            rm.add_edge(a, b, u)?;
        }
        Ok(rm)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn pos(&self, id: usize) -> Point {
        self.nodes[id].pos
    }

    pub fn add_node(&mut self, pos: Point, kind: NodeKind) -> usize {
        self.nodes.push(Node { pos, kind });
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, usage: u32) -> Result<usize> {
        let len = self.nodes.len();
        for id in [a, b] {
            if id >= len {
                return Err(Error::NodeOutOfRange { id, len });
            }
        }
        if a == b {
            return Err(Error::SelfLoop { a, b });
        }
        let key = (a.min(b), a.max(b));
        if self.index.contains_key(&key) {
            return Err(Error::DuplicateEdge { a: key.0, b: key.1 });
        }
        let id = self.edges.len();
        self.edges.push(Edge {
            a: key.0,
            b: key.1,
            length: self.nodes[key.0].pos.dist(self.nodes[key.1].pos),
            usage,
        });
        self.index.insert(key, id);
        Ok(id)
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn set_usage(&mut self, edge: usize, usage: u32) {
        self.edges[edge].usage = usage;
    }

    pub fn segment(&self, edge: usize) -> geometry::Segment {
        let e = &self.edges[edge];
        geometry::Segment::new(self.nodes[e.a].pos, self.nodes[e.b].pos)
    }

    pub fn graph(&self) -> Graph {
        let ends: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        Graph::new(self.nodes.len(), &ends)
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.length).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.nodes.len()];
        for e in &self.edges {
            d[e.a] += 1;
            d[e.b] += 1;
        }
        d
    }

    /// Copy keeping only the selected nodes and edges. Ids are compacted in
    /// their original order; edges touching a dropped node are dropped too.
    pub fn retain(&self, keep_node: &[bool], keep_edge: &[bool]) -> Roadmap {
        let mut remap = alloc::vec![usize::MAX; self.nodes.len()];
        let mut out = Roadmap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep_node[i] {
                remap[i] = out.add_node(n.pos, n.kind);
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            if keep_edge[k] && keep_node[e.a] && keep_node[e.b] {
                let id = out
                    .add_edge(remap[e.a], remap[e.b], e.usage)
                    .expect("edges of a valid roadmap stay valid");
                // keep the stored length bit-identical
                out.edges[id].length = e.length;
            }
        }
        out
    }

    /// Ids of station nodes located at each of `points` (within 1e-6 m).
    pub fn locate_stations(&self, points: &[&InteractionPoint]) -> Result<Vec<usize>> {
        points
            .iter()
            .map(|ip| {
                self.nodes
                    .iter()
                    .position(|n| n.kind == NodeKind::Station && n.pos.dist(ip.pos) <= 1e-6)
                    .ok_or_else(|| Error::MissingStation(ip.id.clone()))
            })
            .collect()
    }
}
