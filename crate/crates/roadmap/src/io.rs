//! JSON file formats for environments, transport matrices and roadmaps.

use std::fs;
use std::path::{Path, PathBuf};

use roadmap_core::{
    Environment, InteractionPoint, Node, NodeKind, Point, Polygon, Roadmap, Robot, Station, TransportMatrix,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: malformed JSON: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {msg}")]
    Invalid { path: PathBuf, msg: String },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: roadmap_core::Error },
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

pub type Coord = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentFile {
    pub boundary: Vec<Coord>,
    #[serde(default)]
    pub obstacles: Vec<Vec<Coord>>,
    pub stations: Vec<StationFile>,
    #[serde(default)]
    pub robot: Option<RobotFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationFile {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub footprint: Option<Vec<Coord>>,
    pub interaction_points: Vec<InteractionPointFile>,
    /// Defaults to whether a footprint is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_obstacle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InteractionPointFile {
    Bare(Coord),
    Named { id: String, x: f64, y: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotFile {
    pub r_rob: f64,
    pub w_rob: f64,
    pub d_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportFile {
    /// Interaction-point id of every row and column.
    pub order: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoadmapFile {
    pub nodes: Vec<NodeFile>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeFile {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub a: usize,
    pub b: usize,
    #[serde(default)]
    pub usage: u32,
}

fn point(c: Coord) -> Point {
    Point::new(c[0], c[1])
}

fn coord(p: Point) -> Coord {
    [p.x, p.y]
}

fn polygon(path: &Path, what: &str, pts: &[Coord]) -> Result<Polygon> {
    Polygon::new(pts.iter().copied().map(point).collect()).map_err(|e| IoError::Invalid {
        path: path.to_path_buf(),
        msg: format!("{what}: {e}"),
    })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

impl EnvironmentFile {
    pub fn into_environment(self, path: &Path) -> Result<Environment> {
        let boundary = polygon(path, "boundary", &self.boundary)?;
        let obstacles = self
            .obstacles
            .iter()
            .enumerate()
            .map(|(k, o)| polygon(path, &format!("obstacle {k}"), o))
            .collect::<Result<Vec<_>>>()?;
        let mut stations = Vec::with_capacity(self.stations.len());
        for s in self.stations {
            let footprint = match &s.footprint {
                Some(f) => Some(polygon(path, &format!("station {} footprint", s.id), f)?),
                None => None,
            };
            let single = s.interaction_points.len() == 1;
            let interaction_points = s
                .interaction_points
                .into_iter()
                .enumerate()
                .map(|(k, ip)| match ip {
                    InteractionPointFile::Bare(c) => InteractionPoint {
                        id: if single { s.id.clone() } else { format!("{}.{}", s.id, k + 1) },
                        pos: point(c),
                    },
                    InteractionPointFile::Named { id, x, y } => InteractionPoint {
                        id,
                        pos: Point::new(x, y),
                    },
                })
                .collect();
            stations.push(Station {
                is_obstacle: s.is_obstacle.unwrap_or(footprint.is_some()),
                id: s.id,
                footprint,
                interaction_points,
            });
        }
        let robot = match self.robot {
            Some(r) => Robot::new(r.r_rob, r.w_rob, r.d_s).map_err(|source| IoError::Model {
                path: path.to_path_buf(),
                source,
            })?,
            None => Robot::default(),
        };
        Environment::new(boundary, obstacles, stations, robot).map_err(|source| IoError::Model {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn from_environment(env: &Environment) -> EnvironmentFile {
        let r = env.robot();
        EnvironmentFile {
            boundary: env.boundary().vertices().iter().copied().map(coord).collect(),
            obstacles: env
                .obstacles()
                .iter()
                .map(|o| o.vertices().iter().copied().map(coord).collect())
                .collect(),
            stations: env
                .stations()
                .iter()
                .map(|s| StationFile {
                    id: s.id.clone(),
                    footprint: s.footprint.as_ref().map(|f| f.vertices().iter().copied().map(coord).collect()),
                    interaction_points: s
                        .interaction_points
                        .iter()
                        .map(|ip| InteractionPointFile::Named {
                            id: ip.id.clone(),
                            x: ip.pos.x,
                            y: ip.pos.y,
                        })
                        .collect(),
                    is_obstacle: Some(s.is_obstacle),
                })
                .collect(),
            robot: Some(RobotFile {
                r_rob: r.r_rob,
                w_rob: r.w_rob,
                d_s: r.d_s,
            }),
        }
    }
}

pub fn load_environment(path: &Path) -> Result<Environment> {
    read_json::<EnvironmentFile>(path)?.into_environment(path)
}

impl TransportFile {
    /// Reorders the matrix to the environment's interaction-point order.
    pub fn into_matrix(self, env: &Environment, path: &Path) -> Result<TransportMatrix> {
        let invalid = |msg: String| IoError::Invalid {
            path: path.to_path_buf(),
            msg,
        };
        let ips = env.interaction_points();
        if self.order.len() != ips.len() {
            return Err(invalid(format!(
                "order lists {} interaction points, the environment has {}",
                self.order.len(),
                ips.len()
            )));
        }
        let mut slot = Vec::with_capacity(ips.len());
        for id in &self.order {
            let k = ips
                .iter()
                .position(|ip| &ip.id == id)
                .ok_or_else(|| invalid(format!("unknown interaction point '{id}'")))?;
            if slot.contains(&k) {
                return Err(invalid(format!("interaction point '{id}' listed twice")));
            }
            slot.push(k);
        }
        let n = ips.len();
        if self.t.len() != n || self.t.iter().any(|r| r.len() != n) {
            // let the core report the shape error
            return TransportMatrix::new(&self.t, n).map_err(|source| IoError::Model {
                path: path.to_path_buf(),
                source,
            });
        }
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in self.t.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                rows[slot[i]][slot[j]] = v;
            }
        }
        TransportMatrix::new(&rows, n).map_err(|source| IoError::Model {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn from_matrix(env: &Environment, m: &TransportMatrix) -> TransportFile {
        TransportFile {
            order: env.interaction_points().iter().map(|ip| ip.id.clone()).collect(),
            t: m.rows().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect(),
        }
    }
}

pub fn load_transport(path: &Path, env: &Environment) -> Result<TransportMatrix> {
    read_json::<TransportFile>(path)?.into_matrix(env, path)
}

impl RoadmapFile {
    pub fn from_roadmap(rm: &Roadmap) -> RoadmapFile {
        RoadmapFile {
            nodes: rm
                .nodes()
                .iter()
                .enumerate()
                .map(|(id, n)| NodeFile {
                    id,
                    x: n.pos.x,
                    y: n.pos.y,
                    kind: n.kind.as_str().to_string(),
                })
                .collect(),
            edges: rm
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    a: e.a,
                    b: e.b,
                    usage: e.usage,
                })
                .collect(),
        }
    }

    /// Node ids must be unique; they are mapped to positions in file order.
    pub fn into_roadmap(self, path: &Path) -> Result<Roadmap> {
        let invalid = |msg: String| IoError::Invalid {
            path: path.to_path_buf(),
            msg,
        };
        let mut index = std::collections::BTreeMap::new();
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            if index.insert(n.id, nodes.len()).is_some() {
                return Err(invalid(format!("duplicate node id {}", n.id)));
            }
            let kind = NodeKind::parse(&n.kind).ok_or_else(|| invalid(format!("node {}: unknown kind '{}'", n.id, n.kind)))?;
            let pos = Point::new(n.x, n.y);
            if !pos.is_finite() {
                return Err(invalid(format!("node {}: non-finite coordinates", n.id)));
            }
            nodes.push(Node { pos, kind });
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let a = *index.get(&e.a).ok_or_else(|| invalid(format!("edge {}-{}: unknown node {}", e.a, e.b, e.a)))?;
            let b = *index.get(&e.b).ok_or_else(|| invalid(format!("edge {}-{}: unknown node {}", e.a, e.b, e.b)))?;
            edges.push((a, b, e.usage));
        }
        Roadmap::from_parts(nodes, &edges).map_err(|source| IoError::Model {
            path: path.to_path_buf(),
            source,
        })
    }
}

pub fn load_roadmap(path: &Path) -> Result<Roadmap> {
    read_json::<RoadmapFile>(path)?.into_roadmap(path)
}

pub fn save_roadmap(path: &Path, rm: &Roadmap) -> Result<()> {
    write_text(path, &to_json(&RoadmapFile::from_roadmap(rm)))
}
