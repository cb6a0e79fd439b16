//! Full edge construction: straight, undirected connections inside free space
//! that keep the node-edge distance from every node other than their
//! endpoints. The result may contain crossing edges.

use alloc::vec::Vec;

use crate::discretize::NodeSet;
use crate::geometry::{self, Point, Segment, GEO_TOL};
use crate::model::{Environment, Roadmap};
use crate::spatial::BucketGrid;

/// Pair enumeration bound for [`build_full_edges`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeConfig {
    /// Only pairs closer than this are tested; `None` tests all pairs.
    pub candidate_radius: Option<f64>,
}

impl EdgeConfig {
    /// Three grid resolutions.
    pub fn for_resolution(d_g: f64) -> EdgeConfig {
        EdgeConfig {
            candidate_radius: Some(3.0 * d_g),
        }
    }

    pub fn unbounded() -> EdgeConfig {
        EdgeConfig { candidate_radius: None }
    }
}

/// Index answering "is any node other than these two within `r` of this
/// segment".
pub(crate) struct NodeClearance<'a> {
    points: &'a [Point],
    grid: BucketGrid,
    reach: f64,
}

impl<'a> NodeClearance<'a> {
    pub(crate) fn new(points: &'a [Point], reach: f64) -> Self {
        let mut grid = BucketGrid::new(reach.max(1e-3));
        for (i, &p) in points.iter().enumerate() {
            grid.insert(i, p);
        }
        NodeClearance { points, grid, reach }
    }

    /// True iff every node except those in `skip` is at least `reach` from
    /// the segment.
    pub(crate) fn clear(&self, s: &Segment, skip: &[usize]) -> bool {
        let area = s.bbox().expanded(self.reach);
        self.grid.query(&area).into_iter().all(|k| {
            skip.contains(&k) || geometry::segment_point_distance(s, self.points[k]) >= self.reach - GEO_TOL
        })
    }
}

/// True iff segment `a`-`b` may become an edge among `points`.
pub fn edge_admissible(points: &[Point], a: usize, b: usize, env: &Environment) -> bool {
    let s = Segment::new(points[a], points[b]);
    if !geometry::segment_in_free_space(&s, env.free_space()) {
        return false;
    }
    let r = env.constraints().d_ve_min() - GEO_TOL;
    points
        .iter()
        .enumerate()
        .all(|(k, &p)| k == a || k == b || geometry::segment_point_distance(&s, p) >= r)
}

/// Connects every admissible node pair. Edges are listed in lexicographic
/// `(a, b)` order with zero usage.
pub fn build_full_edges(ns: &NodeSet, env: &Environment, cfg: &EdgeConfig) -> Roadmap {
    let mut rm = ns.to_roadmap();
    let points = ns.points();
    let fs = env.free_space();
    let clearance = NodeClearance::new(&points, env.constraints().d_ve_min());
    let radius = cfg.candidate_radius.unwrap_or(f64::INFINITY);
    let mut near = BucketGrid::new(if radius.is_finite() { radius } else { 1.0 });
    if radius.is_finite() {
        for (i, &p) in points.iter().enumerate() {
            near.insert(i, p);
        }
    }
    for a in 0..points.len() {
        let mut partners: Vec<usize> = if radius.is_finite() {
            near.query_radius(points[a], radius)
                .into_iter()
                .filter(|&b| b > a && points[a].dist(points[b]) <= radius)
                .collect()
        } else {
            ((a + 1)..points.len()).collect()
        };
        partners.sort_unstable();
        for b in partners {
            let s = Segment::new(points[a], points[b]);
            if clearance.clear(&s, &[a, b]) && geometry::segment_in_free_space(&s, fs) {
                rm.add_edge(a, b, 0).expect("fresh pair");
            }
        }
    }
    rm
}
