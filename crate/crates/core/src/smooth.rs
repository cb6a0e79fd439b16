//! Corner-blended trajectories on top of a roadmap.
//!
//! Each interior node of a path is rounded off by a cubic Bézier with control
//! points `P0, v, v, P3`, where `P0` and `P3` sit on the incident segments at
//! distance `L` from the node `v`. The curve's closest approach to `v` is
//! `L * |u_out - u_in| / 8`, so choosing `L <= 8 d_ad / |u_out - u_in|` keeps
//! the curve within `d_ad` of the node.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{Point, Segment};
use crate::model::{Robot, Roadmap};

/// Arc length between consecutive samples.
pub const SAMPLE_STEP: f64 = 0.05;

/// Parameter steps used to trace one blend before resampling.
const TRACE_STEPS: usize = 256;

/// Validated deviation margin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Smoothing {
    d_ad: f64,
}

impl Smoothing {
    /// `d_ad` must be positive and no larger than the robot's safety
    /// distance.
    pub fn new(d_ad: f64, robot: &Robot) -> Result<Smoothing> {
        if !(d_ad > 0.0 && d_ad.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!("d_ad must be positive, got {}", d_ad)));
        }
        if d_ad > robot.d_s {
            return Err(Error::InvalidParameter(alloc::format!(
                "d_ad {} exceeds the safety distance {}",
                d_ad, robot.d_s
            )));
        }
        Ok(Smoothing { d_ad })
    }

    /// Margin equal to the safety distance.
    pub fn for_robot(robot: &Robot) -> Smoothing {
        Smoothing { d_ad: robot.d_s }
    }

    pub fn d_ad(&self) -> f64 {
        self.d_ad
    }
}

/// Cubic blend at one node.
#[derive(Clone, Debug, PartialEq)]
pub struct Blend {
    pub node: usize,
    /// Neighbours the blend joins, smaller id first.
    pub ends: (usize, usize),
    /// `P0, v, v, P3`.
    pub control: [Point; 4],
    pub samples: Vec<Point>,
}

/// Smoothed trajectory along a node path.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothedPath {
    pub nodes: Vec<usize>,
    pub polyline: Vec<Point>,
    pub samples: Vec<Point>,
}

impl SmoothedPath {
    pub fn length(&self) -> f64 {
        polyline_length(&self.samples)
    }

    pub fn polyline_length(&self) -> f64 {
        polyline_length(&self.polyline)
    }

    /// Largest distance from a sample to the source polyline.
    pub fn max_deviation(&self) -> f64 {
        self.samples
            .iter()
            .map(|&p| distance_to_polyline(&self.polyline, p))
            .fold(0.0, f64::max)
    }
}

pub fn polyline_length(pts: &[Point]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}

pub fn distance_to_polyline(pts: &[Point], p: Point) -> f64 {
    match pts {
        [] => f64::INFINITY,
        [q] => q.dist(p),
        _ => pts
            .windows(2)
            .map(|w| crate::geometry::segment_point_distance(&Segment::new(w[0], w[1]), p))
            .fold(f64::INFINITY, f64::min),
    }
}

fn bezier(c: &[Point; 4], t: f64) -> Point {
    let s = 1.0 - t;
    c[0] * (s * s * s) + c[1] * (3.0 * s * s * t) + c[2] * (3.0 * s * t * t) + c[3] * (t * t * t)
}

/// Control points for the turn `prev -> v -> next`.
pub fn corner_controls(prev: Point, v: Point, next: Point, d_ad: f64) -> [Point; 4] {
    let u_in = (v - prev).normalized();
    let u_out = (next - v).normalized();
    let turn = (u_out - u_in).norm();
    let half = 0.5 * prev.dist(v).min(v.dist(next));
    let reach = if turn > 1e-12 { (8.0 * d_ad / turn).min(half) } else { half };
    [v - u_in * reach, v, v, v + u_out * reach]
}

fn trace(c: &[Point; 4]) -> Vec<Point> {
    (0..=TRACE_STEPS).map(|k| bezier(c, k as f64 / TRACE_STEPS as f64)).collect()
}

/// Resamples a dense polyline at `SAMPLE_STEP` arc intervals, keeping both
/// endpoints exactly.
fn resample(dense: &[Point]) -> Vec<Point> {
    let mut out = Vec::new();
    let Some(&first) = dense.first() else {
        return out;
    };
    out.push(first);
    let mut next_at = SAMPLE_STEP;
    let mut walked = 0.0;
    for w in dense.windows(2) {
        let seg = w[0].dist(w[1]);
        while seg > 0.0 && walked + seg >= next_at {
            out.push(w[0].lerp(w[1], (next_at - walked) / seg));
            next_at += SAMPLE_STEP;
        }
        walked += seg;
    }
    let last = *dense.last().expect("non-empty");
    match out.last() {
        Some(&p) if p.dist(last) < 1e-9 => {
            *out.last_mut().expect("non-empty") = last;
        }
        _ => out.push(last),
    }
    out
}

/// Smooths the node path `path` of `rm`.
pub fn smooth_path(path: &[usize], rm: &Roadmap, s: &Smoothing) -> Result<SmoothedPath> {
    if path.len() < 2 {
        return Err(Error::InvalidParameter("a path needs at least two nodes".into()));
    }
    for w in path.windows(2) {
        if rm.edge_id(w[0], w[1]).is_none() {
            return Err(Error::InvalidParameter(alloc::format!("nodes {} and {} are not adjacent", w[0], w[1])));
        }
    }
    let polyline: Vec<Point> = path.iter().map(|&v| rm.pos(v)).collect();
    let mut dense = Vec::with_capacity(polyline.len() * (TRACE_STEPS + 1));
    dense.push(polyline[0]);
    for w in polyline.windows(3) {
        let c = corner_controls(w[0], w[1], w[2], s.d_ad);
        dense.extend(trace(&c));
    }
    dense.push(*polyline.last().expect("non-empty"));
    Ok(SmoothedPath {
        nodes: path.to_vec(),
        samples: resample(&dense),
        polyline,
    })
}

/// One blend for every node and every pair of its incident edges.
pub fn smooth_roadmap(rm: &Roadmap, s: &Smoothing) -> Vec<Blend> {
    let g = rm.graph();
    let mut out = Vec::new();
    for v in 0..rm.node_count() {
        let nbrs = g.neighbors(v);
        for (i, &(a, _)) in nbrs.iter().enumerate() {
            for &(b, _) in &nbrs[i + 1..] {
                let control = corner_controls(rm.pos(a), rm.pos(v), rm.pos(b), s.d_ad);
                out.push(Blend {
                    node: v,
                    ends: (a, b),
                    control,
                    samples: resample(&trace(&control)),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Node, NodeKind};
    use alloc::vec;

    fn roadmap(pts: &[(f64, f64)], edges: &[(usize, usize)]) -> Roadmap {
        let nodes = pts
            .iter()
            .map(|&(x, y)| Node {
                pos: Point::new(x, y),
                kind: NodeKind::Grid,
            })
            .collect();
        let e: Vec<_> = edges.iter().map(|&(a, b)| (a, b, 0)).collect();
        Roadmap::from_parts(nodes, &e).unwrap()
    }

    #[test]
    fn right_angle_corner_within_margin() {
        let rm = roadmap(&[(0.0, 0.0), (3.0, 0.0), (3.0, 3.0)], &[(0, 1), (1, 2)]);
        let s = Smoothing::new(0.2, &Robot::default()).unwrap();
        let sp = smooth_path(&[0, 1, 2], &rm, &s).unwrap();
        let c = corner_controls(rm.pos(0), rm.pos(1), rm.pos(2), 0.2);
        let closest = (0..=1000)
            .map(|k| bezier(&c, k as f64 / 1000.0).dist(rm.pos(1)))
            .fold(f64::INFINITY, f64::min);
        assert!(closest > 0.0 && closest <= 0.2 + 1e-12, "{closest}");
        let sampled = sp.samples.iter().map(|p| p.dist(rm.pos(1))).fold(f64::INFINITY, f64::min);
        assert!(sampled >= closest - 1e-12 && sampled < closest + 0.01);
        assert!(sp.max_deviation() <= 0.2 + 1e-9);
        assert!(sp.length() <= sp.polyline_length());
        assert_eq!(sp.samples[0], rm.pos(0));
        assert_eq!(*sp.samples.last().unwrap(), rm.pos(2));
    }

    #[test]
    fn straight_run_stays_straight() {
        let rm = roadmap(&[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)], &[(0, 1), (1, 2)]);
        let sp = smooth_path(&[0, 1, 2], &rm, &Smoothing::for_robot(&Robot::default())).unwrap();
        assert!(sp.samples.iter().all(|p| p.y.abs() < 1e-12));
        assert!((sp.length() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn margin_above_safety_distance_is_rejected() {
        assert!(Smoothing::new(0.25, &Robot::default()).is_err());
        assert!(Smoothing::new(0.0, &Robot::default()).is_err());
    }

    #[test]
    fn blend_counts() {
        let rm = roadmap(&[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (-2.0, 0.0)], &[(0, 1), (0, 2), (0, 3)]);
        let blends = smooth_roadmap(&rm, &Smoothing::for_robot(&Robot::default()));
        assert_eq!(blends.iter().filter(|b| b.node == 0).count(), 3);
        assert_eq!(blends.iter().filter(|b| b.node == 1).count(), 0);
        assert_eq!(blends.len(), 3);
    }

    #[test]
    fn sharp_turn_uses_short_controls() {
        let rm = roadmap(&[(0.0, 0.0), (5.0, 0.0), (0.0, 0.3)], &[(0, 1), (1, 2)]);
        let sp = smooth_path(&[0, 1, 2], &rm, &Smoothing::for_robot(&Robot::default())).unwrap();
        assert!(sp.max_deviation() <= 0.2 + 1e-9);
        assert_eq!(sp.nodes, vec![0, 1, 2]);
    }
}
