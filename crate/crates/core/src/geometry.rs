//! Clearance-based computational geometry kernel.
//!
//! Free space is never constructed explicitly. A point is free when its
//! signed distance to the environment (positive inside the boundary and
//! outside every hole) is at least the clearance radius, and a segment is
//! free when its distance to every polygon edge is at least that radius.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tolerance for orientation and incidence tests, in meters.
pub const GEO_TOL: f64 = 1e-9;

/// Extra offset that moves corner candidates strictly into free space.
pub const CORNER_EPS: f64 = 1e-3;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn dist_sq(self, o: Point) -> f64 {
        let d = self - o;
        d.dot(d)
    }

    /// Unit vector in the same direction, or the zero vector.
    pub fn normalized(self) -> Point {
        let n = self.norm();
        if n > 0.0 {
            self * (1.0 / n)
        } else {
            Point::default()
        }
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    /// Rotates counter-clockwise by `angle` radians.
    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = libm::sincos(angle);
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Lexicographic order on (x, y), total for finite coordinates.
    pub fn lex_cmp(&self, o: &Point) -> core::cmp::Ordering {
        self.x
            .total_cmp(&o.x)
            .then_with(|| self.y.total_cmp(&o.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Straight segment between two points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn bbox(&self) -> Aabb {
        Aabb::of_points(&[self.a, self.b])
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn of_points(pts: &[Point]) -> Aabb {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Aabb { min, max }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn expanded(&self, r: f64) -> Aabb {
        Aabb {
            min: Point::new(self.min.x - r, self.min.y - r),
            max: Point::new(self.max.x + r, self.max.y + r),
        }
    }

    pub fn intersects(&self, o: &Aabb) -> bool {
        self.min.x <= o.max.x && o.min.x <= self.max.x && self.min.y <= o.max.y && o.min.y <= self.max.y
    }
}

/// Simple polygon with counter-clockwise vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    bbox: Aabb,
}

impl Polygon {
    /// Validates and normalizes a vertex ring. A repeated closing vertex is
    /// dropped and clockwise rings are reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Polygon> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(alloc::format!(
                "needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(alloc::format!(
                "non-finite vertex ({}, {})",
                p.x,
                p.y
            )));
        }
        let area = signed_area(&vertices);
        if area.abs() <= GEO_TOL {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let e1 = Segment::new(vertices[i], vertices[(i + 1) % n]);
            if e1.length() <= GEO_TOL {
                return Err(Error::InvalidPolygon(alloc::format!("repeated vertex at index {}", i)));
            }
            for j in (i + 1)..n {
                // neighbours share a vertex by construction
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let e2 = Segment::new(vertices[j], vertices[(j + 1) % n]);
                if segments_intersect_closed(&e1, &e2) {
                    return Err(Error::InvalidPolygon(alloc::format!(
                        "self-intersection between edges {} and {}",
                        i,
                        j
                    )));
                }
            }
        }
        let bbox = Aabb::of_points(&vertices);
        Ok(Polygon { vertices, bbox })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn bbox(&self) -> Aabb {
        self.bbox
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Even-odd containment test. Points on the outline may go either way;
    /// callers combine it with a distance that is zero there.
    pub fn contains(&self, p: Point) -> bool {
        if p.x < self.bbox.min.x || p.x > self.bbox.max.x || p.y < self.bbox.min.y || p.y > self.bbox.max.y {
            return false;
        }
        let mut inside = false;
        let n = self.vertices.len();
        let mut j = n - 1;
        for i in 0..n {
            let vi = self.vertices[i];
            let vj = self.vertices[j];
            if (vi.y > p.y) != (vj.y > p.y) {
                let x = vj.x + (p.y - vj.y) * (vi.x - vj.x) / (vi.y - vj.y);
                if p.x < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    /// Unsigned distance from `p` to the polygon outline.
    pub fn outline_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|e| segment_point_distance(&e, p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Unsigned distance from segment `s` to the polygon outline.
    pub fn outline_segment_distance(&self, s: &Segment) -> f64 {
        self.edges()
            .map(|e| segment_segment_distance(&e, s))
            .fold(f64::INFINITY, f64::min)
    }
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    let mut a = 0.0;
    for i in 0..n {
        a += v[i].cross(v[(i + 1) % n]);
    }
    a * 0.5
}

/// The free space: inside `boundary`, outside every hole, with at least
/// `clearance_radius` distance to all of them.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSpace {
    boundary: Polygon,
    holes: Vec<Polygon>,
    clearance_radius: f64,
}

impl FreeSpace {
    pub fn new(boundary: Polygon, holes: Vec<Polygon>, clearance_radius: f64) -> Result<FreeSpace> {
        if !(clearance_radius > 0.0 && clearance_radius.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "clearance radius must be positive, got {}",
                clearance_radius
            )));
        }
        for (k, h) in holes.iter().enumerate() {
            if h.vertices().iter().any(|&v| !boundary.contains(v) && boundary.outline_distance(v) > GEO_TOL) {
                return Err(Error::InvalidPolygon(alloc::format!("hole {} is not inside the boundary", k)));
            }
        }
        Ok(FreeSpace {
            boundary,
            holes,
            clearance_radius,
        })
    }

    pub fn boundary(&self) -> &Polygon {
        &self.boundary
    }

    pub fn holes(&self) -> &[Polygon] {
        &self.holes
    }

    pub fn clearance_radius(&self) -> f64 {
        self.clearance_radius
    }

    fn polygons(&self) -> impl Iterator<Item = &Polygon> {
        core::iter::once(&self.boundary).chain(self.holes.iter())
    }
}

/// Signed distance from `p` to the obstacle region: positive inside the
/// boundary and outside all holes, negative otherwise.
pub fn clearance(p: Point, fs: &FreeSpace) -> f64 {
    let d = fs.boundary.outline_distance(p);
    let mut c = if fs.boundary.contains(p) { d } else { -d };
    for h in &fs.holes {
        if !h.bbox.expanded(c.max(0.0)).intersects(&Aabb { min: p, max: p }) && c > 0.0 {
            // every hole point is further than the current minimum
            continue;
        }
        let dh = h.outline_distance(p);
        let s = if h.contains(p) { -dh } else { dh };
        c = c.min(s);
    }
    c
}

pub fn in_free_space(p: Point, fs: &FreeSpace) -> bool {
    clearance(p, fs) >= fs.clearance_radius - GEO_TOL
}

/// Exact test that every point of `s` keeps the clearance radius.
pub fn segment_in_free_space(s: &Segment, fs: &FreeSpace) -> bool {
    if !in_free_space(s.a, fs) {
        return false;
    }
    let r = fs.clearance_radius - GEO_TOL;
    let reach = s.bbox().expanded(fs.clearance_radius);
    for poly in fs.polygons() {
        if !poly.bbox.intersects(&reach) {
            continue;
        }
        for e in poly.edges() {
            if !e.bbox().intersects(&reach) {
                continue;
            }
            if segment_segment_distance(&e, s) < r {
                return false;
            }
        }
    }
    true
}

/// Distance from `p` to the closest point of `s`.
pub fn segment_point_distance(s: &Segment, p: Point) -> f64 {
    let d = s.b - s.a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(s.a);
    }
    let t = ((p - s.a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(s.a + d * t)
}

pub fn segment_segment_distance(s1: &Segment, s2: &Segment) -> f64 {
    if segments_intersect_closed(s1, s2) {
        return 0.0;
    }
    segment_point_distance(s1, s2.a)
        .min(segment_point_distance(s1, s2.b))
        .min(segment_point_distance(s2, s1.a))
        .min(segment_point_distance(s2, s1.b))
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_closed_segment(p: Point, s: &Segment) -> bool {
    p.x >= s.a.x.min(s.b.x) && p.x <= s.a.x.max(s.b.x) && p.y >= s.a.y.min(s.b.y) && p.y <= s.a.y.max(s.b.y)
}

/// Exact-sign intersection test of closed segments, touching included.
fn segments_intersect_closed(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orient(s1.a, s1.b, s2.a);
    let o2 = orient(s1.a, s1.b, s2.b);
    let o3 = orient(s2.a, s2.b, s1.a);
    let o4 = orient(s2.a, s2.b, s1.b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0)) {
        return true;
    }
    (o1 == 0.0 && on_closed_segment(s2.a, s1))
        || (o2 == 0.0 && on_closed_segment(s2.b, s1))
        || (o3 == 0.0 && on_closed_segment(s1.a, s2))
        || (o4 == 0.0 && on_closed_segment(s1.b, s2))
}

/// Side of `c` relative to the directed line `a -> b`, with a dead band of
/// [`GEO_TOL`] meters.
fn side(a: Point, b: Point, c: Point) -> i8 {
    let len = a.dist(b);
    if len == 0.0 {
        return 0;
    }
    let d = orient(a, b, c) / len;
    if d > GEO_TOL {
        1
    } else if d < -GEO_TOL {
        -1
    } else {
        0
    }
}

/// `p` lies on `s` strictly away from both endpoints (assumes collinearity).
fn in_open_segment(p: Point, s: &Segment) -> bool {
    let d = s.b - s.a;
    let len = d.norm();
    if len == 0.0 {
        return false;
    }
    let t = (p - s.a).dot(d) / len;
    t > GEO_TOL && t < len - GEO_TOL && p.dist(s.a) > GEO_TOL && p.dist(s.b) > GEO_TOL
}

/// True iff the segments share a point other than a common endpoint.
/// Collinear overlap of positive length counts as a crossing, touching at a
/// shared endpoint does not.
pub fn segments_cross(s1: &Segment, s2: &Segment) -> bool {
    if !s1.bbox().expanded(GEO_TOL).intersects(&s2.bbox()) {
        return false;
    }
    let d1 = side(s1.a, s1.b, s2.a);
    let d2 = side(s1.a, s1.b, s2.b);
    let d3 = side(s2.a, s2.b, s1.a);
    let d4 = side(s2.a, s2.b, s1.b);

    if d1 == 0 && d2 == 0 {
        // collinear: overlap length along s1
        let dir = (s1.b - s1.a).normalized();
        let len = s1.length();
        let tc = (s2.a - s1.a).dot(dir);
        let td = (s2.b - s1.a).dot(dir);
        let overlap = len.min(tc.max(td)) - 0.0f64.max(tc.min(td));
        return overlap > GEO_TOL;
    }
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && in_open_segment(s2.a, s1))
        || (d2 == 0 && in_open_segment(s2.b, s1))
        || (d3 == 0 && in_open_segment(s1.a, s2))
        || (d4 == 0 && in_open_segment(s1.b, s2))
}

/// Points offset from every convex free-space corner, each strictly inside
/// free space.
///
/// A corner is a convex vertex of a hole or a reflex vertex of the boundary.
/// The free-space arc around the corner spans the polygon's turning angle
/// `phi`; it is covered by `ceil(phi / max_step)` points on a circumscribed
/// polygon of radius `clearance_radius + CORNER_EPS`, so segments between
/// consecutive points of one corner keep the full clearance. With
/// `max_step >= phi` this is the single miter point on the exterior bisector.
pub fn corner_points(fs: &FreeSpace, max_step: f64) -> Vec<Point> {
    let r = fs.clearance_radius + CORNER_EPS;
    let mut out = Vec::new();
    // boundary: free space on the left, corners are right turns
    push_corners(&fs.boundary, false, r, max_step, &mut out);
    for h in &fs.holes {
        // holes: free space on the right, corners are left turns
        push_corners(h, true, r, max_step, &mut out);
    }
    out.retain(|&p| in_free_space(p, fs));
    out
}

/// Candidate nodes at convex free-space corners (one miter point for turns up
/// to 90 degrees, two for sharper corners).
pub fn convex_corner_candidates(fs: &FreeSpace) -> Vec<Point> {
    corner_points(fs, core::f64::consts::FRAC_PI_2)
}

fn push_corners(poly: &Polygon, hole: bool, r: f64, max_step: f64, out: &mut Vec<Point>) {
    let v = poly.vertices();
    let n = v.len();
    for i in 0..n {
        let prev = v[(i + n - 1) % n];
        let cur = v[i];
        let next = v[(i + 1) % n];
        let din = (cur - prev).normalized();
        let dout = (next - cur).normalized();
        let turn = libm::atan2(din.cross(dout), din.dot(dout));
        let convex = if hole { turn > 1e-9 } else { turn < -1e-9 };
        if !convex {
            continue;
        }
        let phi = turn.abs();
        let steps = libm::ceil(phi / max_step).max(1.0);
        let step = phi / steps;
        let radius = r / libm::cos(step * 0.5);
        // outward normal of the incoming edge, rotating with the polygon
        let (start, sign) = if hole {
            (Point::new(din.y, -din.x), 1.0)
        } else {
            (Point::new(-din.y, din.x), -1.0)
        };
        for k in 0..steps as usize {
            let a = sign * (k as f64 + 0.5) * step;
            out.push(cur + start.rotated(a) * radius);
        }
    }
}

/// Edges `(i, j, length)` with `i < j` between mutually visible `nodes`, in
/// lexicographic order.
pub fn visibility_graph(nodes: &[Point], fs: &FreeSpace) -> Vec<(usize, usize, f64)> {
    let n = nodes.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if segment_in_free_space(&Segment::new(nodes[i], nodes[j]), fs) {
                edges.push((i, j, nodes[i].dist(nodes[j])));
            }
        }
    }
    edges
}
