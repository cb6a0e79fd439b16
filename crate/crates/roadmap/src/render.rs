//! Deterministic SVG rendering of an environment and a roadmap.

use std::fmt::Write as _;

use roadmap_core::smooth::Blend;
use roadmap_core::{Environment, NodeKind, Point, Polygon, Roadmap};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Layers {
    pub obstacles: bool,
    pub clearance: bool,
    pub edges: bool,
    pub nodes: bool,
    pub smoothed: bool,
    pub stations: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers {
            obstacles: true,
            clearance: true,
            edges: true,
            nodes: true,
            smoothed: true,
            stations: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderStyle {
    pub layers: Layers,
    /// Pixels per meter.
    pub scale: f64,
    /// Margin around the boundary in pixels.
    pub margin: f64,
    pub edge_width: f64,
    pub smooth_width: f64,
    /// Half the arm length of a node cross, in pixels.
    pub node_size: f64,
    pub station_radius: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            layers: Layers::default(),
            scale: 20.0,
            margin: 10.0,
            edge_width: 1.2,
            smooth_width: 1.5,
            node_size: 3.0,
            station_radius: 4.0,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(format!("scale must be positive, got {}", self.scale));
        }
        Ok(())
    }
}

struct Canvas {
    min: Point,
    max_y: f64,
    scale: f64,
    margin: f64,
}

impl Canvas {
    fn x(&self, p: Point) -> f64 {
        self.margin + (p.x - self.min.x) * self.scale
    }

    fn y(&self, p: Point) -> f64 {
        self.margin + (self.max_y - p.y) * self.scale
    }

    fn points(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for (k, &p) in pts.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{:.2},{:.2}", self.x(p), self.y(p));
        }
        s
    }

    fn path(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for (k, &p) in pts.iter().enumerate() {
            let _ = write!(s, "{}{:.2} {:.2}", if k == 0 { "M" } else { " L" }, self.x(p), self.y(p));
        }
        s
    }
}

/// Obstacles in the free-space sense: holes plus obstacle-station footprints.
fn solid_polygons(env: &Environment) -> Vec<&Polygon> {
    env.free_space().holes().iter().collect()
}

/// SVG document for `rm` on `env`, with `blends` as the smoothed overlay.
pub fn render_svg(env: &Environment, rm: &Roadmap, blends: Option<&[Blend]>, style: &RenderStyle) -> String {
    let bb = env.boundary().bbox();
    let c = Canvas {
        min: bb.min,
        max_y: bb.max.y,
        scale: style.scale,
        margin: style.margin,
    };
    let width = bb.width() * style.scale + 2.0 * style.margin;
    let height = bb.height() * style.scale + 2.0 * style.margin;
    let r_px = env.free_space().clearance_radius() * style.scale;
    let boundary = c.points(env.boundary().vertices());

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{width:.2}" height="{height:.2}" fill="#ffffff"/>"##);
    let _ = writeln!(s, r##"<polygon id="boundary" points="{boundary}" fill="#ffffff" stroke="#404040" stroke-width="1.5"/>"##);

    if style.layers.clearance {
        let _ = writeln!(s, r##"<g id="clearance" fill="#d9d9d9" stroke="#d9d9d9" stroke-linejoin="round" stroke-width="{:.2}">"##, 2.0 * r_px);
        let _ = writeln!(s, r#"<polygon points="{boundary}" fill="none"/>"#);
        for p in solid_polygons(env) {
            let _ = writeln!(s, r#"<polygon points="{}"/>"#, c.points(p.vertices()));
        }
        let _ = writeln!(s, "</g>");
    }
    if style.layers.obstacles {
        let _ = writeln!(s, r##"<g id="obstacles" fill="#808080" stroke="#505050" stroke-width="1">"##);
        for p in solid_polygons(env) {
            let _ = writeln!(s, r#"<polygon points="{}"/>"#, c.points(p.vertices()));
        }
        let _ = writeln!(s, "</g>");
    }
    if style.layers.edges {
        let _ = writeln!(
            s,
            r##"<g id="edges" stroke="#1f4fd6" stroke-width="{:.2}" stroke-dasharray="4 3" fill="none">"##,
            style.edge_width
        );
        for e in rm.edges() {
            let (a, b) = (rm.pos(e.a), rm.pos(e.b));
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                c.x(a),
                c.y(a),
                c.x(b),
                c.y(b)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    if let (true, Some(blends)) = (style.layers.smoothed, blends) {
        let _ = writeln!(
            s,
            r##"<g id="smoothed" stroke="#0a8cff" stroke-width="{:.2}" fill="none">"##,
            style.smooth_width
        );
        for b in blends {
            let _ = writeln!(s, r#"<path d="{}"/>"#, c.path(&b.samples));
        }
        let _ = writeln!(s, "</g>");
    }
    if style.layers.nodes {
        let _ = writeln!(s, r##"<g id="nodes" stroke="#1f4fd6" stroke-width="1.2">"##);
        let k = style.node_size;
        for n in rm.nodes().iter().filter(|n| n.kind != NodeKind::Station) {
            let (x, y) = (c.x(n.pos), c.y(n.pos));
            let _ = writeln!(
                s,
                r#"<path class="{}" d="M{:.2} {:.2} L{:.2} {:.2} M{:.2} {:.2} L{:.2} {:.2}"/>"#,
                n.kind.as_str(),
                x - k,
                y - k,
                x + k,
                y + k,
                x - k,
                y + k,
                x + k,
                y - k
            );
        }
        let _ = writeln!(s, "</g>");
    }
    if style.layers.stations {
        let _ = writeln!(s, r##"<g id="stations" fill="#d62728" stroke="none">"##);
        for st in env.stations() {
            if let (Some(f), false) = (&st.footprint, st.is_obstacle) {
                let _ = writeln!(s, r##"<polygon points="{}" fill="#f4b6b6"/>"##, c.points(f.vertices()));
            }
            for ip in &st.interaction_points {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"><title>{}</title></circle>"#,
                    c.x(ip.pos),
                    c.y(ip.pos),
                    style.station_radius,
                    escape(&ip.id)
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
