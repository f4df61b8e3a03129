//! SVG pictures of a subdivision next to its dual tropical curve.
//!
//! Coordinates are converted to floats for drawing only.

use std::fmt::Write;

use num_traits::ToPrimitive;

use tropsev_core::dual_curve::{PlanePoint, TropicalCurve};
use tropsev_core::{Rational, Subdivision};

const PANEL: f64 = 360.0;
const MARGIN: f64 = 20.0;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Affine map from a data box onto a panel, with `y` pointing up.
struct Frame {
    min: (f64, f64),
    scale: f64,
    offset_x: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)], offset_x: f64) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if points.is_empty() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        Self { min: (x0, y0), scale: (PANEL - 2.0 * MARGIN) / span, offset_x }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.offset_x + MARGIN + (x - self.min.0) * self.scale,
            PANEL - MARGIN - (y - self.min.1) * self.scale,
        )
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), width: f64, color: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="{width:.1}"/>"#,
        a.0, a.1, b.0, b.1
    );
}

fn dot(out: &mut String, c: (f64, f64), r: f64, color: &str) {
    let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.1}" fill="{color}"/>"#, c.0, c.1);
}

fn pp(p: &PlanePoint) -> (f64, f64) {
    (f(&p.x), f(&p.y))
}

/// Subdivision on the left, curve on the right, with optional marked points.
pub fn render(s: &Subdivision, curve: &TropicalCurve, marked: &[PlanePoint]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = 2.0 * PANEL,
        h = PANEL
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let lattice: Vec<(f64, f64)> = s.polygon().lattice_points().iter().map(|p| (p.x as f64, p.y as f64)).collect();
    let left = Frame::fit(&lattice, 0.0);
    for e in s.edges() {
        let (a, b) = (e.segment.start(), e.segment.end());
        line(&mut out, left.map((a.x as f64, a.y as f64)), left.map((b.x as f64, b.y as f64)), 2.0, "black");
    }
    for &p in &lattice {
        dot(&mut out, left.map(p), 2.5, "gray");
    }
    for v in s.vertices() {
        dot(&mut out, left.map((v.x as f64, v.y as f64)), 4.0, "black");
    }

    let mut pts: Vec<(f64, f64)> = curve.vertices.iter().map(pp).collect();
    pts.extend(marked.iter().map(pp));
    if pts.len() == 1 {
        pts.push((pts[0].0 + 1.0, pts[0].1 + 1.0));
        pts.push((pts[0].0 - 1.0, pts[0].1 - 1.0));
    }
    let right = Frame::fit(&pts, PANEL);
    let (x0, x1) = pts.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (y0, y1) = pts.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let reach = ((x1 - x0).max(y1 - y0)).max(1.0);
    for e in &curve.edges {
        let (a, b) = (pp(&curve.vertices[e.from]), pp(&curve.vertices[e.to]));
        line(&mut out, right.map(a), right.map(b), 1.0 + e.weight as f64, "steelblue");
    }
    for r in &curve.rays {
        let a = pp(&curve.vertices[r.vertex]);
        let d = (r.direction.x as f64, r.direction.y as f64);
        let n = (d.0 * d.0 + d.1 * d.1).sqrt();
        let b = (a.0 + d.0 / n * reach, a.1 + d.1 / n * reach);
        line(&mut out, right.map(a), right.map(b), 1.0 + r.weight as f64, "steelblue");
    }
    for v in &curve.vertices {
        dot(&mut out, right.map(pp(v)), 3.0, "steelblue");
    }
    for q in marked {
        dot(&mut out, right.map(pp(q)), 4.0, "crimson");
    }
    out.push_str("</svg>\n");
    out
}
