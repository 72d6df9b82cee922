//! Static SVG pictures of planar constructions.
//!
//! The body is outlined thinly, barrier segments are stroked, and the
//! convexification is outlined boldly. The view box is the union bounding
//! box with a 5% margin; the y-axis points up.

use std::fmt::Write;

use crate::geometry::{Polytope, Vec3};
use crate::measures::Barrier;

/// What to draw; any part may be absent.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scene<'a> {
    pub body: Option<&'a Polytope>,
    pub barrier: Option<&'a Barrier>,
    pub convexification: Option<&'a Polytope>,
}

fn polygon_points(p: &Polytope) -> String {
    p.vertices().iter().map(|v| format!("{:.6},{:.6}", v.x, -v.y)).collect::<Vec<_>>().join(" ")
}

/// Renders the scene at the given pixel width.
pub fn render(scene: &Scene, width_px: u32) -> String {
    let mut pts: Vec<Vec3> = Vec::new();
    for p in [scene.body, scene.convexification].into_iter().flatten() {
        pts.extend_from_slice(p.vertices());
    }
    if let Some(b) = scene.barrier {
        pts.extend(b.pieces().iter().flat_map(|p| p.points().iter().copied()));
    }
    if pts.is_empty() {
        pts.push(Vec3::zeros());
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(-p.y);
        y1 = y1.max(-p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let m = 0.05 * span;
    let (vx, vy, vw, vh) = (x0 - m, y0 - m, (x1 - x0) + 2.0 * m, (y1 - y0) + 2.0 * m);
    let height_px = (width_px as f64 * vh / vw).round().max(1.0) as u32;
    let stroke = span / 300.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" height="{height_px}" viewBox="{vx:.6} {vy:.6} {vw:.6} {vh:.6}">"#
    );
    let _ = writeln!(s, r#"<rect x="{vx:.6}" y="{vy:.6}" width="{vw:.6}" height="{vh:.6}" fill="white"/>"#);
    if let Some(co) = scene.convexification {
        let _ = writeln!(
            s,
            r#"<polygon class="convexification" points="{}" fill="none" stroke="black" stroke-width="{:.6}"/>"#,
            polygon_points(co),
            3.0 * stroke
        );
    }
    if let Some(k) = scene.body {
        let _ = writeln!(
            s,
            r##"<polygon class="body" points="{}" fill="#dde6f0" fill-opacity="0.6" stroke="#34557a" stroke-width="{:.6}"/>"##,
            polygon_points(k),
            stroke
        );
    }
    if let Some(b) = scene.barrier {
        for p in b.pieces() {
            let q = p.points();
            let _ = writeln!(
                s,
                r##"<line class="barrier" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="#c0392b" stroke-width="{:.6}" stroke-linecap="round"/>"##,
                q[0].x,
                -q[0].y,
                q[1].x,
                -q[1].y,
                2.0 * stroke
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
