//! SVG pictures of already computed data: the decorated triangulation and
//! the character hexagons of the McKay quiver.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::fan::Triangulation;
use crate::group::AbelianGroup;
use crate::lattice::Vec3;
use crate::recipe::{Decoration, QuiverEmbedding};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Corner `e₁` bottom left, `e₂` bottom right, `e₃` on top.
fn project(p: Vec3, n: i64) -> (f64, f64) {
    let (b, c) = (p[1] as f64 / n as f64, p[2] as f64 / n as f64);
    let side = SIZE - 2.0 * MARGIN;
    let x = MARGIN + side * (b + c / 2.0);
    let y = MARGIN + side * SQRT3 / 2.0 * (1.0 - c);
    (x, y)
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The junior simplex with its triangulation, each edge labelled by its
/// character and each interior vertex by its marks.
pub fn triangulation_svg(g: &AbelianGroup, tri: &Triangulation, dec: Option<&Decoration>) -> String {
    let n = tri.order;
    let mut out = String::new();
    header(&mut out, SIZE, MARGIN * 2.0 + (SIZE - 2.0 * MARGIN) * SQRT3 / 2.0);
    let font = (160.0 / (n as f64).sqrt()).clamp(6.0, 16.0);
    for t in &tri.triangles {
        let pts: Vec<String> = t
            .vertices
            .iter()
            .map(|&v| {
                let (x, y) = project(tri.points[v], n);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon class="triangle" points="{}" fill="#f4f1e8" stroke="none"/>"##,
            pts.join(" ")
        );
    }
    for e in &tri.edges {
        let (x1, y1) = project(tri.points[e.ends[0]], n);
        let (x2, y2) = project(tri.points[e.ends[1]], n);
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1"/>"#
        );
        if !e.character.is_trivial() {
            let _ = writeln!(
                out,
                r##"<text class="edge-label" x="{:.2}" y="{:.2}" font-size="{:.1}" fill="#1f4e9c" text-anchor="middle">{}</text>"##,
                (x1 + x2) / 2.0,
                (y1 + y2) / 2.0,
                font * 0.8,
                escape(&g.label(e.character))
            );
        }
    }
    for vm in dec.map_or(&[][..], |d| &d.vertex_marks[..]) {
        let (x, y) = project(tri.points[vm.vertex], n);
        let label: Vec<String> = vm.marks.iter().map(|&c| g.label(c)).collect();
        let _ = writeln!(out, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(
            out,
            r##"<text class="vertex-label" x="{:.2}" y="{:.2}" font-size="{font:.1}" fill="#b22222" text-anchor="middle">{}</text>"##,
            x,
            y - 6.0,
            escape(&label.join(","))
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Lattice steps between neighbouring hexagons; step `k` crosses side `k`.
const HEX_STEPS: [[i64; 2]; 6] = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]];

/// One hexagon per character laid out on a fundamental domain of the
/// McKay quiver, with the outline of the domain drawn heavy.
pub fn quiver_svg(g: &AbelianGroup, q: &QuiverEmbedding) -> String {
    let cells: BTreeSet<[i64; 2]> = q.cells.iter().map(|c| c.2).collect();
    let s = 40.0;
    // Hexagon lattice (i, j) -> plane with i, j at 120 degrees so that all
    // six steps have the same length.
    let centre = |[i, j]: [i64; 2]| (s * (i as f64 - j as f64 / 2.0), -s * SQRT3 / 2.0 * j as f64);
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &c in &cells {
        let (x, y) = centre(c);
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if cells.is_empty() {
        (lo, hi) = ((0.0, 0.0), (0.0, 0.0));
    }
    let pad = s;
    let (w, h) = (hi.0 - lo.0 + 2.0 * pad, hi.1 - lo.1 + 2.0 * pad);
    let shift = |(x, y): (f64, f64)| (x - lo.0 + pad, y - lo.1 + pad);
    let r = s / SQRT3;
    // step k points at 60k degrees and crosses the side from corner k to k+1
    let corner = |c: [i64; 2], k: usize| {
        let (x, y) = shift(centre(c));
        let a = (60.0 * k as f64 - 30.0).to_radians();
        (x + r * a.cos(), y - r * a.sin())
    };
    let mut out = String::new();
    header(&mut out, w, h);
    for (c, m, hex) in &q.cells {
        let pts: Vec<String> = (0..6)
            .map(|k| {
                let (x, y) = corner(*hex, k);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let (x, y) = shift(centre(*hex));
        let _ = writeln!(
            out,
            r##"<polygon class="hex" points="{}" fill="#eef3fb" stroke="#7a8aa8" stroke-width="0.8"/>"##,
            pts.join(" ")
        );
        let _ = writeln!(
            out,
            r#"<text class="hex-label" x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle"><title>{}</title>{}</text>"#,
            y + 4.0,
            escape(&m.to_string()),
            escape(&g.label(*c))
        );
    }
    for &c in &cells {
        for (k, d) in HEX_STEPS.iter().enumerate() {
            if !cells.contains(&[c[0] + d[0], c[1] + d[1]]) {
                let (x1, y1) = corner(c, k);
                let (x2, y2) = corner(c, (k + 1) % 6);
                let _ = writeln!(
                    out,
                    r#"<line class="outline" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="2.5"/>"#
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
