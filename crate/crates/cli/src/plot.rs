//! SVG rendering of two-dimensional instances.

use std::fmt::Write;

use latfree::polyhedron::Polyhedron;
use latfree::search::enumerate_in_window;
use latfree::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// `P` clipped to `window`, with every lattice point of the window drawn as
/// a dot: class `interior` inside `int(P)`, `witness` on the boundary of
/// `P`, `lattice` elsewhere.
pub fn plot2d(p: &Polyhedron, window: &[(BigInt, BigInt)]) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    let f = |x: &BigInt| x.to_f64().unwrap_or(0.0);
    let (x0, x1, y0, y1) = (f(&window[0].0), f(&window[0].1), f(&window[1].0), f(&window[1].1));
    let width = (x1 - x0) * UNIT + 2.0 * MARGIN;
    let height = (y1 - y0) * UNIT + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - x0) * UNIT;
    let py = |y: f64| MARGIN + (y1 - y) * UNIT;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect class="window" x="0" y="0" width="{width}" height="{height}" fill="white"/>"#).unwrap();

    let clipped = p.intersect(&Polyhedron::int_box(window))?;
    if !clipped.is_empty() {
        let mut verts: Vec<(f64, f64)> = clipped.vertices()?.iter().map(|v| (v[0].to_f64(), v[1].to_f64())).collect();
        let n = verts.len() as f64;
        let (cx, cy) = verts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
        verts.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
        let points: Vec<String> = verts.iter().map(|(x, y)| format!("{:.3},{:.3}", px(*x), py(*y))).collect();
        writeln!(
            svg,
            r##"<polygon class="polyhedron" points="{}" fill="#cfe3f7" stroke="#1f5f99" stroke-width="2"/>"##,
            points.join(" ")
        )
        .unwrap();
    }

    for z in enumerate_in_window(&Polyhedron::whole_space(2), window)? {
        let (class, r, fill) = if p.strictly_contains_int(&z) {
            ("interior", 5.0, "#c0392b")
        } else if p.contains_int(&z) {
            ("witness", 4.5, "#1e8449")
        } else {
            ("lattice", 2.0, "#555555")
        };
        writeln!(
            svg,
            r#"<circle class="{class}" cx="{:.3}" cy="{:.3}" r="{r}" fill="{fill}"><title>({}, {})</title></circle>"#,
            px(f(&z[0])),
            py(f(&z[1])),
            z[0],
            z[1]
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
