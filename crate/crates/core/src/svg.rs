//! SVG output for 2-dimensional drawings.

use std::fmt::Write as _;

use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::graph::Dag;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Grid spacing in pixels.
    pub cell: f64,
    pub radius: f64,
    /// Fips drawn as dashed segments.
    pub fips: Vec<(usize, usize)>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            cell: 40.0,
            radius: 6.0,
            fips: Vec::new(),
        }
    }
}

/// Screen position of `v`: x grows with the rank in dimension 0, y with the
/// rank in dimension 1 (so larger ranks appear higher up).
pub fn point(drawing: &Drawing, v: usize, cell: f64) -> (f64, f64) {
    let n = drawing.n() as f64;
    let x = drawing.coord(0, v) as f64 * cell;
    let y = (n + 1.0 - drawing.coord(1, v) as f64) * cell;
    (x, y)
}

pub fn render_svg(drawing: &Drawing, g: &Dag, opts: &SvgOptions) -> Result<String> {
    if drawing.d() != 2 {
        return Err(Error::NotTwoDimensional(drawing.d()));
    }
    if drawing.n() != g.n() {
        return Err(Error::BadDrawing(format!(
            "drawing has {} vertices, graph has {}",
            drawing.n(),
            g.n()
        )));
    }
    let side = (g.n() as f64 + 1.0) * opts.cell;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    let _ = writeln!(out, r#"  <g stroke="black" stroke-width="1">"#);
    for &(u, v) in g.edges() {
        let (x1, y1) = point(drawing, u, opts.cell);
        let (x2, y2) = point(drawing, v, opts.cell);
        let _ = writeln!(
            out,
            r#"    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
        );
    }
    let _ = writeln!(out, "  </g>");
    if !opts.fips.is_empty() {
        let _ = writeln!(
            out,
            r#"  <g class="fips" stroke="red" stroke-width="1" stroke-dasharray="4 3">"#
        );
        for &(u, v) in &opts.fips {
            let (x1, y1) = point(drawing, u, opts.cell);
            let (x2, y2) = point(drawing, v, opts.cell);
            let _ = writeln!(
                out,
                r#"    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    let _ = writeln!(out, r#"  <g fill="white" stroke="black">"#);
    for v in 0..g.n() {
        let (cx, cy) = point(drawing, v, opts.cell);
        let _ = writeln!(
            out,
            r#"    <circle id="v{v}" cx="{cx}" cy="{cy}" r="{r}"/>"#,
            r = opts.radius
        );
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    Ok(out)
}
