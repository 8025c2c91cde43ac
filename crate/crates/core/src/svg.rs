//! Standalone SVG rendering of a polygon with its gradient field.
//!
//! Area gradients are thin arrows, perimeter gradients bold ones, both at
//! true scale and anchored at their vertex. Arrows shorter than
//! [`MIN_ARROW`] are omitted. The y axis is flipped so the picture has the
//! usual mathematical orientation.

use std::fmt::Write as _;
use std::path::Path;

use crate::geometry::{Polygon, Vec2};
use crate::gradients::GradientField;
use crate::io::{write_text, FileError};
use crate::{Error, Result, Scalar};

pub const MIN_ARROW: f64 = 1e-9;

pub const AREA_ARROW_CLASS: &str = "area-grad";
pub const PERIM_ARROW_CLASS: &str = "perim-grad";

struct Segment {
    vertex: usize,
    from: (f64, f64),
    to: (f64, f64),
}

fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn arrows<T: Scalar>(p: &Polygon<T>, field: &[Vec2<T>]) -> Vec<Segment> {
    p.vertices()
        .iter()
        .zip(field)
        .enumerate()
        .filter(|(_, (_, g))| to_f64(g.norm()) > MIN_ARROW)
        .map(|(vertex, (a, g))| {
            let (x, y) = (to_f64(a.x), to_f64(a.y));
            Segment {
                vertex,
                from: (x, -y),
                to: (x + to_f64(g.dx), -(y + to_f64(g.dy))),
            }
        })
        .collect()
}

/// Renders the SVG document as a string.
pub fn render_svg<T: Scalar>(p: &Polygon<T>, field: &GradientField<T>) -> Result<String> {
    if field.area_grad.len() != p.len() || field.perim_grad.len() != p.len() {
        return Err(Error::LengthMismatch(p.len(), field.area_grad.len()));
    }
    let thin = arrows(p, &field.area_grad);
    let bold = arrows(p, &field.perim_grad);

    let outline: Vec<(f64, f64)> = p
        .vertices()
        .iter()
        .map(|a| (to_f64(a.x), -to_f64(a.y)))
        .collect();
    let (mut min_x, mut min_y, mut max_x, mut max_y) =
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let all = outline
        .iter()
        .copied()
        .chain(thin.iter().chain(&bold).map(|s| s.to));
    for (x, y) in all {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let extent = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
    let margin = 0.08 * extent;
    let legend_unit = 10f64.powf((extent / 4.0).log10().floor());
    let legend_room = 0.12 * extent;
    let (vx, vy) = (min_x - margin, min_y - margin);
    let (vw, vh) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin + legend_room);
    let thin_w = 0.004 * extent;
    let bold_w = 0.012 * extent;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx} {vy} {vw} {vh}" width="600" height="{}">"#,
        (600.0 * vh / vw).round()
    );
    let _ = writeln!(s, "  <defs>");
    for (id, color) in [("head-thin", "#1f77b4"), ("head-bold", "#d62728")] {
        let _ = writeln!(
            s,
            r#"    <marker id="{id}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="4" markerHeight="4" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="{color}"/></marker>"#
        );
    }
    let _ = writeln!(s, "  </defs>");

    let points: Vec<String> = outline.iter().map(|(x, y)| format!("{x},{y}")).collect();
    let _ = writeln!(
        s,
        r##"  <polygon class="outline" points="{}" fill="#f2f2f2" stroke="black" stroke-width="{thin_w}"/>"##,
        points.join(" ")
    );

    let mut emit = |segs: &[Segment], class: &str, color: &str, width: f64, head: &str| {
        for seg in segs {
            let _ = writeln!(
                s,
                r#"  <line class="{class}" data-vertex="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{width}" marker-end="url(#{head})"/>"#,
                seg.vertex, seg.from.0, seg.from.1, seg.to.0, seg.to.1
            );
        }
    };
    emit(&thin, AREA_ARROW_CLASS, "#1f77b4", thin_w, "head-thin");
    emit(&bold, PERIM_ARROW_CLASS, "#d62728", bold_w, "head-bold");

    let ly = max_y + margin + 0.5 * legend_room;
    let lx = min_x;
    let _ = writeln!(s, r#"  <g class="legend">"#);
    let _ = writeln!(
        s,
        r#"    <line class="legend-unit" x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="black" stroke-width="{thin_w}"/>"#,
        lx + legend_unit
    );
    let _ = writeln!(
        s,
        r#"    <text x="{}" y="{}" font-size="{}" font-family="sans-serif">{legend_unit} length unit(s); thin: area gradient, bold: perimeter gradient</text>"#,
        lx + legend_unit + 0.02 * extent,
        ly + 0.015 * extent,
        0.035 * extent
    );
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn write_svg<T: Scalar>(
    path: &Path,
    p: &Polygon<T>,
    field: &GradientField<T>,
) -> std::result::Result<(), FileError> {
    let doc = render_svg(p, field).map_err(|source| FileError::Invalid {
        path: path.to_path_buf(),
        source,
    })?;
    write_text(path, &doc)
}

/// An arrow read back from rendered SVG: class, vertex index and endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedArrow {
    pub class: String,
    pub vertex: usize,
    pub from: (f64, f64),
    pub to: (f64, f64),
}

impl ParsedArrow {
    pub fn direction(&self) -> (f64, f64) {
        (self.to.0 - self.from.0, self.to.1 - self.from.1)
    }
}

/// Extracts the gradient arrows from a document produced by [`render_svg`].
pub fn parse_arrows(svg: &str) -> Vec<ParsedArrow> {
    fn attr<'a>(line: &'a str, name: &str) -> Option<&'a str> {
        let key = format!(" {name}=\"");
        let start = line.find(&key)? + key.len();
        let end = line[start..].find('"')? + start;
        Some(&line[start..end])
    }
    svg.lines()
        .filter(|l| l.trim_start().starts_with("<line "))
        .filter_map(|l| {
            let class = attr(l, "class")?;
            if class != AREA_ARROW_CLASS && class != PERIM_ARROW_CLASS {
                return None;
            }
            let num = |k: &str| attr(l, k)?.parse::<f64>().ok();
            Some(ParsedArrow {
                class: class.to_string(),
                vertex: attr(l, "data-vertex")?.parse().ok()?,
                from: (num("x1")?, num("y1")?),
                to: (num("x2")?, num("y2")?),
            })
        })
        .collect()
}
