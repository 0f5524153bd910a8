//! DOT and SVG pictures of meanders and of the seaweed matrix with its
//! core/peak blocks and form dots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use seaweed_core::decomposition::{self, ComponentBlocks, VertexBlock};
use seaweed_core::meander::{self, Meander};
use seaweed_core::{MatrixLocation, Result, SeaweedDescriptor};

const TAIL: &str = "#4a78d0";
const AFTERTAIL: &str = "#d04a4a";
const PALETTE: &[&str] = &["#6a9fe0", "#e0a15a", "#7cc47c", "#b88ad8", "#e07a9f", "#5ec4c0", "#c9c45a"];

const STEP: f64 = 40.0;
const MARGIN: f64 = 30.0;
const CELL: f64 = 18.0;

fn vertex_fill(m: &Meander, v: usize) -> Option<&'static str> {
    if m.tail.contains(&v) {
        Some(TAIL)
    } else if m.aftertail.contains(&v) {
        Some(AFTERTAIL)
    } else {
        None
    }
}

pub fn meander_dot(d: &SeaweedDescriptor, m: &Meander) -> String {
    let mut out = String::new();
    writeln!(out, "graph meander {{").unwrap();
    writeln!(out, "  label=\"{d}\";").unwrap();
    writeln!(out, "  node [shape=circle, width=0.35, fixedsize=true];").unwrap();
    writeln!(out, "  splines=curved;").unwrap();
    for v in 1..=m.vertex_count {
        let style = match vertex_fill(m, v) {
            Some(c) => format!(", style=filled, fillcolor=\"{c}\""),
            None => String::new(),
        };
        writeln!(out, "  v{v} [label=\"{v}\", pos=\"{},0!\"{style}];", v as f64 * 0.6).unwrap();
    }
    for &(a, b) in &m.top_arcs {
        writeln!(out, "  v{a} -- v{b} [side=top];").unwrap();
    }
    for &(a, b) in &m.bottom_arcs {
        writeln!(out, "  v{a} -- v{b} [side=bottom, style=dashed];").unwrap();
    }
    out.push_str("}\n");
    out
}

fn svg_open(out: &mut String, width: f64, height: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
}

pub fn meander_svg(d: &SeaweedDescriptor, m: &Meander) -> String {
    let x = |v: usize| MARGIN + (v as f64 - 0.5) * STEP;
    let width = 2.0 * MARGIN + m.vertex_count as f64 * STEP;
    let reach = (m.vertex_count as f64 * STEP / 2.0).max(STEP);
    let height = 2.0 * reach + 2.0 * MARGIN + 20.0;
    let base = MARGIN + 20.0 + reach;
    let mut out = String::new();
    svg_open(&mut out, width, height);
    writeln!(out, r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="14">{d}</text>"#, MARGIN - 8.0).unwrap();
    writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1.5">"#).unwrap();
    for (arcs, sweep) in [(&m.top_arcs, 1), (&m.bottom_arcs, 0)] {
        for &(a, b) in arcs {
            let r = (x(b) - x(a)) / 2.0;
            writeln!(
                out,
                r#"<path d="M {:.1} {base:.1} A {r:.1} {r:.1} 0 0 {sweep} {:.1} {base:.1}"/>"#,
                x(a),
                x(b)
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n");
    for v in 1..=m.vertex_count {
        let fill = vertex_fill(m, v).unwrap_or("white");
        writeln!(
            out,
            r#"<circle cx="{:.1}" cy="{base:.1}" r="9" fill="{fill}" stroke="black"/><text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="10" text-anchor="middle">{v}</text>"#,
            x(v),
            x(v),
            base + 3.5
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Everything the matrix picture shows.
pub struct MatrixPicture {
    pub size: usize,
    pub admissible: BTreeSet<MatrixLocation>,
    pub components: Vec<ComponentBlocks>,
    pub dots: BTreeSet<MatrixLocation>,
}

impl MatrixPicture {
    pub fn new(d: &SeaweedDescriptor, dots: impl IntoIterator<Item = MatrixLocation>) -> Result<Self> {
        Ok(Self {
            size: d.matrix_size(),
            admissible: d.admissible_locations().into_iter().collect(),
            components: decomposition::component_blocks(d)?,
            dots: dots.into_iter().collect(),
        })
    }

    /// Core cells map to their component; peak cells are collected separately.
    fn shading(&self) -> (BTreeMap<MatrixLocation, usize>, BTreeMap<MatrixLocation, usize>) {
        let cells = |a: VertexBlock, b: VertexBlock| {
            a.vertices().flat_map(move |i| b.vertices().map(move |j| MatrixLocation::new(i, j)))
        };
        let mut core = BTreeMap::new();
        let mut peak = BTreeMap::new();
        for (k, c) in self.components.iter().enumerate() {
            for &(a, b) in &c.core {
                core.extend(cells(a, b).map(|l| (l, k)));
            }
            for p in &c.peaks {
                peak.extend(cells(p.source, p.target).map(|l| (l, k)));
            }
        }
        (core, peak)
    }
}

pub fn matrix_svg(d: &SeaweedDescriptor, pic: &MatrixPicture) -> String {
    let size = pic.size;
    let side = size as f64 * CELL;
    let total = side + 2.0 * MARGIN;
    let at = |k: usize| MARGIN + (k as f64 - 1.0) * CELL;
    let (core, peak) = pic.shading();
    let mut out = String::new();
    svg_open(&mut out, total, total + 10.0);
    writeln!(out, r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="14">{d}</text>"#, MARGIN - 8.0).unwrap();
    for (loc, &k) in &core {
        writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{CELL}" height="{CELL}" fill="{}" fill-opacity="0.55"/>"#,
            at(loc.col),
            at(loc.row),
            PALETTE[k % PALETTE.len()]
        )
        .unwrap();
    }
    for (loc, &k) in &peak {
        writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{CELL}" height="{CELL}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            at(loc.col) + 1.0,
            at(loc.row) + 1.0,
            PALETTE[k % PALETTE.len()]
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{side}" height="{side}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    let mid = MARGIN + side / 2.0;
    let far = MARGIN + side;
    writeln!(
        out,
        r#"<g stroke="gray" stroke-dasharray="2,3"><line x1="{MARGIN}" y1="{MARGIN}" x2="{far}" y2="{far}"/><line x1="{MARGIN}" y1="{far}" x2="{far}" y2="{MARGIN}"/><line x1="{mid}" y1="{MARGIN}" x2="{mid}" y2="{far}"/><line x1="{MARGIN}" y1="{mid}" x2="{far}" y2="{mid}"/></g>"#
    )
    .unwrap();
    // Staircase: every cell edge between an admissible and a non-admissible cell.
    let inside = |r: usize, c: usize| pic.admissible.contains(&MatrixLocation::new(r, c));
    out.push_str(r#"<g stroke="black" stroke-width="3" stroke-linecap="square">"#);
    for loc in &pic.admissible {
        let (r, c) = (loc.row, loc.col);
        let (x0, y0) = (at(c), at(r));
        let (x1, y1) = (x0 + CELL, y0 + CELL);
        let mut edge = |xa: f64, ya: f64, xb: f64, yb: f64| {
            write!(out, r#"<line x1="{xa:.1}" y1="{ya:.1}" x2="{xb:.1}" y2="{yb:.1}"/>"#).unwrap();
        };
        if r == 1 || !inside(r - 1, c) {
            edge(x0, y0, x1, y0);
        }
        if r == size || !inside(r + 1, c) {
            edge(x0, y1, x1, y1);
        }
        if c == 1 || !inside(r, c - 1) {
            edge(x0, y0, x0, y1);
        }
        if c == size || !inside(r, c + 1) {
            edge(x1, y0, x1, y1);
        }
    }
    out.push_str("</g>\n");
    for loc in &pic.dots {
        writeln!(
            out,
            r#"<circle cx="{:.1}" cy="{:.1}" r="{:.1}" fill="black"/>"#,
            at(loc.col) + CELL / 2.0,
            at(loc.row) + CELL / 2.0,
            CELL / 4.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// The matrix as a single HTML-table node.
pub fn matrix_dot(d: &SeaweedDescriptor, pic: &MatrixPicture) -> String {
    let (core, peak) = pic.shading();
    let mut out = String::new();
    writeln!(out, "digraph matrix {{").unwrap();
    writeln!(out, "  label=\"{d}\";").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    writeln!(out, "  m [label=<<table border=\"1\" cellborder=\"1\" cellspacing=\"0\">").unwrap();
    for r in 1..=pic.size {
        out.push_str("    <tr>");
        for c in 1..=pic.size {
            let loc = MatrixLocation::new(r, c);
            let mut attrs = String::new();
            if let Some(&k) = core.get(&loc) {
                write!(attrs, " bgcolor=\"{}\"", PALETTE[k % PALETTE.len()]).unwrap();
            } else if !pic.admissible.contains(&loc) {
                attrs.push_str(" bgcolor=\"#dddddd\"");
            }
            if let Some(&k) = peak.get(&loc) {
                write!(attrs, " color=\"{}\"", PALETTE[k % PALETTE.len()]).unwrap();
            }
            let mark = if pic.dots.contains(&loc) { "&#9679;" } else { " " };
            write!(out, "<td width=\"14\" height=\"14\"{attrs}>{mark}</td>").unwrap();
        }
        out.push_str("</tr>\n");
    }
    out.push_str("  </table>>];\n}\n");
    out
}

pub fn meander_for(d: &SeaweedDescriptor, full: bool) -> Meander {
    if full {
        meander::build_full_meander(d)
    } else {
        meander::build_meander(d)
    }
}
