//! SVG rendering of serialized diagrams.
//!
//! New 2-chromatic edges are black, old 2-chromatic edges gray, 1-chromatic
//! edges take the color of their sites, and new vertices are small squares.

use std::fmt::Write;

use colorvd::builder::schema::{DiagramDocument, SubdivisionRecord};
use colorvd::{Error, Side};

const PALETTE: [&str; 10] =
    ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45", "#9a6324", "#469990"];

pub fn color_of(c: usize) -> String {
    match PALETTE.get(c) {
        Some(p) => p.to_string(),
        None => format!("hsl({}, 70%, 45%)", (c * 137) % 360),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    pub side: Option<Side>,
    pub order: usize,
    pub show_refined: bool,
    pub show_old_edges: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { side: None, order: 1, show_refined: false, show_old_edges: true }
    }
}

pub fn render(doc: &DiagramDocument, opts: SvgOptions) -> Result<String, Error> {
    let seq = match opts.side {
        Some(side) => doc.sequences.iter().find(|q| q.side == side),
        None => doc.sequences.first(),
    }
    .ok_or_else(|| Error::Schema("document has no sequence for the requested side".into()))?;
    let order = seq
        .orders
        .iter()
        .find(|o| o.order == opts.order)
        .ok_or_else(|| Error::Schema(format!("document has no order {}", opts.order)))?;
    let d: &SubdivisionRecord = if opts.show_refined { &order.refined } else { &order.coarse };

    let (x0, y0) = (doc.clip_box.min.x.to_f64(), doc.clip_box.min.y.to_f64());
    let (x1, y1) = (doc.clip_box.max.x.to_f64(), doc.clip_box.max.y.to_f64());
    let (w, h) = (x1 - x0, y1 - y0);
    let unit = w.max(h) / 400.0;
    let px = 800.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.4} {:.4} {w:.4} {h:.4}" width="{px:.0}" height="{:.0}">"#,
        -y1,
        px * h / w
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
    for (i, e) in d.half_edges.iter().enumerate() {
        let Some([p, _]) = e.pair else { continue };
        if e.twin < i {
            continue;
        }
        let (class, stroke) = match (e.chromaticity, e.is_new) {
            (1, _) => ("mono", color_of(doc.sites[p].color)),
            (_, true) => ("new", "black".to_string()),
            (_, false) => ("old", "gray".to_string()),
        };
        if class == "old" && !opts.show_old_edges {
            continue;
        }
        let a = &d.vertices[e.origin];
        let b = &d.vertices[d.half_edges[e.twin].origin];
        let _ = writeln!(
            out,
            r#"<line class="edge {class}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{stroke}" stroke-width="{:.4}"/>"#,
            a.x.to_f64(),
            a.y.to_f64(),
            b.x.to_f64(),
            b.y.to_f64(),
            unit
        );
    }
    for v in d.interior_vertices().filter(|v| v.is_new) {
        let s = 3.0 * unit;
        let _ = writeln!(
            out,
            r#"<rect class="vertex" x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}" fill="black"/>"#,
            v.x.to_f64() - s / 2.0,
            v.y.to_f64() - s / 2.0,
            s,
            s
        );
    }
    for site in &doc.sites {
        let _ = writeln!(
            out,
            r#"<circle class="site" cx="{:.4}" cy="{:.4}" r="{:.4}" fill="{}"/>"#,
            site.x.to_f64(),
            site.y.to_f64(),
            2.5 * unit,
            color_of(site.color)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
