use std::fmt::Write;

use serde::Serialize;

use crate::decompose::{merge_components, CutMode};
use crate::leaf_space::{ArcComponent, LeafPoint, LeafSpace};
use crate::surface::{Orientation, Side, StripedSurface};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Strip nodes and point nodes, one solid edge per (point, side-end)
/// incidence and a dashed edge per non-separated pair.
pub fn leaf_space_dot(ls: &LeafSpace) -> String {
    let mut out = String::from("graph leafspace {\n");
    for arc in ls.arcs() {
        let _ = writeln!(
            out,
            "  {} [shape=box, label={}];",
            quote(&format!("strip:{arc}")),
            quote(arc)
        );
    }
    for p in ls.points() {
        let shape = if p.is_special() { "doublecircle" } else { "circle" };
        let _ = writeln!(
            out,
            "  {} [shape={shape}, label={}];",
            quote(&format!("point:{}", p.id)),
            quote(&p.id)
        );
    }
    for p in ls.points() {
        for end in &p.ends {
            let _ = writeln!(
                out,
                "  {} -- {} [label={}];",
                quote(&format!("strip:{}", ls.arcs()[end.strip])),
                quote(&format!("point:{}", p.id)),
                quote(end.side.as_str())
            );
        }
    }
    for (a, b) in ls.non_separated_pairs() {
        let _ = writeln!(
            out,
            "  {} -- {} [style=dashed];",
            quote(&format!("point:{}", ls.point(a).id)),
            quote(&format!("point:{}", ls.point(b).id))
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct PointDoc {
    #[serde(flatten)]
    pub point: LeafPoint,
    pub ends: Vec<EndDoc>,
    pub hausdorff_closure: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct EndDoc {
    pub strip: String,
    pub side: Side,
}

/// JSON view of a leaf space.
#[derive(Debug, Serialize)]
pub struct LeafSpaceDoc {
    pub arcs: Vec<String>,
    pub points: Vec<PointDoc>,
    pub special: Vec<String>,
    pub non_separated: Vec<(String, String)>,
    pub components: Vec<ArcComponent>,
}

pub fn leaf_space_json(ls: &LeafSpace) -> LeafSpaceDoc {
    let id = |p: usize| ls.point(p).id.clone();
    LeafSpaceDoc {
        arcs: ls.arcs().to_vec(),
        points: (0..ls.points().len())
            .map(|p| PointDoc {
                point: ls.point(p).clone(),
                ends: ls
                    .point(p)
                    .ends
                    .iter()
                    .map(|e| EndDoc {
                        strip: ls.arcs()[e.strip].clone(),
                        side: e.side,
                    })
                    .collect(),
                hausdorff_closure: ls.hausdorff_closure(p).into_iter().map(id).collect(),
            })
            .collect(),
        special: ls.special_points().into_iter().map(id).collect(),
        non_separated: ls
            .non_separated_pairs()
            .into_iter()
            .map(|(a, b)| (id(a), id(b)))
            .collect(),
        components: ls.arc_component_types(),
    }
}

const BAND: f64 = 60.0;
const GAP: f64 = 40.0;
const MARGIN: f64 = 30.0;
const COLUMN_GAP: f64 = 60.0;
const UNIT: f64 = 40.0;

/// Strip diagram: one column per component of the merge graph, strips
/// stacked from the bottom up, intervals drawn as bold segments on their
/// side and gluings as curves joining the paired intervals.
pub fn surface_svg(surface: &StripedSurface) -> String {
    let ls = crate::leaf_space::build_leaf_space(surface);
    let comps = merge_components(surface, &ls, CutMode::WithBoundary);

    // horizontal extent of the finite layout
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for s in surface.strips() {
        for iv in s.lower.iter().chain(&s.upper) {
            let (a, b) = iv.layout();
            for x in [a, b].into_iter().filter(|x| x.is_finite()) {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
    }
    lo -= 1.0;
    hi += 1.0;
    let width = (hi - lo) * UNIT;
    let tallest = comps.iter().map(|c| c.strips.len()).max().unwrap_or(0) as f64;
    let total_w = 2.0 * MARGIN + comps.len() as f64 * width + comps.len().saturating_sub(1) as f64 * COLUMN_GAP;
    let total_h = 2.0 * MARGIN + tallest * BAND + (tallest - 1.0).max(0.0) * GAP;

    // (x offset, bottom y, flipped) per strip
    let mut frame = vec![(0.0, 0.0, false); surface.strips().len()];
    for (c, comp) in comps.iter().enumerate() {
        let x0 = MARGIN + c as f64 * (width + COLUMN_GAP);
        for (k, s) in comp.strips.iter().enumerate() {
            let bottom = total_h - MARGIN - k as f64 * (BAND + GAP);
            frame[s.strip] = (x0, bottom, s.flipped);
        }
    }
    let sx = |x0: f64, x: f64| x0 + (x.clamp(lo, hi) - lo) * UNIT;
    let side_y = |strip: usize, side: Side| {
        let (_, bottom, flipped) = frame[strip];
        let facing = if flipped { side.opposite() } else { side };
        match facing {
            Side::Lower => bottom,
            Side::Upper => bottom - BAND,
        }
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{total_w:.1}\" height=\"{total_h:.1}\">"
    );
    out.push_str(
        "  <defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"4\" refY=\"4\" orient=\"auto\">\
<path d=\"M0,0 L8,4 L0,8 z\"/></marker></defs>\n",
    );
    let _ = writeln!(
        out,
        "  <style>.strip{{fill:#eef;stroke:#446}} .interval{{stroke:#000;stroke-width:4}} \
.gluing{{fill:none;stroke:#c33}} .reversing{{stroke-dasharray:4 3}}</style>"
    );
    for (i, s) in surface.strips().iter().enumerate() {
        let (x0, bottom, _) = frame[i];
        let _ = writeln!(
            out,
            "  <rect class=\"strip\" id={} x=\"{x0:.1}\" y=\"{:.1}\" width=\"{width:.1}\" height=\"{BAND:.1}\"/>",
            attr(&s.id),
            bottom - BAND
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.1}\">{}</text>",
            x0 + 4.0,
            bottom - BAND / 2.0,
            escape(&s.id)
        );
        for side in [Side::Lower, Side::Upper] {
            let y = side_y(i, side);
            for iv in s.side(side) {
                let (a, b) = iv.layout();
                let mut marks = String::new();
                if a == f64::NEG_INFINITY {
                    marks.push_str(" marker-start=\"url(#arrow)\"");
                }
                if b == f64::INFINITY {
                    marks.push_str(" marker-end=\"url(#arrow)\"");
                }
                let _ = writeln!(
                    out,
                    "  <line class=\"interval\" id={} x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\"{marks}/>",
                    attr(&iv.id),
                    sx(x0, a),
                    sx(x0, b)
                );
            }
        }
    }
    let mid = |i: usize, side: Side, k: usize| {
        let iv = &surface.strips()[i].side(side)[k];
        let (a, b) = iv.layout();
        let (a, b) = (a.clamp(lo, hi), b.clamp(lo, hi));
        (sx(frame[i].0, 0.5 * (a + b)), side_y(i, side))
    };
    for (g, gl) in surface.gluings().iter().enumerate() {
        let (a, b) = surface.gluing_ends(g);
        let (x1, y1) = mid(a.strip, a.side, a.index);
        let (x2, y2) = mid(b.strip, b.side, b.index);
        let bend = if (y1 - y2).abs() < 1e-9 { 0.6 * BAND } else { 0.0 };
        let class = match gl.orientation {
            Orientation::Preserving => "gluing preserving",
            Orientation::Reversing => "gluing reversing",
        };
        let _ = writeln!(
            out,
            "  <path class=\"{class}\" id={} d=\"M{x1:.1},{y1:.1} C{:.1},{:.1} {:.1},{:.1} {x2:.1},{y2:.1}\"/>",
            attr(&gl.leaf_id()),
            x1 + 30.0,
            (y1 + y2) / 2.0 - bend,
            x2 - 30.0,
            (y1 + y2) / 2.0 - bend
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn attr(s: &str) -> String {
    format!("\"{}\"", escape(s))
}
