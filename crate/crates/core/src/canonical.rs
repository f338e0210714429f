//! Merging across non-special leaves and the classifying code.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::decompose::{merge_components, CutMode, Shape};
use crate::leaf_space::build_leaf_space;
use crate::surface::{GluingSpec, Interval, IntervalRef, ModelStripSpec, Orientation, Side, StripedSurface};

/// Reverses a side in x, negating and swapping any numeric endpoints.
fn reverse_side(intervals: &[Interval]) -> Vec<Interval> {
    intervals
        .iter()
        .rev()
        .map(|iv| {
            let mut out = iv.clone();
            out.endpoints = iv.endpoints.map(|(x0, x1)| (-x1, -x0));
            out
        })
        .collect()
}

fn place(intervals: Vec<Interval>, side: Side) -> Vec<Interval> {
    intervals
        .into_iter()
        .enumerate()
        .map(|(k, mut iv)| {
            iv.side = side;
            iv.index = k;
            iv
        })
        .collect()
}

/// Replaces every chain of strips by a single strip carrying the chain's
/// outer sides, and every cycle by a one-strip cylinder or Moebius band.
///
/// Gluings crossed inside a component disappear; the remaining gluings keep
/// their interval ids, with their flag toggled once for each end that sits on
/// an x-reversed strip.
pub fn canonicalize(surface: &StripedSurface) -> StripedSurface {
    let ls = build_leaf_space(surface);
    let comps = merge_components(surface, &ls, CutMode::Interior);
    let mut mirrored = vec![false; surface.strips().len()];
    let mut dropped = vec![false; surface.gluings().len()];
    let mut strips = Vec::with_capacity(comps.len());
    let mut extra = Vec::new();

    for comp in &comps {
        for s in &comp.strips {
            mirrored[s.strip] = s.mirrored;
        }
        for i in &comp.interfaces {
            dropped[i.gluing] = true;
        }
        let first = &comp.strips[0];
        let last = comp.strips.last().expect("non-empty");
        let spec = &surface.strips()[first.strip];
        let lower = surface.strips()[first.strip].side(first.facing(Side::Lower)).to_vec();
        let mut upper = surface.strips()[last.strip].side(last.facing(Side::Upper)).to_vec();
        if last.mirrored {
            upper = reverse_side(&upper);
        }
        if comp.shape == Shape::Cycle {
            let closing = comp.interfaces.last().expect("cycle has interfaces");
            let record = &surface.gluings()[closing.gluing];
            let orientation = Orientation::from_sign(comp.monodromy());
            extra.push(GluingSpec {
                id: record.id.clone(),
                first: record.first.clone(),
                second: record.second.clone(),
                orientation,
            });
        }
        strips.push(ModelStripSpec {
            id: spec.id.clone(),
            lower: place(lower, Side::Lower),
            upper: place(upper, Side::Upper),
        });
    }

    let mut gluings = Vec::new();
    for (g, spec) in surface.gluings().iter().enumerate() {
        if dropped[g] {
            continue;
        }
        let (a, b) = surface.gluing_ends(g);
        let flips = mirrored[a.strip] as u8 + mirrored[b.strip] as u8;
        let mut out = spec.clone();
        if flips % 2 == 1 {
            out.orientation = out.orientation.toggled();
        }
        gluings.push(out);
    }
    gluings.extend(extra);
    StripedSurface::new(strips, gluings).expect("merging preserves validity")
}

/// Classifying code of a surface: equal codes iff the surfaces are related
/// by relabeling strips and flipping them horizontally or vertically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Frame {
    vflip: bool,
    hflip: bool,
}

impl Frame {
    fn side(self, raw: Side) -> Side {
        if self.vflip {
            raw.opposite()
        } else {
            raw
        }
    }

    fn index(self, raw: usize, len: usize) -> usize {
        if self.hflip {
            len - 1 - raw
        } else {
            raw
        }
    }
}

struct Coder<'a> {
    surface: &'a StripedSurface,
}

impl Coder<'_> {
    fn framed_side(&self, strip: usize, frame: Frame, side: Side) -> Vec<IntervalRef> {
        let raw = frame.side(side);
        let n = self.surface.strips()[strip].side(raw).len();
        (0..n)
            .map(|k| IntervalRef {
                strip,
                side: raw,
                index: frame.index(k, n),
            })
            .collect()
    }

    /// Breadth-first serialization of the component of `root`; every newly
    /// reached strip is framed so that its arrival gluing lands on the
    /// opposite side and reads as preserving.
    fn serialize(&self, root: usize, frame0: Frame, members: usize) -> Vec<u32> {
        let n = self.surface.strips().len();
        let mut label: Vec<Option<u32>> = vec![None; n];
        let mut frames = vec![Frame::default(); n];
        let mut queue = VecDeque::from([root]);
        label[root] = Some(0);
        frames[root] = frame0;
        let mut next = 1u32;
        let mut out = vec![members as u32];
        while let Some(s) = queue.pop_front() {
            let f = frames[s];
            for side in [Side::Lower, Side::Upper] {
                let refs = self.framed_side(s, f, side);
                out.push(refs.len() as u32);
                for r in refs {
                    let Some((g, other)) = self.surface.partner(r) else {
                        out.push(0);
                        continue;
                    };
                    let raw_flag = self.surface.gluings()[g].orientation == Orientation::Reversing;
                    if label[other.strip].is_none() {
                        label[other.strip] = Some(next);
                        next += 1;
                        frames[other.strip] = Frame {
                            vflip: other.side == f.side(r.side),
                            hflip: raw_flag ^ f.hflip,
                        };
                        queue.push_back(other.strip);
                    }
                    let of = frames[other.strip];
                    let olen = self.surface.strips()[other.strip].side(other.side).len();
                    let flag = raw_flag ^ f.hflip ^ of.hflip;
                    out.extend([
                        1,
                        label[other.strip].expect("labelled"),
                        (of.side(other.side) == Side::Upper) as u32,
                        of.index(other.index, olen) as u32,
                        flag as u32,
                    ]);
                }
            }
        }
        out
    }

    fn component_code(&self, members: &[usize]) -> Vec<u32> {
        let frames = [false, true]
            .into_iter()
            .flat_map(|v| [false, true].map(|h| Frame { vflip: v, hflip: h }));
        let candidates: Vec<(usize, Frame)> = members
            .iter()
            .flat_map(|&s| frames.clone().map(move |f| (s, f)))
            .collect();
        let lower_len = |&(s, f): &(usize, Frame)| self.surface.strips()[s].side(f.side(Side::Lower)).len();
        let least = candidates.iter().map(lower_len).min().unwrap_or(0);
        candidates
            .iter()
            .filter(|c| lower_len(c) == least)
            .map(|&(s, f)| self.serialize(s, f, members.len()))
            .min()
            .unwrap_or_default()
    }
}

/// Lexicographically least serialization over all strip relabelings and
/// flips. Components are coded separately and listed in sorted order.
pub fn canonical_code(surface: &StripedSurface) -> CanonicalCode {
    let coder = Coder { surface };
    let mut parts: Vec<Vec<u32>> = surface
        .strip_components()
        .iter()
        .map(|members| coder.component_code(members))
        .collect();
    parts.sort();
    let mut tokens = vec![parts.len() as u32];
    for p in parts {
        tokens.extend(p);
    }
    CanonicalCode(tokens.into_iter().flat_map(u32::to_be_bytes).collect())
}

pub fn is_isomorphic(a: &StripedSurface, b: &StripedSurface) -> bool {
    canonical_code(&canonicalize(a)) == canonical_code(&canonicalize(b))
}
