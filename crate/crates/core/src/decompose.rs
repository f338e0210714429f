//! Cutting a striped surface along its special (and optionally boundary)
//! leaves.
//!
//! Strips are merged across *non-special* glued leaves, i.e. gluings whose
//! two intervals are each the only interval on their side. Every side of a
//! strip takes part in at most one such gluing, so the merge graph has degree
//! at most two and its components are chains or cycles of strips.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::leaf_space::{build_leaf_space, LeafSpace, PointKind};
use crate::surface::{Orientation, Side, SideEnd, StripedSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CutMode {
    /// Cut along special leaves only.
    Interior,
    /// Cut along special leaves and every boundary leaf.
    WithBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    Chain,
    Cycle,
}

/// A strip inside a component, with the flips that align it to the
/// component's frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedStrip {
    #[serde(skip)]
    pub strip: usize,
    pub id: String,
    /// The strip's upper side faces down in the component.
    pub flipped: bool,
    /// The strip's x-direction is reversed relative to the component.
    pub mirrored: bool,
}

impl OrientedStrip {
    /// Side of the strip that faces down (`Lower`) or up (`Upper`) in the
    /// component frame.
    pub fn facing(&self, side: Side) -> Side {
        if self.flipped {
            side.opposite()
        } else {
            side
        }
    }
}

/// A non-special leaf crossed while walking up a component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interface {
    pub point: String,
    #[serde(skip)]
    pub gluing: usize,
    #[serde(skip)]
    pub below: SideEnd,
    #[serde(skip)]
    pub above: SideEnd,
    pub orientation: Orientation,
}

impl Interface {
    /// `+1` when an upper side meets a lower side, `-1` otherwise.
    pub fn side_sign(&self) -> i8 {
        if self.below.side != self.above.side {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "point")]
pub enum EndKind {
    Open,
    /// A retained unglued leaf closes this end.
    Boundary(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub shape: Shape,
    pub mode: CutMode,
    pub strips: Vec<OrientedStrip>,
    pub interfaces: Vec<Interface>,
    #[serde(skip)]
    pub outer_lower: Option<SideEnd>,
    #[serde(skip)]
    pub outer_upper: Option<SideEnd>,
    pub lower_end: EndKind,
    pub upper_end: EndKind,
}

impl Component {
    /// Product over the crossed leaves of `orientation sign * side sign`.
    pub fn monodromy(&self) -> i8 {
        self.interfaces
            .iter()
            .map(|i| i.orientation.sign() * i.side_sign())
            .product()
    }

    pub fn contains_strip(&self, strip: usize) -> bool {
        self.strips.iter().any(|s| s.strip == strip)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentClass {
    OpenStrip,
    HalfClosedStrip,
    ClosedStrip,
    Cylinder,
    Moebius,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub components: Vec<Component>,
    /// Ids of the cut leaves, in leaf-space order.
    pub cut: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("surface has {components} connected components; decompose expects one")]
    DisconnectedSurface { components: usize },
    #[error("component is a cycle, not a chain")]
    NotAChain,
}

impl DecomposeError {
    pub fn rule(&self) -> &'static str {
        match self {
            DecomposeError::DisconnectedSurface { .. } => "DisconnectedSurface",
            DecomposeError::NotAChain => "NotAChain",
        }
    }
}

/// The unique non-special gluing on a side-end, if any.
fn link(surface: &StripedSurface, ls: &LeafSpace, end: SideEnd) -> Option<(usize, SideEnd)> {
    let [p] = ls.on_side_end(end) else {
        return None;
    };
    let point = ls.point(*p);
    if point.kind != PointKind::NonSpecialGlued {
        return None;
    }
    let g = point.gluing?;
    let (a, b) = surface.gluing_ends(g);
    let other = if a.side_end() == end { b } else { a };
    Some((g, other.side_end()))
}

/// Walks every merge-graph component. Works on disconnected input.
pub(crate) fn merge_components(surface: &StripedSurface, ls: &LeafSpace, mode: CutMode) -> Vec<Component> {
    let n = surface.strips().len();
    let mut visited = vec![false; n];
    let mut out = Vec::new();
    for seed in 0..n {
        if visited[seed] {
            continue;
        }
        // collect the component
        let mut members = vec![seed];
        visited[seed] = true;
        let mut k = 0;
        while k < members.len() {
            let s = members[k];
            k += 1;
            for side in [Side::Lower, Side::Upper] {
                if let Some((_, other)) = link(surface, ls, SideEnd::new(s, side)) {
                    if !visited[other.strip] {
                        visited[other.strip] = true;
                        members.push(other.strip);
                    }
                }
            }
        }
        members.sort_unstable();

        let free = |s: usize, side| link(surface, ls, SideEnd::new(s, side)).is_none();
        let start = members
            .iter()
            .copied()
            .find(|&s| free(s, Side::Lower) || free(s, Side::Upper));
        let shape = if start.is_some() { Shape::Chain } else { Shape::Cycle };
        let start = start.unwrap_or(members[0]);
        let flipped = shape == Shape::Chain && !free(start, Side::Lower);

        let mut strips = vec![OrientedStrip {
            strip: start,
            id: surface.strips()[start].id.clone(),
            flipped,
            mirrored: false,
        }];
        let mut interfaces = Vec::new();
        loop {
            let current = strips.last().expect("non-empty").clone();
            let up = SideEnd::new(current.strip, current.facing(Side::Upper));
            let Some((g, other)) = link(surface, ls, up) else {
                break;
            };
            let orientation = surface.gluings()[g].orientation;
            interfaces.push(Interface {
                point: surface.gluings()[g].leaf_id(),
                gluing: g,
                below: up,
                above: other,
                orientation,
            });
            if shape == Shape::Cycle && other == SideEnd::new(start, Side::Lower) {
                break;
            }
            strips.push(OrientedStrip {
                strip: other.strip,
                id: surface.strips()[other.strip].id.clone(),
                flipped: other.side == Side::Upper,
                mirrored: current.mirrored ^ (orientation == Orientation::Reversing),
            });
        }
        debug_assert_eq!(strips.len(), members.len());

        let (outer_lower, outer_upper, lower_end, upper_end) = match shape {
            Shape::Cycle => (None, None, EndKind::Open, EndKind::Open),
            Shape::Chain => {
                let first = &strips[0];
                let last = strips.last().expect("non-empty");
                let lo = SideEnd::new(first.strip, first.facing(Side::Lower));
                let hi = SideEnd::new(last.strip, last.facing(Side::Upper));
                let end_kind = |end: SideEnd| match (mode, ls.on_side_end(end)) {
                    (CutMode::Interior, [p]) if ls.point(*p).kind == PointKind::BoundaryLeaf => {
                        EndKind::Boundary(ls.point(*p).id.clone())
                    }
                    _ => EndKind::Open,
                };
                (Some(lo), Some(hi), end_kind(lo), end_kind(hi))
            }
        };
        out.push(Component {
            shape,
            mode,
            strips,
            interfaces,
            outer_lower,
            outer_upper,
            lower_end,
            upper_end,
        });
    }
    out
}

/// Cuts a connected surface and returns its components together with the
/// cut leaves.
pub fn decompose(surface: &StripedSurface, mode: CutMode) -> Result<Decomposition, DecomposeError> {
    let pieces = surface.strip_components().len();
    if pieces > 1 {
        return Err(DecomposeError::DisconnectedSurface { components: pieces });
    }
    let ls = build_leaf_space(surface);
    Ok(decompose_with(surface, &ls, mode))
}

pub(crate) fn decompose_with(surface: &StripedSurface, ls: &LeafSpace, mode: CutMode) -> Decomposition {
    let cut = ls
        .points()
        .iter()
        .filter(|p| p.is_special() || (mode == CutMode::WithBoundary && p.boundary))
        .map(|p| p.id.clone())
        .collect();
    Decomposition {
        components: merge_components(surface, ls, mode),
        cut,
    }
}

pub fn classify_component(comp: &Component) -> ComponentClass {
    match comp.shape {
        Shape::Cycle => {
            if comp.monodromy() > 0 {
                ComponentClass::Cylinder
            } else {
                ComponentClass::Moebius
            }
        }
        Shape::Chain => {
            let closed = [&comp.lower_end, &comp.upper_end]
                .iter()
                .filter(|e| matches!(e, EndKind::Boundary(_)))
                .count();
            match (comp.mode, closed) {
                (CutMode::WithBoundary, _) | (_, 0) => ComponentClass::OpenStrip,
                (_, 1) => ComponentClass::HalfClosedStrip,
                _ => ComponentClass::ClosedStrip,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosureSide {
    Lower,
    Upper,
}

/// Model-strip description of the closure of one half of a chain: the
/// leaves attached along its outer boundary line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureStrip {
    pub side: ClosureSide,
    pub strip: String,
    #[serde(skip)]
    pub side_end: SideEnd,
    pub base_points: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentClosures {
    pub lower: ClosureStrip,
    pub upper: ClosureStrip,
    /// Leaves bordering both halves.
    pub overlap: Vec<String>,
}

pub fn component_closures(
    surface: &StripedSurface,
    ls: &LeafSpace,
    comp: &Component,
) -> Result<ComponentClosures, DecomposeError> {
    let (Some(lo), Some(hi)) = (comp.outer_lower, comp.outer_upper) else {
        return Err(DecomposeError::NotAChain);
    };
    let make = |side, end: SideEnd| ClosureStrip {
        side,
        strip: surface.strips()[end.strip].id.clone(),
        side_end: end,
        base_points: ls.on_side_end(end).iter().map(|&p| ls.point(p).id.clone()).collect(),
    };
    let lower = make(ClosureSide::Lower, lo);
    let upper = make(ClosureSide::Upper, hi);
    let up: BTreeSet<&String> = upper.base_points.iter().collect();
    let overlap = lower.base_points.iter().filter(|p| up.contains(p)).cloned().collect();
    Ok(ComponentClosures { lower, upper, overlap })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Part1Report {
    pub passed: bool,
    pub cycle_components: usize,
    pub message: String,
}

/// A cylinder or Moebius component must be the whole surface, with no
/// special and no boundary leaves.
pub fn check_theorem_part1(surface: &StripedSurface, decomposition: &Decomposition) -> Part1Report {
    let ls = build_leaf_space(surface);
    let cycles = decomposition
        .components
        .iter()
        .filter(|c| c.shape == Shape::Cycle)
        .count();
    let (passed, message) = if cycles == 0 {
        (true, "no cylinder or Moebius component".to_string())
    } else if decomposition.components.len() != 1 {
        (
            false,
            format!(
                "cycle component coexists with {} others",
                decomposition.components.len() - 1
            ),
        )
    } else if !ls.special_points().is_empty() {
        (false, "cycle component alongside special leaves".to_string())
    } else if ls.points().iter().any(|p| p.boundary) {
        (false, "cycle component alongside boundary leaves".to_string())
    } else if decomposition.components[0].strips.len() != surface.strips().len() {
        (false, "cycle component does not cover the surface".to_string())
    } else {
        (true, "the cycle component is the whole surface".to_string())
    };
    Part1Report {
        passed,
        cycle_components: cycles,
        message,
    }
}

/// Orientability from the gluing signs: a consistent choice of strip
/// orientations exists iff every cycle of the strip-gluing graph has
/// monodromy `+1`.
pub fn is_orientable(surface: &StripedSurface) -> bool {
    let n = surface.strips().len();
    let mut sign: Vec<Option<i8>> = vec![None; n];
    let mut adjacency: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for g in 0..surface.gluings().len() {
        let (a, b) = surface.gluing_ends(g);
        let side_sign = if a.side != b.side { 1 } else { -1 };
        let eps = surface.gluings()[g].orientation.sign() * side_sign;
        adjacency[a.strip].push((b.strip, eps));
        adjacency[b.strip].push((a.strip, eps));
    }
    for root in 0..n {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(1);
        let mut stack = vec![root];
        while let Some(s) = stack.pop() {
            let here = sign[s].expect("assigned");
            for &(t, eps) in &adjacency[s] {
                match sign[t] {
                    None => {
                        sign[t] = Some(here * eps);
                        stack.push(t);
                    }
                    Some(v) if v != here * eps => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}
