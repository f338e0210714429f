//! Combinatorial skeleton of the leaf space `Y = X / foliation`.
//!
//! Every strip contributes one open arc (its interior leaves `R x t`) with a
//! lower and an upper end. Every gluing contributes one point whose two
//! member intervals sit on two side-ends; every unglued interval contributes
//! a boundary point sitting on one side-end. Two points are non-separated
//! exactly when they share a side-end.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::surface::{Side, SideEnd, StripedSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PointKind {
    Special,
    NonSpecialGlued,
    BoundaryLeaf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafPoint {
    pub id: String,
    /// Member interval ids: two for a glued leaf, one for an unglued one.
    pub members: Vec<String>,
    #[serde(skip)]
    pub ends: Vec<SideEnd>,
    #[serde(skip)]
    pub gluing: Option<usize>,
    /// Unglued interval, i.e. a leaf in the boundary of the surface.
    pub boundary: bool,
    pub kind: PointKind,
}

impl LeafPoint {
    pub fn is_special(&self) -> bool {
        self.kind == PointKind::Special
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeafSpace {
    arcs: Vec<String>,
    points: Vec<LeafPoint>,
    incidence: BTreeMap<SideEnd, Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArcComponentType {
    OpenInterval,
    HalfClosed,
    Closed,
    Circle,
}

/// A connected component of `Y` minus its special points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcComponent {
    pub arcs: Vec<String>,
    /// Non-special points inside the component, in discovery order.
    pub points: Vec<String>,
    pub kind: ArcComponentType,
}

/// Builds the leaf-space skeleton and classifies every point.
pub fn build_leaf_space(surface: &StripedSurface) -> LeafSpace {
    let mut points = Vec::new();
    let mut incidence: BTreeMap<SideEnd, Vec<usize>> = BTreeMap::new();
    let mut seen_gluing: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, strip) in surface.strips().iter().enumerate() {
        for side in [Side::Lower, Side::Upper] {
            let end = SideEnd::new(s, side);
            let slot = incidence.entry(end).or_default();
            for iv in strip.side(side) {
                let idx = match surface.gluing_of(&iv.id) {
                    Some(g) => *seen_gluing.entry(g).or_insert_with(|| {
                        let (a, b) = surface.gluing_ends(g);
                        let gl = &surface.gluings()[g];
                        points.push(LeafPoint {
                            id: gl.leaf_id(),
                            members: vec![gl.first.clone(), gl.second.clone()],
                            ends: vec![a.side_end(), b.side_end()],
                            gluing: Some(g),
                            boundary: false,
                            kind: PointKind::NonSpecialGlued,
                        });
                        points.len() - 1
                    }),
                    None => {
                        points.push(LeafPoint {
                            id: iv.id.clone(),
                            members: vec![iv.id.clone()],
                            ends: vec![end],
                            gluing: None,
                            boundary: true,
                            kind: PointKind::BoundaryLeaf,
                        });
                        points.len() - 1
                    }
                };
                slot.push(idx);
            }
        }
    }
    let mut ls = LeafSpace {
        arcs: surface.strips().iter().map(|s| s.id.clone()).collect(),
        points,
        incidence,
    };
    for p in 0..ls.points.len() {
        let special = ls.hausdorff_closure(p).len() > 1;
        let point = &mut ls.points[p];
        point.kind = if special {
            PointKind::Special
        } else if point.boundary {
            PointKind::BoundaryLeaf
        } else {
            PointKind::NonSpecialGlued
        };
    }
    ls
}

impl LeafSpace {
    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn points(&self) -> &[LeafPoint] {
        &self.points
    }

    pub fn point(&self, p: usize) -> &LeafPoint {
        &self.points[p]
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    /// Points on a side-end, ordered by interval index.
    pub fn on_side_end(&self, end: SideEnd) -> &[usize] {
        self.incidence.get(&end).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn side_ends(&self) -> impl Iterator<Item = (SideEnd, &[usize])> {
        self.incidence.iter().map(|(e, v)| (*e, v.as_slice()))
    }

    /// `bnd(y)`: the point itself together with every point sharing one of
    /// its side-ends.
    pub fn hausdorff_closure(&self, p: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([p]);
        for end in &self.points[p].ends {
            out.extend(self.on_side_end(*end).iter().copied());
        }
        out
    }

    pub fn hausdorff_closure_ids(&self, id: &str) -> Option<BTreeSet<String>> {
        let p = self.point_index(id)?;
        Some(
            self.hausdorff_closure(p)
                .into_iter()
                .map(|q| self.points[q].id.clone())
                .collect(),
        )
    }

    pub fn special_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| self.points[p].is_special())
            .collect()
    }

    /// Unordered non-separated pairs `(y, z)`, `y < z`.
    pub fn non_separated_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.points.len() {
            for z in self.hausdorff_closure(y) {
                if z > y {
                    out.push((y, z));
                }
            }
        }
        out
    }

    /// Connected components of the non-special part, classified as
    /// `(0,1)`, `[0,1)`, `[0,1]` or a circle.
    pub fn arc_component_types(&self) -> Vec<ArcComponent> {
        #[derive(Clone, Copy, PartialEq)]
        enum End {
            Open,
            Closed,
            Joined(usize),
        }
        let end_kind = |end: SideEnd| match self.on_side_end(end) {
            [p] => match self.points[*p].kind {
                PointKind::BoundaryLeaf => End::Closed,
                PointKind::NonSpecialGlued => End::Joined(*p),
                PointKind::Special => End::Open,
            },
            _ => End::Open,
        };

        let n = self.arcs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for point in &self.points {
            if point.kind == PointKind::NonSpecialGlued {
                let (a, b) = (
                    find(&mut parent, point.ends[0].strip),
                    find(&mut parent, point.ends[1].strip),
                );
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }

        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for arc in 0..n {
            let root = find(&mut parent, arc);
            groups.entry(root).or_default().push(arc);
        }
        groups
            .into_values()
            .map(|arcs| {
                let mut open = 0;
                let mut closed = 0;
                let mut points = Vec::new();
                for &arc in &arcs {
                    for side in [Side::Lower, Side::Upper] {
                        match end_kind(SideEnd::new(arc, side)) {
                            End::Open => open += 1,
                            End::Closed => {
                                closed += 1;
                                points.push(self.on_side_end(SideEnd::new(arc, side))[0]);
                            }
                            End::Joined(p) => points.push(p),
                        }
                    }
                }
                let mut seen = BTreeSet::new();
                points.retain(|p| seen.insert(*p));
                let kind = match (open, closed) {
                    (0, 0) => ArcComponentType::Circle,
                    (_, 0) => ArcComponentType::OpenInterval,
                    (_, 1) => ArcComponentType::HalfClosed,
                    _ => ArcComponentType::Closed,
                };
                ArcComponent {
                    arcs: arcs.iter().map(|&a| self.arcs[a].clone()).collect(),
                    points: points.iter().map(|&p| self.points[p].id.clone()).collect(),
                    kind,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::ModelStripSpec;

    fn ids(set: BTreeSet<String>) -> Vec<String> {
        set.into_iter().collect()
    }

    #[test]
    fn kaplan5_structure() {
        let s = fixtures::kaplan5();
        let ls = build_leaf_space(&s);
        assert_eq!(ls.arcs().len(), 5);
        let names: Vec<_> = ls.points().iter().map(|p| p.id.as_str()).collect();
        assert_eq!(names, ["alpha", "beta", "gamma", "delta"]);
        let side = |strip: &str, side| {
            ls.on_side_end(SideEnd::new(s.strip_index(strip).unwrap(), side))
                .iter()
                .map(|&p| ls.point(p).id.as_str())
                .collect::<Vec<_>>()
        };
        assert_eq!(side("B", Side::Lower), ["alpha", "beta"]);
        assert_eq!(side("C", Side::Upper), ["beta", "gamma"]);
        assert_eq!(side("D", Side::Lower), ["gamma", "delta"]);
        assert_eq!(side("A", Side::Upper), ["alpha"]);
    }

    #[test]
    fn kaplan5_hausdorff_closures() {
        let ls = build_leaf_space(&fixtures::kaplan5());
        assert_eq!(ids(ls.hausdorff_closure_ids("alpha").unwrap()), ["alpha", "beta"]);
        assert_eq!(
            ids(ls.hausdorff_closure_ids("beta").unwrap()),
            ["alpha", "beta", "gamma"]
        );
        assert_eq!(
            ids(ls.hausdorff_closure_ids("gamma").unwrap()),
            ["beta", "delta", "gamma"]
        );
        assert_eq!(ids(ls.hausdorff_closure_ids("delta").unwrap()), ["delta", "gamma"]);
        // non-separation is not transitive
        assert!(!ls.hausdorff_closure_ids("alpha").unwrap().contains("gamma"));
        assert_eq!(ls.special_points().len(), 4);
        let comps = ls.arc_component_types();
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.kind == ArcComponentType::OpenInterval));
    }

    #[test]
    fn single_boundary_leaf() {
        let s = StripedSurface::new(vec![ModelStripSpec::with_sides("A", &[], &["u"])], vec![]).unwrap();
        let ls = build_leaf_space(&s);
        assert_eq!(ls.arcs().len(), 1);
        assert_eq!(ls.points().len(), 1);
        assert_eq!(ls.point(0).kind, PointKind::BoundaryLeaf);
        assert_eq!(ls.hausdorff_closure(0).len(), 1);
        assert_eq!(ls.arc_component_types()[0].kind, ArcComponentType::HalfClosed);
    }

    #[test]
    fn cylinder_is_a_circle() {
        let ls = build_leaf_space(&fixtures::cylinder());
        assert_eq!(ls.points().len(), 1);
        assert_eq!(ls.point(0).kind, PointKind::NonSpecialGlued);
        assert_eq!(ls.point(0).ends.len(), 2);
        assert!(ls.special_points().is_empty());
        let comps = ls.arc_component_types();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ArcComponentType::Circle);
    }

    #[test]
    fn closed_and_empty_strips() {
        let ls = build_leaf_space(&fixtures::closed_strip());
        assert_eq!(ls.arc_component_types()[0].kind, ArcComponentType::Closed);
        let ls = build_leaf_space(&fixtures::open_strip());
        assert!(ls.special_points().is_empty());
        assert_eq!(ls.arc_component_types()[0].kind, ArcComponentType::OpenInterval);
    }

    #[test]
    fn unglued_cohabitants_are_special_boundary_leaves() {
        let ls = build_leaf_space(&fixtures::chain2());
        let p = ls.point(ls.point_index("P.l0").unwrap());
        assert!(p.boundary);
        assert_eq!(p.kind, PointKind::Special);
        let mu = ls.point(ls.point_index("mu").unwrap());
        assert_eq!(mu.kind, PointKind::NonSpecialGlued);
    }

    #[test]
    fn every_interval_in_exactly_one_point() {
        let s = fixtures::kaplan5();
        let ls = build_leaf_space(&s);
        let mut members: Vec<_> = ls.points().iter().flat_map(|p| p.members.clone()).collect();
        members.sort();
        let before = members.len();
        members.dedup();
        assert_eq!(before, members.len());
        assert_eq!(members.len(), s.interval_count());
    }
}
