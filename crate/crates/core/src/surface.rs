//! Model strips, boundary intervals and gluings.
//!
//! A [`StripedSurface`] is a finite family of model strips `R x (a, b)` with
//! open intervals attached on the lower and upper boundary lines, together
//! with a partial involution pairing intervals. Construction goes through
//! [`StripedSurface::new`], which enforces every structural rule; values are
//! immutable afterwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn toggled(self) -> Orientation {
        match self {
            Orientation::Preserving => Orientation::Reversing,
            Orientation::Reversing => Orientation::Preserving,
        }
    }

    /// `+1` for preserving, `-1` for reversing.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Preserving => 1,
            Orientation::Reversing => -1,
        }
    }

    pub fn from_sign(sign: i8) -> Orientation {
        if sign >= 0 {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Preserving => "preserving",
            Orientation::Reversing => "reversing",
        }
    }
}

/// One boundary interval `(x0, x1) x {a or b}` of a model strip.
///
/// Endpoints are optional; `f64::INFINITY` and `f64::NEG_INFINITY` stand for
/// unbounded rays.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub id: String,
    pub side: Side,
    pub index: usize,
    pub endpoints: Option<(f64, f64)>,
}

impl Interval {
    pub fn new(id: impl Into<String>, side: Side, index: usize) -> Self {
        Interval {
            id: id.into(),
            side,
            index,
            endpoints: None,
        }
    }

    pub fn with_endpoints(mut self, x0: f64, x1: f64) -> Self {
        self.endpoints = Some((x0, x1));
        self
    }

    /// Coordinates used for drawing and numeric realization: explicit
    /// endpoints when given, otherwise `(2k, 2k + 1)`.
    pub fn layout(&self) -> (f64, f64) {
        self.endpoints
            .unwrap_or((2.0 * self.index as f64, 2.0 * self.index as f64 + 1.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelStripSpec {
    pub id: String,
    pub lower: Vec<Interval>,
    pub upper: Vec<Interval>,
}

impl ModelStripSpec {
    /// Strip whose sides carry intervals with the given ids, left to right.
    pub fn with_sides(id: impl Into<String>, lower: &[&str], upper: &[&str]) -> Self {
        let make = |side, ids: &[&str]| {
            ids.iter()
                .enumerate()
                .map(|(k, iid)| Interval::new(*iid, side, k))
                .collect()
        };
        ModelStripSpec {
            id: id.into(),
            lower: make(Side::Lower, lower),
            upper: make(Side::Upper, upper),
        }
    }

    pub fn side(&self, side: Side) -> &[Interval] {
        match side {
            Side::Lower => &self.lower,
            Side::Upper => &self.upper,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Vec<Interval> {
        match side {
            Side::Lower => &mut self.lower,
            Side::Upper => &mut self.upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GluingSpec {
    /// Optional name of the glued leaf; defaults to `first~second`.
    pub id: Option<String>,
    pub first: String,
    pub second: String,
    pub orientation: Orientation,
}

impl GluingSpec {
    pub fn new(first: impl Into<String>, second: impl Into<String>, orientation: Orientation) -> Self {
        GluingSpec {
            id: None,
            first: first.into(),
            second: second.into(),
            orientation,
        }
    }

    pub fn named(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn leaf_id(&self) -> String {
        match &self.id {
            Some(id) => id.clone(),
            None => format!("{}~{}", self.first, self.second),
        }
    }
}

/// A `(strip, side)` pair, i.e. one end of a strip's arc in the leaf space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideEnd {
    pub strip: usize,
    pub side: Side,
}

impl SideEnd {
    pub fn new(strip: usize, side: Side) -> Self {
        SideEnd { strip, side }
    }
}

/// Position of an interval inside a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalRef {
    pub strip: usize,
    pub side: Side,
    pub index: usize,
}

impl IntervalRef {
    pub fn side_end(self) -> SideEnd {
        SideEnd::new(self.strip, self.side)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("duplicate id `{id}`")]
    DuplicateId { id: String },
    #[error("gluing refers to unknown interval `{id}`")]
    UnknownIntervalRef { id: String },
    #[error("interval `{id}` is glued more than once")]
    DoubleGluing { id: String },
    #[error("interval `{id}` is glued to itself")]
    SelfGluing { id: String },
    #[error("intervals `{first}` and `{second}` lie on the same side ({side}) of strip `{strip}`")]
    SameSideGluing {
        first: String,
        second: String,
        strip: String,
        side: Side,
    },
    #[error("bad endpoints on interval `{id}`: {reason}")]
    BadEndpoints { id: String, reason: String },
    #[error("interval `{id}` has side/index ({side}, {index}) but sits at position {position} of the {expected} side")]
    BadIntervalIndex {
        id: String,
        side: Side,
        index: usize,
        expected: Side,
        position: usize,
    },
}

impl SurfaceError {
    /// Stable rule name used in reports and CLI output.
    pub fn rule(&self) -> &'static str {
        match self {
            SurfaceError::DuplicateId { .. } => "DuplicateId",
            SurfaceError::UnknownIntervalRef { .. } => "UnknownIntervalRef",
            SurfaceError::DoubleGluing { .. } => "DoubleGluing",
            SurfaceError::SelfGluing { .. } => "SelfGluing",
            SurfaceError::SameSideGluing { .. } => "SameSideGluing",
            SurfaceError::BadEndpoints { .. } => "BadEndpoints",
            SurfaceError::BadIntervalIndex { .. } => "BadIntervalIndex",
        }
    }

    /// Interval ids involved in the violation.
    pub fn ids(&self) -> Vec<String> {
        match self {
            SurfaceError::SameSideGluing { first, second, .. } => vec![first.clone(), second.clone()],
            SurfaceError::DuplicateId { id }
            | SurfaceError::UnknownIntervalRef { id }
            | SurfaceError::DoubleGluing { id }
            | SurfaceError::SelfGluing { id }
            | SurfaceError::BadEndpoints { id, .. }
            | SurfaceError::BadIntervalIndex { id, .. } => vec![id.clone()],
        }
    }
}

/// A validated finite striped surface.
#[derive(Debug, Clone)]
pub struct StripedSurface {
    strips: Vec<ModelStripSpec>,
    gluings: Vec<GluingSpec>,
    locations: BTreeMap<String, IntervalRef>,
    glued_by: BTreeMap<String, usize>,
}

impl PartialEq for StripedSurface {
    fn eq(&self, other: &Self) -> bool {
        self.strips == other.strips && self.gluings == other.gluings
    }
}

impl StripedSurface {
    /// Validates and assembles a surface.
    pub fn new(strips: Vec<ModelStripSpec>, gluings: Vec<GluingSpec>) -> Result<Self, SurfaceError> {
        let mut strip_ids = BTreeSet::new();
        let mut locations = BTreeMap::new();
        for (s, strip) in strips.iter().enumerate() {
            if !strip_ids.insert(strip.id.as_str()) {
                return Err(SurfaceError::DuplicateId { id: strip.id.clone() });
            }
            for side in [Side::Lower, Side::Upper] {
                let mut last_right = f64::NEG_INFINITY;
                let mut last_id: Option<&str> = None;
                for (position, iv) in strip.side(side).iter().enumerate() {
                    if iv.side != side || iv.index != position {
                        return Err(SurfaceError::BadIntervalIndex {
                            id: iv.id.clone(),
                            side: iv.side,
                            index: iv.index,
                            expected: side,
                            position,
                        });
                    }
                    let place = IntervalRef {
                        strip: s,
                        side,
                        index: position,
                    };
                    if locations.insert(iv.id.clone(), place).is_some() {
                        return Err(SurfaceError::DuplicateId { id: iv.id.clone() });
                    }
                    if let Some((x0, x1)) = iv.endpoints {
                        if x0.is_nan() || x1.is_nan() || x0 >= x1 || x0 == f64::INFINITY || x1 == f64::NEG_INFINITY {
                            return Err(SurfaceError::BadEndpoints {
                                id: iv.id.clone(),
                                reason: format!("need x0 < x1, got ({x0}, {x1})"),
                            });
                        }
                        if x0 < last_right {
                            return Err(SurfaceError::BadEndpoints {
                                id: iv.id.clone(),
                                reason: format!(
                                    "overlaps or precedes `{}` on the {side} side of `{}`",
                                    last_id.unwrap_or("?"),
                                    strip.id
                                ),
                            });
                        }
                        last_right = x1;
                        last_id = Some(&iv.id);
                    }
                }
            }
        }

        let mut glued_by = BTreeMap::new();
        for (g, gluing) in gluings.iter().enumerate() {
            if let Some(id) = &gluing.id {
                if locations.contains_key(id) {
                    return Err(SurfaceError::DuplicateId { id: id.clone() });
                }
            }
            let first = *locations
                .get(&gluing.first)
                .ok_or_else(|| SurfaceError::UnknownIntervalRef {
                    id: gluing.first.clone(),
                })?;
            let second = *locations
                .get(&gluing.second)
                .ok_or_else(|| SurfaceError::UnknownIntervalRef {
                    id: gluing.second.clone(),
                })?;
            if gluing.first == gluing.second {
                return Err(SurfaceError::SelfGluing {
                    id: gluing.first.clone(),
                });
            }
            if first.side_end() == second.side_end() {
                return Err(SurfaceError::SameSideGluing {
                    first: gluing.first.clone(),
                    second: gluing.second.clone(),
                    strip: strips[first.strip].id.clone(),
                    side: first.side,
                });
            }
            for id in [&gluing.first, &gluing.second] {
                if glued_by.insert(id.clone(), g).is_some() {
                    return Err(SurfaceError::DoubleGluing { id: id.clone() });
                }
            }
        }
        let mut names = BTreeSet::new();
        for gluing in &gluings {
            if let Some(id) = &gluing.id {
                if !names.insert(id.as_str()) {
                    return Err(SurfaceError::DuplicateId { id: id.clone() });
                }
            }
        }

        Ok(StripedSurface {
            strips,
            gluings,
            locations,
            glued_by,
        })
    }

    pub fn strips(&self) -> &[ModelStripSpec] {
        &self.strips
    }

    pub fn gluings(&self) -> &[GluingSpec] {
        &self.gluings
    }

    pub fn strip_index(&self, id: &str) -> Option<usize> {
        self.strips.iter().position(|s| s.id == id)
    }

    pub fn locate(&self, interval_id: &str) -> Option<IntervalRef> {
        self.locations.get(interval_id).copied()
    }

    pub fn interval(&self, at: IntervalRef) -> &Interval {
        &self.strips[at.strip].side(at.side)[at.index]
    }

    pub fn side_intervals(&self, end: SideEnd) -> &[Interval] {
        self.strips[end.strip].side(end.side)
    }

    /// Index of the gluing that uses `interval_id`, if any.
    pub fn gluing_of(&self, interval_id: &str) -> Option<usize> {
        self.glued_by.get(interval_id).copied()
    }

    /// Both ends of gluing `g`, in `(first, second)` order.
    pub fn gluing_ends(&self, g: usize) -> (IntervalRef, IntervalRef) {
        let gluing = &self.gluings[g];
        (self.locations[&gluing.first], self.locations[&gluing.second])
    }

    /// The other end of the gluing through `at`.
    pub fn partner(&self, at: IntervalRef) -> Option<(usize, IntervalRef)> {
        let id = &self.interval(at).id;
        let g = self.gluing_of(id)?;
        let (a, b) = self.gluing_ends(g);
        Some((g, if a == at { b } else { a }))
    }

    pub fn interval_count(&self) -> usize {
        self.locations.len()
    }

    /// Connected components of the strip-gluing graph, as sorted strip indices.
    pub fn strip_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.strips.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for g in 0..self.gluings.len() {
            let (a, b) = self.gluing_ends(g);
            let (ra, rb) = (find(&mut parent, a.strip), find(&mut parent, b.strip));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..self.strips.len() {
            let root = find(&mut parent, s);
            groups.entry(root).or_default().push(s);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    pub fn is_connected(&self) -> bool {
        self.strip_components().len() <= 1
    }

    /// Splits into connected pieces; strip and gluing order is preserved.
    pub fn components(&self) -> Vec<StripedSurface> {
        self.strip_components()
            .into_iter()
            .map(|members| {
                let keep: BTreeSet<usize> = members.iter().copied().collect();
                let strips = members.iter().map(|&s| self.strips[s].clone()).collect();
                let gluings = self
                    .gluings
                    .iter()
                    .enumerate()
                    .filter(|(g, _)| keep.contains(&self.gluing_ends(*g).0.strip))
                    .map(|(_, gl)| gl.clone())
                    .collect();
                StripedSurface::new(strips, gluings).expect("restriction of a valid surface is valid")
            })
            .collect()
    }

    /// Horizontal flip `x -> -x` of one strip: reverses both interval orders
    /// and toggles the orientation of every gluing once per end on the strip.
    pub fn flip_horizontal(&self, strip: usize) -> StripedSurface {
        let mut strips = self.strips.clone();
        for side in [Side::Lower, Side::Upper] {
            let list = strips[strip].side_mut(side);
            list.reverse();
            for (k, iv) in list.iter_mut().enumerate() {
                iv.index = k;
                iv.endpoints = iv.endpoints.map(|(x0, x1)| (-x1, -x0));
            }
        }
        let gluings = self
            .gluings
            .iter()
            .enumerate()
            .map(|(g, gl)| {
                let (a, b) = self.gluing_ends(g);
                let hits = (a.strip == strip) as u8 + (b.strip == strip) as u8;
                let mut gl = gl.clone();
                if hits % 2 == 1 {
                    gl.orientation = gl.orientation.toggled();
                }
                gl
            })
            .collect();
        StripedSurface::new(strips, gluings).expect("flip preserves validity")
    }

    /// Vertical flip `y -> -y` of one strip: swaps its two sides.
    pub fn flip_vertical(&self, strip: usize) -> StripedSurface {
        let mut strips = self.strips.clone();
        let s = &mut strips[strip];
        std::mem::swap(&mut s.lower, &mut s.upper);
        for iv in s.lower.iter_mut() {
            iv.side = Side::Lower;
        }
        for iv in s.upper.iter_mut() {
            iv.side = Side::Upper;
        }
        StripedSurface::new(strips, self.gluings.clone()).expect("flip preserves validity")
    }

    /// Horizontal flip of every strip.
    pub fn mirror(&self) -> StripedSurface {
        (0..self.strips.len()).fold(self.clone(), |acc, s| acc.flip_horizontal(s))
    }

    /// Reorders strips (`order[k]` is the old index of new strip `k`) and
    /// renames every id through `rename`.
    pub fn relabel(&self, order: &[usize], rename: impl Fn(&str) -> String) -> StripedSurface {
        assert_eq!(order.len(), self.strips.len(), "order must be a permutation");
        let strips = order
            .iter()
            .map(|&old| {
                let s = &self.strips[old];
                let map = |list: &[Interval]| {
                    list.iter()
                        .map(|iv| Interval {
                            id: rename(&iv.id),
                            ..iv.clone()
                        })
                        .collect()
                };
                ModelStripSpec {
                    id: rename(&s.id),
                    lower: map(&s.lower),
                    upper: map(&s.upper),
                }
            })
            .collect();
        let gluings = self
            .gluings
            .iter()
            .map(|g| GluingSpec {
                id: g.id.as_deref().map(&rename),
                first: rename(&g.first),
                second: rename(&g.second),
                orientation: g.orientation,
            })
            .collect();
        StripedSurface::new(strips, gluings).expect("relabeling preserves validity")
    }
}

/// One glued leaf and the two collars it is attached to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluedLeaf {
    pub leaf: String,
    pub first: CollarSide,
    pub second: CollarSide,
    pub distinct_sides: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollarSide {
    pub strip: String,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum ValidationWarning {
    Disconnected { components: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub glued_leaves: Vec<GluedLeaf>,
    pub components: Vec<Vec<String>>,
    /// Strips whose sole lower interval is glued to their sole upper one.
    pub cylinder_candidates: Vec<String>,
    pub moebius_candidates: Vec<String>,
    pub warnings: Vec<ValidationWarning>,
}

/// Checks that every glued leaf has a product neighbourhood made of two
/// collars from distinct `(strip, side)` pairs, and reports connectivity.
pub fn validate_class_f(surface: &StripedSurface) -> ValidationReport {
    let collar = |at: IntervalRef| CollarSide {
        strip: surface.strips[at.strip].id.clone(),
        side: at.side,
    };
    let glued_leaves: Vec<GluedLeaf> = surface
        .gluings
        .iter()
        .enumerate()
        .map(|(g, gl)| {
            let (a, b) = surface.gluing_ends(g);
            GluedLeaf {
                leaf: gl.leaf_id(),
                first: collar(a),
                second: collar(b),
                distinct_sides: a.side_end() != b.side_end(),
            }
        })
        .collect();
    let components: Vec<Vec<String>> = surface
        .strip_components()
        .into_iter()
        .map(|c| c.into_iter().map(|s| surface.strips[s].id.clone()).collect())
        .collect();
    let mut cylinder_candidates = Vec::new();
    let mut moebius_candidates = Vec::new();
    for (g, gl) in surface.gluings.iter().enumerate() {
        let (a, b) = surface.gluing_ends(g);
        let sole = |at: IntervalRef| surface.side_intervals(at.side_end()).len() == 1;
        if a.strip == b.strip && a.side != b.side && sole(a) && sole(b) {
            let id = surface.strips[a.strip].id.clone();
            match gl.orientation {
                Orientation::Preserving => cylinder_candidates.push(id),
                Orientation::Reversing => moebius_candidates.push(id),
            }
        }
    }
    let mut warnings = Vec::new();
    if components.len() > 1 {
        warnings.push(ValidationWarning::Disconnected {
            components: components.len(),
        });
    }
    ValidationReport {
        ok: glued_leaves.iter().all(|l| l.distinct_sides),
        glued_leaves,
        components,
        cylinder_candidates,
        moebius_candidates,
        warnings,
    }
}
