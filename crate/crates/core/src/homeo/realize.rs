use std::sync::Arc;

use serde::Serialize;

use super::level_map::{LevelMap, Region};
use super::pl::{PLFunction, Tail};
use super::rectify::{uk, StagedRectification};
use super::trapezoid::{roof_homeo, trapezoid_under_clearance, Trapezoid};
use super::HomeoError;
use crate::decompose::{classify_component, ClosureStrip, Component, ComponentClass};
use crate::surface::StripedSurface;

/// Closed rectangle `[a, b] x [-1, d]` of the half-strip chart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartRect {
    pub point: String,
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

/// `R x (-1, 0]` together with the open base intervals `J_i x {-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfStripChart {
    pub rectangles: Vec<ChartRect>,
    pub base: Vec<(f64, f64)>,
}

/// A leaf bordering the half-strip, in both coordinate systems.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseLeaf {
    pub point: String,
    /// Position of the leaf on the line `y = -1` of the target.
    pub interval: (f64, f64),
    /// Base interval of its rectangle in the chart.
    pub chart: (f64, f64),
    /// Trapezoid under the leaf's collar, in collar coordinates.
    pub trapezoid: Trapezoid,
}

#[derive(Debug)]
pub struct HalfStripRealization {
    pub chart: HalfStripChart,
    pub leaves: Vec<BaseLeaf>,
    /// Chart to target, level by level.
    pub eta: LevelMap,
}

impl HalfStripRealization {
    /// Leaf of the target through `(x, y)`: a base leaf's id on `y = -1`,
    /// otherwise the level.
    pub fn leaf_id(&self, x: f64, y: f64) -> String {
        if (y + 1.0).abs() <= 1e-12 {
            if let Some(l) = self.leaves.iter().find(|l| l.interval.0 < x && x < l.interval.1) {
                return l.point.clone();
            }
            return "none".to_string();
        }
        format!("y={y:.9}")
    }
}

/// Builds the half model strip `M` for one closure of an open-strip
/// component and the map `eta: M -> closure`.
///
/// The target is drawn as `R x (-1, 0]` with every bordering leaf placed on
/// `y = -1` at its interval's coordinates. Each leaf gets a collar of
/// geometrically shrinking height, a trapezoid under that collar, and the
/// trapezoids are straightened into the rectangles of the chart.
pub fn realize_half_strip(
    surface: &StripedSurface,
    comp: &Component,
    closure: &ClosureStrip,
    depth: usize,
    samples: usize,
) -> Result<HalfStripRealization, HomeoError> {
    let class = classify_component(comp);
    if class != ComponentClass::OpenStrip {
        return Err(HomeoError::NotOpenStripComponent(format!("{class:?}")));
    }
    let side = surface.side_intervals(closure.side_end);
    let explicit = side
        .iter()
        .all(|iv| iv.endpoints.is_some_and(|(a, b)| a.is_finite() && b.is_finite()));
    let intervals: Vec<(f64, f64)> = side
        .iter()
        .map(|iv| {
            if explicit {
                iv.layout()
            } else {
                (2.0 * iv.index as f64, 2.0 * iv.index as f64 + 1.0)
            }
        })
        .collect();

    let mut leaves = Vec::with_capacity(intervals.len());
    let mut staged = Vec::with_capacity(2 * intervals.len());
    let mut tops = Vec::with_capacity(intervals.len());
    for (i, (&(x0, x1), point)) in intervals.iter().zip(&closure.base_points).enumerate() {
        let height = 0.5f64.powi(i as i32);
        let tent = PLFunction::new(vec![-1.0, 0.0, 1.0], vec![0.0, height, 0.0], Tail::Linear, Tail::Linear)?;
        let trap = trapezoid_under_clearance(&tent, -1.0, 1.0, depth)?;
        let (mid, half) = (0.5 * (x0 + x1), 0.5 * (x1 - x0));
        let top = -1.0 + trap.level_range.1;
        staged.push((trap.alpha.transformed(-1.0, half, mid), top));
        staged.push((trap.beta.transformed(-1.0, half, mid), top));
        tops.push(top);
        leaves.push(BaseLeaf {
            point: point.clone(),
            interval: (x0, x1),
            chart: (2.0 * i as f64, 2.0 * i as f64 + 1.0),
            trapezoid: trap,
        });
    }

    let rect = Arc::new(StagedRectification::new(staged.clone(), -1.0, samples)?);
    let corners: Vec<f64> = staged.iter().map(|(f, top)| rect.apply(f.eval(*top), *top)).collect();
    let targets: Vec<f64> = (0..corners.len()).map(|j| j as f64).collect();
    if corners.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HomeoError::GraphsIntersect { level: -1.0 });
    }

    let chart = HalfStripChart {
        rectangles: leaves
            .iter()
            .zip(&tops)
            .map(|(l, &d)| ChartRect {
                point: l.point.clone(),
                a: l.chart.0,
                b: l.chart.1,
                d,
            })
            .collect(),
        base: leaves.iter().map(|l| l.chart).collect(),
    };

    let mut eta = LevelMap::new(PLFunction::identity());
    for (leaf, &d) in leaves.iter().zip(&tops) {
        let (a, b) = leaf.chart;
        let source = Trapezoid::rectangle(a, b, -1.0, d);
        let xi = roof_homeo(&source, &leaf.trapezoid, &PLFunction::affine(1.0, 1.0))?;
        let (x0, x1) = leaf.interval;
        let (mid, half) = (0.5 * (x0 + x1), 0.5 * (x1 - x0));
        eta = eta.with_piece(
            leaf.point.clone(),
            Region::Box {
                x0: a,
                x1: b,
                y0: -1.0,
                y1: d,
                bottom_closed: true,
            },
            move |x, y| {
                let (u, v) = xi.pieces()[0].eval(x, y);
                (mid + half * u, v - 1.0)
            },
        );
    }
    let r = Arc::clone(&rect);
    eta = eta.with_piece(
        "Z",
        Region::Box {
            x0: f64::NEG_INFINITY,
            x1: f64::INFINITY,
            y0: -1.0,
            y1: 0.0,
            bottom_closed: false,
        },
        move |x, y| (r.invert(uk(x, &targets, &corners), y), y),
    );
    Ok(HalfStripRealization { chart, leaves, eta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{component_closures, decompose, CutMode};
    use crate::fixtures;
    use crate::leaf_space::build_leaf_space;

    fn realize_b(depth: usize) -> HalfStripRealization {
        let s = fixtures::kaplan5();
        let ls = build_leaf_space(&s);
        let d = decompose(&s, CutMode::WithBoundary).unwrap();
        let cl = component_closures(&s, &ls, &d.components[1]).unwrap();
        realize_half_strip(&s, &d.components[1], &cl.lower, depth, 64).unwrap()
    }

    #[test]
    fn two_disjoint_rectangles() {
        let r = realize_b(4);
        assert_eq!(r.chart.rectangles.len(), 2);
        assert_eq!(r.chart.base, [(0.0, 1.0), (2.0, 3.0)]);
        let (a, b) = (&r.chart.rectangles[0], &r.chart.rectangles[1]);
        assert!(a.b < b.a);
        assert!(a.d > b.d && b.d > -1.0 && a.d < 0.0);
    }

    #[test]
    fn base_intervals_land_on_their_leaves() {
        let r = realize_b(4);
        for (k, leaf) in r.leaves.iter().enumerate() {
            for j in 1..20 {
                let x = leaf.chart.0 + j as f64 / 20.0;
                let (u, v) = r.eta.eval(x, -1.0).unwrap();
                assert_eq!(v, -1.0);
                assert_eq!(r.leaf_id(u, v), leaf.point, "rect {k}");
            }
        }
        assert_eq!(r.leaves[0].point, "alpha");
        assert_eq!(r.leaves[1].point, "beta");
    }

    #[test]
    fn pieces_agree_on_roofs() {
        let r = realize_b(5);
        let z = r.eta.pieces().len() - 1;
        for (k, rect) in r.chart.rectangles.iter().enumerate() {
            let roof = Trapezoid::rectangle(rect.a, rect.b, -1.0, rect.d).roof_samples(50);
            for (x, y) in roof {
                let p = r.eta.pieces()[k].eval(x, y);
                let q = r.eta.pieces()[z].eval(x, y);
                assert!((p.0 - q.0).abs() < 1e-9 && p.1 == q.1, "{x} {y}: {p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn inverse_and_monotone_levels() {
        let r = realize_b(3);
        for y in [-0.999, -0.99, -0.9, -0.5, 0.0] {
            let mut last = f64::NEG_INFINITY;
            for j in -40..=40 {
                let x = j as f64 / 8.0;
                let (u, v) = r.eta.eval(x, y).unwrap();
                assert_eq!(v, y);
                assert!(u > last);
                last = u;
                let (x2, _) = r.eta.inverse(u, v).unwrap();
                assert!((x2 - x).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn empty_closure_is_identity() {
        let s = fixtures::kaplan5();
        let ls = build_leaf_space(&s);
        let d = decompose(&s, CutMode::WithBoundary).unwrap();
        let cl = component_closures(&s, &ls, &d.components[1]).unwrap();
        let r = realize_half_strip(&s, &d.components[1], &cl.upper, 3, 16).unwrap();
        assert!(r.chart.rectangles.is_empty());
        assert_eq!(r.eta.eval(0.25, -0.5), Some((0.25, -0.5)));
    }

    #[test]
    fn cycles_rejected() {
        let s = fixtures::cylinder();
        let d = decompose(&s, CutMode::Interior).unwrap();
        let fake = ClosureStrip {
            side: crate::decompose::ClosureSide::Lower,
            strip: "S".into(),
            side_end: crate::surface::SideEnd::new(0, crate::surface::Side::Lower),
            base_points: vec![],
        };
        assert!(matches!(
            realize_half_strip(&s, &d.components[0], &fake, 3, 16),
            Err(HomeoError::NotOpenStripComponent(_))
        ));
    }
}
