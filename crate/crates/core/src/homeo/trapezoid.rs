use serde::Serialize;

use super::level_map::{LevelMap, Region};
use super::pl::{PLFunction, Tail};
use super::{HomeoError, TOL};

/// `{ alpha(y) <= x <= beta(y), c < y <= d }`, with sides given as functions
/// of the level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trapezoid {
    pub alpha: PLFunction,
    pub beta: PLFunction,
    pub level_range: (f64, f64),
    /// Limits of the sides as `y -> c`, when finite.
    pub base: Option<(f64, f64)>,
}

impl Trapezoid {
    pub fn new(alpha: PLFunction, beta: PLFunction, c: f64, d: f64) -> Result<Self, HomeoError> {
        if c.is_nan() || d.is_nan() || c >= d {
            return Err(HomeoError::BadInterval { a: c, b: d });
        }
        for j in 0..=64 {
            let y = c + (d - c) * j as f64 / 64.0;
            if alpha.eval(y) >= beta.eval(y) {
                return Err(HomeoError::GraphsIntersect { level: y });
            }
        }
        let (a, b) = (alpha.eval(c), beta.eval(c));
        let base = (a.is_finite() && b.is_finite()).then_some((a, b));
        Ok(Trapezoid {
            alpha,
            beta,
            level_range: (c, d),
            base,
        })
    }

    /// `[a, b] x (c, d]`.
    pub fn rectangle(a: f64, b: f64, c: f64, d: f64) -> Self {
        Trapezoid {
            alpha: PLFunction::constant(a),
            beta: PLFunction::constant(b),
            level_range: (c, d),
            base: Some((a, b)),
        }
    }

    pub fn upper_base(&self) -> (f64, f64) {
        let d = self.level_range.1;
        (self.alpha.eval(d), self.beta.eval(d))
    }

    /// Horizontal extent at level `y`; `closed` adds the base.
    pub fn x_range(&self, y: f64, closed: bool) -> Option<(f64, f64)> {
        let (c, d) = self.level_range;
        let inside = y > c && y <= d + 1e-12;
        let on_base = closed && self.base.is_some() && (y - c).abs() <= 1e-12;
        (inside || on_base).then(|| (self.alpha.eval(y), self.beta.eval(y)))
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x_range(y, false).is_some_and(|(lo, hi)| lo <= x && x <= hi)
    }

    /// Points on the two sides and the upper base, `n` per part.
    pub fn roof_samples(&self, n: usize) -> Vec<(f64, f64)> {
        let (c, d) = self.level_range;
        let (u0, u1) = self.upper_base();
        let mut out = Vec::with_capacity(3 * n);
        for j in 1..=n {
            let t = j as f64 / n as f64;
            let y = c + (d - c) * t;
            out.push((self.alpha.eval(y), y));
            out.push((self.beta.eval(y), y));
            out.push((u0 + (u1 - u0) * t, d));
        }
        out
    }
}

/// Trapezoid with base `(a, b) x 0` lying under the graph of a positive
/// clearance function, built from dyadic points converging to `a` and `b`.
pub fn trapezoid_under_clearance(
    clearance: &PLFunction,
    a: f64,
    b: f64,
    depth: usize,
) -> Result<Trapezoid, HomeoError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(HomeoError::BadInterval { a, b });
    }
    let depth = depth.max(1);
    let w = b - a;
    let left = |i: usize| a + w * 0.5f64.powi(i as i32 + 2);
    let right = |i: usize| b - w * 0.5f64.powi(i as i32 + 2);
    let mut r = Vec::with_capacity(depth + 1);
    for i in 1..=depth {
        let raw = 0.5 * clearance.min_on(left(i), right(i));
        if raw.is_nan() || raw <= 0.0 {
            return Err(HomeoError::NonPositiveClearance { x: left(i) });
        }
        r.push(match r.last() {
            Some(&prev) => f64::min(raw, 0.5 * prev),
            None => raw,
        });
    }
    // r[i - 1] is the level of the corners above a_{i-1}, b_{i-1}
    let mut levels = vec![0.0];
    let mut xs_a = vec![a];
    let mut xs_b = vec![b];
    for i in (0..depth).rev() {
        levels.push(r[i]);
        xs_a.push(left(i));
        xs_b.push(right(i));
    }
    let alpha = PLFunction::new(levels.clone(), xs_a, Tail::Linear, Tail::Constant)?;
    let beta = PLFunction::new(levels, xs_b, Tail::Linear, Tail::Constant)?;
    Trapezoid::new(alpha, beta, 0.0, r[0])
}

/// Extension of a level-preserving map between roofs to the whole
/// trapezoids, affine along each level.
pub fn roof_homeo(source: &Trapezoid, target: &Trapezoid, sigma: &PLFunction) -> Result<LevelMap, HomeoError> {
    let (c, d) = source.level_range;
    let (want_c, want_d) = target.level_range;
    let (got_c, got_d) = (sigma.eval(c), sigma.eval(d));
    if (got_c - want_c).abs() > TOL || (got_d - want_d).abs() > TOL {
        return Err(HomeoError::LevelRangeMismatch {
            c,
            d,
            got_c,
            got_d,
            want_c,
            want_d,
        });
    }
    let (s, t, sg) = (source.clone(), target.clone(), sigma.clone());
    let closed = source.base.is_some() && target.base.is_some();
    Ok(LevelMap::new(sigma.clone()).with_piece(
        "roof",
        Region::Trapezoid {
            trap: source.clone(),
            closed,
        },
        move |x, y| {
            let z = sg.eval(y);
            let (g, h) = (t.alpha.eval(z), t.beta.eval(z));
            let (al, be) = (s.alpha.eval(y), s.beta.eval(y));
            (g + (h - g) / (be - al) * (x - al), z)
        },
    ))
}
