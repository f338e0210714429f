use std::fmt;
use std::sync::Arc;

use super::pl::PLFunction;
use super::trapezoid::Trapezoid;

const SLACK: f64 = 1e-12;

/// Where a piece of a [`LevelMap`] applies.
#[derive(Debug, Clone)]
pub enum Region {
    Plane,
    /// `[x0, x1] x (y0, y1]`, or `[y0, y1]` when `bottom_closed`.
    Box {
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        bottom_closed: bool,
    },
    Trapezoid {
        trap: Trapezoid,
        closed: bool,
    },
}

impl Region {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self.x_range(y) {
            Some((lo, hi)) => lo - SLACK <= x && x <= hi + SLACK,
            None => false,
        }
    }

    /// Horizontal extent of the region at level `y`.
    pub fn x_range(&self, y: f64) -> Option<(f64, f64)> {
        match self {
            Region::Plane => Some((f64::NEG_INFINITY, f64::INFINITY)),
            Region::Box {
                x0,
                x1,
                y0,
                y1,
                bottom_closed,
            } => {
                let above = if *bottom_closed { y >= *y0 - SLACK } else { y > *y0 };
                (above && y <= *y1 + SLACK).then_some((*x0, *x1))
            }
            Region::Trapezoid { trap, closed } => trap.x_range(y, *closed),
        }
    }
}

type Eval = Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>;

pub struct Piece {
    pub name: String,
    pub region: Region,
    eval: Eval,
}

impl Piece {
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.eval)(x, y)
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Piece")
            .field("name", &self.name)
            .field("region", &self.region)
            .finish_non_exhaustive()
    }
}

/// Piecewise map of the plane sending each horizontal line into a horizontal
/// line, with output level `sigma(y)`. The first piece containing a point
/// decides its image; pieces are expected to agree where they overlap.
#[derive(Debug)]
pub struct LevelMap {
    pieces: Vec<Piece>,
    sigma: PLFunction,
}

impl LevelMap {
    pub fn new(sigma: PLFunction) -> Self {
        LevelMap {
            pieces: Vec::new(),
            sigma,
        }
    }

    pub fn identity() -> Self {
        Self::new(PLFunction::identity()).with_piece("identity", Region::Plane, |x, y| (x, y))
    }

    pub fn with_piece(
        mut self,
        name: impl Into<String>,
        region: Region,
        eval: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Self {
        self.pieces.push(Piece {
            name: name.into(),
            region,
            eval: Arc::new(eval),
        });
        self
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn sigma(&self) -> &PLFunction {
        &self.sigma
    }

    pub fn piece_at(&self, x: f64, y: f64) -> Option<usize> {
        self.pieces.iter().position(|p| p.region.contains(x, y))
    }

    pub fn eval(&self, x: f64, y: f64) -> Option<(f64, f64)> {
        self.piece_at(x, y).map(|i| self.pieces[i].eval(x, y))
    }

    /// Preimage of `(u, v)` found by bisection along the level
    /// `sigma^-1(v)`; each piece is assumed increasing in `x`.
    pub fn inverse(&self, u: f64, v: f64) -> Option<(f64, f64)> {
        let y = self.sigma.inverse()?.eval(v);
        for piece in &self.pieces {
            let Some((lo, hi)) = piece.region.x_range(y) else {
                continue;
            };
            let h = |x: f64| piece.eval(x, y).0;
            let Some((mut lo, mut hi)) = bracket(&h, u, lo, hi) else {
                continue;
            };
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if h(mid) < u {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let x = if (h(lo) - u).abs() <= (h(hi) - u).abs() { lo } else { hi };
            return Some((x, y));
        }
        None
    }
}

/// Finite `[lo, hi]` inside the given range with `h(lo) <= u <= h(hi)`.
fn bracket(h: &impl Fn(f64) -> f64, u: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let mut a = if lo.is_finite() { lo } else { hi.min(0.0) - 1.0 };
    let mut b = if hi.is_finite() { hi } else { lo.max(0.0) + 1.0 };
    let mut step = 1.0;
    while h(a) > u {
        if lo.is_finite() || step > 1e12 {
            return None;
        }
        a -= step;
        step *= 2.0;
    }
    step = 1.0;
    while h(b) < u {
        if hi.is_finite() || step > 1e12 {
            return None;
        }
        b += step;
        step *= 2.0;
    }
    Some((a, b))
}
