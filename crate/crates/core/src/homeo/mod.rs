//! Piecewise-linear, level-preserving plane maps: interpolation of ordered
//! points, rectification of graphs to vertical segments, trapezoids and
//! their roof extensions, leaf shrinking, and the assembled half-strip map.

mod level_map;
mod pl;
mod realize;
mod rectify;
mod shrink;
mod trapezoid;

use thiserror::Error;

pub use level_map::{LevelMap, Piece, Region};
pub use pl::{PLFunction, Tail};
pub use realize::{realize_half_strip, BaseLeaf, ChartRect, HalfStripChart, HalfStripRealization};
pub use rectify::{rectify_finite, rectify_stages, uk_eval, StagedRectification};
pub use shrink::shrink_leaf;
pub use trapezoid::{roof_homeo, trapezoid_under_clearance, Trapezoid};

/// Absolute tolerance used for numeric comparisons.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomeoError {
    #[error("breakpoints or parameters are not strictly increasing")]
    NonIncreasingInput,
    #[error("breakpoint and value lists are malformed: {0}")]
    BadBreakpoints(String),
    #[error("graphs intersect at level {level}")]
    GraphsIntersect { level: f64 },
    #[error("interval ({a}, {b}) is empty or not finite")]
    BadInterval { a: f64, b: f64 },
    #[error("band half-width {0} must be positive and finite")]
    BadEps(f64),
    #[error("clearance is not positive at x = {x}")]
    NonPositiveClearance { x: f64 },
    #[error("level map sends ({c}, {d}] to ({got_c}, {got_d}], expected ({want_c}, {want_d}]")]
    LevelRangeMismatch {
        c: f64,
        d: f64,
        got_c: f64,
        got_d: f64,
        want_c: f64,
        want_d: f64,
    },
    #[error("component is not an open chain: {0}")]
    NotOpenStripComponent(String),
}
