use std::f64::consts::PI;

use super::level_map::{LevelMap, Region};
use super::pl::PLFunction;
use super::HomeoError;

/// Level-preserving homeomorphism of the plane, fixed outside the band
/// `|y| < eps`, squeezing the leaf `y = 0` onto `(a, b)`.
pub fn shrink_leaf(a: f64, b: f64, eps: f64) -> Result<LevelMap, HomeoError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(HomeoError::BadInterval { a, b });
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(HomeoError::BadEps(eps));
    }
    let mid = 0.5 * (a + b);
    let scale = (b - a) / PI;
    Ok(
        LevelMap::new(PLFunction::identity()).with_piece("shrink", Region::Plane, move |x, y| {
            let mu = (y.abs() / eps).min(1.0);
            if mu == 1.0 {
                return (x, y);
            }
            (mu * x + (1.0 - mu) * (mid + scale * x.atan()), y)
        }),
    )
}
