use serde::Serialize;

use super::HomeoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tail {
    /// Continue the slope of the outermost segment.
    Linear,
    /// Hold the outermost value.
    Constant,
}

/// Continuous piecewise-linear function of one variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PLFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    left: Tail,
    right: Tail,
}

impl PLFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, left: Tail, right: Tail) -> Result<Self, HomeoError> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(HomeoError::BadBreakpoints(format!(
                "{} breakpoints, {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(HomeoError::BadBreakpoints("non-finite entry".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HomeoError::NonIncreasingInput);
        }
        Ok(PLFunction {
            breakpoints,
            values,
            left,
            right,
        })
    }

    pub fn constant(c: f64) -> Self {
        PLFunction {
            breakpoints: vec![0.0],
            values: vec![c],
            left: Tail::Constant,
            right: Tail::Constant,
        }
    }

    /// `x -> slope * x + intercept` on the whole line.
    pub fn affine(slope: f64, intercept: f64) -> Self {
        PLFunction {
            breakpoints: vec![0.0, 1.0],
            values: vec![intercept, slope + intercept],
            left: Tail::Linear,
            right: Tail::Linear,
        }
    }

    pub fn identity() -> Self {
        Self::affine(1.0, 0.0)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn slope(&self, i: usize) -> f64 {
        let (x0, x1) = (self.breakpoints[i], self.breakpoints[i + 1]);
        (self.values[i + 1] - self.values[i]) / (x1 - x0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.breakpoints.len();
        let xs = &self.breakpoints;
        if x <= xs[0] {
            return match self.left {
                Tail::Linear if n > 1 => self.values[0] + self.slope(0) * (x - xs[0]),
                _ => self.values[0],
            };
        }
        if x >= xs[n - 1] {
            return match self.right {
                Tail::Linear if n > 1 => self.values[n - 1] + self.slope(n - 2) * (x - xs[n - 1]),
                _ => self.values[n - 1],
            };
        }
        let i = xs.partition_point(|&b| b <= x) - 1;
        if x == xs[i] {
            return self.values[i];
        }
        let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        let tails_ok = |t: Tail| t == Tail::Linear && self.breakpoints.len() > 1;
        self.values.windows(2).all(|w| w[0] < w[1]) && tails_ok(self.left) && tails_ok(self.right)
    }

    /// Inverse of a strictly increasing function with linear tails.
    pub fn inverse(&self) -> Option<PLFunction> {
        if !self.is_strictly_increasing() {
            return None;
        }
        Some(PLFunction {
            breakpoints: self.values.clone(),
            values: self.breakpoints.clone(),
            left: Tail::Linear,
            right: Tail::Linear,
        })
    }

    /// The function `x -> m * f(x - dx) + c`.
    pub fn transformed(&self, dx: f64, m: f64, c: f64) -> PLFunction {
        PLFunction {
            breakpoints: self.breakpoints.iter().map(|b| b + dx).collect(),
            values: self.values.iter().map(|v| m * v + c).collect(),
            left: self.left,
            right: self.right,
        }
    }

    /// Minimum over `[a, b]`, attained at an endpoint or a breakpoint.
    pub fn min_on(&self, a: f64, b: f64) -> f64 {
        self.breakpoints
            .iter()
            .copied()
            .filter(|&x| a < x && x < b)
            .chain([a, b])
            .map(|x| self.eval(x))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_tails() {
        let f = PLFunction::new(vec![0.0, 1.0, 3.0], vec![0.0, 2.0, 3.0], Tail::Linear, Tail::Constant).unwrap();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(2.0), 2.5);
        assert_eq!(f.eval(-1.0), -2.0);
        assert_eq!(f.eval(10.0), 3.0);
        assert_eq!(f.eval(1.0), 2.0);
        assert_eq!(f.min_on(0.5, 2.0), 1.0);
    }

    #[test]
    fn inverse_round_trip() {
        let f = PLFunction::new(vec![-1.0, 0.0, 2.0], vec![0.0, 1.0, 5.0], Tail::Linear, Tail::Linear).unwrap();
        let g = f.inverse().unwrap();
        for x in [-3.0, -0.5, 0.0, 1.3, 4.0] {
            assert!((g.eval(f.eval(x)) - x).abs() < 1e-12);
        }
        assert!(PLFunction::constant(1.0).inverse().is_none());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            PLFunction::new(vec![1.0, 1.0], vec![0.0, 1.0], Tail::Linear, Tail::Linear),
            Err(HomeoError::NonIncreasingInput)
        );
        assert!(PLFunction::new(vec![], vec![], Tail::Linear, Tail::Linear).is_err());
    }
}
