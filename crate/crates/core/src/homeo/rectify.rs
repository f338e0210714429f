use std::sync::Arc;

use super::level_map::{LevelMap, Region};
use super::pl::PLFunction;
use super::HomeoError;

/// Breakpoints and their targets for one `u_k`.
type UkParams = (Vec<f64>, Vec<f64>);

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Piecewise-linear homeomorphism of the line sending `y[i]` to `q[i]`,
/// affine between consecutive `y`s and a unit-slope translation outside.
pub fn uk_eval(x: f64, y: &[f64], q: &[f64]) -> Result<f64, HomeoError> {
    if y.len() != q.len() || y.is_empty() || !strictly_increasing(y) || !strictly_increasing(q) {
        return Err(HomeoError::NonIncreasingInput);
    }
    Ok(uk(x, y, q))
}

pub(crate) fn uk(x: f64, y: &[f64], q: &[f64]) -> f64 {
    let k = y.len();
    if k == 0 {
        return x;
    }
    // where y and q agree the map is x itself, without rounding
    let shift = |i: usize| if y[i] == q[i] { x } else { x - y[i] + q[i] };
    if x <= y[0] {
        return shift(0);
    }
    if x >= y[k - 1] {
        return shift(k - 1);
    }
    let i = y.partition_point(|&b| b <= x) - 1;
    if y[i] == q[i] && y[i + 1] == q[i + 1] {
        return x;
    }
    q[i] + (q[i + 1] - q[i]) / (y[i + 1] - y[i]) * (x - y[i])
}

fn sample_levels(funcs: &[PLFunction], c: f64, s: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    let mut levels: Vec<f64> = (1..=n).map(|j| c + (s - c) * j as f64 / n as f64).collect();
    for f in funcs {
        levels.extend(f.breakpoints().iter().copied().filter(|&b| c < b && b <= s));
    }
    levels
}

/// Level-preserving map of `R x (c, s]` fixing the level `s` and sending the
/// graph `x = f(y)` of every function onto the vertical line `x = f(s)`.
/// Levels at or above `s` are left alone.
pub fn rectify_finite(funcs: &[PLFunction], c: f64, s: f64, samples: usize) -> Result<LevelMap, HomeoError> {
    let stages = StagedRectification::new(funcs.iter().map(|f| (f.clone(), s)).collect(), c, samples)?;
    Ok(stages.into_level_map())
}

/// Composite of the stage maps over a finite list of graphs, each with its
/// own top level. Stage `k` straightens every graph whose top is at or
/// above the `k`-th distinct level and is the identity from that level up.
#[derive(Debug, Clone)]
pub struct StagedRectification {
    /// Distinct top levels, highest first.
    levels: Vec<f64>,
    /// Graphs sorted by top level, highest first.
    funcs: Vec<PLFunction>,
    /// Number of graphs handled by each stage.
    counts: Vec<usize>,
    /// Positions at the stage level, after the earlier stages.
    tops: Vec<Vec<f64>>,
}

impl StagedRectification {
    pub fn new(mut staged: Vec<(PLFunction, f64)>, c: f64, samples: usize) -> Result<Self, HomeoError> {
        staged.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut levels: Vec<f64> = Vec::new();
        let mut counts = Vec::new();
        for (j, (_, d)) in staged.iter().enumerate() {
            if levels.last() != Some(d) {
                levels.push(*d);
                counts.push(j);
            }
            *counts.last_mut().expect("pushed") = j + 1;
        }
        let mut out = StagedRectification {
            levels,
            funcs: staged.into_iter().map(|(f, _)| f).collect(),
            counts,
            tops: Vec::new(),
        };
        for k in 0..out.levels.len() {
            let s = out.levels[k];
            let (cur, _) = out.stage_params(s);
            out.tops.push(cur[..out.counts[k]].to_vec());
            for y in sample_levels(&out.funcs[..out.counts[k]], c, s, samples) {
                let (_, params) = out.stage_params(y);
                if let Some((ys, qs)) = &params[k] {
                    let ok = ys.iter().all(|v| v.is_finite()) && strictly_increasing(ys) && strictly_increasing(qs);
                    if !ok {
                        return Err(HomeoError::GraphsIntersect { level: y });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Parameters of every stage at level `y` (`None` where the stage is the
    /// identity), plus the graph positions after all known stages.
    fn stage_params(&self, y: f64) -> (Vec<f64>, Vec<Option<UkParams>>) {
        let mut cur: Vec<f64> = self.funcs.iter().map(|f| f.eval(y)).collect();
        let mut params = Vec::with_capacity(self.tops.len());
        for (k, top) in self.tops.iter().enumerate() {
            if y >= self.levels[k] {
                params.push(None);
                continue;
            }
            let mut pairs: Vec<(f64, f64)> = cur[..self.counts[k]].iter().copied().zip(top.iter().copied()).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let ys: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let qs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            for x in cur.iter_mut() {
                *x = uk(*x, &ys, &qs);
            }
            params.push(Some((ys, qs)));
        }
        (cur, params)
    }

    /// The `k`-th stage map alone, evaluated on points already moved by the
    /// earlier stages.
    pub fn apply_stage(&self, k: usize, x: f64, y: f64) -> f64 {
        match &self.stage_params(y).1[k] {
            Some((ys, qs)) => uk(x, ys, qs),
            None => x,
        }
    }

    pub fn apply(&self, mut x: f64, y: f64) -> f64 {
        for (ys, qs) in self.stage_params(y).1.iter().flatten() {
            x = uk(x, ys, qs);
        }
        x
    }

    pub fn invert(&self, mut x: f64, y: f64) -> f64 {
        for (ys, qs) in self.stage_params(y).1.iter().rev().flatten() {
            x = uk(x, qs, ys);
        }
        x
    }

    pub fn into_level_map(self) -> LevelMap {
        let this = Arc::new(self);
        LevelMap::new(PLFunction::identity()).with_piece("rectify", Region::Plane, move |x, y| (this.apply(x, y), y))
    }
}

/// Composite of the stage maps for a finite list of `(graph, top level)`
/// pairs; the deepest stage is applied last.
pub fn rectify_stages(staged: &[(PLFunction, f64)], c: f64, samples: usize) -> Result<LevelMap, HomeoError> {
    if staged.is_empty() {
        return Ok(LevelMap::identity());
    }
    Ok(StagedRectification::new(staged.to_vec(), c, samples)?.into_level_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::Tail;

    #[test]
    fn worked_values() {
        assert_eq!(uk_eval(5.0, &[2.0], &[0.0]).unwrap(), 3.0);
        assert_eq!(uk_eval(3.0, &[1.0, 5.0], &[0.0, 2.0]).unwrap(), 1.0);
        assert_eq!(uk_eval(7.0, &[1.0, 2.0], &[1.0, 2.0]).unwrap(), 7.0);
        assert_eq!(
            uk_eval(0.0, &[2.0, 1.0], &[0.0, 1.0]),
            Err(HomeoError::NonIncreasingInput)
        );
    }

    #[test]
    fn finite_rectification() {
        let f = PLFunction::identity();
        let m = rectify_finite(&[f], 0.0, 1.0, 16).unwrap();
        assert_eq!(m.eval(0.5, 0.5), Some((1.0, 0.5)));
        assert_eq!(m.eval(0.0, 0.5), Some((0.5, 0.5)));
        assert_eq!(m.eval(-3.25, 1.0), Some((-3.25, 1.0)));
    }

    #[test]
    fn crossing_graphs_rejected() {
        let f = PLFunction::identity();
        let g = PLFunction::affine(-1.0, 1.0);
        assert!(matches!(
            rectify_finite(&[f, g], 0.0, 1.0, 16),
            Err(HomeoError::GraphsIntersect { .. })
        ));
    }

    #[test]
    fn two_stages() {
        let f = PLFunction::new(vec![0.0, 1.0], vec![0.0, 1.0], Tail::Linear, Tail::Linear).unwrap();
        let g = PLFunction::new(vec![0.0, 0.5], vec![3.0, 2.0], Tail::Linear, Tail::Linear).unwrap();
        let r = StagedRectification::new(vec![(f.clone(), 1.0), (g.clone(), 0.5)], 0.0, 32).unwrap();
        let top_f = r.apply(f.eval(1.0), 1.0);
        let top_g = r.apply(g.eval(0.5), 0.5);
        for j in 1..=50 {
            let y = j as f64 / 100.0;
            assert!((r.apply(f.eval(y), y) - top_f).abs() < 1e-9);
            assert!((r.apply(g.eval(y), y) - top_g).abs() < 1e-9);
            let x = 7.0 * y - 2.0;
            assert!((r.invert(r.apply(x, y), y) - x).abs() < 1e-9);
        }
        for y in [0.5, 0.75, 1.0] {
            assert_eq!(r.apply_stage(1, 0.3, y), 0.3);
        }
        assert!(rectify_stages(&[], 0.0, 8).unwrap().eval(1.0, 2.0) == Some((1.0, 2.0)));
    }
}
