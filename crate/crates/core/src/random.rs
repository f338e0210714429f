//! Random valid striped surfaces for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::surface::{GluingSpec, IntervalRef, ModelStripSpec, Orientation, Side, StripedSurface};

#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub max_strips: usize,
    pub max_per_side: usize,
    /// Chance that an interval left over after connecting the strips is
    /// glued to another one.
    pub glue_prob: f64,
    pub connected: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_strips: 6,
            max_per_side: 4,
            glue_prob: 0.7,
            connected: true,
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

fn attempt<R: Rng + ?Sized>(rng: &mut R, p: &RandomParams) -> Option<StripedSurface> {
    let n = rng.random_range(1..=p.max_strips.max(1));
    let mut strips = Vec::with_capacity(n);
    let mut free = Vec::new();
    for s in 0..n {
        let lo = rng.random_range(0..=p.max_per_side);
        let up = rng.random_range(0..=p.max_per_side);
        let lower: Vec<String> = (0..lo).map(|k| format!("S{s}.l{k}")).collect();
        let upper: Vec<String> = (0..up).map(|k| format!("S{s}.u{k}")).collect();
        free.extend((0..lo).map(|index| IntervalRef {
            strip: s,
            side: Side::Lower,
            index,
        }));
        free.extend((0..up).map(|index| IntervalRef {
            strip: s,
            side: Side::Upper,
            index,
        }));
        let l: Vec<&str> = lower.iter().map(String::as_str).collect();
        let u: Vec<&str> = upper.iter().map(String::as_str).collect();
        strips.push(ModelStripSpec::with_sides(format!("S{s}"), &l, &u));
    }
    free.shuffle(rng);

    let mut used = vec![false; free.len()];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut pairs = Vec::new();
    // first join components, then glue at random
    for joining in [true, false] {
        for i in 0..free.len() {
            for j in i + 1..free.len() {
                if used[i] || used[j] || free[i].side_end() == free[j].side_end() {
                    continue;
                }
                let (a, b) = (find(&mut parent, free[i].strip), find(&mut parent, free[j].strip));
                let take = if joining { a != b } else { rng.random_bool(p.glue_prob) };
                if take {
                    used[i] = true;
                    used[j] = true;
                    parent[a.max(b)] = a.min(b);
                    pairs.push((free[i], free[j]));
                }
            }
        }
    }
    let id = |r: IntervalRef| strips[r.strip].side(r.side)[r.index].id.clone();
    let gluings: Vec<GluingSpec> = pairs
        .iter()
        .map(|&(a, b)| {
            let o = if rng.random_bool(0.5) {
                Orientation::Preserving
            } else {
                Orientation::Reversing
            };
            GluingSpec::new(id(a), id(b), o)
        })
        .collect();
    let surface = StripedSurface::new(strips, gluings).expect("generator respects the gluing rules");
    (!p.connected || surface.is_connected()).then_some(surface)
}

/// A random valid surface; connected unless `params.connected` is false.
pub fn random_surface<R: Rng + ?Sized>(rng: &mut R, params: &RandomParams) -> StripedSurface {
    loop {
        if let Some(s) = attempt(rng, params) {
            return s;
        }
    }
}
