//! Shared helpers for the integration tests: exhaustive surface
//! enumeration, brute-force oracles and random move sequences.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use foliate_core::{GluingSpec, ModelStripSpec, Orientation, Side, StripedSurface};
use rand::seq::SliceRandom;
use rand::Rng;

/// All surfaces with at most `max_strips` strips, at most `max_per_side`
/// intervals on a side and at most `max_total` intervals overall.
///
/// Strip side counts are listed in non-decreasing order, so each surface
/// appears once per strip ordering class.
pub fn enumerate_surfaces(max_strips: usize, max_per_side: usize, max_total: usize) -> Vec<StripedSurface> {
    let shapes: Vec<(usize, usize)> = (0..=max_per_side)
        .flat_map(|l| (0..=max_per_side).map(move |u| (l, u)))
        .collect();
    let mut out = Vec::new();
    let mut seq = Vec::new();
    shape_sequences(&shapes, max_strips, max_total, 0, &mut seq, &mut out);
    out
}

fn shape_sequences(
    shapes: &[(usize, usize)],
    left: usize,
    budget: usize,
    from: usize,
    seq: &mut Vec<(usize, usize)>,
    out: &mut Vec<StripedSurface>,
) {
    if !seq.is_empty() {
        all_gluings(seq, out);
    }
    if left == 0 {
        return;
    }
    for k in from..shapes.len() {
        let (l, u) = shapes[k];
        if l + u <= budget {
            seq.push(shapes[k]);
            shape_sequences(shapes, left - 1, budget - l - u, k, seq, out);
            seq.pop();
        }
    }
}

fn strips_for(sides: &[(usize, usize)]) -> (Vec<ModelStripSpec>, Vec<(String, usize, Side)>) {
    let mut strips = Vec::new();
    let mut slots = Vec::new();
    for (s, &(l, u)) in sides.iter().enumerate() {
        let lower: Vec<String> = (0..l).map(|k| format!("S{s}.l{k}")).collect();
        let upper: Vec<String> = (0..u).map(|k| format!("S{s}.u{k}")).collect();
        slots.extend(lower.iter().map(|id| (id.clone(), s, Side::Lower)));
        slots.extend(upper.iter().map(|id| (id.clone(), s, Side::Upper)));
        let lr: Vec<&str> = lower.iter().map(String::as_str).collect();
        let ur: Vec<&str> = upper.iter().map(String::as_str).collect();
        strips.push(ModelStripSpec::with_sides(format!("S{s}"), &lr, &ur));
    }
    (strips, slots)
}

fn all_gluings(sides: &[(usize, usize)], out: &mut Vec<StripedSurface>) {
    let (strips, slots) = strips_for(sides);
    let mut pairs = Vec::new();
    matchings(&slots, &mut vec![false; slots.len()], 0, &mut pairs, &mut |pairs| {
        for mask in 0..1u32 << pairs.len() {
            let gluings = pairs
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| {
                    let o = if mask >> k & 1 == 1 {
                        Orientation::Reversing
                    } else {
                        Orientation::Preserving
                    };
                    GluingSpec::new(slots[a].0.clone(), slots[b].0.clone(), o)
                })
                .collect();
            out.push(StripedSurface::new(strips.clone(), gluings).expect("enumerated surface is valid"));
        }
    });
}

type Emit<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

fn matchings(
    slots: &[(String, usize, Side)],
    used: &mut Vec<bool>,
    from: usize,
    pairs: &mut Vec<(usize, usize)>,
    emit: &mut Emit,
) {
    let Some(i) = (from..slots.len()).find(|&i| !used[i]) else {
        emit(pairs);
        return;
    };
    // i stays unglued
    used[i] = true;
    matchings(slots, used, i + 1, pairs, emit);
    for j in i + 1..slots.len() {
        if used[j] || (slots[i].1 == slots[j].1 && slots[i].2 == slots[j].2) {
            continue;
        }
        used[j] = true;
        pairs.push((i, j));
        matchings(slots, used, i + 1, pairs, emit);
        pairs.pop();
        used[j] = false;
    }
    used[i] = false;
}

/// Bare combinatorics: interval keys per strip side and the gluing table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combi {
    pub strips: Vec<[Vec<u32>; 2]>,
    /// interval -> (partner, reversing)
    pub glue: BTreeMap<u32, (u32, bool)>,
}

fn slot(side: Side) -> usize {
    match side {
        Side::Lower => 0,
        Side::Upper => 1,
    }
}

impl Combi {
    pub fn from_surface(s: &StripedSurface) -> Combi {
        let mut keys = HashMap::new();
        let mut strips = Vec::new();
        for st in s.strips() {
            let mut sides = [Vec::new(), Vec::new()];
            for side in [Side::Lower, Side::Upper] {
                for iv in st.side(side) {
                    let k = keys.len() as u32;
                    keys.insert(iv.id.clone(), k);
                    sides[slot(side)].push(k);
                }
            }
            strips.push(sides);
        }
        let mut glue = BTreeMap::new();
        for g in s.gluings() {
            let (a, b) = (keys[&g.first], keys[&g.second]);
            let rev = g.orientation == Orientation::Reversing;
            glue.insert(a, (b, rev));
            glue.insert(b, (a, rev));
        }
        Combi { strips, glue }
    }

    fn locate(&self, key: u32) -> (usize, usize) {
        for (s, sides) in self.strips.iter().enumerate() {
            if let Some(side) = sides.iter().position(|v| v.contains(&key)) {
                return (s, side);
            }
        }
        panic!("unknown interval {key}")
    }

    fn vflip(&mut self, s: usize) {
        self.strips[s].swap(0, 1);
    }

    fn hflip(&mut self, s: usize) {
        let own: Vec<u32> = self.strips[s].iter().flatten().copied().collect();
        for side in self.strips[s].iter_mut() {
            side.reverse();
        }
        for k in own {
            if let Some(e) = self.glue.get_mut(&k) {
                e.1 = !e.1;
            }
            if let Some(&(p, _)) = self.glue.get(&k) {
                if let Some(e) = self.glue.get_mut(&p) {
                    e.1 = !e.1;
                }
            }
        }
    }

    /// Merges strips across every gluing whose two intervals are alone on
    /// their sides and lie on different strips, until none is left.
    pub fn reduce(mut self) -> Combi {
        loop {
            let found = self.glue.iter().find_map(|(&i, &(j, _))| {
                let (s, a) = self.locate(i);
                let (t, b) = self.locate(j);
                (s != t && self.strips[s][a].len() == 1 && self.strips[t][b].len() == 1).then_some((i, j))
            });
            let Some((i, j)) = found else {
                return self;
            };
            let (s, a) = self.locate(i);
            if a == 0 {
                self.vflip(s);
            }
            let (t, b) = self.locate(j);
            if b == 1 {
                self.vflip(t);
            }
            if self.glue[&i].1 {
                self.hflip(t);
            }
            self.glue.remove(&i);
            self.glue.remove(&j);
            let top = std::mem::take(&mut self.strips[t][1]);
            self.strips[s][1] = top;
            self.strips.remove(t);
        }
    }

    fn profile(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<(usize, usize)> = self
            .strips
            .iter()
            .map(|s| {
                let (l, u) = (s[0].len(), s[1].len());
                (l.min(u), l.max(u))
            })
            .collect();
        p.sort();
        p
    }

    /// Cheap invariant used to bucket surfaces before the full search.
    pub fn bucket(&self) -> (Vec<(usize, usize)>, usize) {
        (self.profile(), self.glue.len())
    }
}

/// Exhaustive search for a strip bijection and per-strip flips carrying `a`
/// onto `b`. Both are reduced first.
pub fn brute_isomorphic(a: &Combi, b: &Combi) -> bool {
    let (a, b) = (a.clone().reduce(), b.clone().reduce());
    if a.bucket() != b.bucket() {
        return false;
    }
    let keys = |c: &Combi| {
        c.strips
            .iter()
            .flatten()
            .flatten()
            .map(|&k| k as usize + 1)
            .max()
            .unwrap_or(0)
    };
    let mut owner = vec![usize::MAX; keys(&a)];
    for (s, st) in a.strips.iter().enumerate() {
        for &k in st.iter().flatten() {
            owner[k as usize] = s;
        }
    }
    let mut search = Search {
        a: &a,
        b: &b,
        owner,
        map: vec![u32::MAX; keys(&a)],
        hflip: vec![false; a.strips.len()],
        used: vec![false; b.strips.len()],
    };
    search.assign(0)
}

struct Search<'a> {
    a: &'a Combi,
    b: &'a Combi,
    owner: Vec<usize>,
    map: Vec<u32>,
    hflip: Vec<bool>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Gluings of strip `s` to strips `<= s` map onto gluings of `b`.
    fn consistent(&self, s: usize) -> bool {
        self.a.strips[s].iter().flatten().all(|&i| match self.a.glue.get(&i) {
            None => !self.b.glue.contains_key(&self.map[i as usize]),
            Some(&(j, rev)) => {
                let o = self.owner[j as usize];
                o > s || {
                    let want = rev ^ self.hflip[s] ^ self.hflip[o];
                    self.b.glue.get(&self.map[i as usize]) == Some(&(self.map[j as usize], want))
                }
            }
        })
    }

    fn assign(&mut self, s: usize) -> bool {
        if s == self.a.strips.len() {
            return true;
        }
        for t in 0..self.b.strips.len() {
            if self.used[t] {
                continue;
            }
            for frame in 0..4 {
                let (v, h) = (frame & 1 == 1, frame & 2 == 2);
                let fits = (0..2).all(|side| {
                    self.a.strips[s][side].len() == self.b.strips[t][if v { 1 - side } else { side }].len()
                });
                if !fits {
                    continue;
                }
                for side in 0..2 {
                    let (src, dst) = (
                        &self.a.strips[s][side],
                        &self.b.strips[t][if v { 1 - side } else { side }],
                    );
                    for (k, &key) in src.iter().enumerate() {
                        self.map[key as usize] = dst[if h { src.len() - 1 - k } else { k }];
                    }
                }
                self.hflip[s] = h;
                self.used[t] = true;
                if self.consistent(s) && self.assign(s + 1) {
                    return true;
                }
                self.used[t] = false;
            }
        }
        false
    }
}

/// Orientability from an explicit cell complex: every strip is cut by a
/// vertical segment into a left and a right 2-cell, each with its boundary
/// traversed counterclockwise. The surface is orientable iff the cells can
/// be given signs so that every interior edge is traversed in opposite
/// directions by its two cells.
pub fn cell_orientable(s: &StripedSurface) -> bool {
    let c = Combi::from_surface(s);
    let n = c.strips.len();
    // edge traversals: (cell, edge, direction); cell 2s is left, 2s+1 right
    let mut uses: HashMap<(u32, u32), Vec<(usize, i8)>> = HashMap::new();
    let split = |s: usize, side: usize, k: usize| {
        let len = c.strips[s][side].len();
        2 * s + usize::from(2 * k + 1 > len)
    };
    for s in 0..n {
        // the cutting segment: up on the left cell's right edge, down on the right cell's left edge
        uses.entry((u32::MAX, s as u32))
            .or_default()
            .extend([(2 * s, 1), (2 * s + 1, -1)]);
        for side in 0..2 {
            // counterclockwise: lower side left to right, upper side right to left
            let dir: i8 = if side == 0 { 1 } else { -1 };
            for (k, &key) in c.strips[s][side].iter().enumerate() {
                let edge = match c.glue.get(&key) {
                    Some(&(p, _)) => (key.min(p), key.max(p)),
                    None => continue,
                };
                // orient each glued edge along the x-axis of its smaller key
                let along = if key == edge.0 || !c.glue[&key].1 { dir } else { -dir };
                uses.entry(edge).or_default().push((split(s, side, k), along));
            }
        }
    }
    let cells = 2 * n;
    let mut sign: Vec<Option<i8>> = vec![None; cells];
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); cells];
    for list in uses.values() {
        assert_eq!(list.len(), 2);
        let ((p, dp), (q, dq)) = (list[0], list[1]);
        // sign_p * dp == -(sign_q * dq)
        let rel = -dp * dq;
        adj[p].push((q, rel));
        adj[q].push((p, rel));
    }
    for root in 0..cells {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(1);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &(y, rel) in &adj[x] {
                let want = sign[x].unwrap() * rel;
                match sign[y] {
                    None => {
                        sign[y] = Some(want);
                        stack.push(y);
                    }
                    Some(v) if v != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Splits strip `s` into two strips stacked along a new preserving leaf.
pub fn split_strip(surface: &StripedSurface, s: usize, tag: usize) -> StripedSurface {
    let mut strips = surface.strips().to_vec();
    let mut gluings = surface.gluings().to_vec();
    let old = strips[s].clone();
    let (lo_id, hi_id) = (format!("{}~{tag}a", old.id), format!("{}~{tag}b", old.id));
    let cut_lo = format!("{}~{tag}.u", old.id);
    let cut_hi = format!("{}~{tag}.l", old.id);
    let lower: Vec<&str> = old.lower.iter().map(|i| i.id.as_str()).collect();
    let upper: Vec<&str> = old.upper.iter().map(|i| i.id.as_str()).collect();
    let mut bottom = ModelStripSpec::with_sides(lo_id, &lower, &[cut_lo.as_str()]);
    let mut top = ModelStripSpec::with_sides(hi_id, &[cut_hi.as_str()], &upper);
    for (dst, src) in bottom.lower.iter_mut().zip(&old.lower) {
        dst.endpoints = src.endpoints;
    }
    for (dst, src) in top.upper.iter_mut().zip(&old.upper) {
        dst.endpoints = src.endpoints;
    }
    strips[s] = bottom;
    strips.push(top);
    gluings.push(GluingSpec::new(cut_lo, cut_hi, Orientation::Preserving));
    StripedSurface::new(strips, gluings).expect("splitting keeps the surface valid")
}

/// One random admissible move: relabel, flip a strip, mirror, or (when
/// `split` is set) cut a strip in two.
pub fn random_move<R: Rng + ?Sized>(rng: &mut R, s: &StripedSurface, tag: usize, split: bool) -> StripedSurface {
    let n = s.strips().len();
    match rng.random_range(0..if split { 5 } else { 4 }) {
        0 => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            s.relabel(&order, |id| format!("{id}'"))
        }
        1 => s.flip_horizontal(rng.random_range(0..n)),
        2 => s.flip_vertical(rng.random_range(0..n)),
        3 => s.mirror(),
        _ => split_strip(s, rng.random_range(0..n), tag),
    }
}
