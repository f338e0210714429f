//! Finite spaces with an explicit neighbourhood basis, and brute-force
//! closures over them.
//!
//! [`discretize`] samples every arc of a leaf space at `n` points and keeps
//! the leaf points; arc samples get windows of growing radius, leaf points
//! get tails of growing depth on each side-end they border.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::leaf_space::LeafSpace;
use crate::surface::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("basic set {set} at point {point} does not contain it")]
    OwnerMissing { point: usize, set: usize },
    #[error("point {0} has no basic sets")]
    EmptyBasis(usize),
    #[error("basic set at point {point} mentions unknown point {member}")]
    UnknownMember { point: usize, member: usize },
}

#[derive(Debug, Clone)]
pub struct FiniteBasisSpace {
    labels: Vec<String>,
    basis: Vec<Vec<FixedBitSet>>,
    /// Space index of each leaf point, in leaf-space order.
    leaf_points: Vec<usize>,
    samples: usize,
}

impl FiniteBasisSpace {
    /// A space from explicit basic sets, given as member lists per point.
    pub fn new(labels: Vec<String>, basis: Vec<Vec<Vec<usize>>>) -> Result<Self, OracleError> {
        let n = labels.len();
        let mut sets = Vec::with_capacity(n);
        for (point, list) in basis.iter().enumerate() {
            if list.is_empty() {
                return Err(OracleError::EmptyBasis(point));
            }
            let mut here = Vec::with_capacity(list.len());
            for (set, members) in list.iter().enumerate() {
                let mut bits = FixedBitSet::with_capacity(n);
                for &member in members {
                    if member >= n {
                        return Err(OracleError::UnknownMember { point, member });
                    }
                    bits.insert(member);
                }
                if !bits.contains(point) {
                    return Err(OracleError::OwnerMissing { point, set });
                }
                here.push(bits);
            }
            sets.push(here);
        }
        Ok(FiniteBasisSpace {
            labels,
            basis: sets,
            leaf_points: Vec::new(),
            samples: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn basis(&self, p: usize) -> &[FixedBitSet] {
        &self.basis[p]
    }

    /// Space index of the `p`-th leaf point of the discretized leaf space.
    pub fn leaf_point(&self, p: usize) -> usize {
        self.leaf_points[p]
    }

    pub fn leaf_points(&self) -> &[usize] {
        &self.leaf_points
    }

    /// Space index of sample `j` on the arc of strip `strip`.
    pub fn arc_sample(&self, strip: usize, j: usize) -> usize {
        strip * self.samples + j
    }

    pub fn set(&self, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.extend(members);
        bits
    }

    pub fn labels_of(&self, set: &FixedBitSet) -> BTreeSet<String> {
        set.ones().map(|p| self.labels[p].clone()).collect()
    }
}

/// Samples every arc at `n` points, `n >= 1`; the acceptance runs use
/// `n >= 3`.
pub fn discretize(ls: &LeafSpace, n: usize) -> FiniteBasisSpace {
    let n = n.max(1);
    let arcs = ls.arcs().len();
    let total = arcs * n + ls.points().len();
    let mut labels = Vec::with_capacity(total);
    for arc in ls.arcs() {
        labels.extend((0..n).map(|j| format!("{arc}#{j}")));
    }
    labels.extend(ls.points().iter().map(|p| p.id.clone()));

    let bits = |members: &mut dyn Iterator<Item = usize>| {
        let mut b = FixedBitSet::with_capacity(total);
        b.extend(members);
        b
    };
    let mut basis = Vec::with_capacity(total);
    for a in 0..arcs {
        for j in 0..n {
            basis.push(
                (1..=n)
                    .map(|r| bits(&mut (0..n).filter(|&i| i.abs_diff(j) < r).map(|i| a * n + i)))
                    .collect(),
            );
        }
    }
    let leaf_points: Vec<usize> = (0..ls.points().len()).map(|p| arcs * n + p).collect();
    for (p, point) in ls.points().iter().enumerate() {
        let own = leaf_points[p];
        basis.push(
            (1..=n)
                .map(|k| {
                    let mut b = bits(&mut std::iter::once(own));
                    for end in &point.ends {
                        let tail: Vec<usize> = match end.side {
                            Side::Lower => (0..=n - k).collect(),
                            Side::Upper => (k - 1..n).collect(),
                        };
                        b.extend(tail.into_iter().map(|i| end.strip * n + i));
                    }
                    b
                })
                .collect(),
        );
    }
    FiniteBasisSpace {
        labels,
        basis,
        leaf_points,
        samples: n,
    }
}

/// Points every basic neighbourhood of which meets `s`.
pub fn closure_of(space: &FiniteBasisSpace, s: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(space.len());
    for z in 0..space.len() {
        if space.basis[z].iter().all(|v| !v.is_disjoint(s)) {
            out.insert(z);
        }
    }
    out
}

/// Intersection of the closures of all basic neighbourhoods of `p`.
pub fn bnd_bruteforce(space: &FiniteBasisSpace, p: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(space.len());
    out.insert_range(..);
    for v in &space.basis[p] {
        out.intersect_with(&closure_of(space, v));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Every singleton is closed.
    pub t1: bool,
    pub non_closed: Vec<String>,
    /// `y in bnd(z)` iff `z in bnd(y)` for all pairs.
    pub symmetric: bool,
    pub asymmetric: Vec<(String, String)>,
    /// Any two basic sets at a point contain a third.
    pub filtered: bool,
}

pub fn check_axioms(space: &FiniteBasisSpace) -> AxiomReport {
    let n = space.len();
    let mut non_closed = Vec::new();
    for p in 0..n {
        let single = space.set([p]);
        if closure_of(space, &single).count_ones(..) != 1 {
            non_closed.push(space.labels[p].clone());
        }
    }
    let bnd: Vec<FixedBitSet> = (0..n).map(|p| bnd_bruteforce(space, p)).collect();
    let mut asymmetric = Vec::new();
    for y in 0..n {
        for z in bnd[y].ones() {
            if !bnd[z].contains(y) {
                asymmetric.push((space.labels[y].clone(), space.labels[z].clone()));
            }
        }
    }
    let filtered = space.basis.iter().all(|sets| {
        sets.iter().all(|u| {
            sets.iter().all(|v| {
                let both = u.intersection(v).collect::<FixedBitSet>();
                sets.iter().any(|w| w.is_subset(&both))
            })
        })
    });
    AxiomReport {
        t1: non_closed.is_empty(),
        non_closed,
        symmetric: asymmetric.is_empty(),
        asymmetric,
        filtered,
    }
}
