//! Small named surfaces used throughout the tests, the CLI docs and the
//! fixture corpus under `fixtures/`.

use crate::surface::{GluingSpec, Interval, ModelStripSpec, Orientation, Side, StripedSurface};

use Orientation::{Preserving, Reversing};

/// Five strips `A..E` glued in a zig-zag along four leaves, each of which
/// ends up special: `A` and `E` carry one interval, `B`, `C`, `D` two.
pub fn kaplan5() -> StripedSurface {
    StripedSurface::new(
        vec![
            ModelStripSpec::with_sides("A", &[], &["A.u0"]),
            ModelStripSpec::with_sides("B", &["B.l0", "B.l1"], &[]),
            ModelStripSpec::with_sides("C", &[], &["C.u0", "C.u1"]),
            ModelStripSpec::with_sides("D", &["D.l0", "D.l1"], &[]),
            ModelStripSpec::with_sides("E", &[], &["E.u0"]),
        ],
        vec![
            GluingSpec::new("A.u0", "B.l0", Preserving).named("alpha"),
            GluingSpec::new("B.l1", "C.u0", Preserving).named("beta"),
            GluingSpec::new("C.u1", "D.l0", Preserving).named("gamma"),
            GluingSpec::new("D.l1", "E.u0", Preserving).named("delta"),
        ],
    )
    .expect("kaplan5 is valid")
}

fn full_line(id: &str, side: Side) -> Interval {
    Interval::new(id, side, 0).with_endpoints(f64::NEG_INFINITY, f64::INFINITY)
}

fn self_glued(orientation: Orientation) -> StripedSurface {
    StripedSurface::new(
        vec![ModelStripSpec {
            id: "S".into(),
            lower: vec![full_line("S.l0", Side::Lower)],
            upper: vec![full_line("S.u0", Side::Upper)],
        }],
        vec![GluingSpec::new("S.l0", "S.u0", orientation).named("omega")],
    )
    .expect("self gluing of distinct sides is valid")
}

/// `R x [-1, 1]` with its boundary lines identified by `t -> t`.
pub fn cylinder() -> StripedSurface {
    self_glued(Preserving)
}

/// `R x [-1, 1]` with its boundary lines identified by `t -> -t`.
pub fn moebius() -> StripedSurface {
    self_glued(Reversing)
}

/// Two strips `P`, `Q` glued upper-to-upper reversing and lower-to-lower
/// preserving: a Moebius band cut into two pieces.
pub fn moebius2() -> StripedSurface {
    StripedSurface::new(
        vec![
            ModelStripSpec::with_sides("P", &["P.l0"], &["P.u0"]),
            ModelStripSpec::with_sides("Q", &["Q.l0"], &["Q.u0"]),
        ],
        vec![
            GluingSpec::new("P.u0", "Q.u0", Reversing),
            GluingSpec::new("P.l0", "Q.l0", Preserving),
        ],
    )
    .expect("valid")
}

/// One strip whose lower interval is glued to the first of two upper
/// intervals; both boundary lines of the strip border the same special leaf.
pub fn horseshoe() -> StripedSurface {
    StripedSurface::new(
        vec![ModelStripSpec::with_sides("H", &["H.l0"], &["H.u0", "H.u1"])],
        vec![GluingSpec::new("H.l0", "H.u0", Preserving).named("sigma")],
    )
    .expect("valid")
}

/// Two strips joined by a single non-special leaf `mu`; each keeps two
/// unglued intervals on its outer side.
pub fn chain2() -> StripedSurface {
    StripedSurface::new(
        vec![
            ModelStripSpec::with_sides("P", &["P.l0", "P.l1"], &["P.u0"]),
            ModelStripSpec::with_sides("Q", &["Q.l0"], &["Q.u0", "Q.u1"]),
        ],
        vec![GluingSpec::new("P.u0", "Q.l0", Preserving).named("mu")],
    )
    .expect("valid")
}

/// The single strip obtained from [`chain2`] by merging across `mu`.
pub fn chain2_merged() -> StripedSurface {
    StripedSurface::new(
        vec![ModelStripSpec::with_sides("M", &["x0", "x1"], &["y0", "y1"])],
        vec![],
    )
    .expect("valid")
}

/// `R x (0, 1)` with nothing attached.
pub fn open_strip() -> StripedSurface {
    StripedSurface::new(vec![ModelStripSpec::with_sides("A", &[], &[])], vec![]).expect("valid")
}

/// `R x [0, 1]`: one unglued interval on each side.
pub fn closed_strip() -> StripedSurface {
    StripedSurface::new(vec![ModelStripSpec::with_sides("A", &["A.l0"], &["A.u0"])], vec![]).expect("valid")
}

/// Every named fixture with its file stem.
pub fn corpus() -> Vec<(&'static str, StripedSurface)> {
    vec![
        ("kaplan5", kaplan5()),
        ("kaplan5_mirror", kaplan5().mirror()),
        ("cylinder", cylinder()),
        ("moebius", moebius()),
        ("moebius2", moebius2()),
        ("horseshoe", horseshoe()),
        ("chain2", chain2()),
        ("chain2_merged", chain2_merged()),
        ("open_strip", open_strip()),
        ("closed_strip", closed_strip()),
    ]
}
