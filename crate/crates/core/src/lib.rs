//! Class-F foliations on surfaces encoded as model strips glued along
//! boundary intervals.
//!
//! The crate builds the combinatorial leaf space of a striped surface, cuts
//! it along its special leaves, decides equivalence of surfaces by a
//! canonical code, and realizes the piecewise-linear homeomorphisms used to
//! identify closures of half-strips with model strips.

pub mod canonical;
pub mod cli;
pub mod decompose;
pub mod fixtures;
pub mod homeo;
pub mod io;
pub mod leaf_space;
pub mod oracle;
pub mod random;
pub mod surface;

pub use canonical::{canonical_code, canonicalize, is_isomorphic, CanonicalCode};
pub use decompose::{
    check_theorem_part1, classify_component, component_closures, decompose, is_orientable, ClosureStrip, Component,
    ComponentClass, CutMode, DecomposeError, Decomposition, Shape,
};
pub use leaf_space::{build_leaf_space, LeafPoint, LeafSpace, PointKind};
pub use surface::{
    validate_class_f, GluingSpec, Interval, ModelStripSpec, Orientation, Side, SideEnd, StripedSurface, SurfaceError,
    ValidationReport,
};
