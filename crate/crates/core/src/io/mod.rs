//! The JSON surface document and diagram output.

mod document;
mod render;
mod report;

pub use document::{parse, serialize, IoError};
pub use render::{leaf_space_dot, leaf_space_json, surface_svg, LeafSpaceDoc};
pub use report::{decomposition_report, ComponentReport, DecomposeReport};
