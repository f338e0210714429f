use serde::Serialize;

use crate::decompose::{
    check_theorem_part1, classify_component, component_closures, ComponentClass, ComponentClosures, CutMode,
    Decomposition, EndKind, Interface, OrientedStrip, Part1Report, Shape,
};
use crate::leaf_space::build_leaf_space;
use crate::surface::StripedSurface;

#[derive(Serialize)]
pub struct ComponentReport<'a> {
    index: usize,
    shape: Shape,
    class: ComponentClass,
    strips: &'a [OrientedStrip],
    interfaces: &'a [Interface],
    lower_end: &'a EndKind,
    upper_end: &'a EndKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    monodromy: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closures: Option<ComponentClosures>,
}

#[derive(Serialize)]
pub struct DecomposeReport<'a> {
    mode: CutMode,
    cut: &'a [String],
    components: Vec<ComponentReport<'a>>,
    theorem_part1: Part1Report,
}

/// Everything `decompose` knows about a surface, ready for JSON output.
pub fn decomposition_report<'a>(surface: &StripedSurface, d: &'a Decomposition) -> DecomposeReport<'a> {
    let ls = build_leaf_space(surface);
    let mode = d.components.first().map_or(CutMode::WithBoundary, |c| c.mode);
    let components = d
        .components
        .iter()
        .enumerate()
        .map(|(index, c)| ComponentReport {
            index,
            shape: c.shape,
            class: classify_component(c),
            strips: &c.strips,
            interfaces: &c.interfaces,
            lower_end: &c.lower_end,
            upper_end: &c.upper_end,
            monodromy: (c.shape == Shape::Cycle).then(|| c.monodromy()),
            closures: component_closures(surface, &ls, c).ok(),
        })
        .collect();
    DecomposeReport {
        mode,
        cut: &d.cut,
        components,
        theorem_part1: check_theorem_part1(surface, d),
    }
}
