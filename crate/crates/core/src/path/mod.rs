//! Paths on manifolds and their lifts to bundles: chart systems, chart maps,
//! reconstruction, chart transitions, openness radii and neighbourhoods.

mod contain;
mod neighborhood;
mod openness;
#[allow(clippy::module_inception)]
mod path;
mod system;
mod transition;

pub use contain::{certify_curve, certify_segment, min_margin, Membership};
pub use neighborhood::{find_chart_system, in_neighborhood, path_in_neighborhood, NeighborhoodSpec};
pub use openness::{openness_margin, Openness, MARGIN_CAP};
pub use path::{
    assemble, chart_map, disassemble, evaluate_lift, evaluate_path, lift_chart_map, reconstruct, reconstruct_lift,
    BundleLift, ManifoldPath, PathRep, JUNCTION_TOL,
};
pub use system::PathChartSystem;
pub use transition::{transition_lift_rep, transition_rep, TransitionOutput};
