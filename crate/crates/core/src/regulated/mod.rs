//! Strong-regulated (càdlàg step) curves and k-regulated curves on compact intervals.

mod approx;
mod interval;
mod linear;
pub mod poly;
mod reg;
mod step;

pub use approx::{
    approximate_pieces, change_of_variables, compose_smooth, compose_smooth_with, image_net, step_approximate,
    Approximation, Modulus, Resolution, SmoothScalarRepar, Source, DEFAULT_MAX_CELLS,
};
pub use interval::{Interval, Partition};
pub use linear::PlCurve;
pub use reg::{Mode, RegCurve, Top};
pub use step::{lin_comb, sup_distance, StepBuilder, StepCurve};
