//! Manifolds as chart systems with smooth transitions, and vector bundles as
//! transition cocycles.

mod builtin;
mod bundle;
mod manifold;
mod map;

pub use builtin::{builtin, circle, euclidean, moebius, sphere, torus, Builtin, Descriptor, BUILTIN_NAMES};
pub use bundle::{BundleAtlas, BundleCheck};
pub use manifold::{AtlasCheck, Chart, Manifold, Point};
pub use map::{MatrixField, Region, SmoothMap};
