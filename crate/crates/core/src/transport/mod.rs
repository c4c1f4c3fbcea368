//! Trivializations along paths, transport, and field representations.

mod compat;
mod deform;
mod field;
mod triv;

pub use compat::{compatibility_automorphisms, AutomorphismBounds, AutomorphismField, LiftAutomorphism};
pub use deform::{combine, deformation_tangent, linearize, rep_tangent, Deformation, DeformationTangent, DEFAULT_STEP};
pub use field::{field_components, represent_field, FieldComponents, FieldRep};
pub use triv::{frames_from_junctions, FrameExport, NormEquivalence, PathTrivialization, GLUE_TOL};
