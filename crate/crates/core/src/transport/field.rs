use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regulated::{Interval, RegCurve, StepCurve};

use super::PathTrivialization;

/// Global representation `(φ, θ)` of a vector field along a path or a lift:
/// `φ` glues the tangent components, `θ` the fiber components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldRep {
    pub phi: RegCurve,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<StepCurve>,
}

/// A vector field given per piece in the path's charts.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldComponents {
    /// Order-1 tangent components on each piece.
    pub tangent: Vec<RegCurve>,
    /// Fiber components on each piece, for fields along a lift.
    pub fiber: Option<Vec<StepCurve>>,
}

impl FieldRep {
    /// The base part: `(φ, θ) ↦ φ`.
    pub fn base(&self) -> FieldRep {
        FieldRep { phi: self.phi.clone(), theta: None }
    }

    pub fn check(&self, m: usize, d: Option<usize>) -> Result<()> {
        if self.phi.order() != 1 {
            return Err(Error::Order { requested: 1, available: self.phi.order() });
        }
        if self.phi.dim() != m {
            return Err(Error::Dimension { expected: m, found: self.phi.dim() });
        }
        if self.phi.domain() != Interval::unit() {
            return Err(Error::DomainMismatch("field representations live on [0, 1]".into()));
        }
        match (&self.theta, d) {
            (None, None) => Ok(()),
            (Some(th), Some(d)) if th.dim() != d => Err(Error::Dimension { expected: d, found: th.dim() }),
            (Some(th), Some(_)) if th.domain() != Interval::unit() => Err(Error::DomainMismatch("field representations live on [0, 1]".into())),
            (Some(_), Some(_)) => Ok(()),
            _ => Err(Error::InvalidCurve("fiber part present on one side only".into())),
        }
    }
}

fn same_path(tangent: &PathTrivialization, fiber: Option<&PathTrivialization>) -> Result<()> {
    if let Some(f) = fiber {
        if f.path() != tangent.path() {
            return Err(Error::InvalidPath("tangent and fiber trivializations are over different paths".into()));
        }
    }
    Ok(())
}

/// Glue per-piece components into a global field along a path, or along a
/// lift when a fiber trivialization is given.
///
/// `tangent` must trivialize the tangent bundle of the base along the path.
pub fn represent_field(tangent: &PathTrivialization, fiber: Option<&PathTrivialization>, x: &FieldComponents) -> Result<FieldRep> {
    same_path(tangent, fiber)?;
    let phi = tangent.represent_section_reg(&x.tangent)?;
    let theta = match (fiber, &x.fiber) {
        (None, None) => None,
        (Some(f), Some(u)) => Some(f.represent_section(u)?),
        _ => return Err(Error::InvalidCurve("fiber components need a fiber trivialization".into())),
    };
    Ok(FieldRep { phi, theta })
}

/// Inverse of [`represent_field`].
pub fn field_components(tangent: &PathTrivialization, fiber: Option<&PathTrivialization>, rep: &FieldRep) -> Result<FieldComponents> {
    same_path(tangent, fiber)?;
    rep.check(tangent.rank(), fiber.map(|f| f.rank()))?;
    let tangent_parts = tangent.section_components_reg(&rep.phi)?;
    let fiber_parts = match (fiber, &rep.theta) {
        (Some(f), Some(th)) => Some(f.section_components(th)?),
        _ => None,
    };
    Ok(FieldComponents { tangent: tangent_parts, fiber: fiber_parts })
}
