use std::fmt;
use std::sync::Arc;

use crate::atlas::{BundleAtlas, Manifold};
use crate::error::{Error, Result};
use crate::linalg::mat_vec;
use crate::path::{chart_map, lift_chart_map, reconstruct, BundleLift, ManifoldPath, PathChartSystem, PathRep};
use crate::regulated::{lin_comb, StepCurve};

use super::{represent_field, FieldComponents, FieldRep, PathTrivialization};

/// Default finite-difference step of [`deformation_tangent`].
pub const DEFAULT_STEP: f64 = 1e-3;

type RepFn = dyn Fn(f64) -> Result<PathRep> + Send + Sync;

/// One-parameter family `ε ↦ D(ε)` for `|ε| ≤ δ`, presented as
/// representations in a single chart system.
#[derive(Clone)]
pub struct Deformation {
    system: PathChartSystem,
    delta: f64,
    f: Arc<RepFn>,
}

impl fmt::Debug for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Deformation").field("system", &self.system).field("delta", &self.delta).finish_non_exhaustive()
    }
}

impl Deformation {
    pub fn new(system: PathChartSystem, delta: f64, f: impl Fn(f64) -> Result<PathRep> + Send + Sync + 'static) -> Self {
        Self { system, delta, f: Arc::new(f) }
    }

    /// Family of paths; every slice must use `system`.
    pub fn from_paths(system: PathChartSystem, delta: f64, f: impl Fn(f64) -> Result<ManifoldPath> + Send + Sync + 'static) -> Self {
        let sys = system.clone();
        Self::new(system, delta, move |eps| {
            let p = f(eps)?;
            if p.system() != &sys {
                return Err(Error::InvalidPath(format!("deformation slice at {eps} left the chart system")));
            }
            Ok(chart_map(&p))
        })
    }

    /// Family of lifts; every slice must use `system`.
    pub fn from_lifts(system: PathChartSystem, delta: f64, f: impl Fn(f64) -> Result<BundleLift> + Send + Sync + 'static) -> Self {
        let sys = system.clone();
        Self::new(system, delta, move |eps| {
            let c = f(eps)?;
            if c.base().system() != &sys {
                return Err(Error::InvalidPath(format!("deformation slice at {eps} left the chart system")));
            }
            Ok(lift_chart_map(&c))
        })
    }

    pub fn system(&self) -> &PathChartSystem {
        &self.system
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eval(&self, eps: f64) -> Result<PathRep> {
        if !(eps.abs() <= self.delta) {
            return Err(Error::DeformationUndefined(eps));
        }
        let rep = (self.f)(eps).map_err(|e| match e {
            Error::InvalidPath(_) => e,
            _ => Error::DeformationUndefined(eps),
        })?;
        if rep.pieces.len() != self.system.num_pieces() {
            return Err(Error::InvalidPath(format!("deformation slice at {eps} left the chart system")));
        }
        Ok(rep)
    }
}

/// `Σ c_k R_k` over representations in one chart system.
pub fn combine(terms: &[(f64, &PathRep)]) -> Result<PathRep> {
    let first = terms.first().ok_or_else(|| Error::InvalidPath("empty combination".into()))?.1;
    let mut x = vec![0.0; first.x.len()];
    for (c, r) in terms {
        if r.x.len() != x.len() || r.pieces.len() != first.pieces.len() {
            return Err(Error::InvalidPath("representations of different shape".into()));
        }
        for (xi, ri) in x.iter_mut().zip(&r.x) {
            *xi += c * ri;
        }
    }
    let pieces = (0..first.pieces.len())
        .map(|i| lin_comb(&terms.iter().map(|(c, r)| (*c, &r.pieces[i])).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let fibers = match &first.fibers {
        None => None,
        Some(f0) => Some(
            (0..f0.len())
                .map(|i| {
                    let parts = terms
                        .iter()
                        .map(|(c, r)| r.fibers.as_ref().map(|f| (*c, &f[i])))
                        .collect::<Option<Vec<(f64, &StepCurve)>>>()
                        .ok_or_else(|| Error::InvalidPath("fiber parts missing".into()))?;
                    lin_comb(&parts)
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(PathRep { x, pieces, fibers })
}

/// Central differences at `±h` and `±h/2`, combined by one Richardson step.
pub fn rep_tangent(d: &Deformation, h: f64) -> Result<PathRep> {
    let (p1, m1) = (d.eval(h)?, d.eval(-h)?);
    let (p2, m2) = (d.eval(0.5 * h)?, d.eval(-0.5 * h)?);
    // (4 D(h/2) - D(h)) / 3 with D(s) = (R(s) - R(-s)) / 2s
    let a = 4.0 / (3.0 * h);
    let b = 1.0 / (6.0 * h);
    combine(&[(a, &p2), (-a, &m2), (-b, &p1), (b, &m1)])
}

/// Per-piece chart components of the variation field of `base` along a
/// representation tangent `drep`: `X_1 = dx + ∫dy_1`,
/// `X_{i+1} = DT(γ_i(τ_i)) X_i(τ_i) + ∫dy_{i+1}`.
pub fn linearize(tangent_bundle: &BundleAtlas, base: &ManifoldPath, drep: &PathRep) -> Result<FieldComponents> {
    let sys = base.system();
    drep.check(sys, base.dim())?;
    let mut tangent = Vec::with_capacity(sys.num_pieces());
    let mut start = drep.x.clone();
    for (i, dy) in drep.pieces.iter().enumerate() {
        if i > 0 {
            let (from, to) = (sys.chart(i - 1), sys.chart(i));
            let prev: &crate::regulated::RegCurve = &tangent[i - 1];
            start = prev.end_value(0)?;
            if from != to {
                let x = base.piece(i - 1).end_value(0)?;
                start = mat_vec(&tangent_bundle.cocycle(from, to, &x)?, &start);
            }
        }
        tangent.push(dy.primitive(&start)?);
    }
    Ok(FieldComponents { tangent, fiber: drep.fibers.clone() })
}

/// Tangent vector of a deformation, as a field along `D(0)`.
#[derive(Debug, Clone)]
pub struct DeformationTangent {
    pub field: FieldRep,
    pub components: FieldComponents,
    pub tangent: PathTrivialization,
    pub fiber: Option<PathTrivialization>,
}

/// `dD/dε` at 0 in the trivializations glued along `D(0)`.
///
/// The fiber part is glued with the bundle frames, which is chart
/// independent when the cocycles are locally constant.
pub fn deformation_tangent(m: &Manifold, bundle: Option<&BundleAtlas>, d: &Deformation, h: f64) -> Result<DeformationTangent> {
    let rep0 = d.eval(0.0)?;
    let base = reconstruct(m, d.system(), &rep0)?;
    let tb = BundleAtlas::tangent(m.clone());
    let tangent = PathTrivialization::build(&tb, &base)?;
    let drep = rep_tangent(d, h)?;
    let components = linearize(&tb, &base, &drep)?;
    let fiber = match (bundle, &components.fiber) {
        (Some(b), Some(_)) => Some(PathTrivialization::build(b, &base)?),
        (None, None) => None,
        _ => return Err(Error::InvalidPath("fiber data and bundle must be given together".into())),
    };
    let field = represent_field(&tangent, fiber.as_ref(), &components)?;
    Ok(DeformationTangent { field, components, tangent, fiber })
}
