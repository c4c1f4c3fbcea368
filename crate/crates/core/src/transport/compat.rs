use serde::Serialize;

use crate::atlas::BundleAtlas;
use crate::error::{Error, Result};
use crate::linalg::{inverse, max_dist, max_norm, op_norm, Matrix};
use crate::path::ManifoldPath;
use crate::regulated::{Interval, RegCurve, StepCurve};

use super::{FieldRep, PathTrivialization};

const PATH_TOL: f64 = 1e-6;
const BOUND_SAMPLES: usize = 64;

/// Piecewise matrix field `A` with `rep_B = A rep_A`, on the common
/// refinement of two trivializations of one bundle along one path.
///
/// On a cell where A uses chart `i` and B chart `j`,
/// `A(t) = C^B_j g_{i→j}(γ(t)) (C^A_i)⁻¹`.
#[derive(Debug, Clone)]
pub struct AutomorphismField {
    path: ManifoldPath,
    bundle: BundleAtlas,
    cells: Vec<Cell>,
}

#[derive(Debug, Clone)]
struct Cell {
    span: Interval,
    piece: usize,
    from: usize,
    to: usize,
    left: Matrix,
    right: Matrix,
    constant: Option<Matrix>,
}

/// Operator-norm bounds of `A` and `A⁻¹`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AutomorphismBounds {
    pub norm: f64,
    pub inverse_norm: f64,
    /// Whether the bounds are exact (every cell constant) or sampled.
    pub exact: bool,
}

impl AutomorphismBounds {
    pub fn kappa(&self) -> f64 {
        self.norm.max(self.inverse_norm).max(1.0)
    }
}

pub fn compatibility_automorphisms(a: &PathTrivialization, b: &PathTrivialization) -> Result<AutomorphismField> {
    if a.bundle().name() != b.bundle().name() || a.rank() != b.rank() {
        return Err(Error::InvalidPath("trivializations of different bundles".into()));
    }
    let m = a.bundle().base();
    let (pa, pb) = (a.path(), b.path());
    let (sa, sb) = (pa.system(), pb.system());
    let knots = sa.common_refinement(sb);
    let mut cells = Vec::with_capacity(knots.len() - 1);
    for w in knots.windows(2) {
        let span = Interval::new(w[0], w[1])?;
        let (i, j) = (sa.piece_index(w[0])?, sb.piece_index(w[0])?);
        let (from, to) = (sa.chart(i), sb.chart(j));
        for t in [w[0], 0.5 * (w[0] + w[1]), w[1]] {
            let xa = pa.piece(i).eval(t, 0)?;
            let xb = pb.piece(j).eval(t, 0)?;
            let conv = m.transfer(from, to, &xa).map_err(|_| Error::InvalidPath(format!("paths disagree at {t}")))?;
            if max_dist(&conv, &xb) > PATH_TOL * (1.0 + max_norm(&xb)) {
                return Err(Error::InvalidPath(format!("paths disagree at {t}")));
            }
        }
        let left = b.frame(j).clone();
        let right = a.frame_inverse(i).clone();
        let constant = if from == to {
            Some(&left * &right)
        } else {
            let g = a.bundle().cocycle_field(from, to)?.ok_or(Error::NotInOverlap { from, to, coords: vec![] })?;
            if g.is_locally_constant() {
                let mid = pa.piece(i).eval(0.5 * (w[0] + w[1]), 0)?;
                Some(&left * g.try_eval(&mid)? * &right)
            } else {
                None
            }
        };
        cells.push(Cell { span, piece: i, from, to, left, right, constant });
    }
    Ok(AutomorphismField { path: pa.clone(), bundle: a.bundle().clone(), cells })
}

impl AutomorphismField {
    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn knots(&self) -> Vec<f64> {
        let mut k: Vec<f64> = self.cells.iter().map(|c| c.span.lo()).collect();
        k.push(1.0);
        k
    }

    pub fn is_piecewise_constant(&self) -> bool {
        self.cells.iter().all(|c| c.constant.is_some())
    }

    fn cell_index(&self, t: f64) -> Result<usize> {
        Interval::unit().check(t)?;
        Ok(self.cells.partition_point(|c| c.span.hi() <= t).min(self.cells.len() - 1))
    }

    fn cell_eval(&self, c: &Cell, t: f64) -> Result<Matrix> {
        if let Some(a) = &c.constant {
            return Ok(a.clone());
        }
        let x = self.path.piece(c.piece).eval(t, 0)?;
        Ok(&c.left * self.bundle.cocycle(c.from, c.to, &x)? * &c.right)
    }

    /// `A(t)`; at a knot the right cell is used.
    pub fn eval(&self, t: f64) -> Result<Matrix> {
        let k = self.cell_index(t)?;
        self.cell_eval(&self.cells[k], t)
    }

    /// Norm bounds; exact on constant cells, sampled on cells where the
    /// cocycle varies.
    pub fn bounds(&self) -> Result<AutomorphismBounds> {
        let (mut norm, mut inverse_norm) = (0.0_f64, 0.0_f64);
        for c in &self.cells {
            let samples: Vec<f64> = match c.constant {
                Some(_) => vec![c.span.lo()],
                None => (0..=BOUND_SAMPLES).map(|s| c.span.lo() + c.span.len() * s as f64 / BOUND_SAMPLES as f64).collect(),
            };
            for t in samples {
                let a = self.cell_eval(c, t)?;
                norm = norm.max(op_norm(&a));
                inverse_norm = inverse_norm.max(op_norm(&inverse(&a)?));
            }
        }
        Ok(AutomorphismBounds { norm, inverse_norm, exact: self.is_piecewise_constant() })
    }

    fn constants(&self) -> Result<Vec<(Interval, &Matrix)>> {
        self.cells
            .iter()
            .map(|c| c.constant.as_ref().map(|a| (c.span, a)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Unsupported("exact action needs a piecewise constant automorphism".into()))
    }

    /// `A w` for a global section coordinate.
    pub fn apply_section(&self, w: &StepCurve) -> Result<StepCurve> {
        let parts = self.constants()?.into_iter().map(|(span, a)| w.restrict(span)?.linear_push(a)).collect::<Result<Vec<_>>>()?;
        StepCurve::concat_all(&parts)
    }

    /// `A φ` for an order-1 global coordinate, continuous by construction.
    pub fn apply_field(&self, phi: &RegCurve) -> Result<RegCurve> {
        let cells = self.constants()?;
        let top = phi.top_step().ok_or_else(|| Error::Unsupported("fields must be regulated".into()))?;
        let parts = cells.iter().map(|(span, a)| top.restrict(*span)?.linear_push(a)).collect::<Result<Vec<_>>>()?;
        StepCurve::concat_all(&parts)?.primitive(&crate::linalg::mat_vec(cells[0].1, phi.jet(0)))
    }
}

/// `A_c = diag(A_γ, A_E)` for pairs of tangent and fiber trivializations.
#[derive(Debug, Clone)]
pub struct LiftAutomorphism {
    pub base: AutomorphismField,
    pub fiber: AutomorphismField,
}

impl LiftAutomorphism {
    pub fn new(base: AutomorphismField, fiber: AutomorphismField) -> Result<Self> {
        if base.path != fiber.path {
            return Err(Error::InvalidPath("base and fiber automorphisms over different paths".into()));
        }
        Ok(Self { base, fiber })
    }

    pub fn eval(&self, t: f64) -> Result<Matrix> {
        let (a, e) = (self.base.eval(t)?, self.fiber.eval(t)?);
        let (m, d) = (a.nrows(), e.nrows());
        let mut out = Matrix::zeros(m + d, m + d);
        out.view_mut((0, 0), (m, m)).copy_from(&a);
        out.view_mut((m, m), (d, d)).copy_from(&e);
        Ok(out)
    }

    /// The tangent block, i.e. the automorphism of the base field.
    pub fn project_base(&self, t: f64) -> Result<Matrix> {
        let m = self.base.rank();
        Ok(self.eval(t)?.view((0, 0), (m, m)).into_owned())
    }

    /// `A_c (φ, θ)` for piecewise constant automorphisms.
    pub fn apply(&self, rep: &FieldRep) -> Result<FieldRep> {
        Ok(FieldRep { phi: self.base.apply_field(&rep.phi)?, theta: rep.theta.as_ref().map(|th| self.fiber.apply_section(th)).transpose()? })
    }
}
