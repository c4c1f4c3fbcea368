use serde::Serialize;

use crate::atlas::BundleAtlas;
use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, max_dist, max_norm, op_norm, to_rows, Matrix};
use crate::path::ManifoldPath;
use crate::regulated::{Interval, RegCurve, StepCurve};

/// Relative junction mismatch tolerated when gluing order-1 sections.
pub const GLUE_TOL: f64 = 1e-9;

/// Trivialization of a bundle along a path, glued at the junctions.
///
/// Piece `i` carries a frame `C_i` with `C_1 = F` (identity by default) and
/// `C_{i+1} = C_i g_{i→i+1}(γ(τ_i))⁻¹`, so the global coordinate
/// `w = C_i u_i` of a continuous section is continuous.
#[derive(Debug, Clone)]
pub struct PathTrivialization {
    path: ManifoldPath,
    bundle: BundleAtlas,
    frames: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

/// Frame matrices of a trivialization, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameExport {
    pub tau: Vec<f64>,
    pub charts: Vec<usize>,
    pub frames: Vec<Vec<Vec<f64>>>,
}

/// Frames generated from a chart sequence and the junctions `(τ_i, γ(τ_i))`,
/// with points given in the chart of the piece ending there.
pub fn frames_from_junctions(bundle: &BundleAtlas, charts: &[usize], junctions: &[(f64, Vec<f64>)], initial: Matrix) -> Result<Vec<Matrix>> {
    if junctions.len() + 1 != charts.len() {
        return Err(Error::InvalidPath(format!("{} junctions for {} charts", junctions.len(), charts.len())));
    }
    let d = bundle.rank();
    if initial.shape() != (d, d) {
        return Err(Error::Dimension { expected: d, found: initial.nrows() });
    }
    let mut frames = Vec::with_capacity(charts.len());
    frames.push(initial);
    for (i, (t, x)) in junctions.iter().enumerate() {
        let (from, to) = (charts[i], charts[i + 1]);
        let prev = &frames[i];
        let next = if from == to {
            prev.clone()
        } else {
            let g = bundle.cocycle(from, to, x).map_err(|_| Error::CoverViolation {
                time: *t,
                reason: format!("cocycle {from}→{to} undefined at the junction"),
            })?;
            prev * inverse(&g)?
        };
        frames.push(next);
    }
    Ok(frames)
}

impl PathTrivialization {
    pub fn build(bundle: &BundleAtlas, path: &ManifoldPath) -> Result<Self> {
        let d = bundle.rank();
        Self::with_initial(bundle, path, Matrix::identity(d, d))
    }

    /// Trivialization with first frame `initial`.
    pub fn with_initial(bundle: &BundleAtlas, path: &ManifoldPath, initial: Matrix) -> Result<Self> {
        if path.dim() != bundle.base().dim() {
            return Err(Error::Dimension { expected: bundle.base().dim(), found: path.dim() });
        }
        let sys = path.system();
        let junctions = (0..path.num_pieces() - 1)
            .map(|i| Ok((sys.tau()[i + 1], path.piece(i).end_value(0)?)))
            .collect::<Result<Vec<_>>>()?;
        let frames = frames_from_junctions(bundle, sys.charts(), &junctions, initial)?;
        let inverses = frames.iter().map(inverse).collect::<Result<Vec<_>>>()?;
        Ok(Self { path: path.clone(), bundle: bundle.clone(), frames, inverses })
    }

    pub fn path(&self) -> &ManifoldPath {
        &self.path
    }

    pub fn bundle(&self) -> &BundleAtlas {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn num_pieces(&self) -> usize {
        self.frames.len()
    }

    pub fn frames(&self) -> &[Matrix] {
        &self.frames
    }

    pub fn frame(&self, i: usize) -> &Matrix {
        &self.frames[i]
    }

    pub fn frame_inverse(&self, i: usize) -> &Matrix {
        &self.inverses[i]
    }

    pub fn export(&self) -> FrameExport {
        let sys = self.path.system();
        FrameExport { tau: sys.tau().to_vec(), charts: sys.charts().to_vec(), frames: self.frames.iter().map(to_rows).collect() }
    }

    /// Frames of pieces `a..=b`; equal to the trivialization of the
    /// sub-path started from `C_a`.
    pub fn restrict(&self, a: usize, b: usize) -> Result<Vec<Matrix>> {
        if a > b || b >= self.num_pieces() {
            return Err(Error::InvalidPath(format!("piece range {a}..={b} out of bounds")));
        }
        Ok(self.frames[a..=b].to_vec())
    }

    /// `κ = max_i max(‖C_i‖, ‖C_i⁻¹‖)` in the max-norm operator norm.
    pub fn kappa(&self) -> f64 {
        self.frames.iter().chain(&self.inverses).map(op_norm).fold(1.0, f64::max)
    }

    /// `P_t^s = C_{i(t)}⁻¹ C_{i(s)}`, mapping fiber coordinates at `s` to `t`.
    pub fn transport(&self, s: f64, t: f64) -> Result<Matrix> {
        let sys = self.path.system();
        let (i, j) = (sys.piece_index(s)?, sys.piece_index(t)?);
        if i == j {
            let d = self.rank();
            return Ok(Matrix::identity(d, d));
        }
        Ok(&self.inverses[j] * &self.frames[i])
    }

    /// Transport once around the path, expressed in the chart at `t = 0`.
    pub fn holonomy(&self) -> Result<Matrix> {
        let p = self.transport(0.0, 1.0)?;
        let sys = self.path.system();
        let (first, last) = (sys.chart(0), sys.chart(sys.num_pieces() - 1));
        if first == last {
            return Ok(p);
        }
        let end = self.path.piece(sys.num_pieces() - 1).end_value(0)?;
        Ok(self.bundle.cocycle(last, first, &end)? * p)
    }

    fn check_pieces(&self, n: usize, dims: impl Iterator<Item = (usize, Interval)>) -> Result<()> {
        if n != self.num_pieces() {
            return Err(Error::InvalidPath(format!("{n} pieces for {} intervals", self.num_pieces())));
        }
        for (i, (dim, dom)) in dims.enumerate() {
            if dim != self.rank() {
                return Err(Error::Dimension { expected: self.rank(), found: dim });
            }
            if dom != self.path.system().piece(i) {
                return Err(Error::InvalidPath(format!("piece {i} domain does not match the partition")));
            }
        }
        Ok(())
    }

    /// Global coordinate `w = concat(C_i u_i)` of a section given per piece.
    pub fn represent_section(&self, u: &[StepCurve]) -> Result<StepCurve> {
        self.check_pieces(u.len(), u.iter().map(|c| (c.dim(), c.domain())))?;
        let parts = u.iter().zip(&self.frames).map(|(c, f)| c.linear_push(f)).collect::<Result<Vec<_>>>()?;
        StepCurve::concat_all(&parts)
    }

    /// Inverse of [`Self::represent_section`].
    pub fn section_components(&self, w: &StepCurve) -> Result<Vec<StepCurve>> {
        self.check_global(w.dim(), w.domain())?;
        let sys = self.path.system();
        (0..self.num_pieces()).map(|i| w.restrict(sys.piece(i))?.linear_push(&self.inverses[i])).collect()
    }

    fn check_global(&self, dim: usize, domain: Interval) -> Result<()> {
        if dim != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: dim });
        }
        if domain != Interval::unit() {
            return Err(Error::DomainMismatch("global coordinate must live on [0, 1]".into()));
        }
        Ok(())
    }

    /// Glue an order-1 section given per piece into `w` with
    /// `w(0) = C_1 u_1(0)` and `w' = concat(C_i u_i')`.
    pub fn represent_section_reg(&self, u: &[RegCurve]) -> Result<RegCurve> {
        self.check_pieces(u.len(), u.iter().map(|c| (c.dim(), c.domain())))?;
        let mut tops = Vec::with_capacity(u.len());
        for (i, c) in u.iter().enumerate() {
            if c.order() != 1 {
                return Err(Error::Order { requested: 1, available: c.order() });
            }
            let top = c.top_step().ok_or_else(|| Error::Unsupported("sections must be regulated".into()))?;
            tops.push(top.linear_push(&self.frames[i])?);
            if i + 1 < u.len() {
                let left = mat_vec(&self.frames[i], &c.end_value(0)?);
                let right = mat_vec(&self.frames[i + 1], u[i + 1].jet(0));
                let gap = max_dist(&left, &right);
                if gap > GLUE_TOL * (1.0 + max_norm(&left)) {
                    return Err(Error::Discontinuous { time: u[i + 1].domain().lo(), gap });
                }
            }
        }
        StepCurve::concat_all(&tops)?.primitive(&mat_vec(&self.frames[0], u[0].jet(0)))
    }

    /// Inverse of [`Self::represent_section_reg`].
    pub fn section_components_reg(&self, w: &RegCurve) -> Result<Vec<RegCurve>> {
        self.check_global(w.dim(), w.domain())?;
        let sys = self.path.system();
        (0..self.num_pieces()).map(|i| w.restrict(sys.piece(i))?.linear_push(&self.inverses[i])).collect()
    }

    /// `∇X|_{piece i} = C_i⁻¹ w'` for an order-1 global coordinate `w`.
    pub fn covariant_derivative(&self, w: &RegCurve) -> Result<StepCurve> {
        self.check_global(w.dim(), w.domain())?;
        if w.order() == 0 {
            return Err(Error::Order { requested: 1, available: 0 });
        }
        let (_, dw) = w.derivative_split()?;
        let top = match dw.order() {
            0 => dw.top_step().ok_or_else(|| Error::Unsupported("sections must be regulated".into()))?.clone(),
            _ => return Err(Error::Unsupported("covariant derivative of sections above order 1".into())),
        };
        let sys = self.path.system();
        let parts = (0..self.num_pieces())
            .map(|i| top.restrict(sys.piece(i))?.linear_push(&self.inverses[i]))
            .collect::<Result<Vec<_>>>()?;
        StepCurve::concat_all(&parts)
    }

    /// Both sides of the norm equivalence for an order-1 global coordinate.
    pub fn norm_equivalence(&self, w: &RegCurve) -> Result<NormEquivalence> {
        let nabla = self.covariant_derivative(w)?;
        let x0 = mat_vec(&self.inverses[0], w.jet(0));
        let n1 = max_norm(&x0) + nabla.sup_norm();
        let w0 = max_norm(w.jet(0));
        let dw = w.sup_level(1)?;
        let n2 = w.sup_level(0)?.max(dw);
        let len = w.domain().len();
        let kappa = self.kappa();
        let ratio = if n1 == 0.0 && n2 == 0.0 { 1.0 } else { (n1 / n2).max(n2 / n1) };
        Ok(NormEquivalence {
            n1,
            n2,
            ratio,
            bound: (1.0 + len) * kappa,
            lower_ok: w0.max(dw) <= kappa * n1,
            upper_ok: n2 <= w0 + (1.0 + len) * dw,
        })
    }
}

/// Measured norms of one field and the certified equivalence constant.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormEquivalence {
    /// `‖X(0)‖ + ‖∇X‖_∞`.
    pub n1: f64,
    /// `max(‖w‖_∞, ‖w'‖_∞)`.
    pub n2: f64,
    pub ratio: f64,
    /// `(1 + len) κ`.
    pub bound: f64,
    /// `max(‖w(0)‖, ‖w'‖_∞) ≤ κ N₁`.
    pub lower_ok: bool,
    /// `N₂ ≤ ‖w(0)‖ + (1 + len) ‖w'‖_∞`.
    pub upper_ok: bool,
}

impl NormEquivalence {
    pub fn holds(&self) -> bool {
        self.ratio <= self.bound && self.lower_ok && self.upper_ok
    }
}
