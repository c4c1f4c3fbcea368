use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{mat_vec_into, max_norm, Matrix};

type MarginFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type EvalFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;
type JacFn = dyn Fn(&[f64], &mut Matrix) + Send + Sync;
type MatFn = dyn Fn(&[f64]) -> Matrix + Send + Sync;

/// Open subset of ℝ^m described by a margin function: `margin(x)` is a
/// conservative radius (max-norm) of a ball around `x` inside the set, and is
/// `≤ 0` outside. Membership is `margin(x) > 0`.
#[derive(Clone)]
pub struct Region {
    dim: usize,
    label: String,
    margin: Arc<MarginFn>,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region({}, dim {})", self.label, self.dim)
    }
}

impl Region {
    pub fn new(dim: usize, label: impl Into<String>, margin: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self { dim, label: label.into(), margin: Arc::new(margin) }
    }

    pub fn whole(dim: usize) -> Self {
        Self::new(dim, "whole", |_| f64::INFINITY)
    }

    /// Open max-norm ball `{ |x - c|∞ < r }`.
    pub fn cube(center: Vec<f64>, radius: f64) -> Self {
        let dim = center.len();
        Self::new(dim, format!("cube(r={radius})"), move |x| {
            radius - x.iter().zip(&center).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
        })
    }

    /// Open interval `(a, b)` in ℝ.
    pub fn interval(a: f64, b: f64) -> Self {
        Self::new(1, format!("({a}, {b})"), move |x| (x[0] - a).min(b - x[0]))
    }

    /// `ℝ^m ∖ {0}`; the max-norm ball of radius `|x|∞` misses the origin.
    pub fn punctured(dim: usize) -> Self {
        Self::new(dim, "punctured", max_norm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn margin(&self, x: &[f64]) -> f64 {
        (self.margin)(x)
    }

    #[inline]
    pub fn contains(&self, x: &[f64]) -> bool {
        self.margin(x) > 0.0
    }

    /// Pointwise minimum of margins.
    pub fn intersect(&self, other: &Region) -> Region {
        let (a, b) = (self.margin.clone(), other.margin.clone());
        Region::new(self.dim, format!("{}∩{}", self.label, other.label), move |x| a(x).min(b(x)))
    }
}

/// Smooth map between open subsets of Euclidean spaces.
#[derive(Clone)]
pub struct SmoothMap {
    dim_in: usize,
    dim_out: usize,
    domain: Region,
    f: Arc<EvalFn>,
    jac: Option<Arc<JacFn>>,
    linear: Option<Matrix>,
    piecewise_affine: bool,
}

impl fmt::Debug for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothMap({} -> {}, domain {:?})", self.dim_in, self.dim_out, self.domain)
    }
}

impl SmoothMap {
    pub fn new(
        dim_in: usize,
        dim_out: usize,
        domain: Region,
        f: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    ) -> Self {
        Self { dim_in, dim_out, domain, f: Arc::new(f), jac: None, linear: None, piecewise_affine: false }
    }

    pub fn with_jacobian(mut self, jac: impl Fn(&[f64], &mut Matrix) + Send + Sync + 'static) -> Self {
        self.jac = Some(Arc::new(jac));
        self
    }

    /// Declare the map affine on each connected component of its domain.
    pub fn piecewise_affine(mut self) -> Self {
        self.piecewise_affine = true;
        self
    }

    /// True for maps that are affine on each component of their domain.
    pub fn is_piecewise_affine(&self) -> bool {
        self.piecewise_affine || self.linear.is_some()
    }

    /// `x ↦ A x + b` restricted to `domain`.
    pub fn affine(a: Matrix, b: Vec<f64>, domain: Region) -> Self {
        let (dim_out, dim_in) = a.shape();
        let m = a.clone();
        let mut map = Self::new(dim_in, dim_out, domain, move |x, out| {
            mat_vec_into(&m, x, out);
            out.iter_mut().zip(&b).for_each(|(o, c)| *o += c);
        });
        let jac = a.clone();
        map.jac = Some(Arc::new(move |_, out: &mut Matrix| out.copy_from(&jac)));
        map.linear = Some(a);
        map
    }

    pub fn identity(dim: usize) -> Self {
        Self::affine(Matrix::identity(dim, dim), vec![0.0; dim], Region::whole(dim))
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    /// Constant Jacobian when the map is affine.
    pub fn linear_part(&self) -> Option<&Matrix> {
        self.linear.as_ref()
    }

    pub fn has_analytic_jacobian(&self) -> bool {
        self.jac.is_some()
    }

    #[inline]
    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim_out];
        (self.f)(x, &mut out);
        out
    }

    /// Evaluate, failing when `x` is outside the domain.
    pub fn try_eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        if !self.domain.contains(x) {
            return Err(Error::ImageEscapes { point: x.to_vec() });
        }
        Ok(self.eval(x))
    }

    pub fn jacobian(&self, x: &[f64]) -> Matrix {
        let mut out = Matrix::zeros(self.dim_out, self.dim_in);
        self.jacobian_into(x, &mut out);
        out
    }

    pub fn jacobian_into(&self, x: &[f64], out: &mut Matrix) {
        match &self.jac {
            Some(j) => j(x, out),
            None => self.fd_jacobian_into(x, out),
        }
    }

    /// Central differences with `h = 1e-5 (1 + |x|∞)`; accuracy order 2.
    pub fn fd_jacobian(&self, x: &[f64]) -> Matrix {
        let mut out = Matrix::zeros(self.dim_out, self.dim_in);
        self.fd_jacobian_into(x, &mut out);
        out
    }

    fn fd_jacobian_into(&self, x: &[f64], out: &mut Matrix) {
        let h = 1e-5 * (1.0 + max_norm(x));
        let mut xp = x.to_vec();
        let mut fp = vec![0.0; self.dim_out];
        let mut fm = vec![0.0; self.dim_out];
        for c in 0..self.dim_in {
            xp[c] = x[c] + h;
            (self.f)(&xp, &mut fp);
            xp[c] = x[c] - h;
            (self.f)(&xp, &mut fm);
            xp[c] = x[c];
            for r in 0..self.dim_out {
                out[(r, c)] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
    }
}

/// Matrix-valued smooth field on an open set, e.g. a bundle cocycle.
#[derive(Clone)]
pub struct MatrixField {
    rows: usize,
    cols: usize,
    domain: Region,
    f: Arc<MatFn>,
    kind: FieldKind,
}

#[derive(Clone, Debug)]
enum FieldKind {
    General,
    Constant,
    LocallyConstant,
}

impl fmt::Debug for MatrixField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixField({}x{}, domain {:?})", self.rows, self.cols, self.domain)
    }
}

impl MatrixField {
    pub fn new(rows: usize, cols: usize, domain: Region, f: impl Fn(&[f64]) -> Matrix + Send + Sync + 'static) -> Self {
        Self { rows, cols, domain, f: Arc::new(f), kind: FieldKind::General }
    }

    pub fn constant(m: Matrix, domain: Region) -> Self {
        let (rows, cols) = m.shape();
        Self { rows, cols, domain, f: Arc::new(move |_| m.clone()), kind: FieldKind::Constant }
    }

    /// Locally constant field: `pick(x)` selects one of finitely many matrices.
    pub fn locally_constant(mats: Vec<Matrix>, domain: Region, pick: impl Fn(&[f64]) -> usize + Send + Sync + 'static) -> Self {
        let (rows, cols) = mats[0].shape();
        Self { rows, cols, domain, f: Arc::new(move |x| mats[pick(x)].clone()), kind: FieldKind::LocallyConstant }
    }

    /// The Jacobian field of a smooth map.
    pub fn jacobian_of(map: &SmoothMap) -> Self {
        let m = map.clone();
        let mut field = Self::new(map.dim_out(), map.dim_in(), map.domain().clone(), move |x| m.jacobian(x));
        if map.linear_part().is_some() {
            field.kind = FieldKind::Constant;
        } else if map.is_piecewise_affine() {
            field.kind = FieldKind::LocallyConstant;
        }
        field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    /// True when the field is constant on every connected component of its domain.
    pub fn is_locally_constant(&self) -> bool {
        !matches!(self.kind, FieldKind::General)
    }

    pub fn eval(&self, x: &[f64]) -> Matrix {
        (self.f)(x)
    }

    pub fn try_eval(&self, x: &[f64]) -> Result<Matrix> {
        if !self.domain.contains(x) {
            return Err(Error::ImageEscapes { point: x.to_vec() });
        }
        Ok(self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_jacobian_matches_analytic() {
        let f = SmoothMap::new(2, 2, Region::punctured(2), |x, o| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            o[0] = x[0] / r2;
            o[1] = x[1] / r2;
        });
        let x = [0.7, -0.4];
        let j = f.fd_jacobian(&x);
        let r2: f64 = 0.49 + 0.16;
        let exact = Matrix::from_fn(2, 2, |i, k| {
            let d = if i == k { 1.0 } else { 0.0 };
            (d * r2 - 2.0 * x[i] * x[k]) / (r2 * r2)
        });
        assert!((j - exact).abs().max() < 1e-9);
    }

    #[test]
    fn regions_report_margins() {
        let c = Region::cube(vec![0.0, 0.0], 2.0);
        assert_eq!(c.margin(&[1.0, -0.5]), 1.0);
        assert!(!c.contains(&[2.0, 0.0]));
        let p = Region::punctured(2);
        assert!(!p.contains(&[0.0, 0.0]));
        assert_eq!(Region::interval(0.0, 3.0).margin(&[1.0]), 1.0);
    }

    #[test]
    fn affine_map_has_constant_jacobian() {
        let a = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let f = SmoothMap::affine(a.clone(), vec![1.0, 2.0], Region::whole(2));
        assert_eq!(f.eval(&[1.0, 0.0]), vec![1.0, 3.0]);
        assert_eq!(f.jacobian(&[5.0, 5.0]), a);
        assert!(f.linear_part().is_some());
    }
}
