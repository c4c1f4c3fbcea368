//! Small dense helpers. Points of ℝ^d are plain `f64` slices; matrices are
//! `nalgebra::DMatrix`. All norms are max-coordinate norms and the matching
//! induced (row-sum) operator norms.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;

pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Operator norm induced by the max-coordinate norm (maximum absolute row sum).
pub fn op_norm(m: &Matrix) -> f64 {
    (0..m.nrows())
        .map(|r| m.row(r).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn mat_vec(m: &Matrix, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m.nrows()];
    mat_vec_into(m, v, &mut out);
    out
}

pub fn mat_vec_into(m: &Matrix, v: &[f64], out: &mut [f64]) {
    debug_assert_eq!(m.ncols(), v.len());
    for (r, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (c, x) in v.iter().enumerate() {
            acc += m[(r, c)] * x;
        }
        *o = acc;
    }
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if m.nrows() == 1 && m.ncols() == 1 {
        let a = m[(0, 0)];
        if a == 0.0 || !a.is_finite() {
            return Err(Error::Singular);
        }
        return Ok(Matrix::from_element(1, 1, 1.0 / a));
    }
    m.clone().try_inverse().ok_or(Error::Singular)
}

/// Rows of `m` as nested vectors, for JSON export.
pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

pub fn from_rows(rows: &[Vec<f64>]) -> Result<Matrix> {
    let n = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != c) {
        return Err(Error::InvalidCurve("ragged matrix rows".into()));
    }
    Ok(Matrix::from_fn(n, c, |i, j| rows[i][j]))
}
