use crate::error::{Error, Result};
use crate::linalg::{mat_vec_into, max_norm, Matrix};

use super::step::affine_coeffs;
use super::{Interval, StepCurve};

/// Continuous piecewise-linear curve, given by its values at the knots.
/// Used as the top derivative of curves in `C^k` mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PlCurve {
    domain: Interval,
    dim: usize,
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PlCurve {
    pub fn new(knots: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let dim = values.first().map_or(0, Vec::len);
        if values.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidCurve("values of unequal dimension".into()));
        }
        Self::from_flat(dim, knots, values.concat())
    }

    pub fn from_flat(dim: usize, knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if dim == 0 || knots.len() < 2 || values.len() != knots.len() * dim {
            return Err(Error::InvalidCurve(format!(
                "{} knots need as many values of dimension {dim}",
                knots.len()
            )));
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) || knots.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidCurve("knots must be finite and strictly increasing".into()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCurve("non-finite value".into()));
        }
        let domain = Interval::new(knots[0], *knots.last().unwrap())?;
        Ok(Self { domain, dim, knots, values })
    }

    pub fn constant(domain: Interval, value: &[f64]) -> Self {
        Self { domain, dim: value.len(), knots: vec![domain.lo(), domain.hi()], values: [value, value].concat() }
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn num_pieces(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn knot_value(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn knot_values(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Slope on piece `i`.
    pub fn slope(&self, i: usize) -> Vec<f64> {
        let h = self.knots[i + 1] - self.knots[i];
        self.knot_value(i + 1).iter().zip(self.knot_value(i)).map(|(b, a)| (b - a) / h).collect()
    }

    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        self.domain.check(t)?;
        let i = self.knots.partition_point(|&k| k <= t).saturating_sub(1).min(self.num_pieces() - 1);
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let w = (t - t0) / (t1 - t0);
        Ok(self.knot_value(i).iter().zip(self.knot_value(i + 1)).map(|(a, b)| a + w * (b - a)).collect())
    }

    /// The sup is attained at a knot.
    pub fn sup_norm(&self) -> f64 {
        max_norm(&self.values)
    }

    /// Derivative as a step curve.
    pub fn derivative(&self) -> Result<StepCurve> {
        let n = self.num_pieces();
        let flat: Vec<f64> = (0..n).flat_map(|i| self.slope(i)).collect();
        StepCurve::from_flat(self.dim, self.knots.clone(), flat)
    }

    pub fn restrict(&self, j: Interval) -> Result<PlCurve> {
        if !self.domain.contains_interval(&j) {
            return Err(Error::DomainMismatch(format!(
                "[{}, {}] is not contained in [{}, {}]",
                j.lo(),
                j.hi(),
                self.domain.lo(),
                self.domain.hi()
            )));
        }
        let mut knots = vec![j.lo()];
        let mut values = self.eval(j.lo())?;
        for (i, &k) in self.knots.iter().enumerate() {
            if k > j.lo() && k < j.hi() {
                knots.push(k);
                values.extend_from_slice(self.knot_value(i));
            }
        }
        knots.push(j.hi());
        values.extend(self.eval(j.hi())?);
        Self::from_flat(self.dim, knots, values)
    }

    pub fn linear_push(&self, a: &Matrix) -> Result<PlCurve> {
        if a.ncols() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: a.ncols() });
        }
        let mut out = vec![0.0; a.nrows()];
        let mut values = Vec::with_capacity(self.knots.len() * a.nrows());
        for v in self.knot_values() {
            mat_vec_into(a, v, &mut out);
            values.extend_from_slice(&out);
        }
        Self::from_flat(a.nrows(), self.knots.clone(), values)
    }

    /// Affine pullback onto `target`, values scaled by `scale`.
    pub(crate) fn reparametrize_scaled(&self, target: Interval, scale: f64) -> Result<PlCurve> {
        let (a, b) = affine_coeffs(self.domain, target);
        let last = self.knots.len() - 1;
        let knots = self
            .knots
            .iter()
            .enumerate()
            .map(|(i, &t)| match i {
                0 => target.lo(),
                _ if i == last => target.hi(),
                _ => (t - a) / b,
            })
            .collect();
        Self::from_flat(self.dim, knots, self.values.iter().map(|x| x * scale).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_between_knots() {
        let c = PlCurve::new(vec![0.0, 1.0, 2.0], vec![vec![0.0], vec![2.0], vec![1.0]]).unwrap();
        assert_eq!(c.eval(0.5).unwrap(), vec![1.0]);
        assert_eq!(c.eval(1.5).unwrap(), vec![1.5]);
        assert_eq!(c.eval(2.0).unwrap(), vec![1.0]);
        assert_eq!(c.sup_norm(), 2.0);
        assert_eq!(c.derivative().unwrap().values_flat(), &[2.0, -1.0]);
    }

    #[test]
    fn restriction_interpolates_ends() {
        let c = PlCurve::new(vec![0.0, 1.0, 2.0], vec![vec![0.0], vec![2.0], vec![1.0]]).unwrap();
        let r = c.restrict(Interval::new(0.5, 1.5).unwrap()).unwrap();
        assert_eq!(r.knots(), &[0.5, 1.0, 1.5]);
        assert_eq!(r.sup_norm(), 2.0);
        assert_eq!(c.restrict(c.domain()).unwrap(), c);
    }
}
