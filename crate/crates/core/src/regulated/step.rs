use crate::error::{Error, Result};
use crate::linalg::{mat_vec_into, max_norm, Matrix};

use super::Interval;

/// Piecewise-constant càdlàg curve in ℝ^d.
///
/// On `[t_{i-1}, t_i)` the curve takes the value `v_i`; at the right endpoint of
/// the domain it takes the last value (left-continuity at `hi`). Adjacent
/// values always differ, so two curves are equal iff their data are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCurve {
    domain: Interval,
    dim: usize,
    breaks: Vec<f64>,
    values: Vec<f64>,
}

/// Incremental construction of a canonical [`StepCurve`].
pub struct StepBuilder {
    lo: f64,
    dim: usize,
    breaks: Vec<f64>,
    values: Vec<f64>,
}

impl StepBuilder {
    pub fn new(lo: f64, dim: usize) -> Self {
        Self { lo, dim, breaks: vec![lo], values: Vec::new() }
    }

    pub fn with_capacity(lo: f64, dim: usize, pieces: usize) -> Self {
        let mut breaks = Vec::with_capacity(pieces + 1);
        breaks.push(lo);
        Self { lo, dim, breaks, values: Vec::with_capacity(pieces * dim) }
    }

    /// Append a piece ending at `end` with value `v`. Zero-length pieces are dropped.
    pub fn push(&mut self, end: f64, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: v.len() });
        }
        let start = *self.breaks.last().unwrap();
        if !(end >= start) {
            return Err(Error::InvalidCurve(format!("breakpoint {end} precedes {start}")));
        }
        if end == start {
            return Ok(());
        }
        let n = self.breaks.len() - 1;
        if n > 0 && &self.values[(n - 1) * self.dim..] == v {
            *self.breaks.last_mut().unwrap() = end;
        } else {
            self.breaks.push(end);
            self.values.extend_from_slice(v);
        }
        Ok(())
    }

    pub fn finish(self) -> Result<StepCurve> {
        let hi = *self.breaks.last().unwrap();
        let domain = Interval::new(self.lo, hi)?;
        Ok(StepCurve { domain, dim: self.dim, breaks: self.breaks, values: self.values })
    }
}

impl StepCurve {
    /// Build from breakpoints `t_0 < … < t_n` and `n` values.
    pub fn new(breaks: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let dim = values.first().map_or(0, Vec::len);
        let flat: Vec<f64> = values.iter().flat_map(|v| v.iter().copied()).collect();
        if values.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidCurve("values of unequal dimension".into()));
        }
        Self::from_flat(dim, breaks, flat)
    }

    pub fn from_flat(dim: usize, breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidCurve("step curve of dimension 0".into()));
        }
        let n = breaks.len().saturating_sub(1);
        if n == 0 || values.len() != n * dim {
            return Err(Error::InvalidCurve(format!(
                "{} breakpoints need {} values of dimension {dim}",
                breaks.len(),
                n
            )));
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) || breaks.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidCurve("breakpoints must be finite and strictly increasing".into()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCurve("non-finite value".into()));
        }
        let mut b = StepBuilder::with_capacity(breaks[0], dim, n);
        for i in 0..n {
            b.push(breaks[i + 1], &values[i * dim..(i + 1) * dim])?;
        }
        b.finish()
    }

    pub fn constant(domain: Interval, value: &[f64]) -> Self {
        Self { domain, dim: value.len(), breaks: vec![domain.lo(), domain.hi()], values: value.to_vec() }
    }

    pub fn zero(domain: Interval, dim: usize) -> Self {
        Self::constant(domain, &vec![0.0; dim])
    }

    #[inline]
    pub fn domain(&self) -> Interval {
        self.domain
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn num_pieces(&self) -> usize {
        self.breaks.len() - 1
    }

    #[inline]
    pub fn value(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn values_flat(&self) -> &[f64] {
        &self.values
    }

    pub fn values(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Pieces as `(interval, value)` pairs.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, &[f64])> + '_ {
        self.breaks.windows(2).zip(self.values()).map(|(w, v)| (w[0], w[1], v))
    }

    /// Index of the piece that holds the value at `t` (right piece at a breakpoint,
    /// last piece at the right endpoint).
    #[inline]
    pub fn piece_index(&self, t: f64) -> usize {
        let n = self.num_pieces();
        let idx = self.breaks.partition_point(|&b| b <= t);
        idx.saturating_sub(1).min(n - 1)
    }

    pub fn eval(&self, t: f64) -> Result<&[f64]> {
        self.domain.check(t)?;
        Ok(self.value(self.piece_index(t)))
    }

    /// `lim_{s→t⁻} c(s)` for `t > lo`.
    pub fn left_limit(&self, t: f64) -> Result<&[f64]> {
        if !(t > self.domain.lo() && t <= self.domain.hi()) {
            return Err(Error::OutOfDomain { t, lo: self.domain.lo(), hi: self.domain.hi() });
        }
        let idx = self.breaks.partition_point(|&b| b < t);
        Ok(self.value(idx - 1))
    }

    pub fn sup_norm(&self) -> f64 {
        max_norm(&self.values)
    }

    /// Concatenation with a curve on the adjacent interval `[b, c]`.
    pub fn concat(&self, other: &StepCurve) -> Result<StepCurve> {
        Self::concat_all(&[self.clone(), other.clone()])
    }

    pub fn concat_all(curves: &[StepCurve]) -> Result<StepCurve> {
        let first = curves.first().ok_or_else(|| Error::InvalidCurve("nothing to concatenate".into()))?;
        let dim = first.dim;
        let total: usize = curves.iter().map(StepCurve::num_pieces).sum();
        let mut b = StepBuilder::with_capacity(first.domain.lo(), dim, total);
        let mut end = first.domain.lo();
        for c in curves {
            if c.dim != dim {
                return Err(Error::Dimension { expected: dim, found: c.dim });
            }
            if c.domain.lo() != end {
                return Err(Error::DomainMismatch(format!(
                    "concatenation needs adjacent domains: {end} vs {}",
                    c.domain.lo()
                )));
            }
            for (_, hi, v) in c.pieces() {
                b.push(hi, v)?;
            }
            end = c.domain.hi();
        }
        b.finish()
    }

    /// Restriction to `J ⊆ domain`; the value at `J.hi` is the left limit there.
    pub fn restrict(&self, j: Interval) -> Result<StepCurve> {
        if !self.domain.contains_interval(&j) {
            return Err(Error::DomainMismatch(format!(
                "[{}, {}] is not contained in [{}, {}]",
                j.lo(),
                j.hi(),
                self.domain.lo(),
                self.domain.hi()
            )));
        }
        if j == self.domain {
            return Ok(self.clone());
        }
        let first = self.piece_index(j.lo());
        let last = self.breaks.partition_point(|&b| b < j.hi()) - 1;
        let mut b = StepBuilder::with_capacity(j.lo(), self.dim, last + 1 - first);
        for i in first..=last {
            b.push(self.breaks[i + 1].min(j.hi()), self.value(i))?;
        }
        b.finish()
    }

    /// `t ↦ A c(t)` for a `d' × d` matrix.
    pub fn linear_push(&self, a: &Matrix) -> Result<StepCurve> {
        if a.ncols() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: a.ncols() });
        }
        let out_dim = a.nrows();
        let mut out = vec![0.0; out_dim];
        let mut b = StepBuilder::with_capacity(self.domain.lo(), out_dim, self.num_pieces());
        for (_, hi, v) in self.pieces() {
            mat_vec_into(a, v, &mut out);
            b.push(hi, &out)?;
        }
        b.finish()
    }

    /// Pointwise application of a map to every value.
    pub fn map_values<F>(&self, out_dim: usize, mut f: F) -> Result<StepCurve>
    where
        F: FnMut(&[f64]) -> Result<Vec<f64>>,
    {
        let mut b = StepBuilder::with_capacity(self.domain.lo(), out_dim, self.num_pieces());
        for (_, hi, v) in self.pieces() {
            b.push(hi, &f(v)?)?;
        }
        b.finish()
    }

    /// `∫_a^b c(t) dt` (negated when `a > b`).
    pub fn integral(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        self.domain.check(a)?;
        self.domain.check(b)?;
        let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
        let mut acc = vec![0.0; self.dim];
        if lo == hi {
            return Ok(acc);
        }
        let first = self.piece_index(lo);
        for i in first..self.num_pieces() {
            let s = self.breaks[i].max(lo);
            let e = self.breaks[i + 1].min(hi);
            if s >= hi {
                break;
            }
            let w = e - s;
            for (acc, v) in acc.iter_mut().zip(self.value(i)) {
                *acc += v * w;
            }
        }
        acc.iter_mut().for_each(|x| *x *= sign);
        Ok(acc)
    }

    /// Pull back along the increasing affine map from `target` onto the domain.
    pub fn reparametrize_affine(&self, target: Interval) -> Result<StepCurve> {
        let (a, b) = affine_coeffs(self.domain, target);
        let breaks: Vec<f64> = self
            .breaks
            .iter()
            .enumerate()
            .map(|(i, &t)| match i {
                0 => target.lo(),
                _ if i == self.breaks.len() - 1 => target.hi(),
                _ => (t - a) / b,
            })
            .collect();
        Self::from_flat(self.dim, breaks, self.values.clone())
    }

    /// Breakpoints merged with `extra` (inside the domain); values unchanged.
    /// The result is generally not canonical and is intended for iteration only.
    pub fn cells_with(&self, extra: &[f64]) -> Vec<(f64, f64, usize)> {
        let mut pts: Vec<f64> = self
            .breaks
            .iter()
            .copied()
            .chain(extra.iter().copied().filter(|t| self.domain.lo() < *t && *t < self.domain.hi()))
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts.windows(2).map(|w| (w[0], w[1], self.piece_index(w[0]))).collect()
    }
}

/// `Σ w_i c_i` over the common refinement of all breakpoints.
pub fn lin_comb(terms: &[(f64, &StepCurve)]) -> Result<StepCurve> {
    let (_, first) = *terms.first().ok_or_else(|| Error::InvalidCurve("empty combination".into()))?;
    let (domain, dim) = (first.domain, first.dim);
    for (_, c) in terms {
        if c.domain != domain {
            return Err(Error::DomainMismatch("combination of curves on different domains".into()));
        }
        if c.dim != dim {
            return Err(Error::Dimension { expected: dim, found: c.dim });
        }
    }
    let mut cuts: Vec<f64> = terms.iter().flat_map(|(_, c)| c.breaks.iter().copied()).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut idx = vec![0usize; terms.len()];
    let mut b = StepBuilder::with_capacity(domain.lo(), dim, cuts.len());
    let mut v = vec![0.0; dim];
    for w in cuts.windows(2) {
        v.iter_mut().for_each(|x| *x = 0.0);
        for ((wt, c), i) in terms.iter().zip(idx.iter_mut()) {
            while c.breaks[*i + 1] <= w[0] {
                *i += 1;
            }
            for (o, x) in v.iter_mut().zip(c.value(*i)) {
                *o += wt * x;
            }
        }
        b.push(w[1], &v)?;
    }
    b.finish()
}

/// `sup_t |a(t) - b(t)|`.
pub fn sup_distance(a: &StepCurve, b: &StepCurve) -> Result<f64> {
    Ok(lin_comb(&[(1.0, a), (-1.0, b)])?.sup_norm())
}

/// `(a, b)` with `h(s) = a + b s` mapping `target` increasingly onto `domain`.
pub(crate) fn affine_coeffs(domain: Interval, target: Interval) -> (f64, f64) {
    let b = domain.len() / target.len();
    let a = domain.lo() - b * target.lo();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_step() -> StepCurve {
        StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![2.0]]).unwrap()
    }

    #[test]
    fn right_continuous_with_left_continuous_endpoint() {
        let c = two_step();
        assert_eq!(c.eval(0.5).unwrap(), &[2.0]);
        assert_eq!(c.eval(1.0).unwrap(), &[2.0]);
        assert_eq!(c.eval(0.0).unwrap(), &[1.0]);
        assert_eq!(c.left_limit(0.5).unwrap(), &[1.0]);
        assert!(c.eval(1.5).is_err());
    }

    #[test]
    fn canonical_form_merges_equal_neighbours() {
        let c = StepCurve::new(vec![0.0, 0.3, 0.6, 1.0], vec![vec![1.0], vec![1.0], vec![2.0]]).unwrap();
        assert_eq!(c.breaks(), &[0.0, 0.6, 1.0]);
        assert_eq!(c, StepCurve::new(vec![0.0, 0.6, 1.0], vec![vec![1.0], vec![2.0]]).unwrap());
    }

    #[test]
    fn norm_is_max_abs_value() {
        let c = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![-3.0], vec![2.0]]).unwrap();
        assert_eq!(c.sup_norm(), 3.0);
    }

    #[test]
    fn concat_norm_and_junction_value() {
        let c1 = StepCurve::new(vec![0.0, 0.25, 0.5], vec![vec![1.0], vec![3.0]]).unwrap();
        let c2 = StepCurve::constant(Interval::new(0.5, 1.0).unwrap(), &[2.0]);
        let c = c1.concat(&c2).unwrap();
        assert_eq!(c.sup_norm(), 3.0);
        assert_eq!(c.eval(0.5).unwrap(), &[2.0]);
        assert_eq!(c.restrict(Interval::new(0.0, 0.5).unwrap()).unwrap(), c1);
        assert_eq!(c.restrict(Interval::new(0.5, 1.0).unwrap()).unwrap(), c2);
        assert!(c1.concat(&c1).is_err());
    }

    #[test]
    fn restriction_takes_left_limit_at_right_end() {
        let c = two_step();
        let r = c.restrict(Interval::new(0.0, 0.5).unwrap()).unwrap();
        assert_eq!(r.eval(0.5).unwrap(), &[1.0]);
        assert_eq!(c.restrict(c.domain()).unwrap(), c);
        let neg = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![-3.0], vec![2.0]]).unwrap();
        assert_eq!(neg.restrict(Interval::new(0.1, 0.4).unwrap()).unwrap().sup_norm(), 3.0);
        assert!(c.restrict(Interval::new(0.5, 1.5).unwrap()).is_err());
    }

    #[test]
    fn linear_push_scales_values() {
        let c = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![3.0]]).unwrap();
        let twice = c.linear_push(&Matrix::from_element(1, 1, 2.0)).unwrap();
        assert_eq!(twice.values_flat(), &[2.0, 6.0]);
        let zero = c.linear_push(&Matrix::zeros(2, 1)).unwrap();
        assert_eq!(zero, StepCurve::zero(c.domain(), 2));
        assert!(c.linear_push(&Matrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn combinations_use_the_common_refinement() {
        let a = two_step();
        let b = StepCurve::new(vec![0.0, 0.25, 1.0], vec![vec![0.0], vec![1.0]]).unwrap();
        let d = lin_comb(&[(1.0, &a), (-1.0, &b)]).unwrap();
        assert_eq!(d.breaks(), &[0.0, 0.25, 0.5, 1.0]);
        assert_eq!(d.values_flat(), &[1.0, 0.0, 1.0]);
        assert_eq!(sup_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn integral_over_subintervals() {
        let c = two_step();
        assert_eq!(c.integral(0.0, 1.0).unwrap(), vec![1.5]);
        assert_eq!(c.integral(0.25, 0.75).unwrap(), vec![0.75]);
        assert_eq!(c.integral(0.75, 0.25).unwrap(), vec![-0.75]);
    }

    #[test]
    fn affine_reparametrization_moves_breakpoints() {
        let c = StepCurve::new(vec![2.0, 3.0, 4.0], vec![vec![1.0], vec![2.0]]).unwrap();
        let r = c.reparametrize_affine(Interval::unit()).unwrap();
        assert_eq!(r.breaks(), &[0.0, 0.5, 1.0]);
        assert_eq!(r.reparametrize_affine(c.domain()).unwrap(), c);
    }
}
