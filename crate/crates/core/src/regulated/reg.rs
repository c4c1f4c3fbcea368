use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::poly;
use super::step::affine_coeffs;
use super::{Interval, PlCurve, StepCurve};

/// Regularity of the top derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Top derivative is a step curve.
    Regulated,
    /// Top derivative is continuous piecewise linear.
    Ck,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Top {
    Step(StepCurve),
    Linear(PlCurve),
}

impl Top {
    pub fn domain(&self) -> Interval {
        match self {
            Top::Step(c) => c.domain(),
            Top::Linear(c) => c.domain(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Top::Step(c) => c.dim(),
            Top::Linear(c) => c.dim(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Top::Step(_) => Mode::Regulated,
            Top::Linear(_) => Mode::Ck,
        }
    }

    pub fn breaks(&self) -> &[f64] {
        match self {
            Top::Step(c) => c.breaks(),
            Top::Linear(c) => c.knots(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        match self {
            Top::Step(c) => c.sup_norm(),
            Top::Linear(c) => c.sup_norm(),
        }
    }

    fn restrict(&self, j: Interval) -> Result<Top> {
        Ok(match self {
            Top::Step(c) => Top::Step(c.restrict(j)?),
            Top::Linear(c) => Top::Linear(c.restrict(j)?),
        })
    }

    fn linear_push(&self, a: &Matrix) -> Result<Top> {
        Ok(match self {
            Top::Step(c) => Top::Step(c.linear_push(a)?),
            Top::Linear(c) => Top::Linear(c.linear_push(a)?),
        })
    }
}

/// Anchored Taylor data per piece: `d[i][j]` is the `j`-th derivative at
/// `anchors[i]`, so piece `i` of the `l`-th derivative is
/// `Σ_{j≥l} d[i][j] (t - anchors[i])^{j-l} / (j-l)!`.
///
/// Restriction keeps the parent's anchors, so a restricted curve evaluates
/// bit-identically to its parent.
#[derive(Debug, Clone)]
struct Pieces {
    deg: usize,
    dim: usize,
    breaks: Vec<f64>,
    anchors: Vec<f64>,
    coeffs: Vec<f64>,
}

impl Pieces {
    #[inline]
    fn stride(&self) -> usize {
        (self.deg + 1) * self.dim
    }

    #[inline]
    fn data(&self, i: usize) -> &[f64] {
        let s = self.stride();
        &self.coeffs[i * s..(i + 1) * s]
    }

    #[inline]
    fn index(&self, t: f64) -> usize {
        let n = self.anchors.len();
        self.breaks.partition_point(|&b| b <= t).saturating_sub(1).min(n - 1)
    }

    /// Level-`l` polynomial of piece `i`, coordinate `r`, in powers of `t - anchor`.
    fn level_poly(&self, i: usize, l: usize, r: usize, out: &mut Vec<f64>) {
        out.clear();
        let d = self.data(i);
        let mut fact = 1.0;
        for (m, j) in (l..=self.deg).enumerate() {
            if m > 0 {
                fact *= m as f64;
            }
            out.push(d[j * self.dim + r] / fact);
        }
    }

    fn build(k: usize, jet: &[f64], top: &Top) -> Pieces {
        let dim = top.dim();
        let deg = match top {
            Top::Step(_) => k,
            Top::Linear(_) => k + 1,
        };
        let breaks = top.breaks().to_vec();
        let n = breaks.len() - 1;
        let stride = (deg + 1) * dim;
        let mut coeffs = vec![0.0; n * stride];
        let mut cur = vec![0.0; stride];
        cur[..k * dim].copy_from_slice(jet);
        let mut pieces = Pieces { deg, dim, breaks, anchors: Vec::with_capacity(n), coeffs: Vec::new() };
        let mut tmp = vec![0.0; dim];
        for i in 0..n {
            match top {
                Top::Step(c) => cur[k * dim..].copy_from_slice(c.value(i)),
                Top::Linear(c) => {
                    cur[k * dim..(k + 1) * dim].copy_from_slice(c.knot_value(i));
                    cur[(k + 1) * dim..].copy_from_slice(&c.slope(i));
                }
            }
            coeffs[i * stride..(i + 1) * stride].copy_from_slice(&cur);
            pieces.anchors.push(pieces.breaks[i]);
            if i + 1 < n {
                let h = pieces.breaks[i + 1] - pieces.breaks[i];
                for l in 0..k {
                    taylor_level(&cur, deg, dim, l, h, &mut tmp);
                    cur[l * dim..(l + 1) * dim].copy_from_slice(&tmp);
                }
            }
        }
        pieces.coeffs = coeffs;
        pieces
    }

    fn restrict(&self, j: Interval) -> Pieces {
        let first = self.index(j.lo());
        let last = self.breaks.partition_point(|&b| b < j.hi()) - 1;
        let mut breaks = Vec::with_capacity(last - first + 2);
        breaks.push(j.lo());
        breaks.extend_from_slice(&self.breaks[first + 1..=last]);
        breaks.push(j.hi());
        let s = self.stride();
        Pieces {
            deg: self.deg,
            dim: self.dim,
            breaks,
            anchors: self.anchors[first..=last].to_vec(),
            coeffs: self.coeffs[first * s..(last + 1) * s].to_vec(),
        }
    }

    /// Drop the level-0 data (derivative of the curve).
    fn shift(&self) -> Pieces {
        let s = self.stride();
        let coeffs = self.coeffs.chunks_exact(s).flat_map(|c| c[self.dim..].iter().copied()).collect();
        Pieces { deg: self.deg - 1, dim: self.dim, breaks: self.breaks.clone(), anchors: self.anchors.clone(), coeffs }
    }
}

/// `Σ_{j≥l} d[j] h^{j-l}/(j-l)!` for flat anchored data `d`.
#[inline]
fn taylor_level(d: &[f64], deg: usize, dim: usize, l: usize, h: f64, out: &mut [f64]) {
    for (r, o) in out.iter_mut().enumerate() {
        let mut acc = d[deg * dim + r];
        for j in (l..deg).rev() {
            acc = acc * h / ((j + 1 - l) as f64) + d[j * dim + r];
        }
        *o = acc;
    }
}

/// k-regulated curve: the `(k-1)`-jet at the left endpoint plus the `k`-th
/// derivative. Lower derivatives are exact iterated primitives of the top.
#[derive(Debug, Clone)]
pub struct RegCurve {
    k: usize,
    jet: Vec<f64>,
    top: Top,
    pieces: Pieces,
}

impl PartialEq for RegCurve {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.jet == other.jet && self.top == other.top
    }
}

impl RegCurve {
    pub fn new(k: usize, jet: Vec<Vec<f64>>, top: Top) -> Result<Self> {
        let dim = top.dim();
        if jet.len() != k {
            return Err(Error::InvalidCurve(format!("order {k} needs a jet of length {k}, got {}", jet.len())));
        }
        if let Some(v) = jet.iter().find(|v| v.len() != dim) {
            return Err(Error::Dimension { expected: dim, found: v.len() });
        }
        if jet.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCurve("non-finite jet".into()));
        }
        Ok(Self::from_flat(k, jet.concat(), top))
    }

    fn from_flat(k: usize, jet: Vec<f64>, top: Top) -> Self {
        let pieces = Pieces::build(k, &jet, &top);
        Self { k, jet, top, pieces }
    }

    pub fn from_step(c: StepCurve) -> Self {
        Self::from_flat(0, Vec::new(), Top::Step(c))
    }

    /// Constant curve of order `k` with value `x`.
    pub fn constant(domain: Interval, x: &[f64], k: usize) -> Self {
        let mut jet = vec![0.0; k * x.len()];
        if k > 0 {
            jet[..x.len()].copy_from_slice(x);
            Self::from_flat(k, jet, Top::Step(StepCurve::zero(domain, x.len())))
        } else {
            Self::from_step(StepCurve::constant(domain, x))
        }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.top.dim()
    }

    pub fn domain(&self) -> Interval {
        self.top.domain()
    }

    pub fn mode(&self) -> Mode {
        self.top.mode()
    }

    pub fn top(&self) -> &Top {
        &self.top
    }

    /// Top derivative as a step curve (regulated mode only).
    pub fn top_step(&self) -> Option<&StepCurve> {
        match &self.top {
            Top::Step(c) => Some(c),
            Top::Linear(_) => None,
        }
    }

    /// `c^{(l)}(t₀)` for `l < k`.
    pub fn jet(&self, l: usize) -> &[f64] {
        let d = self.dim();
        &self.jet[l * d..(l + 1) * d]
    }

    pub fn jet_vecs(&self) -> Vec<Vec<f64>> {
        self.jet.chunks_exact(self.dim().max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.anchors.len()
    }

    pub fn breaks(&self) -> &[f64] {
        &self.pieces.breaks
    }

    /// `c^{(l)}(t)`, right-continuous for `l = k` in regulated mode.
    pub fn eval(&self, t: f64, l: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.eval_into(t, l, &mut out)?;
        Ok(out)
    }

    pub fn eval_into(&self, t: f64, l: usize, out: &mut [f64]) -> Result<()> {
        if l > self.k {
            return Err(Error::Order { requested: l, available: self.k });
        }
        self.domain().check(t)?;
        let p = &self.pieces;
        let i = p.index(t);
        taylor_level(p.data(i), p.deg, p.dim, l, t - p.anchors[i], out);
        Ok(())
    }

    /// Value at the right endpoint (`l < k`), i.e. the end of the last piece.
    pub fn end_value(&self, l: usize) -> Result<Vec<f64>> {
        self.eval(self.domain().hi(), l)
    }

    /// `sup_t |c^{(l)}(t)|` computed from the endpoints and interior critical
    /// points of every polynomial piece.
    pub fn sup_level(&self, l: usize) -> Result<f64> {
        if l > self.k {
            return Err(Error::Order { requested: l, available: self.k });
        }
        if l == self.k {
            return Ok(self.top.sup_norm());
        }
        let p = &self.pieces;
        let mut m = 0.0_f64;
        let mut buf = Vec::with_capacity(p.deg + 1);
        for i in 0..p.anchors.len() {
            let (s0, s1) = (p.breaks[i] - p.anchors[i], p.breaks[i + 1] - p.anchors[i]);
            for r in 0..p.dim {
                p.level_poly(i, l, r, &mut buf);
                // the window never enters root finding
                let crit = poly::real_roots(&poly::derivative(&buf));
                let sup = sup_abs_taylor(p.data(i), p.deg, p.dim, l, r, &crit, s0, s1);
                m = m.max(sup);
            }
        }
        Ok(m)
    }

    /// `|||c|||^order = max_{l ≤ order} sup |c^{(l)}|`.
    pub fn norm(&self, order: usize) -> Result<f64> {
        if order > self.k {
            return Err(Error::Order { requested: order, available: self.k });
        }
        (0..=order).try_fold(0.0_f64, |m, l| Ok(m.max(self.sup_level(l)?)))
    }

    pub fn full_norm(&self) -> f64 {
        self.norm(self.k).expect("own order")
    }

    /// Primitive with initial value `x0`; order goes up by one.
    pub fn primitive(&self, x0: &[f64]) -> Result<RegCurve> {
        if x0.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: x0.len() });
        }
        let mut jet = Vec::with_capacity(self.jet.len() + x0.len());
        jet.extend_from_slice(x0);
        jet.extend_from_slice(&self.jet);
        Ok(Self::from_flat(self.k + 1, jet, self.top.clone()))
    }

    /// `c ↦ (c(t₀), c')`, the inverse of [`RegCurve::primitive`].
    pub fn derivative_split(&self) -> Result<(Vec<f64>, RegCurve)> {
        if self.k == 0 {
            return Err(Error::Order { requested: 1, available: 0 });
        }
        let d = self.dim();
        let head = self.jet[..d].to_vec();
        let rest = RegCurve { k: self.k - 1, jet: self.jet[d..].to_vec(), top: self.top.clone(), pieces: self.pieces.shift() };
        Ok((head, rest))
    }

    pub fn restrict(&self, j: Interval) -> Result<RegCurve> {
        if j == self.domain() {
            return Ok(self.clone());
        }
        let top = self.top.restrict(j)?;
        let d = self.dim();
        let mut jet = vec![0.0; self.jet.len()];
        for l in 0..self.k {
            self.eval_into(j.lo(), l, &mut jet[l * d..(l + 1) * d])?;
        }
        Ok(RegCurve { k: self.k, jet, top, pieces: self.pieces.restrict(j) })
    }

    pub fn linear_push(&self, a: &Matrix) -> Result<RegCurve> {
        let top = self.top.linear_push(a)?;
        let d = self.dim();
        let mut jet = vec![0.0; self.k * a.nrows()];
        for l in 0..self.k {
            crate::linalg::mat_vec_into(a, &self.jet[l * d..(l + 1) * d], &mut jet[l * a.nrows()..(l + 1) * a.nrows()]);
        }
        Ok(Self::from_flat(self.k, jet, top))
    }

    /// Pullback along the increasing affine map `target → domain`; the `l`-th
    /// derivative picks up the factor `slope^l`.
    pub fn reparametrize_affine(&self, target: Interval) -> Result<RegCurve> {
        let (_, b) = affine_coeffs(self.domain(), target);
        let d = self.dim().max(1);
        let jet = self
            .jet
            .chunks_exact(d)
            .enumerate()
            .flat_map(|(l, v)| v.iter().map(move |x| x * b.powi(l as i32)))
            .collect();
        let scale = b.powi(self.k as i32);
        let top = match &self.top {
            Top::Step(c) => {
                let r = c.reparametrize_affine(target)?;
                let vals = r.values_flat().iter().map(|x| x * scale).collect();
                Top::Step(StepCurve::from_flat(r.dim(), r.breaks().to_vec(), vals)?)
            }
            Top::Linear(c) => Top::Linear(c.reparametrize_scaled(target, scale)?),
        };
        Ok(Self::from_flat(self.k, jet, top))
    }
}

impl StepCurve {
    /// `t ↦ x0 + ∫_{t₀}^t c`.
    pub fn primitive(&self, x0: &[f64]) -> Result<RegCurve> {
        RegCurve::from_step(self.clone()).primitive(x0)
    }
}

#[allow(clippy::too_many_arguments)]
fn sup_abs_taylor(d: &[f64], deg: usize, dim: usize, l: usize, r: usize, crit: &[f64], s0: f64, s1: f64) -> f64 {
    let ev = |s: f64| {
        let mut acc = d[deg * dim + r];
        for j in (l..deg).rev() {
            acc = acc * s / ((j + 1 - l) as f64) + d[j * dim + r];
        }
        acc.abs()
    };
    let mut m = ev(s0).max(ev(s1));
    for &x in crit {
        if x > s0 && x < s1 {
            m = m.max(ev(x));
        }
    }
    m
}

#[derive(Serialize, Deserialize)]
pub(crate) struct StepRaw {
    breaks: Vec<f64>,
    values: Vec<Vec<f64>>,
}

impl Serialize for StepCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepRaw { breaks: self.breaks().to_vec(), values: self.values().map(<[f64]>::to_vec).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = StepRaw::deserialize(d)?;
        StepCurve::new(raw.breaks, raw.values).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RegRaw {
    domain: Interval,
    k: usize,
    jet: Vec<Vec<f64>>,
    top: StepRaw,
    mode: Mode,
}

impl Serialize for RegCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let top = match &self.top {
            Top::Step(c) => StepRaw { breaks: c.breaks().to_vec(), values: c.values().map(<[f64]>::to_vec).collect() },
            Top::Linear(c) => StepRaw { breaks: c.knots().to_vec(), values: c.knot_values().map(<[f64]>::to_vec).collect() },
        };
        RegRaw { domain: self.domain(), k: self.k, jet: self.jet_vecs(), top, mode: self.mode() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RegCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RegRaw::deserialize(d)?;
        let top = match raw.mode {
            Mode::Regulated => Top::Step(StepCurve::new(raw.top.breaks, raw.top.values).map_err(D::Error::custom)?),
            Mode::Ck => Top::Linear(PlCurve::new(raw.top.breaks, raw.top.values).map_err(D::Error::custom)?),
        };
        if top.domain() != raw.domain {
            return Err(D::Error::custom("domain does not match the top derivative's breakpoints"));
        }
        RegCurve::new(raw.k, raw.jet, top).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tent() -> RegCurve {
        StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![-1.0]]).unwrap().primitive(&[0.0]).unwrap()
    }

    #[test]
    fn eval_by_integration() {
        let c = StepCurve::constant(Interval::unit(), &[2.0]).primitive(&[1.0]).unwrap();
        assert_eq!(c.eval(0.5, 0).unwrap(), vec![2.0]);
        assert_eq!(c.eval(1.0, 0).unwrap(), vec![3.0]);
        assert_eq!(c.eval(0.3, 1).unwrap(), vec![2.0]);
        assert!(matches!(c.eval(0.3, 2), Err(Error::Order { .. })));
        assert!(matches!(c.eval(1.3, 0), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn tent_norm_against_dense_grid() {
        let c = tent();
        let mut grid = 0.0_f64;
        for j in 0..=10_000 {
            let t = j as f64 / 10_000.0;
            grid = grid.max(c.eval(t, 0).unwrap()[0].abs()).max(c.eval(t, 1).unwrap()[0].abs());
        }
        assert_eq!(c.norm(1).unwrap(), grid);
        assert_eq!(c.norm(1).unwrap(), 1.0);
        assert_eq!(c.sup_level(0).unwrap(), 0.5);
        assert_eq!(c.eval(0.5, 0).unwrap(), vec![0.5]);
    }

    #[test]
    fn norm_of_identity_line() {
        let c = StepCurve::constant(Interval::unit(), &[1.0]).primitive(&[0.0]).unwrap();
        assert_eq!(c.norm(1).unwrap(), 1.0);
        assert!(matches!(c.norm(2), Err(Error::Order { .. })));
    }

    #[test]
    fn second_order_sup_finds_interior_critical_point() {
        // c'' = -2, c'(0) = 1, c(0) = 0: c = t - t², max 1/4 at t = 1/2
        let c = StepCurve::constant(Interval::unit(), &[-2.0])
            .primitive(&[1.0])
            .unwrap()
            .primitive(&[0.0])
            .unwrap();
        assert_eq!(c.sup_level(0).unwrap(), 0.25);
        assert_eq!(c.norm(2).unwrap(), 2.0);
    }

    #[test]
    fn primitive_and_split_are_inverse() {
        let u = StepCurve::constant(Interval::unit(), &[2.0]);
        let c = u.primitive(&[1.0]).unwrap();
        let (x, d) = c.derivative_split().unwrap();
        assert_eq!(x, vec![1.0]);
        assert_eq!(d.top_step().unwrap(), &u);
        assert_eq!(d.primitive(&x).unwrap(), c);
        assert!(c.norm(1).unwrap() <= 2.0 * 3.0);
        assert!(matches!(RegCurve::from_step(u).derivative_split(), Err(Error::Order { .. })));
    }

    #[test]
    fn zero_step_integrates_to_constant() {
        let c = StepCurve::zero(Interval::unit(), 2).primitive(&[1.0, -2.0]).unwrap();
        assert_eq!(c, RegCurve::constant(Interval::unit(), &[1.0, -2.0], 1));
        assert_eq!(c.eval(0.7, 0).unwrap(), vec![1.0, -2.0]);
    }

    #[test]
    fn restriction_keeps_evaluations() {
        let c = tent();
        let j = Interval::new(0.25, 0.75).unwrap();
        let r = c.restrict(j).unwrap();
        for t in [0.25, 0.4, 0.5, 0.6, 0.75] {
            assert_eq!(r.eval(t, 0).unwrap(), c.eval(t, 0).unwrap());
        }
        assert_eq!(r.eval(0.75, 1).unwrap(), vec![-1.0]);
        assert_eq!(c.restrict(Interval::new(0.0, 0.5).unwrap()).unwrap().eval(0.5, 1).unwrap(), vec![1.0]);
        assert!(r.norm(1).unwrap() <= c.norm(1).unwrap());
        assert_eq!(c.restrict(c.domain()).unwrap(), c);
    }

    #[test]
    fn linear_push_commutes_with_primitive() {
        let u = StepCurve::new(vec![0.0, 0.25, 1.0], vec![vec![1.0, 2.0], vec![-3.0, 0.5]]).unwrap();
        let a = Matrix::from_row_slice(1, 2, &[2.0, -1.0]);
        let lhs = u.primitive(&[0.0, 0.0]).unwrap().linear_push(&a).unwrap();
        let rhs = u.linear_push(&a).unwrap().primitive(&[0.0]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.eval(1.0, 0).unwrap(), rhs.eval(1.0, 0).unwrap());
    }

    #[test]
    fn affine_reparametrization_scales_derivatives() {
        let c = StepCurve::constant(Interval::new(2.0, 4.0).unwrap(), &[1.0]).primitive(&[2.0]).unwrap();
        let r = c.reparametrize_affine(Interval::unit()).unwrap();
        assert_eq!(r.top_step().unwrap().values_flat(), &[2.0]);
        assert_eq!(r.eval(0.5, 0).unwrap(), c.eval(3.0, 0).unwrap());
        assert_eq!(c.reparametrize_affine(c.domain()).unwrap(), c);
    }

    #[test]
    fn ck_mode_is_continuous_in_the_top_derivative() {
        let top = PlCurve::new(vec![0.0, 0.5, 1.0], vec![vec![0.0], vec![1.0], vec![0.0]]).unwrap();
        let c = RegCurve::new(1, vec![vec![0.0]], Top::Linear(top)).unwrap();
        assert_eq!(c.mode(), Mode::Ck);
        assert_eq!(c.eval(0.5, 1).unwrap(), vec![1.0]);
        assert_eq!(c.eval(0.5, 0).unwrap(), vec![0.25]);
        assert_eq!(c.eval(1.0, 0).unwrap(), vec![0.5]);
        assert_eq!(c.norm(1).unwrap(), 1.0);
        let r = c.restrict(Interval::new(0.25, 1.0).unwrap()).unwrap();
        assert_eq!(r.eval(0.75, 0).unwrap(), c.eval(0.75, 0).unwrap());
    }

    #[test]
    fn json_layout_is_fixed() {
        let c = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![2.0]]).unwrap().primitive(&[0.0]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"domain":[0.0,1.0],"k":1,"jet":[[0.0]],"top":{"breaks":[0.0,0.5,1.0],"values":[[1.0],[2.0]]},"mode":"regulated"}"#
        );
        let back: RegCurve = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = s.replace("[0.0,1.0]", "[0.0,2.0]");
        assert!(serde_json::from_str::<RegCurve>(&bad).is_err());
    }
}
