//! Step approximation, composition with smooth maps, image nets and the
//! substitution rule.

use std::sync::Arc;

use crate::atlas::SmoothMap;
use crate::error::{Error, Result};
use crate::linalg::{max_dist, max_norm, Matrix};

use super::poly;
use super::{Interval, Mode, RegCurve, StepBuilder, StepCurve, Top};

/// How a continuous curve is turned into a step curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolution {
    /// Midpoint cells fine enough for a sup error of at most `tol`, using a
    /// sampled Lipschitz estimate with a 2× safety factor.
    Certified { tol: f64, max_cells: usize },
    /// `⌈len · cells_per_unit⌉` uniform midpoint cells per continuity piece.
    /// The grid does not depend on the sampled values, so the result varies
    /// smoothly with them.
    Uniform { cells_per_unit: f64 },
}

pub const DEFAULT_MAX_CELLS: usize = 4_000_000;

impl Resolution {
    pub fn certified(tol: f64) -> Self {
        Resolution::Certified { tol, max_cells: DEFAULT_MAX_CELLS }
    }
}

/// A step curve together with its sup-error bound and cell count.
#[derive(Debug, Clone)]
pub struct Approximation<T> {
    pub curve: T,
    pub error_bound: f64,
    pub cells: usize,
}

const LIP_SAMPLES: usize = 16;

/// Approximate a curve that is continuous on each closed `[a_i, b_i]` of
/// `pieces` (adjacent, increasing) by midpoint sampling.
///
/// `sample(i, t, half_width, out)` writes the value at `t` in piece `i`;
/// `half_width` is the half length of the cell being sampled (zero for the
/// Lipschitz probes) and lets callers certify their own domain conditions.
pub fn approximate_pieces<F>(pieces: &[(f64, f64)], dim: usize, res: Resolution, mut sample: F) -> Result<Approximation<StepCurve>>
where
    F: FnMut(usize, f64, f64, &mut [f64]) -> Result<()>,
{
    let mut counts = Vec::with_capacity(pieces.len());
    let mut total = 0usize;
    let mut bound = 0.0_f64;
    let mut prev = vec![0.0; dim];
    let mut cur = vec![0.0; dim];
    for (i, &(a, b)) in pieces.iter().enumerate() {
        let len = b - a;
        let n = match res {
            Resolution::Uniform { cells_per_unit } => {
                let n = (len * cells_per_unit).ceil().max(1.0) as usize;
                let lip = sampled_lipschitz(i, a, b, &mut sample, &mut prev, &mut cur)?;
                bound = bound.max(lip * len / n as f64 / 2.0);
                n
            }
            Resolution::Certified { tol, max_cells } => {
                let lip = sampled_lipschitz(i, a, b, &mut sample, &mut prev, &mut cur)?;
                let n = if lip == 0.0 { 1.0 } else { (len * lip / (2.0 * tol)).ceil().max(1.0) };
                if n > max_cells as f64 {
                    return Err(Error::Budget(format!("tolerance {tol} needs more than {max_cells} cells")));
                }
                bound = bound.max(lip * len / n / 2.0);
                n as usize
            }
        };
        counts.push(n);
        total += n;
        if let Resolution::Certified { max_cells, tol } = res {
            if total > max_cells {
                return Err(Error::Budget(format!("tolerance {tol} needs more than {max_cells} cells")));
            }
        }
    }
    let lo = pieces.first().map_or(0.0, |p| p.0);
    let mut builder = StepBuilder::with_capacity(lo, dim, total);
    for (i, (&(a, b), &n)) in pieces.iter().zip(&counts).enumerate() {
        let h = (b - a) / n as f64;
        for j in 0..n {
            let s = a + h * j as f64;
            let e = if j + 1 == n { b } else { a + h * (j + 1) as f64 };
            sample(i, 0.5 * (s + e), 0.5 * (e - s), &mut cur)?;
            builder.push(e, &cur)?;
        }
    }
    Ok(Approximation { curve: builder.finish()?, error_bound: bound, cells: total })
}

fn sampled_lipschitz<F>(i: usize, a: f64, b: f64, sample: &mut F, prev: &mut [f64], cur: &mut [f64]) -> Result<f64>
where
    F: FnMut(usize, f64, f64, &mut [f64]) -> Result<()>,
{
    let dt = (b - a) / LIP_SAMPLES as f64;
    sample(i, a, 0.0, prev)?;
    let mut lip = 0.0_f64;
    for j in 1..=LIP_SAMPLES {
        let t = if j == LIP_SAMPLES { b } else { a + dt * j as f64 };
        sample(i, t, 0.0, cur)?;
        lip = lip.max(max_dist(prev, cur) / dt);
        prev.copy_from_slice(cur);
    }
    Ok(2.0 * lip)
}

/// Continuity information for a callback curve.
#[derive(Clone)]
pub enum Modulus {
    Lipschitz(f64),
    /// `delta(eps)`: points closer than `delta(eps)` have values within `eps`.
    Delta(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// No modulus; refine dyadically until sampled cell oscillation is below
    /// `eps` or the cell budget runs out.
    Unknown { max_cells: usize },
}

pub enum Source<'a> {
    Step(&'a StepCurve),
    Callback { domain: Interval, dim: usize, f: &'a dyn Fn(f64, &mut [f64]), modulus: Modulus },
}

/// Step curve within `eps` of the source in sup norm (left-endpoint sampling).
pub fn step_approximate(src: Source<'_>, eps: f64) -> Result<StepCurve> {
    if !(eps > 0.0) {
        return Err(Error::BadParams(format!("tolerance must be positive, got {eps}")));
    }
    let (domain, dim, f, modulus) = match src {
        Source::Step(c) => return Ok(c.clone()),
        Source::Callback { domain, dim, f, modulus } => (domain, dim, f, modulus),
    };
    let left_grid = |n: usize| -> Result<StepCurve> {
        let mut b = StepBuilder::with_capacity(domain.lo(), dim, n);
        let mut v = vec![0.0; dim];
        let h = domain.len() / n as f64;
        for j in 0..n {
            f(domain.lo() + h * j as f64, &mut v);
            let e = if j + 1 == n { domain.hi() } else { domain.lo() + h * (j + 1) as f64 };
            b.push(e, &v)?;
        }
        b.finish()
    };
    let cells = |delta: f64| -> Result<usize> {
        if !(delta > 0.0) {
            return Err(Error::BadParams("modulus must be positive".into()));
        }
        let n = (domain.len() / delta).ceil().max(1.0);
        if n > DEFAULT_MAX_CELLS as f64 {
            return Err(Error::Budget(format!("{n} cells exceed the budget")));
        }
        Ok(n as usize)
    };
    match modulus {
        Modulus::Lipschitz(0.0) => left_grid(1),
        Modulus::Lipschitz(l) => left_grid(cells(eps / l)?),
        Modulus::Delta(delta) => left_grid(cells(delta(eps))?),
        Modulus::Unknown { max_cells } => {
            let (mut a, mut b) = (vec![0.0; dim], vec![0.0; dim]);
            let mut n = 1usize;
            while n <= max_cells {
                let h = domain.len() / n as f64;
                let mut osc = 0.0_f64;
                for j in 0..n {
                    let s = domain.lo() + h * j as f64;
                    f(s, &mut a);
                    for q in 1..=4 {
                        f(s + h * q as f64 / 4.0, &mut b);
                        osc = osc.max(max_dist(&a, &b));
                    }
                }
                if osc <= eps {
                    return left_grid(n);
                }
                n *= 2;
            }
            Err(Error::Budget(format!("no modulus given and {max_cells} cells do not reach {eps}")))
        }
    }
}

/// `f ∘ c` for a smooth `f` (see [`compose_smooth_with`]).
pub fn compose_smooth(f: &SmoothMap, c: &RegCurve, tol: f64) -> Result<RegCurve> {
    compose_smooth_with(f, c, Resolution::certified(tol)).map(|a| a.curve)
}

/// `f ∘ c`. Exact for step curves and for affine `f`; for order 1 the top
/// derivative `Df(c(t)) c'(t)` is re-projected to a step curve at `res`.
pub fn compose_smooth_with(f: &SmoothMap, c: &RegCurve, res: Resolution) -> Result<Approximation<RegCurve>> {
    if f.dim_in() != c.dim() {
        return Err(Error::Dimension { expected: f.dim_in(), found: c.dim() });
    }
    if let Some(a) = f.linear_part() {
        check_image(f, c)?;
        return Ok(Approximation { curve: push_affine(f, a, c)?, error_bound: 0.0, cells: c.num_pieces() });
    }
    if c.mode() == Mode::Ck {
        return Err(Error::Unsupported("composition of C^k-mode curves with nonlinear maps".into()));
    }
    match c.order() {
        0 => {
            let step = c.top_step().expect("regulated mode");
            let out = step.map_values(f.dim_out(), |v| f.try_eval(v))?;
            Ok(Approximation { curve: RegCurve::from_step(out), error_bound: 0.0, cells: step.num_pieces() })
        }
        1 => compose_order_one(f, c, res),
        k => Err(Error::Unsupported(format!("composition with nonlinear maps for order {k} > 1"))),
    }
}

fn push_affine(f: &SmoothMap, a: &Matrix, c: &RegCurve) -> Result<RegCurve> {
    let pushed = c.linear_push(a)?;
    let offset = f.eval(&vec![0.0; f.dim_in()]);
    if pushed.order() == 0 {
        let step = pushed.top_step().expect("regulated mode");
        let out = step.map_values(step.dim(), |v| Ok(v.iter().zip(&offset).map(|(x, b)| x + b).collect()))?;
        return Ok(RegCurve::from_step(out));
    }
    let mut jet = pushed.jet_vecs();
    jet[0].iter_mut().zip(&offset).for_each(|(x, b)| *x += b);
    RegCurve::new(pushed.order(), jet, pushed.top().clone())
}

/// Every point of an image net lies in `dom(f)` with margin above the net spacing.
fn check_image(f: &SmoothMap, c: &RegCurve) -> Result<()> {
    if f.domain().margin(c.jet_or_value0().as_slice()) == f64::INFINITY {
        return Ok(());
    }
    let eps = image_eps(c);
    for p in image_net(c, eps)? {
        if f.domain().margin(&p) <= eps {
            return Err(Error::ImageEscapes { point: p });
        }
    }
    Ok(())
}

fn image_eps(c: &RegCurve) -> f64 {
    1e-3 * (1.0 + c.sup_level(0).unwrap_or(0.0))
}

fn compose_order_one(f: &SmoothMap, c: &RegCurve, res: Resolution) -> Result<Approximation<RegCurve>> {
    let top = c.top_step().expect("regulated mode");
    let x0 = f.try_eval(c.jet(0))?;
    let pieces: Vec<(f64, f64)> = top.pieces().map(|(a, b, _)| (a, b)).collect();
    let mut x = vec![0.0; c.dim()];
    let mut jac = Matrix::zeros(f.dim_out(), f.dim_in());
    let domain = f.domain().clone();
    let approx = approximate_pieces(&pieces, f.dim_out(), res, |i, t, hw, out| {
        let v = top.value(i);
        c.eval_into(t, 0, &mut x)?;
        if domain.margin(&x) <= max_norm(v) * hw {
            return Err(Error::ImageEscapes { point: x.clone() });
        }
        f.jacobian_into(&x, &mut jac);
        crate::linalg::mat_vec_into(&jac, v, out);
        Ok(())
    })?;
    let curve = approx.curve.primitive(&x0)?;
    Ok(Approximation { curve, error_bound: approx.error_bound, cells: approx.cells })
}

/// A finite `eps`-net of `c(domain)`: the value set for step curves, otherwise
/// a grid of spacing `eps / L` with `L = sup |c'|`.
pub fn image_net(c: &RegCurve, eps: f64) -> Result<Vec<Vec<f64>>> {
    if !(eps > 0.0) {
        return Err(Error::BadParams(format!("net spacing must be positive, got {eps}")));
    }
    let lip = match (c.order(), c.top()) {
        (0, Top::Step(s)) => {
            let mut out: Vec<Vec<f64>> = Vec::new();
            for v in s.values() {
                if !out.iter().any(|w| w.as_slice() == v) {
                    out.push(v.to_vec());
                }
            }
            return Ok(out);
        }
        (0, Top::Linear(p)) => p.derivative()?.sup_norm(),
        _ => c.sup_level(1)?,
    };
    let dom = c.domain();
    let n = (dom.len() * lip / eps).ceil() as usize;
    if n > DEFAULT_MAX_CELLS {
        return Err(Error::Budget(format!("image net with {n} points")));
    }
    if n == 0 {
        return Ok(vec![c.eval(dom.lo(), 0)?]);
    }
    (0..=n)
        .map(|j| {
            let t = if j == n { dom.hi() } else { dom.lo() + dom.len() * j as f64 / n as f64 };
            c.eval(t, 0)
        })
        .collect()
}

impl RegCurve {
    /// `c(t₀)` for any order (the first step value when `k = 0`).
    pub(crate) fn jet_or_value0(&self) -> Vec<f64> {
        self.eval(self.domain().lo(), 0).expect("left endpoint")
    }
}

/// Scalar reparametrization `φ` with a strict monotonicity certificate:
/// `sign · φ' ≥ min_speed > 0` everywhere.
#[derive(Debug, Clone)]
pub struct SmoothScalarRepar {
    phi: RegCurve,
    sign: f64,
    min_speed: f64,
}

impl SmoothScalarRepar {
    /// Certify strict monotonicity from the pieces of `φ'`.
    pub fn certify(phi: RegCurve) -> Result<Self> {
        if phi.dim() != 1 || phi.order() == 0 {
            return Err(Error::MissingCertificate("need a scalar curve of order at least 1".into()));
        }
        let (lo_val, hi_val) = derivative_range(&phi)?;
        let (sign, min_speed) = if lo_val > 0.0 {
            (1.0, lo_val)
        } else if hi_val < 0.0 {
            (-1.0, -hi_val)
        } else {
            return Err(Error::MissingCertificate(format!("derivative range [{lo_val}, {hi_val}] contains 0")));
        };
        Ok(Self { phi, sign, min_speed })
    }

    pub fn phi(&self) -> &RegCurve {
        &self.phi
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn min_speed(&self) -> f64 {
        self.min_speed
    }

    fn value(&self, r: f64) -> f64 {
        self.phi.eval(r, 0).expect("inside domain")[0]
    }

    /// `r ∈ [a, b]` with `φ(r) = t`, inside one polynomial piece.
    fn preimage(&self, t: f64, a: f64, b: f64) -> f64 {
        let (fa, fb) = (self.value(a), self.value(b));
        if self.phi.order() == 1 && self.phi.mode() == Mode::Regulated {
            let slope = self.phi.eval(a, 1).expect("inside domain")[0];
            return (a + (t - fa) / slope).clamp(a, b);
        }
        let (mut lo, mut hi) = (a, b);
        let increasing = fb > fa;
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if m <= lo || m >= hi {
                break;
            }
            if (self.value(m) < t) == increasing {
                lo = m;
            } else {
                hi = m;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Min and max of `φ'` over the domain, from endpoints and critical points of each piece.
fn derivative_range(phi: &RegCurve) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for w in phi.breaks().windows(2) {
        let (a, b) = (w[0], w[1]);
        let coeffs = level_coeffs(phi, a, 1)?;
        let mut cands = vec![poly::horner(&coeffs, 0.0), poly::horner(&coeffs, b - a)];
        for r in poly::real_roots(&poly::derivative(&coeffs)) {
            if r > 0.0 && r < b - a {
                cands.push(poly::horner(&coeffs, r));
            }
        }
        for v in cands {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    Ok((lo, hi))
}

/// Coefficients of the scalar `c^{(l)}` on the piece starting at `a`, in powers of `t - a`.
fn level_coeffs(c: &RegCurve, a: f64, l: usize) -> Result<Vec<f64>> {
    let deg = match c.mode() {
        Mode::Regulated => c.order(),
        Mode::Ck => c.order() + 1,
    };
    let mut out = Vec::with_capacity(deg + 1 - l);
    let mut fact = 1.0;
    for (m, j) in (l..=deg).enumerate() {
        if m > 0 {
            fact *= m as f64;
        }
        let v = if j <= c.order() { c.eval(a, j)?[0] } else { ck_slope(c, a)? };
        out.push(v / fact);
    }
    Ok(out)
}

fn ck_slope(c: &RegCurve, a: f64) -> Result<f64> {
    match c.top() {
        Top::Linear(p) => Ok(p.derivative()?.eval(a)?[0]),
        Top::Step(_) => Ok(0.0),
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> (&'static [f64], &'static [f64]) {
    const X2: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];
    const W2: [f64; 2] = [1.0, 1.0];
    const X3: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const W3: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    const X4: [f64; 4] = [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
    const W4: [f64; 4] = [0.347_854_845_137_453_85, 0.652_145_154_862_546_1, 0.652_145_154_862_546_1, 0.347_854_845_137_453_85];
    match n {
        1 => (&[0.0], &[2.0]),
        2 => (&X2, &W2),
        3 => (&X3, &W3),
        _ => (&X4, &W4),
    }
}

/// `∫_{s0}^{s1} φ'(r) c(φ(r)) dr`, which equals `∫_{φ(s0)}^{φ(s1)} c`.
///
/// The left side is evaluated directly: `[s0, s1]` is split at the breaks of
/// `φ` and at the preimages of the breaks of `c`; on each cell `c∘φ` is
/// constant and `∫φ'` is integrated by Gauss–Legendre of sufficient order.
pub fn change_of_variables(c: &StepCurve, phi: &SmoothScalarRepar, s0: f64, s1: f64) -> Result<Vec<f64>> {
    let p = phi.phi();
    p.domain().check(s0)?;
    p.domain().check(s1)?;
    let (a, b, sign) = if s0 <= s1 { (s0, s1, 1.0) } else { (s1, s0, -1.0) };
    let (fa, fb) = (phi.value(a), phi.value(b));
    let (lo, hi) = if fa <= fb { (fa, fb) } else { (fb, fa) };
    if !c.domain().contains(lo) || !c.domain().contains(hi) {
        return Err(Error::DomainMismatch(format!("φ maps into [{lo}, {hi}], outside the step curve's domain")));
    }
    let mut cuts: Vec<f64> = vec![a, b];
    cuts.extend(p.breaks().iter().copied().filter(|&r| r > a && r < b));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut pts = Vec::with_capacity(cuts.len() + c.num_pieces());
    for w in cuts.windows(2) {
        let (ra, rb) = (w[0], w[1]);
        pts.push(ra);
        let (va, vb) = (phi.value(ra), phi.value(rb));
        let (ta, tb) = if va <= vb { (va, vb) } else { (vb, va) };
        let mut inner: Vec<f64> = c
            .breaks()
            .iter()
            .copied()
            .filter(|&t| t > ta && t < tb)
            .map(|t| phi.preimage(t, ra, rb))
            .filter(|&r| r > ra && r < rb)
            .collect();
        inner.sort_by(f64::total_cmp);
        pts.extend(inner);
    }
    pts.push(b);
    pts.dedup();

    let deg_phi = match p.mode() {
        Mode::Regulated => p.order(),
        Mode::Ck => p.order() + 1,
    };
    let nodes = deg_phi.div_ceil(2).max(1);
    let (xs, ws) = gauss_legendre(nodes);
    let mut acc = vec![0.0; c.dim()];
    for w in pts.windows(2) {
        let (ra, rb) = (w[0], w[1]);
        let half = 0.5 * (rb - ra);
        let mid = 0.5 * (ra + rb);
        let mut dphi = 0.0;
        for (x, wt) in xs.iter().zip(ws) {
            dphi += wt * p.eval(mid + half * x, 1)?[0];
        }
        dphi *= half;
        let v = c.eval(phi.value(mid).clamp(c.domain().lo(), c.domain().hi()))?;
        for (o, vi) in acc.iter_mut().zip(v) {
            *o += vi * dphi;
        }
    }
    acc.iter_mut().for_each(|x| *x *= sign);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::Region;

    fn square() -> SmoothMap {
        SmoothMap::new(1, 1, Region::whole(1), |x, o| o[0] = x[0] * x[0]).with_jacobian(|x, j| j[(0, 0)] = 2.0 * x[0])
    }

    #[test]
    fn composing_step_curves_is_exact() {
        let c = RegCurve::from_step(StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![3.0]]).unwrap());
        let out = compose_smooth(&square(), &c, 1e-6).unwrap();
        assert_eq!(out.top_step().unwrap().values_flat(), &[1.0, 9.0]);
        let id = compose_smooth(&SmoothMap::identity(1), &c, 1e-6).unwrap();
        assert_eq!(id, c);
    }

    #[test]
    fn square_of_identity_curve() {
        let c = StepCurve::constant(Interval::unit(), &[1.0]).primitive(&[0.0]).unwrap();
        let a = compose_smooth_with(&square(), &c, Resolution::certified(1e-6)).unwrap();
        assert!(a.error_bound <= 1e-6);
        for j in 0..=200 {
            let t = j as f64 / 200.0;
            assert!((a.curve.eval(t, 0).unwrap()[0] - t * t).abs() <= 1e-6);
            assert!((a.curve.eval(t, 1).unwrap()[0] - 2.0 * t).abs() <= 1e-6);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c = StepCurve::constant(Interval::unit(), &[1.0]).primitive(&[0.0]).unwrap();
        let res = Resolution::Certified { tol: 1e-9, max_cells: 1000 };
        assert!(matches!(compose_smooth_with(&square(), &c, res), Err(Error::Budget(_))));
    }

    #[test]
    fn escaping_image_is_reported() {
        let f = SmoothMap::new(1, 1, Region::interval(0.5, 2.0), |x, o| o[0] = x[0].ln());
        let c = StepCurve::constant(Interval::unit(), &[1.0]).primitive(&[0.0]).unwrap();
        assert!(matches!(compose_smooth(&f, &c, 1e-3), Err(Error::ImageEscapes { .. })));
    }

    #[test]
    fn staircase_of_identity() {
        let f = |t: f64, o: &mut [f64]| o[0] = t;
        let s = step_approximate(
            Source::Callback { domain: Interval::unit(), dim: 1, f: &f, modulus: Modulus::Lipschitz(1.0) },
            0.25,
        )
        .unwrap();
        assert_eq!(s.num_pieces(), 4);
        let k = |t: f64, o: &mut [f64]| o[0] = 3.0 + 0.0 * t;
        let s = step_approximate(
            Source::Callback { domain: Interval::unit(), dim: 1, f: &k, modulus: Modulus::Unknown { max_cells: 64 } },
            0.1,
        )
        .unwrap();
        assert_eq!(s.num_pieces(), 1);
    }

    #[test]
    fn image_nets() {
        let c = StepCurve::constant(Interval::unit(), &[1.0]).primitive(&[0.0]).unwrap();
        let net = image_net(&c, 0.1).unwrap();
        assert!(net.len() <= 11);
        for j in 0..=1000 {
            let t = j as f64 / 1000.0;
            assert!(net.iter().any(|p| (p[0] - t).abs() <= 0.1));
        }
        let k = RegCurve::constant(Interval::unit(), &[2.0, 3.0], 1);
        assert_eq!(image_net(&k, 0.1).unwrap().len(), 1);
    }

    #[test]
    fn substitution_with_square_map() {
        // φ(s) = s² on [0.1, 1]
        let phi = StepCurve::constant(Interval::new(0.1, 1.0).unwrap(), &[2.0])
            .primitive(&[0.2])
            .unwrap()
            .primitive(&[0.01])
            .unwrap();
        let phi = SmoothScalarRepar::certify(phi).unwrap();
        assert!((phi.min_speed() - 0.2).abs() < 1e-15);
        let c = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![-1.0]]).unwrap();
        let lhs = change_of_variables(&c, &phi, 0.1, 1.0).unwrap()[0];
        let rhs = c.integral(0.01, 1.0).unwrap()[0];
        assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn non_monotone_map_has_no_certificate() {
        let phi = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![-1.0]]).unwrap().primitive(&[0.0]).unwrap();
        assert!(matches!(SmoothScalarRepar::certify(phi), Err(Error::MissingCertificate(_))));
    }
}
