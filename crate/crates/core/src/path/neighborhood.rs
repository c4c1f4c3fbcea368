use crate::atlas::{Manifold, Point, Region};
use crate::error::{Error, Result};
use crate::regulated::{Interval, StepCurve};

use super::contain::{certify_curve, certify_segment, Membership};
use super::{BundleLift, ManifoldPath, PathChartSystem};

/// Basic neighbourhood of a lift: over the compact set `K`, the lift must stay
/// in `u`, its base path in `v` and the base velocity in `w`. Regions are read
/// in the chart coordinates of each piece (`u` on `(x, fiber)` pairs).
#[derive(Debug, Clone, Default)]
pub struct NeighborhoodSpec {
    /// Closed subintervals `[a, b]` of `[0, 1]`; `a = b` is a single time.
    pub k: Vec<(f64, f64)>,
    pub u: Option<Region>,
    pub v: Option<Region>,
    pub w: Option<Region>,
}

fn point_verdict(region: &Region, x: &[f64], t: f64) -> Membership {
    if region.margin(x) > 0.0 {
        Membership::Inside
    } else {
        Membership::Outside { time: t }
    }
}

fn check_k(k: &[(f64, f64)]) -> Result<()> {
    match k.iter().find(|(a, b)| !(0.0 <= *a && a <= b && *b <= 1.0)) {
        Some((a, b)) => Err(Error::InvalidInterval { lo: *a, hi: *b }),
        None => Ok(()),
    }
}

/// Membership of a base path (the `u` region is ignored).
pub fn path_in_neighborhood(p: &ManifoldPath, spec: &NeighborhoodSpec) -> Result<Membership> {
    membership(p, None, spec)
}

/// Membership of a lift in `N(K, U, V, W)`; indeterminate when a certificate
/// cannot separate a net point from a region boundary.
pub fn in_neighborhood(c: &BundleLift, spec: &NeighborhoodSpec) -> Result<Membership> {
    membership(c.base(), Some(c.fibers()), spec)
}

fn membership(p: &ManifoldPath, fibers: Option<&[StepCurve]>, spec: &NeighborhoodSpec) -> Result<Membership> {
    check_k(&spec.k)?;
    let sys = p.system();
    let mut verdict = Membership::Inside;
    for &(a, b) in &spec.k {
        for i in 0..p.num_pieces() {
            let piece = sys.piece(i);
            let (lo, hi) = (a.max(piece.lo()), b.min(piece.hi()));
            if lo > hi {
                continue;
            }
            let gamma = p.piece(i);
            // the derivative and the fiber at a single time belong to the selected piece
            let owns = |t: f64| sys.piece_index(t).map(|k| k == i).unwrap_or(false);
            if lo == hi {
                let x = gamma.eval(lo, 0)?;
                if let Some(v) = &spec.v {
                    verdict = verdict.and(point_verdict(v, &x, lo));
                }
                if owns(lo) {
                    if let Some(w) = &spec.w {
                        verdict = verdict.and(point_verdict(w, &gamma.eval(lo, 1)?, lo));
                    }
                    if let (Some(u), Some(f)) = (&spec.u, fibers) {
                        let xu = [x.as_slice(), f[i].eval(lo)?].concat();
                        verdict = verdict.and(point_verdict(u, &xu, lo));
                    }
                }
                continue;
            }
            let sub = Interval::new(lo, hi)?;
            let local = gamma.restrict(sub)?;
            if let Some(v) = &spec.v {
                verdict = verdict.and(certify_curve(v, &local)?);
            }
            if let Some(w) = &spec.w {
                for (t, _, y) in local.top_step().expect("regulated").pieces() {
                    verdict = verdict.and(point_verdict(w, y, t));
                }
            }
            if let (Some(u), Some(f)) = (&spec.u, fibers) {
                let fib = f[i].restrict(sub)?;
                for &(t0, t1, _) in local.top_step().expect("regulated").cells_with(fib.breaks()).iter() {
                    let uv = fib.eval(t0)?;
                    let p0 = [local.eval(t0, 0)?.as_slice(), uv].concat();
                    let p1 = [local.eval(t1, 0)?.as_slice(), uv].concat();
                    verdict = verdict.and(certify_segment(u, &p0, &p1, t0, t1));
                }
            }
            if matches!(verdict, Membership::Outside { .. }) {
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// Greedy cover search over time-ordered samples `(t, point)` with `t` running
/// from 0 to 1. `speed` bounds the path's speed in chart coordinates; a chart
/// keeps a piece while each sample sits deeper than `speed · Δt` inside it.
pub fn find_chart_system(m: &Manifold, samples: &[(f64, Point)], speed: f64) -> Result<PathChartSystem> {
    if samples.len() < 2 || samples[0].0 != 0.0 || samples.last().unwrap().0 != 1.0 {
        return Err(Error::InvalidPath("samples must start at t = 0 and end at t = 1".into()));
    }
    if samples.windows(2).any(|w| !(w[0].0 < w[1].0)) {
        return Err(Error::InvalidPath("sample times must increase".into()));
    }
    let depth = |k: usize, j: usize| -> f64 {
        match m.convert_point(&samples[k].1, j) {
            Ok(p) => m.chart(j).map(|c| c.codomain.margin(&p.coords)).unwrap_or(f64::NEG_INFINITY),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    for (k, (t, _)) in samples.iter().enumerate() {
        if (0..m.num_charts()).all(|j| depth(k, j) <= 0.0) {
            return Err(Error::CoverFailure { time: *t });
        }
    }
    let last = samples.len() - 1;
    let (mut tau, mut charts) = (vec![0.0], Vec::new());
    let mut s = 0;
    while s < last {
        let mut best = (0usize, 0usize);
        for j in 0..m.num_charts() {
            let mut e = s;
            while e < last && depth(e, j) > speed * (samples[e + 1].0 - samples[e].0) && depth(e + 1, j) > 0.0 {
                e += 1;
            }
            if e - s > best.1 {
                best = (j, e - s);
            }
        }
        if best.1 == 0 {
            return Err(Error::CoverFailure { time: samples[s].0 });
        }
        charts.push(best.0);
        s += best.1;
        tau.push(samples[s].0);
    }
    PathChartSystem::new(tau, charts)
}
