//! Seeded random corpora. Values and breakpoints are dyadic wherever the
//! construction allows, so sums and integrals of generated data are exact.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atlas::{self, BundleAtlas, Manifold};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::path::{certify_curve, reconstruct, BundleLift, ManifoldPath, PathChartSystem, PathRep};
use crate::regulated::{Interval, RegCurve, StepCurve, Top};

const GRID_BITS: u32 = 10;
const VALUE_BITS: u32 = 8;

/// Independent stream for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Uniform dyadic number `lo + (hi - lo) k / 2^bits`.
pub fn dyadic<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, bits: u32) -> f64 {
    let n = 1u64 << bits;
    lo + (hi - lo) * (rng.random_range(0..=n) as f64 / n as f64)
}

pub fn dyadic_vec<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: f64) -> Vec<f64> {
    (0..dim).map(|_| dyadic(rng, -scale, scale, VALUE_BITS)).collect()
}

/// Sorted distinct dyadic points strictly inside `dom`, at most `max`.
pub fn interior_points<R: Rng + ?Sized>(rng: &mut R, dom: Interval, max: usize) -> Vec<f64> {
    let n = rng.random_range(0..=max);
    let mut pts: Vec<f64> = (0..n).map(|_| dyadic(rng, dom.lo(), dom.hi(), GRID_BITS)).filter(|&t| dom.lo() < t && t < dom.hi()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Random step curve with up to `max_pieces` pieces and values in `[-scale, scale]`.
pub fn random_step<R: Rng + ?Sized>(rng: &mut R, dom: Interval, dim: usize, max_pieces: usize, scale: f64) -> StepCurve {
    let mut breaks = vec![dom.lo()];
    breaks.extend(interior_points(rng, dom, max_pieces.saturating_sub(1)));
    breaks.push(dom.hi());
    let values = (1..breaks.len()).map(|_| dyadic_vec(rng, dim, scale)).collect();
    StepCurve::new(breaks, values).expect("valid by construction")
}

/// Random regulated curve of order `k`.
pub fn random_reg<R: Rng + ?Sized>(rng: &mut R, dom: Interval, dim: usize, k: usize, max_pieces: usize) -> RegCurve {
    let jet = (0..k).map(|_| dyadic_vec(rng, dim, 4.0)).collect();
    RegCurve::new(k, jet, Top::Step(random_step(rng, dom, dim, max_pieces, 4.0))).expect("valid by construction")
}

/// Random dyadic subinterval of `dom`.
pub fn random_subinterval<R: Rng + ?Sized>(rng: &mut R, dom: Interval) -> Interval {
    loop {
        let a = dyadic(rng, dom.lo(), dom.hi(), GRID_BITS + 2);
        let b = dyadic(rng, dom.lo(), dom.hi(), GRID_BITS + 2);
        if a != b {
            return Interval::new(a.min(b), a.max(b)).expect("distinct endpoints");
        }
    }
}

/// Random strict partition of `[0, 1]` into `n` pieces on a dyadic grid.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut tau: Vec<f64> = (1..n).map(|_| dyadic(rng, 0.0, 1.0, 6)).collect();
        tau.push(0.0);
        tau.push(1.0);
        tau.sort_by(f64::total_cmp);
        if tau.windows(2).all(|w| w[0] < w[1]) {
            return tau;
        }
    }
}

/// Manifolds used by the atlas and openness corpora.
pub fn manifold_catalog() -> Vec<Manifold> {
    vec![
        atlas::euclidean(2, None).expect("valid"),
        atlas::euclidean(3, Some(2.0)).expect("valid"),
        atlas::circle(),
        atlas::sphere(),
        atlas::torus(),
    ]
}

/// Typical velocity scale for random paths on `m`.
pub fn natural_speed(m: &Manifold) -> f64 {
    if matches!(m.name(), "circle-two-arcs" | "torus") {
        2.0
    } else {
        1.0
    }
}

const MIN_MARGIN: f64 = 0.02;
const MIN_OVERLAP: f64 = 0.05;

/// Random valid path: up to four pieces, chart switches wherever the
/// junction point lies well inside an overlap.
pub fn random_path<R: Rng + ?Sized>(rng: &mut R, m: &Manifold, speed: f64) -> ManifoldPath {
    loop {
        if let Some(p) = try_random_path(rng, m, speed) {
            return p;
        }
    }
}

fn try_random_path<R: Rng + ?Sized>(rng: &mut R, m: &Manifold, speed: f64) -> Option<ManifoldPath> {
    let n = rng.random_range(1..=4);
    let tau = random_partition(rng, n);
    let mut chart = rng.random_range(0..m.num_charts());
    let mut start = m.chart(chart).ok()?.sample(rng);
    let mut charts = Vec::with_capacity(n);
    let mut pieces: Vec<RegCurve> = Vec::with_capacity(n);
    let half = Matrix::identity(m.dim(), m.dim()) * 0.5;
    for i in 0..n {
        let dom = Interval::new(tau[i], tau[i + 1]).ok()?;
        if i > 0 {
            let end = pieces[i - 1].end_value(0).ok()?;
            let options: Vec<usize> =
                (0..m.num_charts()).filter(|&j| j == chart || m.overlap_margin(chart, j, &end).unwrap_or(f64::NEG_INFINITY) > MIN_OVERLAP).collect();
            let next = options[rng.random_range(0..options.len())];
            start = if next == chart { end } else { m.transfer(chart, next, &end).ok()? };
            chart = next;
        }
        let region = &m.chart(chart).ok()?.codomain;
        let mut y = random_step(rng, dom, m.dim(), 3, speed);
        let mut accepted = None;
        for _ in 0..30 {
            let p = y.primitive(&start).ok()?;
            let margins_ok = p.breaks().iter().all(|&t| p.eval(t, 0).map(|x| region.margin(&x) > MIN_MARGIN).unwrap_or(false));
            if margins_ok && certify_curve(region, &p).ok()?.is_inside() {
                accepted = Some(p);
                break;
            }
            y = y.linear_push(&half).ok()?;
        }
        pieces.push(accepted?);
        charts.push(chart);
    }
    ManifoldPath::new(m, PathChartSystem::new(tau, charts).ok()?, pieces).ok()
}

/// Random lift of `base` with fiber values in `[-4, 4]`.
pub fn random_lift<R: Rng + ?Sized>(rng: &mut R, bundle: &BundleAtlas, base: ManifoldPath) -> BundleLift {
    let fibers = (0..base.num_pieces()).map(|i| random_step(rng, base.system().piece(i), bundle.rank(), 3, 4.0)).collect();
    BundleLift::new(bundle, base, fibers).expect("valid by construction")
}

/// The sphere scenario's chart systems: the north chart alone, and north on
/// `[0, ½]` followed by south on `[½, 1]`.
pub fn sphere_systems() -> (PathChartSystem, PathChartSystem) {
    (PathChartSystem::single(0), PathChartSystem::new(vec![0.0, 0.5, 1.0], vec![0, 1]).expect("valid"))
}

/// Slow path in the north chart staying in the annulus `0.5 < |x| < 1.5`,
/// as a representation in the single-chart system.
pub fn gentle_sphere_rep<R: Rng + ?Sized>(rng: &mut R) -> PathRep {
    let r = rng.random_range(0.8..1.2);
    let a = rng.random_range(0.0..2.0 * PI);
    let y = random_step(rng, Interval::unit(), 2, 4, 0.1);
    PathRep { x: vec![r * a.cos(), r * a.sin()], pieces: vec![y], fibers: None }
}

/// Loop `θ(t) = -π/2 + 2πt` on the two-arc circle through charts 0, 1, 0.
pub fn circle_loop() -> (Manifold, ManifoldPath) {
    let m = atlas::circle();
    let sys = PathChartSystem::new(vec![0.0, 0.5, 0.875, 1.0], vec![0, 1, 0]).expect("valid");
    let rep = PathRep {
        x: vec![-PI / 2.0],
        pieces: (0..3).map(|i| StepCurve::constant(sys.piece(i), &[2.0 * PI])).collect(),
        fibers: None,
    };
    let p = reconstruct(&m, &sys, &rep).expect("loop stays inside its charts");
    (m, p)
}

/// The Möbius bundle with the circle loop as base.
pub fn moebius_loop() -> (BundleAtlas, ManifoldPath) {
    (atlas::moebius(), circle_loop().1)
}

/// Random order-1 global coordinate on `[0, 1]`, continuous by construction.
pub fn random_field<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> RegCurve {
    random_reg(rng, Interval::unit(), dim, 1, 5)
}

/// A random perturbation of `rep` of sup size strictly below `eta`.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, rep: &PathRep, eta: f64) -> Result<PathRep> {
    let s = 0.999 * eta;
    let x = rep.x.iter().map(|v| v + rng.random_range(-s..s)).collect();
    let pieces = rep
        .pieces
        .iter()
        .map(|y| {
            let dom = y.domain();
            let mut breaks = vec![dom.lo()];
            breaks.extend(interior_points(rng, dom, 3));
            breaks.push(dom.hi());
            let values = (1..breaks.len()).map(|_| (0..y.dim()).map(|_| rng.random_range(-s..s)).collect()).collect();
            let dy = StepCurve::new(breaks, values)?;
            crate::regulated::lin_comb(&[(1.0, y), (1.0, &dy)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PathRep { x, pieces, fibers: rep.fibers.clone() })
}
