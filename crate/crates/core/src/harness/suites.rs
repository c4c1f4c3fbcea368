//! Registry of invariant suites driven by `validate`.

use rand::Rng;

use crate::atlas::{self, BundleAtlas, Manifold};
use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, max_dist, max_norm, op_norm, Matrix};
use crate::path::{chart_map, openness_margin, reconstruct, transition_rep, ManifoldPath, PathChartSystem, PathRep};
use crate::regulated::{change_of_variables, sup_distance, Interval, RegCurve, Resolution, SmoothScalarRepar, StepCurve, Top};
use crate::transport::{
    combine, compatibility_automorphisms, deformation_tangent, field_components, Deformation, FieldRep, LiftAutomorphism, PathTrivialization,
    DEFAULT_STEP,
};

use super::exec::Exec;
use super::gen::{self, case_rng};
use super::report::{aggregate, timed, Check, Report, Sense};

/// Parameters shared by all suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: u64,
    /// Overrides the suite's own tolerance where it has one.
    pub tol: Option<f64>,
    pub exec: Exec,
}

impl SuiteConfig {
    pub fn new(seed: u64, count: u64) -> Self {
        Self { seed, count, tol: None, exec: Exec::default() }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub anchor: &'static str,
    /// Meaning of `count` for this suite.
    pub unit: &'static str,
    run: fn(&SuiteConfig) -> Check,
}

impl Suite {
    pub fn run(&self, cfg: &SuiteConfig) -> Check {
        timed(|| (self.run)(cfg))
    }
}

pub const SUITES: &[Suite] = &[
    Suite { name: "concat-isometry", anchor: "concatenation is an isometry", unit: "curve pairs", run: concat_isometry },
    Suite { name: "restriction-contraction", anchor: "restriction is a contraction", unit: "curve/subinterval pairs", run: restriction_contraction },
    Suite { name: "derivative-split", anchor: "value-and-derivative isomorphism", unit: "order-1 curves", run: derivative_split },
    Suite { name: "integral-commutation", anchor: "linear maps commute with integration", unit: "cases", run: integral_commutation },
    Suite { name: "change-of-variables", anchor: "substitution rule", unit: "cases", run: change_of_vars },
    Suite { name: "atlas-roundtrip", anchor: "reconstruction inverts the chart map", unit: "paths per manifold", run: atlas_roundtrip },
    Suite { name: "transition-roundtrip", anchor: "chart-system transition", unit: "sphere paths", run: transition_roundtrip },
    Suite { name: "transition-smoothness", anchor: "transition maps are smooth", unit: "directional probes", run: transition_smoothness },
    Suite { name: "openness", anchor: "chart domains are open", unit: "perturbations per scenario", run: openness },
    Suite { name: "transport-groupoid", anchor: "transport operators form a groupoid", unit: "time triples", run: transport_groupoid },
    Suite { name: "holonomy", anchor: "holonomy of the Möbius bundle", unit: "loops", run: holonomy },
    Suite { name: "norm-equivalence", anchor: "covariant and induced norms are equivalent", unit: "fields per scenario", run: norm_equivalence },
    Suite { name: "compatibility", anchor: "compatible trivializations", unit: "fields per scenario", run: compatibility },
    Suite { name: "deformation-independence", anchor: "deformation tangents are chart independent", unit: "deformations", run: deformation_independence },
];

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Run one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::default();
    if name == "all" {
        for s in SUITES {
            report.push(s.run(cfg));
        }
    } else {
        let s = find(name).ok_or_else(|| Error::BadParams(format!("unknown suite `{name}`")))?;
        report.push(s.run(cfg));
    }
    Ok(report)
}

fn mismatch(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn unit() -> Interval {
    Interval::unit()
}

fn concat_isometry(cfg: &SuiteConfig) -> Check {
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let dim = rng.random_range(1..=3);
        let b = gen::dyadic(&mut rng, 0.0, 1.0, 8).clamp(1.0 / 256.0, 255.0 / 256.0);
        let (d1, d2) = (Interval::new(0.0, b)?, Interval::new(b, 1.0)?);
        let c1 = gen::random_step(&mut rng, d1, dim, 6, 8.0);
        let c2 = gen::random_step(&mut rng, d2, dim, 6, 8.0);
        let c = c1.concat(&c2)?;
        let gap = (c.sup_norm() - c1.sup_norm().max(c2.sup_norm())).abs();
        let inverse_ok = c.restrict(d1)? == c1 && c.restrict(d2)? == c2;
        Ok(gap.max(mismatch(inverse_ok)))
    });
    aggregate("concat-isometry", "concatenation is an isometry", 0.0, Sense::AtMost, out)
}

fn restriction_contraction(cfg: &SuiteConfig) -> Check {
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let k = (case % 3) as usize;
        let dim = rng.random_range(1..=3);
        let c = gen::random_reg(&mut rng, unit(), dim, k, 8);
        let j = gen::random_subinterval(&mut rng, unit());
        Ok(c.restrict(j)?.norm(k)? - c.norm(k)?)
    });
    aggregate("restriction-contraction", "restriction is a contraction", 0.0, Sense::AtMost, out)
}

fn derivative_split(cfg: &SuiteConfig) -> Check {
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let dim = rng.random_range(1..=3);
        let lo = gen::dyadic(&mut rng, -2.0, 2.0, 6);
        let dom = Interval::new(lo, lo + gen::dyadic(&mut rng, 0.25, 2.0, 6))?;
        let c = gen::random_reg(&mut rng, dom, dim, 1, 8);
        let (x, u) = c.derivative_split()?;
        let u_step = u.top_step().expect("regulated").clone();
        let roundtrip = u_step.primitive(&x)? == c;
        let split_bound = max_norm(&x).max(u_step.sup_norm()) - 2.0 * c.norm(1)?;
        // the other direction, from independent data
        let x2 = gen::dyadic_vec(&mut rng, dim, 4.0);
        let u2 = gen::random_step(&mut rng, dom, dim, 8, 4.0);
        let p = u2.primitive(&x2)?;
        let (x3, u3) = p.derivative_split()?;
        let inverse = x3 == x2 && u3.top_step() == Some(&u2);
        let prim_bound = p.norm(1)? - (1.0 + dom.len()) * (max_norm(&x2) + u2.sup_norm());
        Ok(mismatch(roundtrip && inverse).max(split_bound).max(prim_bound))
    });
    aggregate("derivative-split", "value-and-derivative isomorphism", 0.0, Sense::AtMost, out)
}

fn integral_commutation(cfg: &SuiteConfig) -> Check {
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let (d, e) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let a = Matrix::from_fn(e, d, |_, _| rng.random_range(-4i32..=4) as f64);
        let c = gen::random_step(&mut rng, unit(), d, 8, 4.0);
        let x0 = gen::dyadic_vec(&mut rng, d, 4.0);
        let lhs = c.primitive(&x0)?.linear_push(&a)?;
        let rhs = c.linear_push(&a)?.primitive(&mat_vec(&a, &x0))?;
        let mut ok = lhs == rhs;
        for &t in c.breaks() {
            ok &= lhs.eval(t, 0)? == rhs.eval(t, 0)?;
        }
        let j = gen::random_subinterval(&mut rng, unit());
        ok &= mat_vec(&a, &c.integral(j.lo(), j.hi())?) == c.linear_push(&a)?.integral(j.lo(), j.hi())?;
        Ok(mismatch(ok))
    });
    aggregate("integral-commutation", "linear maps commute with integration", 0.0, Sense::AtMost, out)
}

fn change_of_vars(cfg: &SuiteConfig) -> Check {
    const SLOPES: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let mut breaks = vec![0.0];
        breaks.extend(gen::interior_points(&mut rng, unit(), 4));
        breaks.push(1.0);
        let slopes = (1..breaks.len()).map(|_| vec![sign * SLOPES[rng.random_range(0..SLOPES.len())]]).collect();
        let phi0 = gen::dyadic(&mut rng, -1.0, 1.0, 6);
        let phi = RegCurve::new(1, vec![vec![phi0]], Top::Step(StepCurve::new(breaks, slopes)?))?;
        let phi1 = phi.end_value(0)?[0];
        let cdom = Interval::new(phi0.min(phi1), phi0.max(phi1))?;
        let dim = rng.random_range(1..=2);
        let c = gen::random_step(&mut rng, cdom, dim, 6, 4.0);
        let j = gen::random_subinterval(&mut rng, unit());
        let repar = SmoothScalarRepar::certify(phi.clone())?;
        let lhs = change_of_variables(&c, &repar, j.lo(), j.hi())?;
        let (a, b) = (phi.eval(j.lo(), 0)?[0], phi.eval(j.hi(), 0)?[0]);
        let rhs = if a <= b { c.integral(a, b)? } else { c.integral(b, a)?.iter().map(|v| -v).collect() };
        Ok(max_dist(&lhs, &rhs))
    });
    aggregate("change-of-variables", "substitution rule", 0.0, Sense::AtMost, out)
}

fn atlas_roundtrip(cfg: &SuiteConfig) -> Check {
    let catalog = gen::manifold_catalog();
    let n = catalog.len() as u64;
    let out = cfg.exec.map(cfg.count * n, |case| {
        let m = &catalog[(case % n) as usize];
        let mut rng = case_rng(cfg.seed, case);
        let p = gen::random_path(&mut rng, m, gen::natural_speed(m));
        let rep = chart_map(&p);
        let q = reconstruct(m, p.system(), &rep)?;
        Ok(mismatch(q == p && chart_map(&q) == rep))
    });
    aggregate("atlas-roundtrip", "reconstruction inverts the chart map", 0.0, Sense::AtMost, out)
}

/// Sup distance between representations over the same partition.
pub fn rep_distance(a: &PathRep, b: &PathRep) -> Result<f64> {
    if a.pieces.len() != b.pieces.len() {
        return Err(Error::InvalidPath("representations over different partitions".into()));
    }
    let mut d = max_dist(&a.x, &b.x);
    for (p, q) in a.pieces.iter().zip(&b.pieces) {
        d = d.max(sup_distance(p, q)?);
    }
    if let (Some(f), Some(g)) = (&a.fibers, &b.fibers) {
        for (p, q) in f.iter().zip(g) {
            d = d.max(sup_distance(p, q)?);
        }
    }
    Ok(d)
}

/// Default certified tolerance of the sphere round trip.
pub const ROUNDTRIP_TOL: f64 = 1e-7;
pub const ROUNDTRIP_BOUND: f64 = 1e-6;

fn transition_roundtrip(cfg: &SuiteConfig) -> Check {
    let m = atlas::sphere();
    let (one, two) = gen::sphere_systems();
    let tol = cfg.tol.unwrap_or(ROUNDTRIP_TOL);
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let rep = gen::gentle_sphere_rep(&mut rng);
        let there = transition_rep(&m, &one, &two, &rep, Resolution::certified(tol))?;
        let back = transition_rep(&m, &two, &one, &there.rep, Resolution::certified(tol))?;
        let err = rep_distance(&rep, &back.rep)?;
        // refinement-only transitions are exact
        let extra = gen::interior_points(&mut rng, unit(), 3);
        let mut exact = true;
        for sys in [&one, &two] {
            let fine = sys.refine(&extra)?;
            let base = if sys == &one { rep.clone() } else { there.rep.clone() };
            let a = transition_rep(&m, sys, &fine, &base, Resolution::certified(tol))?;
            let b = transition_rep(&m, &fine, sys, &a.rep, Resolution::certified(tol))?;
            exact &= b.rep == base && a.error_bound == 0.0;
        }
        Ok(err.max(mismatch(exact)))
    });
    aggregate("transition-roundtrip", "chart-system transition", ROUNDTRIP_BOUND, Sense::AtMost, out)
}

/// Probe step and grid of the smoothness probe.
pub const PROBE_STEP: f64 = 0.05;
pub const PROBE_CELLS: f64 = 2000.0;
/// Differences below this are rounding noise; the probe then passes.
pub const PROBE_NOISE: f64 = 1e-10;
pub const PROBE_ORDER: f64 = 1.9;

fn rep_norm(r: &PathRep) -> f64 {
    r.pieces.iter().map(StepCurve::sup_norm).fold(max_norm(&r.x), f64::max)
}

/// Observed order of the central difference of `f` at 0 from steps `h, h/2, h/4`.
pub fn central_difference_order(f: impl Fn(f64) -> Result<PathRep>, h: f64) -> Result<f64> {
    let d = |s: f64| -> Result<PathRep> { combine(&[(0.5 / s, &f(s)?), (-0.5 / s, &f(-s)?)]) };
    let (d1, d2, d4) = (d(h)?, d(0.5 * h)?, d(0.25 * h)?);
    let e1 = rep_norm(&combine(&[(1.0, &d1), (-1.0, &d2)])?);
    let e2 = rep_norm(&combine(&[(1.0, &d2), (-1.0, &d4)])?);
    if e1 <= PROBE_NOISE {
        return Ok(f64::INFINITY);
    }
    Ok((e1 / e2).log2())
}

fn transition_smoothness(cfg: &SuiteConfig) -> Check {
    let m = atlas::sphere();
    let (one, two) = gen::sphere_systems();
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let rep = gen::gentle_sphere_rep(&mut rng);
        let dir = PathRep {
            x: gen::dyadic_vec(&mut rng, 2, 0.05),
            pieces: vec![gen::random_step(&mut rng, unit(), 2, 4, 0.05)],
            fibers: None,
        };
        central_difference_order(
            |s| Ok(transition_rep(&m, &one, &two, &combine(&[(1.0, &rep), (s, &dir)])?, Resolution::Uniform { cells_per_unit: PROBE_CELLS })?.rep),
            PROBE_STEP,
        )
    });
    aggregate("transition-smoothness", "transition maps are smooth", PROBE_ORDER, Sense::AtLeast, out)
}

pub const OPENNESS_SCENARIOS: u64 = 20;

/// Scenario `s` of the openness suite: a manifold, a path and its radius.
pub fn openness_scenario(seed: u64, s: u64) -> Result<(Manifold, ManifoldPath, f64)> {
    let catalog = gen::manifold_catalog();
    let m = catalog[(s % catalog.len() as u64) as usize].clone();
    let mut rng = case_rng(seed ^ 0x6f70_656e, s);
    for _ in 0..100 {
        let p = gen::random_path(&mut rng, &m, gen::natural_speed(&m));
        if let Ok(o) = openness_margin(&m, &p) {
            if o.eta > 0.0 && o.eta.is_finite() {
                return Ok((m, p, o.eta));
            }
        }
    }
    Err(Error::Budget("no interior path found".into()))
}

fn openness(cfg: &SuiteConfig) -> Check {
    let scenarios: Vec<Result<(Manifold, ManifoldPath, f64)>> = cfg.exec.map(OPENNESS_SCENARIOS, |s| openness_scenario(cfg.seed, s));
    let per = cfg.count;
    let out = cfg.exec.map(OPENNESS_SCENARIOS * per, |case| {
        let (m, p, eta) = scenarios[(case / per) as usize].as_ref().map_err(Clone::clone)?;
        let mut rng = case_rng(cfg.seed, case);
        let rep = gen::perturb(&mut rng, &chart_map(p), *eta)?;
        Ok(mismatch(reconstruct(m, p.system(), &rep).is_ok()))
    });
    aggregate("openness", "chart domains are open", 0.0, Sense::AtMost, out)
}

/// Trivializations whose frames are signed permutations, so transport is exact.
fn groupoid_scenarios(seed: u64) -> Result<Vec<PathTrivialization>> {
    let mut rng = case_rng(seed ^ 0x6772_6f75, 0);
    let (moebius, loop_path) = gen::moebius_loop();
    let circle_path = gen::random_path(&mut rng, moebius.base(), 2.0);
    let torus = atlas::torus();
    let torus_path = gen::random_path(&mut rng, &torus, 2.0);
    let sphere = atlas::sphere();
    let sphere_path = gen::random_path(&mut rng, &sphere, 1.0);
    Ok(vec![
        PathTrivialization::build(&moebius, &loop_path)?,
        PathTrivialization::build(&moebius, &circle_path)?,
        PathTrivialization::build(&BundleAtlas::tangent(torus), &torus_path)?,
        PathTrivialization::build(&BundleAtlas::trivial(sphere, 2), &sphere_path)?,
    ])
}

fn random_time<R: Rng + ?Sized>(rng: &mut R, knots: &[f64]) -> f64 {
    if rng.random_range(0..4) == 0 {
        knots[rng.random_range(0..knots.len())]
    } else {
        rng.random_range(0.0..=1.0)
    }
}

fn transport_groupoid(cfg: &SuiteConfig) -> Check {
    let trivs = match groupoid_scenarios(cfg.seed) {
        Ok(t) => t,
        Err(e) => return aggregate("transport-groupoid", "transport operators form a groupoid", 0.0, Sense::AtMost, vec![Err(e)]),
    };
    let out = cfg.exec.map(cfg.count, |case| {
        let triv = &trivs[(case % trivs.len() as u64) as usize];
        let mut rng = case_rng(cfg.seed, case);
        let knots = triv.path().system().tau();
        let (r, s, t) = (random_time(&mut rng, knots), random_time(&mut rng, knots), random_time(&mut rng, knots));
        let d = triv.rank();
        let mut ok = triv.transport(t, t)? == Matrix::identity(d, d);
        ok &= triv.transport(t, r)? * triv.transport(s, t)? == triv.transport(s, r)?;
        ok &= inverse(&triv.transport(s, t)?)? == triv.transport(t, s)?;
        Ok(mismatch(ok))
    });
    aggregate("transport-groupoid", "transport operators form a groupoid", 0.0, Sense::AtMost, out)
}

fn holonomy(cfg: &SuiteConfig) -> Check {
    let (bundle, path) = gen::moebius_loop();
    let out = cfg.exec.map(cfg.count.max(1), |_| {
        let h = PathTrivialization::build(&bundle, &path)?.holonomy()?;
        Ok(mismatch(h == -Matrix::identity(1, 1)))
    });
    aggregate("holonomy", "holonomy of the Möbius bundle", 0.0, Sense::AtMost, out)
}

/// Sphere path in the two-chart system, re-expressed from a gentle path.
pub fn two_chart_sphere_path(seed: u64, case: u64) -> Result<(Manifold, ManifoldPath, ManifoldPath)> {
    let m = atlas::sphere();
    let (one, two) = gen::sphere_systems();
    let mut rng = case_rng(seed, case);
    let rep = gen::gentle_sphere_rep(&mut rng);
    let a = reconstruct(&m, &one, &rep)?;
    let out = transition_rep(&m, &one, &two, &rep, Resolution::Uniform { cells_per_unit: DEFORMATION_CELLS })?;
    let b = reconstruct(&m, &two, &out.rep)?;
    Ok((m, a, b))
}

fn norm_scenarios(seed: u64) -> Result<Vec<PathTrivialization>> {
    let (moebius, loop_path) = gen::moebius_loop();
    let (sphere, _, sphere_path) = two_chart_sphere_path(seed ^ 0x6e6f_726d, 0)?;
    let torus = atlas::torus();
    let torus_path = gen::random_path(&mut case_rng(seed ^ 0x6e6f_726d, 1), &torus, 2.0);
    Ok(vec![
        PathTrivialization::build(&moebius, &loop_path)?,
        PathTrivialization::build(&BundleAtlas::tangent(sphere), &sphere_path)?,
        PathTrivialization::build(&BundleAtlas::tangent(torus), &torus_path)?,
    ])
}

fn norm_equivalence(cfg: &SuiteConfig) -> Check {
    let trivs = match norm_scenarios(cfg.seed) {
        Ok(t) => t,
        Err(e) => return aggregate("norm-equivalence", "covariant and induced norms are equivalent", 1.0, Sense::AtMost, vec![Err(e)]),
    };
    let n = trivs.len() as u64;
    let out = cfg.exec.map(cfg.count * n, |case| {
        let triv = &trivs[(case % n) as usize];
        let mut rng = case_rng(cfg.seed, case);
        let w = gen::random_field(&mut rng, triv.rank());
        let ne = triv.norm_equivalence(&w)?;
        if !(ne.lower_ok && ne.upper_ok) {
            return Err(Error::InvalidCurve(format!("one-sided norm bound violated: {ne:?}")));
        }
        Ok(ne.ratio / ne.bound)
    });
    aggregate("norm-equivalence", "covariant and induced norms are equivalent", 1.0, Sense::AtMost, out)
}

/// Two chart systems for the circle loop, and trivializations over both.
pub struct CompatScenario {
    pub tangent_a: PathTrivialization,
    pub tangent_b: PathTrivialization,
    pub fiber_a: PathTrivialization,
    pub fiber_b: PathTrivialization,
}

pub fn moebius_compat_scenario() -> Result<CompatScenario> {
    let (bundle, a) = gen::moebius_loop();
    let m = bundle.base().clone();
    let sys_b = PathChartSystem::new(vec![0.0, 0.3, 1.0], vec![0, 1])?;
    let out = transition_rep(&m, a.system(), &sys_b, &chart_map(&a), Resolution::certified(1e-12))?;
    let b = reconstruct(&m, &sys_b, &out.rep)?;
    let tb = BundleAtlas::tangent(m);
    Ok(CompatScenario {
        tangent_a: PathTrivialization::build(&tb, &a)?,
        tangent_b: PathTrivialization::build(&tb, &b)?,
        fiber_a: PathTrivialization::build(&bundle, &a)?,
        fiber_b: PathTrivialization::build(&bundle, &b)?,
    })
}

fn compatibility(cfg: &SuiteConfig) -> Check {
    const NAME: &str = "compatibility";
    const ANCHOR: &str = "compatible trivializations";
    let setup = moebius_compat_scenario().and_then(|s| {
        let base = compatibility_automorphisms(&s.tangent_a, &s.tangent_b)?;
        let fiber = compatibility_automorphisms(&s.fiber_a, &s.fiber_b)?;
        let lift = LiftAutomorphism::new(base, fiber)?;
        let sphere = two_chart_sphere_path(cfg.seed ^ 0x636f_6d70, 0)?;
        let tb = BundleAtlas::tangent(sphere.0.clone());
        let sphere_a = compatibility_automorphisms(&PathTrivialization::build(&tb, &sphere.1)?, &PathTrivialization::build(&tb, &sphere.2)?)?;
        Ok((s, lift, sphere_a))
    });
    let (s, lift, sphere_a) = match setup {
        Ok(v) => v,
        Err(e) => return aggregate(NAME, ANCHOR, 0.0, Sense::AtMost, vec![Err(e)]),
    };
    let out = cfg.exec.map(cfg.count, |case| {
        let mut rng = case_rng(cfg.seed, case);
        let t = rng.random_range(0.0..=1.0);
        // the tangent block of the lift automorphism is the base automorphism
        let mut ok = lift.project_base(t)? == lift.base.eval(t)?;
        // rep_B = A rep_A, checked against chart components in B
        let rep_a = FieldRep { phi: gen::random_field(&mut rng, 1), theta: Some(gen::random_step(&mut rng, unit(), 1, 5, 4.0)) };
        let rep_b = lift.apply(&rep_a)?;
        let ca = field_components(&s.tangent_a, Some(&s.fiber_a), &rep_a)?;
        let cb = field_components(&s.tangent_b, Some(&s.fiber_b), &rep_b)?;
        let (sa, sb) = (s.tangent_a.path().system(), s.tangent_b.path().system());
        let (ia, ib) = (sa.piece_index(t)?, sb.piece_index(t)?);
        let x = s.tangent_a.path().piece(ia).eval(t, 0)?;
        let (from, to) = (sa.chart(ia), sb.chart(ib));
        let gt = s.tangent_a.bundle().cocycle(from, to, &x)?;
        let ge = s.fiber_a.bundle().cocycle(from, to, &x)?;
        let (fa, fb) = (ca.fiber.as_ref().expect("fiber"), cb.fiber.as_ref().expect("fiber"));
        ok &= max_dist(&mat_vec(&gt, &ca.tangent[ia].eval(t, 0)?), &cb.tangent[ib].eval(t, 0)?) <= 1e-12;
        ok &= mat_vec(&ge, fa[ia].eval(t)?) == fb[ib].eval(t)?;
        // ‖X‖_B / ‖X‖_A within [1/κ, κ]
        let kappa = lift.fiber.bounds()?.kappa();
        let th_a = rep_a.theta.as_ref().expect("fiber").sup_norm();
        let th_b = rep_b.theta.as_ref().expect("fiber").sup_norm();
        ok &= th_b <= kappa * th_a && th_a <= kappa * th_b;
        let bounds = sphere_a.bounds()?;
        let v = gen::dyadic_vec(&mut rng, 2, 4.0);
        let a = sphere_a.eval(t)?;
        let (nv, nav) = (max_norm(&v), max_norm(&mat_vec(&a, &v)));
        ok &= op_norm(&a) <= bounds.norm * (1.0 + 1e-9) && nav <= bounds.kappa() * nv * (1.0 + 1e-9) && nv <= bounds.kappa() * nav * (1.0 + 1e-9);
        Ok(mismatch(ok))
    });
    aggregate(NAME, ANCHOR, 0.0, Sense::AtMost, out)
}

/// Uniform grid of the transitioned deformations.
pub const DEFORMATION_CELLS: f64 = 10_000.0;
pub const DEFORMATION_BOUND: f64 = 1e-6;
const DEFORMATION_SAMPLES: usize = 200;

/// A quadratic deformation of a gentle sphere path in the single-chart
/// system, and the same family re-expressed in the two-chart system.
pub fn sphere_deformations(seed: u64, case: u64) -> (Deformation, Deformation) {
    let m = atlas::sphere();
    let (one, two) = gen::sphere_systems();
    let mut rng = case_rng(seed, case);
    let rep = gen::gentle_sphere_rep(&mut rng);
    let mut dir = || PathRep { x: gen::dyadic_vec(&mut rng, 2, 0.1), pieces: vec![gen::random_step(&mut rng, unit(), 2, 4, 0.1)], fibers: None };
    let (v, w) = (dir(), dir());
    let da = Deformation::new(one.clone(), 0.05, move |e| combine(&[(1.0, &rep), (e, &v), (e * e, &w)]));
    let inner = da.clone();
    let db = Deformation::new(two.clone(), 0.05, move |e| {
        Ok(transition_rep(&m, &one, &two, &inner.eval(e)?, Resolution::Uniform { cells_per_unit: DEFORMATION_CELLS })?.rep)
    });
    (da, db)
}

/// Largest pointwise gap between the tangent in system B and the
/// compatibility transport of the tangent in system A.
pub fn deformation_gap(da: &Deformation, db: &Deformation, h: f64) -> Result<f64> {
    let m = atlas::sphere();
    let ta = deformation_tangent(&m, None, da, h)?;
    let tb = deformation_tangent(&m, None, db, h)?;
    let a = compatibility_automorphisms(&ta.tangent, &tb.tangent)?;
    let mut gap = 0.0_f64;
    for k in 0..=DEFORMATION_SAMPLES {
        let t = k as f64 / DEFORMATION_SAMPLES as f64;
        let pa = ta.field.phi.eval(t, 0)?;
        let pb = tb.field.phi.eval(t, 0)?;
        gap = gap.max(max_dist(&mat_vec(&a.eval(t)?, &pa), &pb));
    }
    Ok(gap)
}

fn deformation_independence(cfg: &SuiteConfig) -> Check {
    let out = cfg.exec.map(cfg.count, |case| {
        let (da, db) = sphere_deformations(cfg.seed, case);
        deformation_gap(&da, &db, DEFAULT_STEP)
    });
    aggregate("deformation-independence", "deformation tangents are chart independent", DEFORMATION_BOUND, Sense::AtMost, out)
}
