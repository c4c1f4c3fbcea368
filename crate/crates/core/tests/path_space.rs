use pathatlas::atlas::{euclidean, moebius, sphere, Manifold, Point, Region};
use pathatlas::harness::gen;
use pathatlas::linalg::max_dist;
use pathatlas::path::{
    assemble, chart_map, disassemble, find_chart_system, in_neighborhood, lift_chart_map, openness_margin, path_in_neighborhood, reconstruct,
    reconstruct_lift, transition_lift_rep, transition_rep, ManifoldPath, Membership, NeighborhoodSpec, PathChartSystem, PathRep,
};
use pathatlas::regulated::{Interval, Resolution, StepCurve};
use pathatlas::Error;

fn embedded(m: &Manifold, p: &ManifoldPath, t: f64) -> Vec<f64> {
    let pt = p.eval(t).unwrap();
    m.chart(pt.chart).unwrap().embed(&pt.coords).unwrap()
}

fn plane_rep() -> PathRep {
    let y = StepCurve::new(vec![0.0, 0.25, 0.75, 1.0], vec![vec![0.5, 0.0], vec![-0.25, 0.5], vec![0.0, -1.0]]).unwrap();
    PathRep { x: vec![0.125, -0.25], pieces: vec![y], fibers: None }
}

#[test]
fn single_chart_path_is_its_own_primitive() {
    let m = euclidean(2, None).unwrap();
    let rep = plane_rep();
    let p = reconstruct(&m, &PathChartSystem::single(0), &rep).unwrap();
    assert_eq!(chart_map(&p), rep);
    // closed-form positions at the breaks
    for (t, want) in [(0.0, [0.125, -0.25]), (0.25, [0.25, -0.25]), (0.75, [0.125, 0.0]), (1.0, [0.125, -0.25])] {
        assert!(max_dist(&p.eval(t).unwrap().coords, &want) < 1e-15, "t = {t}");
    }
    assert_eq!(assemble(&rep).unwrap(), p.piece(0).clone());
}

#[test]
fn assemble_and_disassemble_are_inverse() {
    let sys = PathChartSystem::new(vec![0.0, 0.5, 1.0], vec![0, 0]).unwrap();
    let m = euclidean(2, None).unwrap();
    let whole = reconstruct(&m, &PathChartSystem::single(0), &plane_rep()).unwrap();
    let split = disassemble(whole.piece(0), &sys).unwrap();
    assert_eq!(split.pieces.len(), 2);
    assert_eq!(split.pieces[0].domain(), Interval::new(0.0, 0.5).unwrap());
    let back = assemble(&split).unwrap();
    for i in 0..=16 {
        let t = f64::from(i) / 16.0;
        assert_eq!(back.eval(t, 0).unwrap(), whole.piece(0).eval(t, 0).unwrap());
    }
}

#[test]
fn identical_and_refining_transitions_are_exact() {
    let m = euclidean(2, None).unwrap();
    let rep = plane_rep();
    let single = PathChartSystem::single(0);
    let same = transition_rep(&m, &single, &single, &rep, Resolution::certified(1e-7)).unwrap();
    assert_eq!(same.rep, rep);
    assert_eq!(same.error_bound, 0.0);

    let finer = PathChartSystem::new(vec![0.0, 0.3, 1.0], vec![0, 0]).unwrap();
    let out = transition_rep(&m, &single, &finer, &rep, Resolution::certified(1e-7)).unwrap();
    assert_eq!(out.error_bound, 0.0);
    assert_eq!(out.rep.pieces[0], rep.pieces[0].restrict(finer.piece(0)).unwrap());
    assert_eq!(out.rep.pieces[1], rep.pieces[0].restrict(finer.piece(1)).unwrap());
    let back = transition_rep(&m, &finer, &single, &out.rep, Resolution::certified(1e-7)).unwrap();
    assert_eq!(back.rep, rep);
}

#[test]
fn sphere_transition_preserves_the_embedded_path() {
    let m = sphere();
    let (a, b) = gen::sphere_systems();
    for case in 0..3 {
        let rep = gen::gentle_sphere_rep(&mut gen::case_rng(11, case));
        let p = reconstruct(&m, &a, &rep).unwrap();
        let out = transition_rep(&m, &a, &b, &rep, Resolution::certified(1e-8)).unwrap();
        assert!(out.error_bound <= 1e-8);
        let q = reconstruct(&m, &b, &out.rep).unwrap();
        for i in 0..=64 {
            let t = f64::from(i) / 64.0;
            // stereographic inverse is 2-Lipschitz here, so the image error is at most twice the coordinate error
            assert!(max_dist(&embedded(&m, &p, t), &embedded(&m, &q, t)) < 1e-6, "case {case} t {t}");
        }
        assert_eq!(q.eval(0.75).unwrap().chart, 1);
    }
}

#[test]
fn moebius_lifts_round_trip() {
    let (bundle, base) = gen::moebius_loop();
    let lift = gen::random_lift(&mut gen::case_rng(5, 0), &bundle, base.clone());
    let rep = lift_chart_map(&lift);
    let again = reconstruct_lift(&bundle, base.system(), &rep).unwrap();
    assert_eq!(lift_chart_map(&again), rep);

    let finer = PathChartSystem::new(vec![0.0, 0.25, 0.5, 0.875, 1.0], vec![0, 0, 1, 0]).unwrap();
    let res = Resolution::certified(1e-9);
    let there = transition_lift_rep(&bundle, base.system(), &finer, &rep, res).unwrap();
    let back = transition_lift_rep(&bundle, &finer, base.system(), &there.rep, res).unwrap();
    assert_eq!(back.rep, rep);
    assert_eq!(moebius().rank(), 1);
}

#[test]
fn openness_radius_admits_perturbations() {
    let m = euclidean(2, Some(1.0)).unwrap();
    let sys = PathChartSystem::single(0);
    let p = reconstruct(&m, &sys, &plane_rep()).unwrap();
    let o = openness_margin(&m, &p).unwrap();
    assert!(o.eta > 0.0 && o.eta < 1.0, "{}", o.eta);
    let mut rng = gen::case_rng(2, 0);
    for _ in 0..50 {
        let q = gen::perturb(&mut rng, &chart_map(&p), o.eta).unwrap();
        reconstruct(&m, &sys, &q).unwrap();
    }
    // a perturbation far beyond the radius leaves the cube
    let far = PathRep { x: vec![0.99, 0.0], ..plane_rep() };
    assert!(matches!(reconstruct(&m, &sys, &far), Err(Error::EscapesChart { .. })));
}

#[test]
fn neighborhood_membership() {
    let m = euclidean(2, None).unwrap();
    let p = reconstruct(&m, &PathChartSystem::single(0), &plane_rep()).unwrap();
    let mut spec = NeighborhoodSpec { k: vec![(0.0, 1.0)], v: Some(Region::cube(vec![0.0, 0.0], 0.5)), ..Default::default() };
    assert_eq!(path_in_neighborhood(&p, &spec).unwrap(), Membership::Inside);
    // the path reaches x = 0.25 at t = 0.25
    spec.v = Some(Region::cube(vec![0.0, 0.0], 0.2));
    match path_in_neighborhood(&p, &spec).unwrap() {
        Membership::Outside { time } => assert!(time <= 0.25, "{time}"),
        other => panic!("{other:?}"),
    }
    // restricting K to the later times avoids the excursion
    spec.k = vec![(0.75, 0.9)];
    spec.w = Some(Region::cube(vec![0.0, 0.0], 2.0));
    assert_eq!(path_in_neighborhood(&p, &spec).unwrap(), Membership::Inside);
    spec.k = vec![(0.5, 2.0)];
    assert!(path_in_neighborhood(&p, &spec).is_err());

    let (bundle, base) = gen::moebius_loop();
    let lift = gen::random_lift(&mut gen::case_rng(1, 0), &bundle, base);
    let spec = NeighborhoodSpec { k: vec![(0.0, 1.0)], u: Some(Region::whole(2)), ..Default::default() };
    assert_eq!(in_neighborhood(&lift, &spec).unwrap(), Membership::Inside);
}

#[test]
fn chart_system_search() {
    let m = euclidean(2, None).unwrap();
    let samples: Vec<(f64, Point)> = (0..=10).map(|i| (f64::from(i) / 10.0, Point { chart: 0, coords: vec![f64::from(i), 0.0] })).collect();
    assert_eq!(find_chart_system(&m, &samples, 10.0).unwrap(), PathChartSystem::single(0));

    // meridian from the south pole to the north pole
    let s = sphere();
    let samples: Vec<(f64, Point)> = (0..=100)
        .map(|i| {
            let t = f64::from(i) / 100.0;
            let r = (std::f64::consts::FRAC_PI_2 * t).tan();
            let p = if t <= 0.5 { Point { chart: 0, coords: vec![r, 0.0] } } else { Point { chart: 1, coords: vec![if i == 100 { 0.0 } else { 1.0 / r }, 0.0] } };
            (t, p)
        })
        .collect();
    let sys = find_chart_system(&s, &samples, 4.0).unwrap();
    assert_eq!(sys.charts(), &[0, 1]);

    let cube = euclidean(2, Some(1.0)).unwrap();
    let bad = vec![(0.0, Point { chart: 0, coords: vec![0.0, 0.0] }), (1.0, Point { chart: 0, coords: vec![5.0, 0.0] })];
    assert!(matches!(find_chart_system(&cube, &bad, 1.0), Err(Error::CoverFailure { time }) if time == 1.0));
}
