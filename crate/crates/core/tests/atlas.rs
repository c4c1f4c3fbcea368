use pathatlas::atlas::{builtin, circle, moebius, sphere, torus, BundleAtlas, Descriptor, Manifold, BUILTIN_NAMES};
use pathatlas::harness::gen::case_rng;
use pathatlas::linalg::{max_dist, max_norm, Matrix};
use proptest::prelude::*;

fn multi_chart() -> Vec<Manifold> {
    vec![circle(), sphere(), torus()]
}

/// Central-difference Jacobian of `f` at `x`.
fn fd_jacobian(f: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> Matrix {
    let n = x.len();
    let m = f(x).len();
    let mut j = Matrix::zeros(m, n);
    for c in 0..n {
        let (mut a, mut b) = (x.to_vec(), x.to_vec());
        a[c] += h;
        b[c] -= h;
        let (fa, fb) = (f(&a), f(&b));
        for r in 0..m {
            j[(r, c)] = (fa[r] - fb[r]) / (2.0 * h);
        }
    }
    j
}

#[test]
fn every_builtin_builds_from_its_descriptor() {
    for name in BUILTIN_NAMES {
        let d: Descriptor = serde_json::from_value(serde_json::json!({ "name": name })).unwrap();
        let b = d.build().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(b.manifold().dim() >= 1);
    }
    assert!(builtin("klein-bottle", &serde_json::json!({})).is_err());
}

#[test]
fn sphere_transition_is_the_inversion() {
    let s = sphere();
    let y = s.transfer(0, 1, &[2.0, 0.0]).unwrap();
    assert_eq!(y, vec![0.5, 0.0]);
    // both charts embed to the same point of the unit sphere
    let p = s.chart(0).unwrap().embed(&[2.0, 0.0]).unwrap();
    let q = s.chart(1).unwrap().embed(&y).unwrap();
    assert!(max_dist(&p, &q) < 1e-15);
    assert!((p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-15);
    assert!(s.transfer(0, 1, &[0.0, 0.0]).is_err());
}

#[test]
fn moebius_cocycle_signs() {
    let b = moebius();
    let one = Matrix::from_element(1, 1, 1.0);
    let flip = Matrix::from_element(1, 1, -1.0);
    let mut rng = case_rng(0, 0);
    let mut seen = (false, false);
    for _ in 0..200 {
        let x = b.base().sample_overlap(0, 1, &mut rng).unwrap();
        let g = b.cocycle(0, 1, &x).unwrap();
        if x[0] > 0.0 && x[0] < std::f64::consts::PI {
            assert_eq!(g, one);
            seen.0 = true;
        } else {
            assert_eq!(g, flip);
            seen.1 = true;
        }
    }
    assert_eq!(seen, (true, true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transitions_invert_each_other(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        for m in multi_chart() {
            for i in 0..m.num_charts() {
                for j in 0..m.num_charts() {
                    if i == j {
                        continue;
                    }
                    if let Some(x) = m.sample_overlap(i, j, &mut rng) {
                        let y = m.transfer(i, j, &x).unwrap();
                        let back = m.transfer(j, i, &y).unwrap();
                        prop_assert!(max_dist(&back, &x) < 1e-12, "{} {i}->{j} at {:?}", m.name(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn tangent_cocycle_matches_finite_differences(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 1);
        for m in multi_chart() {
            for (i, j) in [(0, 1), (1, 0)] {
                let Some(x) = m.sample_overlap(i, j, &mut rng) else { continue };
                // stay clear of the overlap boundary so the difference stencil fits
                if m.overlap_margin(i, j, &x).unwrap() < 1e-3 {
                    continue;
                }
                let fd = fd_jacobian(|p| m.transfer(i, j, p).unwrap(), &x, 1e-5);
                let jac = m.tangent_cocycle(i, j, &x).unwrap();
                let scale = 1.0 + max_norm(jac.as_slice());
                prop_assert!(max_norm((&jac - &fd).as_slice()) < 1e-5 * scale, "{} {i}->{j}", m.name());
            }
        }
    }

    #[test]
    fn bundle_cocycles_compose(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 2);
        for b in [moebius(), BundleAtlas::tangent(sphere()), BundleAtlas::tangent(torus())] {
            let m = b.base();
            let Some(x) = m.sample_overlap(0, 1, &mut rng) else { continue };
            let y = m.transfer(0, 1, &x).unwrap();
            // g_{1→0}(y) g_{0→1}(x) = Id
            let round = b.cocycle(1, 0, &y).unwrap() * b.cocycle(0, 1, &x).unwrap();
            let d = b.rank();
            prop_assert!(max_norm((round - Matrix::identity(d, d)).as_slice()) < 1e-12, "{}", b.name());
        }
    }
}
