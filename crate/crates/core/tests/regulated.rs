//! Property tests for step and regulated curves. Values are dyadic so that
//! the exact identities can be asserted with `==`.

use pathatlas::linalg::{max_dist, Matrix};
use pathatlas::regulated::{image_net, Interval, RegCurve, StepCurve};
use proptest::prelude::*;

const DIM: usize = 2;

fn dyadic(n: i32) -> f64 {
    f64::from(n) / 64.0
}

/// Step curve on `[lo, hi]` with up to six pieces and dyadic breaks and values.
fn step_on(lo: f64, hi: f64) -> impl Strategy<Value = StepCurve> {
    (prop::collection::btree_set(1u32..64, 0..6), prop::collection::vec(-256i32..256, 6 * DIM)).prop_map(move |(cuts, vals)| {
        let mut breaks = vec![lo];
        breaks.extend(cuts.iter().map(|&c| lo + (hi - lo) * f64::from(c) / 64.0));
        breaks.push(hi);
        let values = (0..breaks.len() - 1).map(|i| vals[i * DIM..(i + 1) * DIM].iter().map(|&v| dyadic(v)).collect()).collect();
        StepCurve::new(breaks, values).unwrap()
    })
}

fn unit_step() -> impl Strategy<Value = StepCurve> {
    step_on(0.0, 1.0)
}

fn subinterval() -> impl Strategy<Value = Interval> {
    (0u32..64, 1u32..=64).prop_filter_map("nonempty", |(a, b)| (a < b).then(|| Interval::new(f64::from(a) / 64.0, f64::from(b) / 64.0).unwrap()))
}

fn matrix() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-8i32..8, 3 * DIM).prop_map(|v| Matrix::from_iterator(3, DIM, v.into_iter().map(|x| f64::from(x) / 4.0)))
}

/// Sup norm straight from the piece values.
fn sup_oracle(c: &StepCurve) -> f64 {
    c.values().flat_map(|v| v.iter()).fold(0.0f64, |m, x| m.max(x.abs()))
}

/// ∫ₐᵇ by summing overlap length times value piece by piece.
fn integral_oracle(c: &StepCurve, a: f64, b: f64) -> Vec<f64> {
    let mut out = vec![0.0; c.dim()];
    for (lo, hi, v) in c.pieces() {
        let w = (hi.min(b) - lo.max(a)).max(0.0);
        for (o, x) in out.iter_mut().zip(v) {
            *o += w * x;
        }
    }
    out
}

proptest! {
    #[test]
    fn concat_is_an_isometry(f in step_on(0.0, 1.0), g in step_on(1.0, 2.0)) {
        let h = f.concat(&g).unwrap();
        prop_assert_eq!(h.sup_norm(), f.sup_norm().max(g.sup_norm()));
        prop_assert_eq!(h.restrict(f.domain()).unwrap(), f);
        prop_assert_eq!(h.restrict(g.domain()).unwrap(), g);
    }

    #[test]
    fn sup_norm_matches_piece_values(f in unit_step()) {
        prop_assert_eq!(f.sup_norm(), sup_oracle(&f));
    }

    #[test]
    fn restriction_contracts(f in unit_step(), j in subinterval()) {
        let r = f.restrict(j).unwrap();
        prop_assert_eq!(r.domain(), j);
        prop_assert!(r.sup_norm() <= f.sup_norm());
        for (a, b, v) in r.pieces() {
            prop_assert_eq!(f.eval(0.5 * (a + b)).unwrap(), v);
        }
    }

    #[test]
    fn evaluation_is_right_continuous(f in unit_step()) {
        let br = f.breaks();
        for i in 0..f.num_pieces() {
            prop_assert_eq!(f.eval(br[i]).unwrap(), f.value(i));
            if i > 0 {
                prop_assert_eq!(f.left_limit(br[i]).unwrap(), f.value(i - 1));
            }
        }
        prop_assert!(f.eval(1.5).is_err());
    }

    #[test]
    fn integral_matches_oracle(f in unit_step(), j in subinterval()) {
        let got = f.integral(j.lo(), j.hi()).unwrap();
        prop_assert!(max_dist(&got, &integral_oracle(&f, j.lo(), j.hi())) < 1e-12);
    }

    #[test]
    fn linear_push_commutes_with_integration(f in unit_step(), a in matrix()) {
        let pushed = f.linear_push(&a).unwrap().integral(0.0, 1.0).unwrap();
        let direct = &a * nalgebra::DVector::from_vec(f.integral(0.0, 1.0).unwrap());
        prop_assert!(max_dist(&pushed, direct.as_slice()) < 1e-12);
    }

    #[test]
    fn primitive_and_derivative_split_are_inverse(f in unit_step(), x in prop::collection::vec(-64i32..64, DIM)) {
        let x0: Vec<f64> = x.into_iter().map(dyadic).collect();
        let c = RegCurve::from_step(f.clone()).primitive(&x0).unwrap();
        prop_assert_eq!(c.order(), 1);
        let (head, rest) = c.derivative_split().unwrap();
        prop_assert_eq!(&head, &x0);
        prop_assert_eq!(rest.top_step().unwrap(), &f);
        // the primitive at the end is x₀ + ∫f
        let end = c.end_value(0).unwrap();
        let expect: Vec<f64> = x0.iter().zip(integral_oracle(&f, 0.0, 1.0)).map(|(a, b)| a + b).collect();
        prop_assert!(max_dist(&end, &expect) < 1e-12);
    }

    #[test]
    fn image_net_covers_the_curve(f in unit_step(), k in 1u32..6) {
        let eps = 1.0 / f64::from(1 << k);
        let c = RegCurve::from_step(f).primitive(&[0.0; DIM]).unwrap();
        let net = image_net(&c, eps).unwrap();
        for i in 0..=200 {
            let p = c.eval(f64::from(i) / 200.0, 0).unwrap();
            let d = net.iter().map(|q| max_dist(&p, q)).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= eps + 1e-12, "point at distance {} from the net", d);
        }
    }
}
