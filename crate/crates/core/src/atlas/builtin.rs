//! Example catalog: Euclidean space, the circle with two arcs, the
//! stereographic sphere, the flat torus, and bundles over them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{BundleAtlas, Chart, Manifold, MatrixField, Region, SmoothMap};

const TAU: f64 = 2.0 * PI;

/// Builtin name plus parameters, e.g. `{"name":"euclidean","params":{"dim":2}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Descriptor {
    pub name: String,
    #[serde(default = "empty_params")]
    pub params: Value,
}

fn empty_params() -> Value {
    Value::Object(Default::default())
}

impl Descriptor {
    pub fn new(name: &str) -> Self {
        Self { name: name.into(), params: empty_params() }
    }

    pub fn with_params(name: &str, params: Value) -> Self {
        Self { name: name.into(), params }
    }

    pub fn build(&self) -> Result<Builtin> {
        builtin(&self.name, &self.params)
    }
}

/// Result of [`builtin`]: a manifold, or a bundle (which carries its base).
#[derive(Debug, Clone)]
pub enum Builtin {
    Manifold(Manifold),
    Bundle(BundleAtlas),
}

impl Builtin {
    pub fn manifold(&self) -> &Manifold {
        match self {
            Builtin::Manifold(m) => m,
            Builtin::Bundle(b) => b.base(),
        }
    }

    pub fn bundle(&self) -> Option<&BundleAtlas> {
        match self {
            Builtin::Manifold(_) => None,
            Builtin::Bundle(b) => Some(b),
        }
    }
}

pub const BUILTIN_NAMES: &[&str] =
    &["euclidean", "circle-two-arcs", "sphere-stereo", "torus", "trivial-bundle", "tangent-bundle", "moebius-line-bundle"];

pub fn builtin(name: &str, params: &Value) -> Result<Builtin> {
    Ok(match name {
        "euclidean" => {
            let dim = param_usize(params, "dim", 2)?;
            let radius = param_f64(params, "radius")?;
            Builtin::Manifold(euclidean(dim, radius)?)
        }
        "circle-two-arcs" => Builtin::Manifold(circle()),
        "sphere-stereo" => Builtin::Manifold(sphere()),
        "torus" => Builtin::Manifold(torus()),
        "trivial-bundle" => {
            let rank = param_usize(params, "rank", 1)?;
            let base = base_param(params, "euclidean")?;
            Builtin::Bundle(BundleAtlas::trivial(base, rank))
        }
        "tangent-bundle" => Builtin::Bundle(BundleAtlas::tangent(base_param(params, "sphere-stereo")?)),
        "moebius-line-bundle" => Builtin::Bundle(moebius()),
        other => return Err(Error::UnknownBuiltin(other.into())),
    })
}

fn param_usize(params: &Value, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(default),
        Some(v) => match v.as_u64() {
            Some(n) if n > 0 => Ok(n as usize),
            _ => Err(Error::BadParams(format!("`{key}` must be a positive integer, got {v}"))),
        },
    }
}

fn param_f64(params: &Value, key: &str) -> Result<Option<f64>> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => match v.as_f64() {
            Some(x) if x > 0.0 && x.is_finite() => Ok(Some(x)),
            _ => Err(Error::BadParams(format!("`{key}` must be a positive number, got {v}"))),
        },
    }
}

fn base_param(params: &Value, default: &str) -> Result<Manifold> {
    let desc = match params.get("base") {
        None | Some(Value::Null) => Descriptor::new(default),
        Some(Value::String(s)) => Descriptor::new(s),
        Some(v) => serde_json::from_value(v.clone())?,
    };
    match desc.build()? {
        Builtin::Manifold(m) => Ok(m),
        Builtin::Bundle(_) => Err(Error::BadParams(format!("base `{}` is a bundle, not a manifold", desc.name))),
    }
}

/// ℝ^m with one chart; the open cube `|x|∞ < radius` when a radius is given.
pub fn euclidean(dim: usize, radius: Option<f64>) -> Result<Manifold> {
    let (codomain, half) = match radius {
        Some(r) => (Region::cube(vec![0.0; dim], r), 0.9 * r),
        None => (Region::whole(dim), 2.0),
    };
    let chart = Chart::new("id", codomain, (vec![-half; dim], vec![half; dim])).with_embedding(|x| x.to_vec());
    Manifold::new(format!("euclidean({dim})"), dim, vec![chart], Vec::new())
}

/// Margin of `θ` in chart `a` of the circle: `(-π, π)` for 0, `(0, 2π)` for 1.
fn arc_margin(a: usize, t: f64) -> f64 {
    match a {
        0 => PI - t.abs(),
        _ => t.min(TAU - t),
    }
}

/// Margin inside the overlap, seen from chart `a`.
fn arc_overlap_margin(a: usize, t: f64) -> f64 {
    match a {
        0 => arc_margin(0, t).min(t.abs()),
        _ => arc_margin(1, t).min((t - PI).abs()),
    }
}

fn arc_transfer(a: usize, b: usize, t: f64) -> f64 {
    match (a, b) {
        (0, 1) if t < 0.0 => t + TAU,
        (1, 0) if t > PI => t - TAU,
        _ => t,
    }
}

fn arc_chart(a: usize) -> Chart {
    let (lo, hi) = if a == 0 { (-PI, PI) } else { (0.0, TAU) };
    Chart::new(
        if a == 0 { "(-pi,pi)" } else { "(0,2pi)" },
        Region::new(1, format!("arc{a}"), move |x| arc_margin(a, x[0])),
        (vec![lo + 0.05], vec![hi - 0.05]),
    )
    .with_embedding(|x| vec![x[0].cos(), x[0].sin()])
}

/// Unit circle, charts `θ ∈ (-π, π)` and `θ' ∈ (0, 2π)`; the overlap has an
/// upper arc (`θ' = θ`) and a lower arc (`θ' = θ + 2π`).
pub fn circle() -> Manifold {
    let mut pairs = Vec::new();
    for (a, b) in [(0usize, 1usize), (1, 0)] {
        let dom = Region::new(1, format!("arc{a}∩arc{b}"), move |x| arc_overlap_margin(a, x[0]));
        let map = SmoothMap::new(1, 1, dom, move |x, o| o[0] = arc_transfer(a, b, x[0]))
            .with_jacobian(|_, j| j[(0, 0)] = 1.0)
            .piecewise_affine();
        pairs.push(((a, b), map));
    }
    Manifold::new("circle-two-arcs", 1, vec![arc_chart(0), arc_chart(1)], pairs).expect("well-formed")
}

/// Flat torus as a product of two circles: chart `2a + b` uses arc chart `a`
/// for the first angle and `b` for the second.
pub fn torus() -> Manifold {
    let charts = (0..4)
        .map(|c| {
            let (a, b) = (c / 2, c % 2);
            let (ca, cb) = (arc_chart(a), arc_chart(b));
            Chart::new(
                format!("{}x{}", ca.name, cb.name),
                Region::new(2, format!("torus{c}"), move |x| arc_margin(a, x[0]).min(arc_margin(b, x[1]))),
                (vec![ca.sample_box.0[0], cb.sample_box.0[0]], vec![ca.sample_box.1[0], cb.sample_box.1[0]]),
            )
            .with_embedding(|x| vec![x[0].cos(), x[0].sin(), x[1].cos(), x[1].sin()])
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..4usize {
        for j in 0..4usize {
            if i == j {
                continue;
            }
            let (a, b, c, d) = (i / 2, i % 2, j / 2, j % 2);
            let m = move |from: usize, to: usize, t: f64| if from == to { arc_margin(from, t) } else { arc_overlap_margin(from, t) };
            let dom = Region::new(2, format!("torus{i}∩torus{j}"), move |x| m(a, c, x[0]).min(m(b, d, x[1])));
            let map = SmoothMap::new(2, 2, dom, move |x, o| {
                o[0] = arc_transfer(a, c, x[0]);
                o[1] = arc_transfer(b, d, x[1]);
            })
            .with_jacobian(|_, j| j.copy_from(&Matrix::identity(2, 2)))
            .piecewise_affine();
            pairs.push(((i, j), map));
        }
    }
    Manifold::new("torus", 2, charts, pairs).expect("well-formed")
}

fn inversion(x: &[f64], o: &mut [f64]) {
    let r2 = x[0] * x[0] + x[1] * x[1];
    o[0] = x[0] / r2;
    o[1] = x[1] / r2;
}

fn inversion_jacobian(x: &[f64], j: &mut Matrix) {
    let r2 = x[0] * x[0] + x[1] * x[1];
    let r4 = r2 * r2;
    for a in 0..2 {
        for b in 0..2 {
            let d = if a == b { r2 } else { 0.0 };
            j[(a, b)] = (d - 2.0 * x[a] * x[b]) / r4;
        }
    }
}

/// Unit sphere with stereographic charts from the north pole (chart 0) and the
/// south pole (chart 1); both codomains are all of ℝ² and the transition is
/// the inversion `x ↦ x / |x|²`.
pub fn sphere() -> Manifold {
    let north = Chart::new("N", Region::whole(2), (vec![-2.0; 2], vec![2.0; 2])).with_embedding(|x| {
        let r2 = x[0] * x[0] + x[1] * x[1];
        vec![2.0 * x[0] / (r2 + 1.0), 2.0 * x[1] / (r2 + 1.0), (r2 - 1.0) / (r2 + 1.0)]
    });
    let south = Chart::new("S", Region::whole(2), (vec![-2.0; 2], vec![2.0; 2])).with_embedding(|y| {
        let r2 = y[0] * y[0] + y[1] * y[1];
        vec![2.0 * y[0] / (r2 + 1.0), 2.0 * y[1] / (r2 + 1.0), (1.0 - r2) / (r2 + 1.0)]
    });
    let pairs = [(0, 1), (1, 0)]
        .into_iter()
        .map(|p| (p, SmoothMap::new(2, 2, Region::punctured(2), inversion).with_jacobian(inversion_jacobian)))
        .collect();
    Manifold::new("sphere-stereo", 2, vec![north, south], pairs).expect("well-formed")
}

/// Möbius line bundle over the two-arc circle: the cocycle is `+1` on the
/// upper overlap arc and `-1` on the lower one.
pub fn moebius() -> BundleAtlas {
    let base = circle();
    let one = Matrix::from_element(1, 1, 1.0);
    let flip = Matrix::from_element(1, 1, -1.0);
    let mut pairs = Vec::new();
    for (a, b) in [(0usize, 1usize), (1, 0)] {
        let dom = base.transition(a, b).unwrap().unwrap().domain().clone();
        // upper arc: θ ∈ (0, π) in either chart
        let g = MatrixField::locally_constant(vec![one.clone(), flip.clone()], dom, move |x| {
            usize::from(!(x[0] > 0.0 && x[0] < PI))
        });
        pairs.push(((a, b), g));
    }
    BundleAtlas::new("moebius-line-bundle", base, 1, pairs).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn catalog_passes_sampled_identities() {
        for name in BUILTIN_NAMES {
            let b = builtin(name, &empty_params()).unwrap();
            let chk = b.manifold().check_invariants(1000, &mut rng());
            assert!(chk.samples > 0, "{name}");
            assert!(chk.inverse < 1e-10, "{name}: {chk:?}");
            assert!(chk.cocycle < 1e-8, "{name}: {chk:?}");
            assert!(chk.jacobian < 1e-5, "{name}: {chk:?}");
            assert!(chk.jacobian_cocycle < 1e-8, "{name}: {chk:?}");
            assert_eq!(chk.margin_failures, 0, "{name}");
            if let Some(bundle) = b.bundle() {
                let c = bundle.check_invariants(1000, &mut rng());
                assert_eq!(c.identity, 0.0);
                assert!(c.cocycle < 1e-8, "{name}: {c:?}");
                assert!(c.min_abs_det > 0.0);
            }
        }
    }

    #[test]
    fn euclidean_has_one_identity_chart() {
        let m = euclidean(2, None).unwrap();
        assert_eq!(m.num_charts(), 1);
        assert_eq!(m.tangent_cocycle(0, 0, &[3.0, 4.0]).unwrap(), Matrix::identity(2, 2));
    }

    #[test]
    fn inversion_fixes_the_unit_circle() {
        let m = sphere();
        let p = super::super::Point { chart: 0, coords: vec![1.0, 0.0] };
        assert_eq!(m.convert_point(&p, 1).unwrap().coords, vec![1.0, 0.0]);
        assert_eq!(m.convert_point(&p, 0).unwrap(), p);
        assert!(m.convert_point(&super::super::Point { chart: 0, coords: vec![0.0, 0.0] }, 1).is_err());
        // same point of the sphere in both charts
        let x = [0.3, -1.2];
        let y = m.transfer(0, 1, &x).unwrap();
        let (ex, ey) = (m.chart(0).unwrap().embed(&x).unwrap(), m.chart(1).unwrap().embed(&y).unwrap());
        assert!(crate::linalg::max_dist(&ex, &ey) < 1e-15);
    }

    #[test]
    fn stereographic_jacobian_against_differences() {
        let m = sphere();
        for x in [[0.7, 0.2], [-1.1, 0.4], [0.5, -0.9]] {
            let ja = m.tangent_cocycle(0, 1, &x).unwrap();
            let jf = m.transition(0, 1).unwrap().unwrap().fd_jacobian(&x);
            assert!((&ja - &jf).abs().max() / ja.abs().max() < 1e-6);
        }
    }

    #[test]
    fn moebius_cocycle_signs() {
        let b = moebius();
        assert_eq!(b.cocycle(0, 1, &[1.0]).unwrap()[(0, 0)], 1.0);
        assert_eq!(b.cocycle(0, 1, &[-1.0]).unwrap()[(0, 0)], -1.0);
        assert_eq!(b.cocycle(1, 0, &[4.0]).unwrap()[(0, 0)], -1.0);
        assert!(b.cocycle(0, 1, &[0.0]).is_err());
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(builtin("klein-bottle", &empty_params()), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("euclidean", &serde_json::json!({"dim": 0})), Err(Error::BadParams(_))));
    }
}
