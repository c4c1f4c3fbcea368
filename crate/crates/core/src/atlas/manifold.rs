use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{max_dist, Matrix};

use super::{Region, SmoothMap};

type EmbedFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A chart, known only through its image in ℝ^m.
#[derive(Clone)]
pub struct Chart {
    pub name: String,
    pub codomain: Region,
    /// Box `[lo, hi]` used to draw random points of the codomain.
    pub sample_box: (Vec<f64>, Vec<f64>),
    embed: Option<Arc<EmbedFn>>,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}, {:?})", self.name, self.codomain)
    }
}

impl Chart {
    pub fn new(name: impl Into<String>, codomain: Region, sample_box: (Vec<f64>, Vec<f64>)) -> Self {
        Self { name: name.into(), codomain, sample_box, embed: None }
    }

    /// Attach an embedding of the chart into some ℝ^N (for inspection and tests).
    pub fn with_embedding(mut self, f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.embed = Some(Arc::new(f));
        self
    }

    pub fn embed(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.embed.as_ref().map(|f| f(x))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        loop {
            let x: Vec<f64> = self.sample_box.0.iter().zip(&self.sample_box.1).map(|(a, b)| rng.random_range(*a..*b)).collect();
            if self.codomain.contains(&x) {
                return x;
            }
        }
    }
}

/// A point in chart coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub chart: usize,
    pub coords: Vec<f64>,
}

/// Manifold modelled on ℝ^m: chart codomains plus transitions `T_{i→j}`,
/// each defined on the overlap `φ_i(U_i ∩ U_j)` in chart-`i` coordinates.
#[derive(Clone, Debug)]
pub struct Manifold {
    name: String,
    dim: usize,
    charts: Vec<Chart>,
    transitions: Vec<Option<SmoothMap>>,
}

impl Manifold {
    /// `transitions[(i, j)]` for `i ≠ j`; missing pairs have empty overlap.
    pub fn new(name: impl Into<String>, dim: usize, charts: Vec<Chart>, mut pairs: Vec<((usize, usize), SmoothMap)>) -> Result<Self> {
        let n = charts.len();
        let mut transitions: Vec<Option<SmoothMap>> = vec![None; n * n];
        for (i, c) in charts.iter().enumerate() {
            if c.codomain.dim() != dim {
                return Err(Error::Dimension { expected: dim, found: c.codomain.dim() });
            }
            let id = SmoothMap::affine(Matrix::identity(dim, dim), vec![0.0; dim], c.codomain.clone());
            transitions[i * n + i] = Some(id);
        }
        for ((i, j), map) in pairs.drain(..) {
            if i >= n || j >= n {
                return Err(Error::UnknownChart(i.max(j)));
            }
            if map.dim_in() != dim || map.dim_out() != dim {
                return Err(Error::Dimension { expected: dim, found: map.dim_in() });
            }
            transitions[i * n + j] = Some(map);
        }
        Ok(Self { name: name.into(), dim, charts, transitions })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_charts(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, i: usize) -> Result<&Chart> {
        self.charts.get(i).ok_or(Error::UnknownChart(i))
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Transition `T_{i→j}`; `None` when the charts do not overlap.
    pub fn transition(&self, i: usize, j: usize) -> Result<Option<&SmoothMap>> {
        let n = self.charts.len();
        if i >= n {
            return Err(Error::UnknownChart(i));
        }
        if j >= n {
            return Err(Error::UnknownChart(j));
        }
        Ok(self.transitions[i * n + j].as_ref())
    }

    /// Margin of `x` (chart-`i` coordinates) inside the overlap with chart `j`.
    pub fn overlap_margin(&self, i: usize, j: usize, x: &[f64]) -> Result<f64> {
        Ok(match self.transition(i, j)? {
            Some(t) => t.domain().margin(x),
            None => f64::NEG_INFINITY,
        })
    }

    /// Map chart-`i` coordinates to chart `j`, failing outside the overlap.
    pub fn transfer(&self, i: usize, j: usize, x: &[f64]) -> Result<Vec<f64>> {
        match self.transition(i, j)? {
            Some(t) if t.domain().contains(x) => Ok(t.eval(x)),
            _ => Err(Error::NotInOverlap { from: i, to: j, coords: x.to_vec() }),
        }
    }

    pub fn convert_point(&self, p: &Point, j: usize) -> Result<Point> {
        if p.chart == j {
            self.chart(j)?;
            return Ok(p.clone());
        }
        Ok(Point { chart: j, coords: self.transfer(p.chart, j, &p.coords)? })
    }

    /// Jacobian of `T_{i→j}` at `x`.
    pub fn tangent_cocycle(&self, i: usize, j: usize, x: &[f64]) -> Result<Matrix> {
        if i == j {
            self.chart(i)?;
            return Ok(Matrix::identity(self.dim, self.dim));
        }
        match self.transition(i, j)? {
            Some(t) if t.domain().contains(x) => Ok(t.jacobian(x)),
            _ => Err(Error::NotInOverlap { from: i, to: j, coords: x.to_vec() }),
        }
    }

    /// Random point of chart `i` inside the overlap with chart `j`, if found.
    pub fn sample_overlap<R: Rng + ?Sized>(&self, i: usize, j: usize, rng: &mut R) -> Option<Vec<f64>> {
        let t = self.transition(i, j).ok()??;
        (0..10_000).map(|_| self.charts[i].sample(rng)).find(|x| t.domain().contains(x))
    }

    /// Sampled atlas identities: inverse pairs, triple cocycle, Jacobian
    /// against finite differences and margin soundness.
    pub fn check_invariants<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> AtlasCheck {
        let n = self.num_charts();
        let mut out = AtlasCheck::default();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..samples.div_ceil(n * n).max(1) {
                    let Some(x) = self.sample_overlap(i, j, rng) else { break };
                    out.samples += 1;
                    let y = self.transfer(i, j, &x).expect("sampled in overlap");
                    match self.transfer(j, i, &y) {
                        Ok(back) => out.inverse = out.inverse.max(max_dist(&back, &x)),
                        Err(_) => out.inverse = f64::INFINITY,
                    }
                    let t = self.transition(i, j).unwrap().unwrap();
                    if t.has_analytic_jacobian() {
                        let (ja, jf) = (t.jacobian(&x), t.fd_jacobian(&x));
                        let rel = (&ja - &jf).abs().max() / (1.0 + ja.abs().max());
                        out.jacobian = out.jacobian.max(rel);
                    }
                    for k in 0..n {
                        let (Ok(Some(tik)), Ok(Some(tjk))) = (self.transition(i, k), self.transition(j, k)) else { continue };
                        if tik.domain().contains(&x) && tjk.domain().contains(&y) {
                            out.cocycle = out.cocycle.max(max_dist(&tik.eval(&x), &tjk.eval(&y)));
                            let chain = tjk.jacobian(&y) * t.jacobian(&x);
                            out.jacobian_cocycle = out.jacobian_cocycle.max((chain - tik.jacobian(&x)).abs().max());
                        }
                    }
                    let dom = t.domain();
                    let r = dom.margin(&x).min(1e3);
                    for _ in 0..100 {
                        let z: Vec<f64> = x.iter().map(|c| c + r * rng.random_range(-0.999..0.999)).collect();
                        if !dom.contains(&z) {
                            out.margin_failures += 1;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Worst sampled defects of the atlas identities.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AtlasCheck {
    pub samples: usize,
    pub inverse: f64,
    pub cocycle: f64,
    pub jacobian: f64,
    pub jacobian_cocycle: f64,
    pub margin_failures: usize,
}
