use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atlas::Manifold;
use crate::error::{Error, Result};
use crate::linalg::op_norm;

use super::contain::min_margin;
use super::ManifoldPath;

/// Radius used in place of an unbounded margin.
pub const MARGIN_CAP: f64 = 1e6;
const LIP_SAMPLES: usize = 256;

/// Certificate that every representation within `eta` of the chart map of a
/// path reconstructs to a valid path in the same chart system.
#[derive(Debug, Clone, Serialize)]
pub struct Openness {
    pub eta: f64,
    /// Per-piece certified interior radius.
    pub deltas: Vec<f64>,
    /// Sampled Lipschitz bound of the transition at each junction (2× safety).
    pub lipschitz: Vec<f64>,
    /// Deviation per unit perturbation at the end of each piece.
    pub growth: Vec<f64>,
}

/// Openness radius from interior margins, transition moduli and piece lengths.
///
/// A perturbation of size `η` moves piece `i` by at most `a_i η` with
/// `a_1 = 1 + len_1` and `a_{i+1} = Λ_i a_i + len_{i+1}`; the result is
/// `η = min_i δ_i / a_i`.
pub fn openness_margin(m: &Manifold, p: &ManifoldPath) -> Result<Openness> {
    let sys = p.system();
    let n = p.num_pieces();
    let mut deltas = Vec::with_capacity(n);
    let mut lipschitz = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let chart = sys.chart(i);
        let region = &m.chart(chart)?.codomain;
        let piece = p.piece(i);
        let coarse = piece.breaks().iter().map(|&t| piece.eval(t, 0).map(|x| region.margin(&x))).collect::<Result<Vec<_>>>()?;
        let m0 = coarse.into_iter().fold(f64::INFINITY, f64::min);
        if m0 <= 0.0 {
            return Err(Error::NotInterior { margin: m0 });
        }
        let eps = if m0.is_finite() { (0.01 * m0).min(1e-3) } else { 1e-3 };
        let mut delta = min_margin(region, piece, eps)?;
        if i + 1 < n {
            let end = piece.end_value(0)?;
            delta = delta.min(m.overlap_margin(chart, sys.chart(i + 1), &end)?);
        }
        if delta <= 0.0 {
            return Err(Error::NotInterior { margin: delta });
        }
        deltas.push(delta.min(MARGIN_CAP));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..n.saturating_sub(1) {
        let (from, to) = (sys.chart(i), sys.chart(i + 1));
        if from == to {
            lipschitz.push(1.0);
            continue;
        }
        let t = m.transition(from, to)?.expect("junction lies in the overlap");
        let a = p.piece(i).end_value(0)?;
        let r = deltas[i];
        let mut lip = op_norm(&t.jacobian(&a));
        for _ in 0..LIP_SAMPLES {
            let z: Vec<f64> = a.iter().map(|c| c + r * rng.random_range(-1.0..1.0)).collect();
            if t.domain().contains(&z) {
                lip = lip.max(op_norm(&t.jacobian(&z)));
            }
        }
        lipschitz.push(2.0 * lip);
    }
    let mut growth = Vec::with_capacity(n);
    let mut a = 1.0 + sys.piece(0).len();
    growth.push(a);
    for i in 1..n {
        a = lipschitz[i - 1] * a + sys.piece(i).len();
        growth.push(a);
    }
    let eta = deltas.iter().zip(&growth).map(|(d, a)| d / a).fold(f64::INFINITY, f64::min);
    Ok(Openness { eta, deltas, lipschitz, growth })
}
