use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{Manifold, MatrixField};

/// Rank-`d` vector bundle over a manifold, given by cocycles
/// `g_{i→j}(x) ∈ GL(d)` on the overlaps (`x` in chart-`i` coordinates):
/// fiber coordinates change as `u_j = g_{i→j}(x) u_i`.
#[derive(Clone, Debug)]
pub struct BundleAtlas {
    name: String,
    base: Manifold,
    rank: usize,
    cocycles: Vec<Option<MatrixField>>,
}

impl BundleAtlas {
    pub fn new(name: impl Into<String>, base: Manifold, rank: usize, pairs: Vec<((usize, usize), MatrixField)>) -> Result<Self> {
        let n = base.num_charts();
        let mut cocycles: Vec<Option<MatrixField>> = vec![None; n * n];
        for i in 0..n {
            let dom = base.chart(i)?.codomain.clone();
            cocycles[i * n + i] = Some(MatrixField::constant(Matrix::identity(rank, rank), dom));
        }
        for ((i, j), g) in pairs {
            if i >= n || j >= n {
                return Err(Error::UnknownChart(i.max(j)));
            }
            if g.shape() != (rank, rank) {
                return Err(Error::Dimension { expected: rank, found: g.shape().0 });
            }
            cocycles[i * n + j] = Some(g);
        }
        Ok(Self { name: name.into(), base, rank, cocycles })
    }

    /// Product bundle `M × ℝ^d`.
    pub fn trivial(base: Manifold, rank: usize) -> Self {
        let n = base.num_charts();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let (true, Ok(Some(t))) = (i != j, base.transition(i, j)) {
                    pairs.push(((i, j), MatrixField::constant(Matrix::identity(rank, rank), t.domain().clone())));
                }
            }
        }
        Self::new(format!("trivial-bundle({})", base.name()), base, rank, pairs).expect("well-formed")
    }

    /// Tangent bundle: cocycles are the Jacobians of the transitions.
    pub fn tangent(base: Manifold) -> Self {
        let n = base.num_charts();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let (true, Ok(Some(t))) = (i != j, base.transition(i, j)) {
                    pairs.push(((i, j), MatrixField::jacobian_of(t)));
                }
            }
        }
        let dim = base.dim();
        Self::new(format!("tangent-bundle({})", base.name()), base, dim, pairs).expect("well-formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Manifold {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cocycle_field(&self, i: usize, j: usize) -> Result<Option<&MatrixField>> {
        let n = self.base.num_charts();
        if i >= n || j >= n {
            return Err(Error::UnknownChart(i.max(j)));
        }
        Ok(self.cocycles[i * n + j].as_ref())
    }

    /// `g_{i→j}(x)`.
    pub fn cocycle(&self, i: usize, j: usize, x: &[f64]) -> Result<Matrix> {
        match self.cocycle_field(i, j)? {
            Some(g) if g.domain().contains(x) => Ok(g.eval(x)),
            _ => Err(Error::NotInOverlap { from: i, to: j, coords: x.to_vec() }),
        }
    }

    /// Sampled identities `g_ii = Id`, `g_ik = g_jk(T_ij x) g_ij(x)`, invertibility.
    pub fn check_invariants<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> BundleCheck {
        let m = &self.base;
        let n = m.num_charts();
        let mut out = BundleCheck { min_abs_det: f64::INFINITY, ..Default::default() };
        for i in 0..n {
            for j in 0..n {
                for _ in 0..samples.div_ceil(n * n).max(1) {
                    let Some(x) = m.sample_overlap(i, j, rng) else { break };
                    out.samples += 1;
                    let gij = self.cocycle(i, j, &x).expect("sampled in overlap");
                    out.min_abs_det = out.min_abs_det.min(gij.determinant().abs());
                    let gii = self.cocycle(i, i, &x).expect("own chart");
                    out.identity = out.identity.max((gii - Matrix::identity(self.rank, self.rank)).abs().max());
                    let y = m.transfer(i, j, &x).expect("sampled in overlap");
                    for k in 0..n {
                        if let (Ok(gik), Ok(gjk)) = (self.cocycle(i, k, &x), self.cocycle(j, k, &y)) {
                            out.cocycle = out.cocycle.max((gjk * &gij - gik).abs().max());
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BundleCheck {
    pub samples: usize,
    pub identity: f64,
    pub cocycle: f64,
    pub min_abs_det: f64,
}
