use serde::{Deserialize, Serialize};

use crate::atlas::{BundleAtlas, Manifold, Point};
use crate::error::{Error, Result};
use crate::linalg::max_dist;
use crate::regulated::{Interval, Mode, RegCurve, StepCurve, Top};

use super::contain::{certify_curve, Membership};
use super::PathChartSystem;

/// Junction mismatch accepted (and snapped) when building a path from data.
pub const JUNCTION_TOL: f64 = 1e-10;

/// Path on a manifold: a chart system and an order-1 local curve per piece.
///
/// Junctions satisfy `γ_{i+1}(τ_i) = T_{i→i+1}(γ_i(τ_i))` exactly; data within
/// [`JUNCTION_TOL`] of this is snapped on construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifoldPath {
    system: PathChartSystem,
    pieces: Vec<RegCurve>,
}

impl ManifoldPath {
    pub fn new(m: &Manifold, system: PathChartSystem, pieces: Vec<RegCurve>) -> Result<Self> {
        Self::validated(m, system, pieces, true)
    }

    fn validated(m: &Manifold, system: PathChartSystem, mut pieces: Vec<RegCurve>, snap: bool) -> Result<Self> {
        system.check_charts(m)?;
        if pieces.len() != system.num_pieces() {
            return Err(Error::InvalidPath(format!("{} pieces for {} intervals", pieces.len(), system.num_pieces())));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.order() != 1 || p.mode() != Mode::Regulated {
                return Err(Error::InvalidPath(format!("piece {i} must be a regulated curve of order 1")));
            }
            if p.dim() != m.dim() {
                return Err(Error::Dimension { expected: m.dim(), found: p.dim() });
            }
            if p.domain() != system.piece(i) {
                return Err(Error::InvalidPath(format!("piece {i} domain does not match the partition")));
            }
        }
        for i in 0..pieces.len() {
            let chart = system.chart(i);
            match certify_curve(&m.chart(chart)?.codomain, &pieces[i])? {
                Membership::Inside => {}
                Membership::Outside { time } | Membership::Indeterminate { time } => {
                    return Err(Error::EscapesChart { piece: i, chart, time });
                }
            }
            if snap && i + 1 < pieces.len() {
                let t = system.tau()[i + 1];
                let end = pieces[i].end_value(0)?;
                let next = system.chart(i + 1);
                let start = m.transfer(chart, next, &end).map_err(|_| Error::CoverViolation {
                    time: t,
                    reason: format!("junction point is not in the overlap of charts {chart} and {next}"),
                })?;
                let gap = max_dist(&start, pieces[i + 1].jet(0));
                if gap > JUNCTION_TOL {
                    return Err(Error::InvalidPath(format!("junction at {t} is off by {gap}")));
                }
                if gap > 0.0 {
                    let top = pieces[i + 1].top().clone();
                    pieces[i + 1] = RegCurve::new(1, vec![start], top)?;
                }
            }
        }
        Ok(Self { system, pieces })
    }

    pub fn system(&self) -> &PathChartSystem {
        &self.system
    }

    pub fn pieces(&self) -> &[RegCurve] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &RegCurve {
        &self.pieces[i]
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].dim()
    }

    /// Top derivative of piece `i`.
    pub fn velocity(&self, i: usize) -> &StepCurve {
        self.pieces[i].top_step().expect("regulated pieces")
    }

    /// `γ(t)` in the chart of the piece selected at `t`.
    pub fn eval(&self, t: f64) -> Result<Point> {
        let i = self.system.piece_index(t)?;
        Ok(Point { chart: self.system.chart(i), coords: self.pieces[i].eval(t, 0)? })
    }
}

/// A path in the total space of a bundle: base path plus fiber step curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleLift {
    base: ManifoldPath,
    fibers: Vec<StepCurve>,
}

impl BundleLift {
    pub fn new(bundle: &BundleAtlas, base: ManifoldPath, fibers: Vec<StepCurve>) -> Result<Self> {
        if fibers.len() != base.num_pieces() {
            return Err(Error::InvalidPath(format!("{} fiber pieces for {} intervals", fibers.len(), base.num_pieces())));
        }
        for (i, u) in fibers.iter().enumerate() {
            if u.dim() != bundle.rank() {
                return Err(Error::Dimension { expected: bundle.rank(), found: u.dim() });
            }
            if u.domain() != base.system().piece(i) {
                return Err(Error::InvalidPath(format!("fiber piece {i} domain does not match the partition")));
            }
        }
        Ok(Self { base, fibers })
    }

    pub fn base(&self) -> &ManifoldPath {
        &self.base
    }

    pub fn fibers(&self) -> &[StepCurve] {
        &self.fibers
    }

    /// Base point and fiber coordinates at `t`.
    pub fn eval(&self, t: f64) -> Result<(Point, Vec<f64>)> {
        let i = self.base.system().piece_index(t)?;
        Ok((self.base.eval(t)?, self.fibers[i].eval(t)?.to_vec()))
    }
}

/// Chart-side coordinates `(x, y₁, …, yₙ)` of a path, plus `(u₁, …, uₙ)` for lifts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRep {
    pub x: Vec<f64>,
    pub pieces: Vec<StepCurve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<StepCurve>>,
}

impl PathRep {
    pub fn base(&self) -> PathRep {
        PathRep { x: self.x.clone(), pieces: self.pieces.clone(), fibers: None }
    }

    pub fn check(&self, system: &PathChartSystem, dim: usize) -> Result<()> {
        if self.x.len() != dim {
            return Err(Error::Dimension { expected: dim, found: self.x.len() });
        }
        if self.pieces.len() != system.num_pieces() {
            return Err(Error::InvalidPath(format!("{} pieces for {} intervals", self.pieces.len(), system.num_pieces())));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::Dimension { expected: dim, found: p.dim() });
            }
            if p.domain() != system.piece(i) {
                return Err(Error::InvalidPath(format!("piece {i} domain does not match the partition")));
            }
        }
        if let Some(f) = &self.fibers {
            if f.len() != system.num_pieces() {
                return Err(Error::InvalidPath("fiber count does not match the partition".into()));
            }
            for (i, u) in f.iter().enumerate() {
                if u.domain() != system.piece(i) || u.dim() != f[0].dim() {
                    return Err(Error::InvalidPath(format!("fiber piece {i} does not match the partition")));
                }
            }
        }
        Ok(())
    }
}

/// `γ ↦ (γ₁(0), γ₁', …, γₙ')`.
pub fn chart_map(p: &ManifoldPath) -> PathRep {
    PathRep {
        x: p.pieces[0].jet(0).to_vec(),
        pieces: (0..p.num_pieces()).map(|i| p.velocity(i).clone()).collect(),
        fibers: None,
    }
}

/// Chart map of a lift; fiber pieces are already chart-trivialized.
pub fn lift_chart_map(c: &BundleLift) -> PathRep {
    PathRep { fibers: Some(c.fibers.clone()), ..chart_map(&c.base) }
}

/// Reconstruction: `γ̄₁ = x + ∫y₁`, `γ̄_{i+1} = T_{i→i+1}(γ̄_i(τ_i)) + ∫y_{i+1}`.
pub fn reconstruct(m: &Manifold, system: &PathChartSystem, rep: &PathRep) -> Result<ManifoldPath> {
    system.check_charts(m)?;
    rep.check(system, m.dim())?;
    let mut pieces = Vec::with_capacity(system.num_pieces());
    let mut start = rep.x.clone();
    for (i, y) in rep.pieces.iter().enumerate() {
        let chart = system.chart(i);
        if i > 0 {
            let prev: &RegCurve = &pieces[i - 1];
            let end = prev.end_value(0)?;
            let from = system.chart(i - 1);
            start = m.transfer(from, chart, &end).map_err(|_| Error::CoverViolation {
                time: system.tau()[i],
                reason: format!("junction point is not in the overlap of charts {from} and {chart}"),
            })?;
        }
        let piece = y.primitive(&start)?;
        match certify_curve(&m.chart(chart)?.codomain, &piece)? {
            Membership::Inside => {}
            Membership::Outside { time } | Membership::Indeterminate { time } => {
                return Err(Error::EscapesChart { piece: i, chart, time });
            }
        }
        pieces.push(piece);
    }
    ManifoldPath::validated(m, system.clone(), pieces, false)
}

pub fn reconstruct_lift(bundle: &BundleAtlas, system: &PathChartSystem, rep: &PathRep) -> Result<BundleLift> {
    let fibers = rep.fibers.clone().ok_or_else(|| Error::InvalidPath("lift representation without fibers".into()))?;
    let base = reconstruct(bundle.base(), system, rep)?;
    BundleLift::new(bundle, base, fibers)
}

/// Single-chart form of the chart map's inverse: `x + ∫(y₁ ⋆ … ⋆ yₙ)`.
pub fn assemble(rep: &PathRep) -> Result<RegCurve> {
    let top = StepCurve::concat_all(&rep.pieces)?;
    if top.domain() != Interval::unit() {
        return Err(Error::DomainMismatch("pieces must tile [0, 1]".into()));
    }
    top.primitive(&rep.x)
}

/// Inverse of [`assemble`]: value at 0 and the top derivative sliced by the partition.
pub fn disassemble(c: &RegCurve, system: &PathChartSystem) -> Result<PathRep> {
    let top = match (c.order(), c.top()) {
        (1, Top::Step(s)) => s,
        _ => return Err(Error::InvalidPath("need a regulated curve of order 1".into())),
    };
    let pieces = (0..system.num_pieces()).map(|i| top.restrict(system.piece(i))).collect::<Result<_>>()?;
    Ok(PathRep { x: c.jet(0).to_vec(), pieces, fibers: None })
}

pub fn evaluate_path(p: &ManifoldPath, t: f64) -> Result<Point> {
    p.eval(t)
}

pub fn evaluate_lift(c: &BundleLift, t: f64) -> Result<(Point, Vec<f64>)> {
    c.eval(t)
}
