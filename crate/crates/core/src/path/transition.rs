use serde::Serialize;

use crate::atlas::{BundleAtlas, Manifold};
use crate::error::{Error, Result};
use crate::linalg::mat_vec_into;
use crate::regulated::{approximate_pieces, compose_smooth_with, Interval, Resolution, StepCurve};

use super::contain::{certify_curve, Membership};
use super::{reconstruct, ManifoldPath, PathChartSystem, PathRep};

/// Destination representation plus the data used to produce it.
#[derive(Debug, Clone, Serialize)]
pub struct TransitionOutput {
    pub rep: PathRep,
    /// Knots of the common refinement of source and destination partitions.
    pub refinement: Vec<f64>,
    /// Largest certified sup error of a re-projected piece (0 when exact).
    pub error_bound: f64,
    /// Number of step cells produced by re-projection.
    pub cells: usize,
}

/// Rewrite a path representation from `src` into `dst`.
///
/// The path is reconstructed in `src`, cut along the common refinement, and
/// every cell is re-expressed in the destination chart: exactly when the
/// charts agree, otherwise by composing with the transition and re-projecting
/// the derivative to a step curve at `res`. Cells are concatenated per
/// destination piece.
pub fn transition_rep(m: &Manifold, src: &PathChartSystem, dst: &PathChartSystem, rep: &PathRep, res: Resolution) -> Result<TransitionOutput> {
    transition_impl(m, None, src, dst, &rep.base(), res)
}

/// As [`transition_rep`], also carrying fiber pieces through the cocycles.
pub fn transition_lift_rep(
    bundle: &BundleAtlas,
    src: &PathChartSystem,
    dst: &PathChartSystem,
    rep: &PathRep,
    res: Resolution,
) -> Result<TransitionOutput> {
    if rep.fibers.is_none() {
        return Err(Error::InvalidPath("lift representation without fibers".into()));
    }
    transition_impl(bundle.base(), Some(bundle), src, dst, rep, res)
}

fn transition_impl(
    m: &Manifold,
    bundle: Option<&BundleAtlas>,
    src: &PathChartSystem,
    dst: &PathChartSystem,
    rep: &PathRep,
    res: Resolution,
) -> Result<TransitionOutput> {
    dst.check_charts(m)?;
    let path = reconstruct(m, src, rep)?;
    let refinement = src.common_refinement(dst);
    let x = transfer_start(m, src.chart(0), dst.chart(0), &rep.x)?;
    let mut pieces = Vec::with_capacity(dst.num_pieces());
    let mut fibers = Vec::with_capacity(dst.num_pieces());
    let mut error_bound = 0.0_f64;
    let mut cells = 0usize;
    for j in 0..dst.num_pieces() {
        let piece = dst.piece(j);
        let to = dst.chart(j);
        let mut tops = Vec::new();
        let mut fibs = Vec::new();
        for w in refinement.windows(2).filter(|w| w[0] >= piece.lo() && w[1] <= piece.hi()) {
            let cell = Interval::new(w[0], w[1])?;
            let i = src.piece_index(cell.lo())?;
            let from = src.chart(i);
            let (top, bound, n) = base_cell(m, &path, i, from, to, cell, res)?;
            error_bound = error_bound.max(bound);
            cells += n;
            tops.push(top);
            if let (Some(b), Some(f)) = (bundle, &rep.fibers) {
                let (u, bound, n) = fiber_cell(b, &path, i, from, to, cell, &f[i], res)?;
                error_bound = error_bound.max(bound);
                cells += n;
                fibs.push(u);
            }
        }
        pieces.push(StepCurve::concat_all(&tops)?);
        if bundle.is_some() {
            fibers.push(StepCurve::concat_all(&fibs)?);
        }
    }
    let fibers = bundle.map(|_| fibers);
    Ok(TransitionOutput { rep: PathRep { x, pieces, fibers }, refinement, error_bound, cells })
}

fn transfer_start(m: &Manifold, from: usize, to: usize, x: &[f64]) -> Result<Vec<f64>> {
    if from == to {
        return Ok(x.to_vec());
    }
    m.transfer(from, to, x).map_err(|_| Error::CoverViolation {
        time: 0.0,
        reason: format!("initial point is not in the overlap of charts {from} and {to}"),
    })
}

fn cover_error(time: f64, from: usize, to: usize) -> Error {
    Error::CoverViolation { time, reason: format!("path leaves the overlap of charts {from} and {to}") }
}

fn base_cell(
    m: &Manifold,
    path: &ManifoldPath,
    i: usize,
    from: usize,
    to: usize,
    cell: Interval,
    res: Resolution,
) -> Result<(StepCurve, f64, usize)> {
    let local = path.piece(i).restrict(cell)?;
    if from == to {
        let top = local.top_step().expect("regulated").clone();
        let n = top.num_pieces();
        return Ok((top, 0.0, n));
    }
    let t = m.transition(from, to)?.ok_or_else(|| cover_error(cell.lo(), from, to))?;
    match certify_curve(t.domain(), &local)? {
        Membership::Inside => {}
        Membership::Outside { time } | Membership::Indeterminate { time } => return Err(cover_error(time, from, to)),
    }
    let approx = compose_smooth_with(t, &local, res).map_err(|e| match e {
        Error::ImageEscapes { .. } => cover_error(cell.lo(), from, to),
        other => other,
    })?;
    let top = approx.curve.top_step().expect("regulated").clone();
    Ok((top, approx.error_bound, approx.cells))
}

#[allow(clippy::too_many_arguments)]
fn fiber_cell(
    b: &BundleAtlas,
    path: &ManifoldPath,
    i: usize,
    from: usize,
    to: usize,
    cell: Interval,
    u: &StepCurve,
    res: Resolution,
) -> Result<(StepCurve, f64, usize)> {
    let u = u.restrict(cell)?;
    if from == to {
        let n = u.num_pieces();
        return Ok((u, 0.0, n));
    }
    let g = b.cocycle_field(from, to)?.ok_or_else(|| cover_error(cell.lo(), from, to))?;
    let local = path.piece(i);
    if g.is_locally_constant() {
        // the cell's image is connected and inside the overlap
        let mid = local.eval(0.5 * (cell.lo() + cell.hi()), 0)?;
        let n = u.num_pieces();
        return Ok((u.linear_push(&g.try_eval(&mid)?)?, 0.0, n));
    }
    let pieces: Vec<(f64, f64)> = u.pieces().map(|(a, b, _)| (a, b)).collect();
    let mut x = vec![0.0; local.dim()];
    let approx = approximate_pieces(&pieces, b.rank(), res, |k, t, _, out| {
        local.eval_into(t, 0, &mut x)?;
        let gm = g.try_eval(&x).map_err(|_| cover_error(t, from, to))?;
        mat_vec_into(&gm, u.value(k), out);
        Ok(())
    })?;
    Ok((approx.curve, approx.error_bound, approx.cells))
}
