use serde::Serialize;

use crate::atlas::Region;
use crate::linalg::max_dist;
use crate::regulated::{image_net, RegCurve};
use crate::error::Result;

/// Three-valued answer of a containment certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Membership {
    Inside,
    /// A point with nonpositive margin was found at `time`.
    Outside { time: f64 },
    /// The bisection budget ran out near `time`.
    Indeterminate { time: f64 },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }

    /// Combine two verdicts: outside dominates, then indeterminate.
    pub fn and(self, other: Membership) -> Membership {
        match (self, other) {
            (Membership::Outside { .. }, _) => self,
            (_, Membership::Outside { .. }) => other,
            (Membership::Indeterminate { .. }, _) => self,
            _ => other,
        }
    }
}

pub const CERTIFY_DEPTH: usize = 48;
const CERTIFY_BUDGET: usize = 20_000;

/// Certify that the straight segment from `p` (time `t0`) to `q` (time `t1`)
/// lies in `region`: a sub-segment is accepted when the margin at its
/// midpoint exceeds half its length. Reports the earliest failure found.
pub fn certify_segment(region: &Region, p: &[f64], q: &[f64], t0: f64, t1: f64) -> Membership {
    let mut budget = CERTIFY_BUDGET;
    bisect(region, p, q, t0, t1, 0, &mut budget)
}

fn bisect(region: &Region, p: &[f64], q: &[f64], t0: f64, t1: f64, depth: usize, budget: &mut usize) -> Membership {
    if region.margin(p) <= 0.0 {
        return Membership::Outside { time: t0 };
    }
    let mid: Vec<f64> = p.iter().zip(q).map(|(x, y)| 0.5 * (x + y)).collect();
    if region.margin(&mid) > 0.5 * max_dist(p, q) {
        return Membership::Inside;
    }
    if depth >= CERTIFY_DEPTH || *budget == 0 {
        if region.margin(q) <= 0.0 {
            return Membership::Outside { time: t1 };
        }
        return Membership::Indeterminate { time: t0 };
    }
    *budget -= 1;
    let tm = 0.5 * (t0 + t1);
    match bisect(region, p, &mid, t0, tm, depth + 1, budget) {
        out @ Membership::Outside { .. } => out,
        left => left.and(bisect(region, &mid, q, tm, t1, depth + 1, budget)),
    }
}

/// Certify an order-1 curve (piecewise linear in each top piece).
pub fn certify_curve(region: &Region, c: &RegCurve) -> Result<Membership> {
    if c.order() == 0 {
        let mut verdict = Membership::Inside;
        for (a, _, v) in c.top_step().expect("regulated").pieces() {
            if region.margin(v) <= 0.0 {
                verdict = verdict.and(Membership::Outside { time: a });
                break;
            }
        }
        return Ok(verdict);
    }
    let br = c.breaks();
    let mut p = c.eval(br[0], 0)?;
    for w in br.windows(2) {
        let q = c.eval(w[1], 0)?;
        match certify_segment(region, &p, &q, w[0], w[1]) {
            Membership::Inside => {}
            other => return Ok(other),
        }
        p = q;
    }
    Ok(Membership::Inside)
}

/// Certified lower bound on the margin of every point of `c`: the minimum
/// margin over an `eps`-net, less `eps`.
pub fn min_margin(region: &Region, c: &RegCurve, eps: f64) -> Result<f64> {
    let net = image_net(c, eps)?;
    let m = net.iter().map(|p| region.margin(p)).fold(f64::INFINITY, f64::min);
    Ok(m - eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_inside_and_crossing_a_cube() {
        let r = Region::cube(vec![0.0, 0.0], 1.0);
        assert_eq!(certify_segment(&r, &[-0.9, 0.0], &[0.9, 0.5], 0.0, 1.0), Membership::Inside);
        match certify_segment(&r, &[0.0, 0.0], &[2.0, 0.0], 0.0, 1.0) {
            Membership::Outside { time } => assert!((0.5..=0.5 + 1e-9).contains(&time), "{time}"),
            other => panic!("{other:?}"),
        }
        assert_eq!(certify_segment(&r, &[1.5, 0.0], &[0.0, 0.0], 0.0, 1.0), Membership::Outside { time: 0.0 });
    }

    #[test]
    fn segment_touching_the_boundary_is_not_inside() {
        let r = Region::cube(vec![0.0], 1.0);
        let m = certify_segment(&r, &[0.0], &[1.0], 0.0, 1.0);
        assert!(!m.is_inside());
    }

    #[test]
    fn segment_through_a_puncture_is_outside() {
        let r = Region::punctured(2);
        assert!(matches!(certify_segment(&r, &[-1.0, 0.0], &[1.0, 0.0], 0.0, 1.0), Membership::Outside { .. }));
        assert_eq!(certify_segment(&r, &[-1.0, 0.1], &[1.0, 0.1], 0.0, 1.0), Membership::Inside);
    }
}
