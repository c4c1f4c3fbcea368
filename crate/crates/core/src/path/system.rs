use serde::{Deserialize, Serialize};

use crate::atlas::Manifold;
use crate::error::{Error, Result};
use crate::regulated::Interval;

/// Strict partition `0 = τ₀ < … < τₙ = 1` with one chart per piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemRaw", into = "SystemRaw")]
pub struct PathChartSystem {
    tau: Vec<f64>,
    charts: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SystemRaw {
    tau: Vec<f64>,
    charts: Vec<usize>,
}

impl TryFrom<SystemRaw> for PathChartSystem {
    type Error = Error;
    fn try_from(r: SystemRaw) -> Result<Self> {
        PathChartSystem::new(r.tau, r.charts)
    }
}

impl From<PathChartSystem> for SystemRaw {
    fn from(s: PathChartSystem) -> Self {
        SystemRaw { tau: s.tau, charts: s.charts }
    }
}

impl PathChartSystem {
    pub fn new(tau: Vec<f64>, charts: Vec<usize>) -> Result<Self> {
        if tau.len() < 2 || tau[0] != 0.0 || *tau.last().unwrap() != 1.0 {
            return Err(Error::InvalidPath("partition must run from 0 to 1".into()));
        }
        if tau.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidPath("partition must be strictly increasing".into()));
        }
        if charts.len() != tau.len() - 1 {
            return Err(Error::InvalidPath(format!("{} pieces need {} charts, got {}", tau.len() - 1, tau.len() - 1, charts.len())));
        }
        Ok(Self { tau, charts })
    }

    /// One piece covering `[0, 1]`.
    pub fn single(chart: usize) -> Self {
        Self { tau: vec![0.0, 1.0], charts: vec![chart] }
    }

    /// Collapse repeated knots of a nondecreasing partition; the chart of a
    /// degenerate piece is dropped.
    pub fn from_nonstrict(tau: &[f64], charts: &[usize]) -> Result<Self> {
        let mut t = vec![*tau.first().ok_or_else(|| Error::InvalidPath("empty partition".into()))?];
        let mut c = Vec::new();
        for (w, &ch) in tau.windows(2).zip(charts) {
            if w[1] > w[0] {
                t.push(w[1]);
                c.push(ch);
            } else if w[1] < w[0] {
                return Err(Error::InvalidPath("partition must be nondecreasing".into()));
            }
        }
        Self::new(t, c)
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn charts(&self) -> &[usize] {
        &self.charts
    }

    pub fn num_pieces(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, i: usize) -> usize {
        self.charts[i]
    }

    pub fn piece(&self, i: usize) -> Interval {
        Interval::new(self.tau[i], self.tau[i + 1]).expect("strict partition")
    }

    /// Piece holding `t`: the right piece at interior knots, the last one at `t = 1`.
    pub fn piece_index(&self, t: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfDomain { t, lo: 0.0, hi: 1.0 });
        }
        Ok(self.tau.partition_point(|&k| k <= t).saturating_sub(1).min(self.num_pieces() - 1))
    }

    pub fn check_charts(&self, m: &Manifold) -> Result<()> {
        match self.charts.iter().find(|&&c| c >= m.num_charts()) {
            Some(&c) => Err(Error::UnknownChart(c)),
            None => Ok(()),
        }
    }

    /// Sorted union of the knots of both systems.
    pub fn common_refinement(&self, other: &PathChartSystem) -> Vec<f64> {
        let mut k: Vec<f64> = self.tau.iter().chain(&other.tau).copied().collect();
        k.sort_by(f64::total_cmp);
        k.dedup();
        k
    }

    /// The same charts on a finer partition.
    pub fn refine(&self, extra: &[f64]) -> Result<PathChartSystem> {
        let mut tau: Vec<f64> = self.tau.iter().chain(extra.iter().filter(|t| **t > 0.0 && **t < 1.0)).copied().collect();
        tau.sort_by(f64::total_cmp);
        tau.dedup();
        let charts = tau.windows(2).map(|w| self.charts[self.piece_index(w[0]).expect("inside")]).collect();
        Self::new(tau, charts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piece_selection_prefers_the_right_piece() {
        let s = PathChartSystem::new(vec![0.0, 0.5, 1.0], vec![0, 1]).unwrap();
        assert_eq!(s.piece_index(0.0).unwrap(), 0);
        assert_eq!(s.piece_index(0.5).unwrap(), 1);
        assert_eq!(s.piece_index(1.0).unwrap(), 1);
        assert!(s.piece_index(1.5).is_err());
    }

    #[test]
    fn validation_and_json() {
        assert!(PathChartSystem::new(vec![0.0, 0.5, 0.5, 1.0], vec![0, 1, 0]).is_err());
        assert!(PathChartSystem::new(vec![0.0, 1.0], vec![0, 1]).is_err());
        let s = PathChartSystem::from_nonstrict(&[0.0, 0.5, 0.5, 1.0], &[0, 1, 0]).unwrap();
        assert_eq!(s.charts(), &[0, 0]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"tau":[0.0,0.5,1.0],"charts":[0,0]}"#);
        assert_eq!(serde_json::from_str::<PathChartSystem>(&json).unwrap(), s);
        let r = PathChartSystem::single(1).refine(&[0.25, 0.75]).unwrap();
        assert_eq!(r.tau(), &[0.0, 0.25, 0.75, 1.0]);
        assert_eq!(r.charts(), &[1, 1, 1]);
    }
}
