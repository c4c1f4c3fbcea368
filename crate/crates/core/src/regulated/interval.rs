use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A compact time interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn check(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, lo: self.lo, hi: self.hi })
        }
    }

    /// Intersection with positive length, if any.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(Interval { lo, hi })
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Nondecreasing knots `τ₀ ≤ … ≤ τₙ` spanning an interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PartitionRaw", into = "PartitionRaw")]
pub struct Partition {
    domain: Interval,
    knots: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRaw {
    domain: Interval,
    knots: Vec<f64>,
}

impl TryFrom<PartitionRaw> for Partition {
    type Error = Error;
    fn try_from(r: PartitionRaw) -> Result<Self> {
        Partition::new(r.domain, r.knots)
    }
}

impl From<Partition> for PartitionRaw {
    fn from(p: Partition) -> Self {
        PartitionRaw { domain: p.domain, knots: p.knots }
    }
}

impl Partition {
    pub fn new(domain: Interval, knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 || knots[0] != domain.lo() || *knots.last().unwrap() != domain.hi() {
            return Err(Error::DomainMismatch("partition endpoints must match the interval".into()));
        }
        if knots.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::DomainMismatch("partition knots must be nondecreasing".into()));
        }
        Ok(Self { domain, knots })
    }

    /// Partition from knots alone; the interval is `[first, last]`.
    pub fn from_knots(knots: Vec<f64>) -> Result<Self> {
        let lo = *knots.first().ok_or_else(|| Error::DomainMismatch("empty partition".into()))?;
        let hi = *knots.last().unwrap();
        Self::new(Interval::new(lo, hi)?, knots)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn is_strict(&self) -> bool {
        self.knots.windows(2).all(|w| w[0] < w[1])
    }

    /// The same partition with repeated knots collapsed.
    pub fn strict(&self) -> Partition {
        let mut knots = self.knots.clone();
        knots.dedup();
        Partition { domain: self.domain, knots }
    }

    pub fn pieces(&self) -> impl Iterator<Item = Interval> + '_ {
        self.knots
            .windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| Interval { lo: w[0], hi: w[1] })
    }

    /// Common refinement of two strict partitions of the same interval.
    pub fn refine(&self, other: &Partition) -> Result<Partition> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch("refinement of partitions over different intervals".into()));
        }
        let mut knots: Vec<f64> = self.knots.iter().chain(other.knots.iter()).copied().collect();
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        Ok(Partition { domain: self.domain, knots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_intervals_are_rejected() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
    }

    #[test]
    fn partition_strict_view_collapses_repeats() {
        let p = Partition::from_knots(vec![0.0, 0.5, 0.5, 1.0]).unwrap();
        assert!(!p.is_strict());
        assert_eq!(p.strict().knots(), &[0.0, 0.5, 1.0]);
        assert_eq!(p.pieces().count(), 2);
    }

    #[test]
    fn refinement_merges_knots() {
        let a = Partition::from_knots(vec![0.0, 0.5, 1.0]).unwrap();
        let b = Partition::from_knots(vec![0.0, 0.25, 0.5, 1.0]).unwrap();
        assert_eq!(a.refine(&b).unwrap().knots(), &[0.0, 0.25, 0.5, 1.0]);
    }

    #[test]
    fn interval_json_is_a_pair() {
        let i = Interval::new(0.0, 2.5).unwrap();
        assert_eq!(serde_json::to_string(&i).unwrap(), "[0.0,2.5]");
        let back: Interval = serde_json::from_str("[0.0,2.5]").unwrap();
        assert_eq!(back, i);
        assert!(serde_json::from_str::<Interval>("[1.0,0.0]").is_err());
    }
}
