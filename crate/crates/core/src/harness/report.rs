//! Machine-readable reports: one JSON object per check, one check per line.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

/// Whether the measured value must stay below or above the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// The property the check exercises.
    pub anchor: String,
    pub status: Status,
    pub measured: f64,
    pub bound: f64,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl Check {
    pub fn new(name: &str, anchor: &str, status: Status, measured: f64, bound: f64, cases: u64) -> Self {
        Self { name: name.into(), anchor: anchor.into(), status, measured, bound, cases, detail: None, data: None, runtime_ms: None }
    }

    /// Single-outcome check comparing `measured` against `bound`.
    pub fn compare(name: &str, anchor: &str, measured: f64, bound: f64, sense: Sense) -> Self {
        let ok = match sense {
            Sense::AtMost => measured <= bound,
            Sense::AtLeast => measured >= bound,
        };
        Self::new(name, anchor, if ok { Status::Pass } else { Status::Fail }, measured, bound, 1)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Fold per-case outcomes into one check. Failing cases are reported by
/// their first index; budget exhaustion counts as indeterminate.
pub fn aggregate(name: &str, anchor: &str, bound: f64, sense: Sense, outcomes: Vec<crate::Result<f64>>) -> Check {
    let cases = outcomes.len() as u64;
    let mut measured = match sense {
        Sense::AtMost => f64::NEG_INFINITY,
        Sense::AtLeast => f64::INFINITY,
    };
    let mut status = Status::Pass;
    let mut detail = None;
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(v) => {
                let (ok, worse) = match sense {
                    Sense::AtMost => (v <= bound, v > measured),
                    Sense::AtLeast => (v >= bound, v < measured),
                };
                if worse || v.is_nan() {
                    measured = v;
                }
                if !ok && status != Status::Fail {
                    status = Status::Fail;
                    detail = Some(format!("case {i}: measured {v}"));
                }
            }
            Err(e @ Error::Budget(_)) => {
                if status == Status::Pass {
                    status = Status::Indeterminate;
                    detail = Some(format!("case {i}: {e}"));
                }
            }
            Err(e) => {
                if status != Status::Fail {
                    status = Status::Fail;
                    detail = Some(format!("case {i}: {e}"));
                }
            }
        }
    }
    if cases == 0 {
        measured = 0.0;
    }
    Check { detail, ..Check::new(name, anchor, status, measured, bound, cases) }
}

/// Run `f` and record its wall time on the produced check.
pub fn timed(f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut c = f();
    c.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    c
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    /// JSON lines in check-name order, with or without timings.
    pub fn to_json_lines(&self, timings: bool) -> String {
        let mut checks = self.checks.clone();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut out = String::new();
        for mut c in checks {
            if !timings {
                c.runtime_ms = None;
            }
            out.push_str(&serde_json::to_string(&c).expect("serializable"));
            out.push('\n');
        }
        out
    }

    /// Payload used for determinism comparisons: timings excluded.
    pub fn canonical(&self) -> String {
        self.to_json_lines(false)
    }
}
