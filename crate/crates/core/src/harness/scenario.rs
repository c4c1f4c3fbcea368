//! Scenario files driving the `transition`, `transport`, `margin` and
//! `reconstruct` commands.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::atlas::{BundleAtlas, Descriptor, Manifold};
use crate::error::{Error, Result};
use crate::linalg::{from_rows, max_norm, to_rows, Matrix};
use crate::path::{chart_map, openness_margin, reconstruct, transition_lift_rep, transition_rep, PathChartSystem, PathRep};
use crate::regulated::{Interval, Resolution, StepCurve};
use crate::transport::PathTrivialization;

use super::gen;
use super::report::{Check, Report, Sense, Status};
use super::suites::rep_distance;

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_BOUND: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub operation: String,
    pub manifold: Descriptor,
    pub system: PathChartSystem,
    pub rep: PathRep,
    /// Destination system of a transition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<PathChartSystem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Acceptance bound of the transition round trip.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Times `(s, t)` for an explicit transport matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_holonomy: Option<Vec<Vec<f64>>>,
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    fn manifold(&self) -> Result<(Manifold, Option<BundleAtlas>)> {
        let b = self.manifold.build()?;
        Ok((b.manifold().clone(), b.bundle().cloned()))
    }
}

/// Run the scenario's own operation.
pub fn run_scenario(s: &Scenario, tol: Option<f64>) -> Result<Report> {
    match s.operation.as_str() {
        "transition" => cmd_transition(s, tol),
        "transport" => cmd_transport(s),
        "margin" => cmd_margin(s),
        "reconstruct" => cmd_reconstruct(s),
        other => Err(Error::BadParams(format!("unknown operation `{other}`"))),
    }
}

fn single(c: Check) -> Report {
    Report { checks: vec![c] }
}

/// Transition to `target` and back; reports the destination representation,
/// the refinement used and the round-trip error.
pub fn cmd_transition(s: &Scenario, tol: Option<f64>) -> Result<Report> {
    let (m, bundle) = s.manifold()?;
    let target = s.target.as_ref().ok_or_else(|| Error::BadParams("transition scenario without `target`".into()))?;
    let res = Resolution::certified(tol.or(s.tol).unwrap_or(DEFAULT_TOL));
    let lift = s.rep.fibers.is_some();
    let go = |from: &PathChartSystem, to: &PathChartSystem, rep: &PathRep| match (&bundle, lift) {
        (Some(b), true) => transition_lift_rep(b, from, to, rep, res),
        _ => transition_rep(&m, from, to, rep, res),
    };
    let there = go(&s.system, target, &s.rep)?;
    let back = go(target, &s.system, &there.rep)?;
    let base = if lift && bundle.is_some() { s.rep.clone() } else { s.rep.base() };
    let err = rep_distance(&base, &back.rep)?;
    let data = json!({
        "rep": there.rep,
        "refinement": there.refinement,
        "error_bound": there.error_bound,
        "cells": there.cells,
        "round_trip_error": err,
    });
    Ok(single(Check::compare("transition", "chart-system transition", err, s.bound.unwrap_or(DEFAULT_BOUND), Sense::AtMost).with_data(data)))
}

/// Frames, holonomy and transport along the scenario path.
pub fn cmd_transport(s: &Scenario) -> Result<Report> {
    let (_, bundle) = s.manifold()?;
    let bundle = bundle.ok_or_else(|| Error::BadParams(format!("`{}` is not a bundle", s.manifold.name)))?;
    let path = reconstruct(bundle.base(), &s.system, &s.rep.base())?;
    let triv = PathTrivialization::build(&bundle, &path)?;
    let hol = triv.holonomy()?;
    let mut data = json!({
        "frames": triv.export(),
        "kappa": triv.kappa(),
        "holonomy": to_rows(&hol),
    });
    if let Some((a, b)) = s.times {
        data["transport"] = json!(to_rows(&triv.transport(a, b)?));
    }
    // groupoid laws at the knots
    let tau = s.system.tau();
    let d = triv.rank();
    let mut violations = 0u32;
    for &r in tau {
        for &a in tau {
            for &b in tau {
                let ok = triv.transport(a, a)? == Matrix::identity(d, d) && triv.transport(a, r)? * triv.transport(b, a)? == triv.transport(b, r)?;
                violations += u32::from(!ok);
            }
        }
    }
    let mut report = Report::default();
    report.push(Check::compare("transport", "transport operators form a groupoid", violations as f64, 0.0, Sense::AtMost).with_data(data));
    if let Some(rows) = &s.expected_holonomy {
        let expected = from_rows(rows)?;
        if expected.shape() != hol.shape() {
            return Err(Error::Dimension { expected: hol.nrows(), found: expected.nrows() });
        }
        let gap = max_norm((&hol - &expected).as_slice());
        report.push(Check::compare("holonomy", "holonomy along a loop", gap, 0.0, Sense::AtMost).with_data(json!(to_rows(&hol))));
    }
    Ok(report)
}

/// Openness radius of the scenario path.
pub fn cmd_margin(s: &Scenario) -> Result<Report> {
    let (m, _) = s.manifold()?;
    let path = reconstruct(&m, &s.system, &s.rep.base())?;
    let o = openness_margin(&m, &path)?;
    let status = if o.eta > 0.0 { Status::Pass } else { Status::Fail };
    Ok(single(Check::new("margin", "chart domains are open", status, o.eta, 0.0, 1).with_data(json!(o))))
}

/// Reconstructed path, echoed, with the chart-map identity checked.
pub fn cmd_reconstruct(s: &Scenario) -> Result<Report> {
    let (m, _) = s.manifold()?;
    let path = reconstruct(&m, &s.system, &s.rep.base())?;
    let ok = chart_map(&path) == s.rep.base();
    let status = if ok { Status::Pass } else { Status::Fail };
    Ok(single(Check::new("reconstruct", "reconstruction inverts the chart map", status, f64::from(u8::from(!ok)), 0.0, 1).with_data(json!({ "path": path }))))
}

/// Names accepted by [`example`].
pub const EXAMPLES: [&str; 6] = ["euclidean-margin", "zero-reconstruct", "identity-transition", "sphere-transition", "moebius-transport", "cover-violation"];

/// Ready-made scenario files for the builtin manifolds.
pub fn example(name: &str) -> Result<Scenario> {
    let euclid = Descriptor::with_params("euclidean", json!({ "dim": 2 }));
    let unit = Interval::unit();
    let blank = |operation: &str, manifold: Descriptor, system: PathChartSystem, rep: PathRep| Scenario {
        operation: operation.into(),
        manifold,
        system,
        rep,
        target: None,
        tol: None,
        bound: None,
        seed: None,
        times: None,
        expected_holonomy: None,
    };
    let s = match name {
        "euclidean-margin" => {
            let y = StepCurve::new(vec![0.0, 0.5, 1.0], vec![vec![1.0, 0.0], vec![0.0, -1.0]])?;
            blank("margin", euclid, PathChartSystem::single(0), PathRep { x: vec![0.25, 0.5], pieces: vec![y], fibers: None })
        }
        "zero-reconstruct" => {
            let rep = PathRep { x: vec![1.0, -2.0], pieces: vec![StepCurve::constant(unit, &[0.0, 0.0])], fibers: None };
            blank("reconstruct", euclid, PathChartSystem::single(0), rep)
        }
        "identity-transition" | "sphere-transition" => {
            let (a, b) = gen::sphere_systems();
            let rep = gen::gentle_sphere_rep(&mut gen::case_rng(0, 0));
            let target = if name == "identity-transition" { a.clone() } else { b };
            Scenario { target: Some(target), ..blank("transition", Descriptor::new("sphere-stereo"), a, rep) }
        }
        "moebius-transport" => {
            let (_, path) = gen::moebius_loop();
            Scenario {
                times: Some((0.25, 0.75)),
                expected_holonomy: Some(vec![vec![-1.0]]),
                ..blank("transport", Descriptor::new("moebius-line-bundle"), path.system().clone(), chart_map(&path))
            }
        }
        // starts at the pole the south chart omits, then switches to it
        "cover-violation" => {
            let (_, b) = gen::sphere_systems();
            let pieces = (0..2).map(|i| StepCurve::constant(b.piece(i), &[0.0, 0.0])).collect();
            blank("reconstruct", Descriptor::new("sphere-stereo"), b, PathRep { x: vec![0.0, 0.0], pieces, fibers: None })
        }
        other => return Err(Error::BadParams(format!("unknown example `{other}`"))),
    };
    Ok(s)
}
