//! Acceptance suite: every criterion at its full case count and tolerance,
//! one PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use pathatlas::harness::{find, Check, Exec, Status, SuiteConfig, SUITES};

const SEED: u64 = 20_240_601;

type Checks = Box<dyn Fn() -> Vec<Check>>;

fn run(name: &str, count: u64) -> Check {
    find(name).expect("registered suite").run(&SuiteConfig::new(SEED, count))
}

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<Check>,
}

fn determinism() -> Check {
    // every suite twice, once per executor, at a reduced count
    let mut mismatches = 0u32;
    for s in SUITES {
        let par = SuiteConfig { exec: Exec::Parallel, ..SuiteConfig::new(SEED + 1, 20) };
        let seq = SuiteConfig { exec: Exec::Sequential, ..par };
        let mut a = s.run(&par);
        let mut b = s.run(&par);
        let mut c = s.run(&seq);
        for x in [&mut a, &mut b, &mut c] {
            x.runtime_ms = None;
        }
        let [a, b, c] = [a, b, c].map(|x| serde_json::to_string(&x).unwrap());
        mismatches += u32::from(a != b) + u32::from(a != c);
    }
    Check::new(
        "determinism",
        "identical seeds give identical reports",
        if mismatches == 0 { Status::Pass } else { Status::Fail },
        mismatches as f64,
        0.0,
        3 * SUITES.len() as u64,
    )
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Checks)> = vec![
        (1, "concatenation isometry, 10^4 pairs, exact", Box::new(|| vec![run("concat-isometry", 10_000)])),
        (2, "restriction contraction k=0,1,2, 10^4 pairs, exact", Box::new(|| vec![run("restriction-contraction", 10_000)])),
        (3, "value/derivative isomorphism and both bounds, 10^4 curves", Box::new(|| vec![run("derivative-split", 10_000)])),
        (
            4,
            "integral commutation and substitution rule, 10^3 cases each, exact",
            Box::new(|| vec![run("integral-commutation", 1_000), run("change-of-variables", 1_000)]),
        ),
        (5, "atlas round trips, 10^3 paths per manifold, exact", Box::new(|| vec![run("atlas-roundtrip", 1_000)])),
        (6, "transition smoothness order >= 1.9, 100 probes", Box::new(|| vec![run("transition-smoothness", 100)])),
        (7, "sphere transition round trip < 1e-6 at tol 1e-7; refinements exact", Box::new(|| vec![run("transition-roundtrip", 20)])),
        (8, "openness, 20 scenarios x 10^3 perturbations, no counterexample", Box::new(|| vec![run("openness", 1_000)])),
        (9, "transport groupoid on 10^4 triples; Möbius holonomy = -Id", Box::new(|| vec![run("transport-groupoid", 10_000), run("holonomy", 1)])),
        (
            10,
            "norm equivalence on 10^3 fields per scenario; base projection of compatibility exact",
            Box::new(|| vec![run("norm-equivalence", 1_000), run("compatibility", 1_000)]),
        ),
        (11, "deformation tangents agree across chart systems within 1e-6, 100 deformations", Box::new(|| vec![run("deformation-independence", 100)])),
        (12, "determinism of every suite across reruns and executors", Box::new(|| vec![determinism()])),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let c = Criterion { id, title, checks: f() };
        let ok = c.checks.iter().all(|k| k.status == Status::Pass);
        let summary: Vec<String> = c
            .checks
            .iter()
            .map(|k| {
                let detail = k.detail.as_deref().map(|d| format!(" [{d}]")).unwrap_or_default();
                format!("{} {:?} measured={} bound={} cases={}{}", k.name, k.status, k.measured, k.bound, k.cases, detail)
            })
            .collect();
        println!(
            "criterion {:>2} {}: {} ({:.1}s) {}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            start.elapsed().as_secs_f64(),
            summary.join("; ")
        );
        failed += usize::from(!ok);
    }
    if failed == 0 {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
