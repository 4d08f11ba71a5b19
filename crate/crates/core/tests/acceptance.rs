//! Acceptance criteria, one line each. Runs as a plain binary so that every
//! criterion is reported even when an earlier one fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use plancherel::verify::{self, SuiteReport, DEFAULT_SAMPLES};

const SEED: u64 = 20_240_601;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> plancherel::Result<SuiteReport>,
}

fn summary(r: &SuiteReport) -> String {
    let gating: Vec<_> = r.checks.iter().filter(|c| c.gating).collect();
    let failed: Vec<&str> = gating.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let mut s = format!("{} checks", gating.len());
    if !r.comparisons.is_empty() {
        s += &format!(", {} comparisons", r.comparisons.len());
    }
    if let Some(z) = r.worst_z {
        s += &format!(", worst |z| = {z:.2}");
    }
    if !failed.is_empty() {
        s += &format!(", failed: {}", failed.join("; "));
    }
    s
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "exact combinatorics n <= 8",
            budget: Duration::from_secs(10),
            run: || verify::combinatorics(8),
        },
        Criterion {
            id: 2,
            name: "RS pushforward n <= 6",
            budget: Duration::from_secs(10),
            run: || verify::rs_pushforward(6),
        },
        Criterion {
            id: 3,
            name: "static kernel ratio vs series",
            budget: Duration::from_secs(30),
            run: || verify::static_kernel_identity(SEED, 1000),
        },
        Criterion {
            id: 4,
            name: "extended kernel contour vs series",
            budget: Duration::from_secs(120),
            run: verify::dynamic_kernel_identity,
        },
        Criterion {
            id: 5,
            name: "Bessel delta identity",
            budget: Duration::from_secs(10),
            run: verify::delta_identity,
        },
        Criterion {
            id: 6,
            name: "kernel determinant vs brute-force measure",
            budget: Duration::from_secs(60),
            run: verify::measure_oracle,
        },
        Criterion {
            id: 7,
            name: "Monte Carlo static suite",
            budget: Duration::from_secs(300),
            run: || verify::static_suite(SEED + 7, DEFAULT_SAMPLES),
        },
        Criterion {
            id: 8,
            name: "Monte Carlo dynamical suite",
            budget: Duration::from_secs(900),
            run: || verify::dynamic_suite(SEED + 8, DEFAULT_SAMPLES),
        },
        Criterion {
            id: 9,
            name: "Poisson/RS trajectories vs kernel and jump chain",
            budget: Duration::from_secs(900),
            run: || verify::rsk_suite(SEED + 9, DEFAULT_SAMPLES),
        },
        Criterion {
            id: 10,
            name: "conditional dependence probe",
            budget: Duration::from_secs(300),
            run: || verify::probe_suite(SEED + 10, 1_000_000),
        },
        Criterion {
            id: 11,
            name: "bulk limit",
            budget: Duration::from_secs(300),
            run: verify::bulk_suite,
        },
        Criterion {
            id: 12,
            name: "edge limit",
            budget: Duration::from_secs(300),
            run: verify::edge_suite,
        },
        Criterion {
            id: 13,
            name: "first row at theta = 400, hyperbola vs line",
            budget: Duration::from_secs(600),
            run: || verify::first_row_suite(SEED + 13, 2000),
        },
    ];
    let mut all = true;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let (pass, detail) = match &outcome {
            Ok(r) => (r.pass && in_time, summary(r)),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= pass;
        println!(
            "criterion {:>2}: {} {} ({:.2}s of {}s; {})",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
