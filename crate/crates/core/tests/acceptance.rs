//! Acceptance gate. Every criterion runs at its full trial count with exact
//! equality at L = 4, max degree 3, coefficient bound 5, seed 0, and prints
//! one PASS/FAIL line. The process exits nonzero if any criterion fails or
//! the whole gate takes 60 s or more.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use superanalytic::superfield::fault;
use superanalytic::verify::{run_suite, shape_closure, CheckConfig, CheckReport, Convention};
use superanalytic::MatrixShape;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

const BUDGET: Duration = Duration::from_secs(60);

struct Criterion {
    id: u8,
    title: &'static str,
    trials: u64,
    checks: &'static [&'static str],
}

const SUITES: &[Criterion] = &[
    Criterion { id: 1, title: "algebra soundness", trials: 1000, checks: &["algebra-soundness"] },
    Criterion { id: 2, title: "calculus soundness", trials: 1000, checks: &["calculus-soundness"] },
    Criterion { id: 3, title: "Berezinian addition", trials: 1000, checks: &["ber-addition"] },
    Criterion { id: 4, title: "explicit vs matrix Berezinian", trials: 1000, checks: &["ber-explicit-vs-matrix"] },
    Criterion {
        id: 5,
        title: "structural relations",
        trials: 1000,
        checks: &["q-minus-ddelta", "condition-components", "d-delta0", "partial-delta0"],
    },
    Criterion {
        id: 6,
        title: "reduction builders",
        trials: 500,
        checks: &["reduced-satisfy-condition", "tpt-noninvertible"],
    },
    Criterion {
        id: 7,
        title: "reduced Berezinians",
        trials: 500,
        checks: &["ber-scf", "ber-tpt-three-forms", "ber-tpt-nilpotent", "eq-bu"],
    },
    Criterion { id: 8, title: "parity twist", trials: 500, checks: &["parity-twist"] },
    Criterion {
        id: 9,
        title: "chain rule and multiplicativity",
        trials: 500,
        checks: &["chain-rule", "ber-multiplicative"],
    },
    Criterion { id: 10, title: "star law", trials: 500, checks: &["star-vs-compose", "spin-rule", "deg-star"] },
    Criterion {
        id: 11,
        title: "cocycles",
        trials: 500,
        checks: &["cocycle-standard", "cocycle-mixed", "deg-both-cocycles"],
    },
    Criterion { id: 13, title: "determinant addition", trials: 1000, checks: &["det-addition"] },
];

/// Trials per check under the mutation; any failure anywhere counts.
const MUTATION_TRIALS: u64 = 10;

fn config(trials: u64, suite: &[&str]) -> CheckConfig {
    CheckConfig { trials, suite: suite.iter().map(|s| s.to_string()).collect(), ..CheckConfig::default() }
}

fn run(trials: u64, suite: &[&str]) -> CheckReport {
    run_suite(&config(trials, suite)).expect("valid configuration")
}

fn report_line(id: u8, title: &str, passed: bool, detail: &str, elapsed: Duration) -> bool {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {status} {title}: {detail} ({:.1} s)", elapsed.as_secs_f64());
    passed
}

fn suite_criterion(c: &Criterion) -> bool {
    let start = Instant::now();
    let report = run(c.trials, c.checks);
    let detail = report
        .checks
        .iter()
        .map(|r| format!("{} {}/{}", r.name, r.passes, r.trials))
        .collect::<Vec<_>>()
        .join(", ");
    let ok = report.passed() && report.checks.iter().all(|r| r.trials == c.trials);
    for r in report.failed() {
        println!("    {} counterexample: {}", r.name, r.counterexample.as_ref().map(ToString::to_string).unwrap_or_default());
    }
    report_line(c.id, c.title, ok, &detail, start.elapsed())
}

fn shape_closures() -> bool {
    let start = Instant::now();
    let trials = 500;
    let report = run(trials, &["shape-closures"]);
    let closures_ok = report.passed();
    let cfg = config(trials, &[]);
    let mut holding = Convention::ALL.to_vec();
    let mut tallies = Vec::new();
    for right in [MatrixShape::Any, MatrixShape::Superconformal, MatrixShape::TwistParity] {
        let closure = shape_closure(MatrixShape::Degenerate, right, MatrixShape::Degenerate, &cfg);
        let held = closure.holding();
        holding.retain(|c| held.contains(c));
        for (convention, tally) in &closure.conventions {
            tallies.push(format!("{} [{}] {}/{}", closure.claim, convention.name(), tally.holds, tally.trials));
        }
    }
    let names: Vec<&str> = holding.iter().map(|c| c.name()).collect();
    let detail = format!(
        "P_S·P_S ⊆ P_S, P_T·P_S ⊆ P_T, P_D·P_D ⊆ P_D first-map-first {}/{}; P_D ideal claims hold in: {}",
        report.checks[0].passes,
        report.checks[0].trials,
        if names.is_empty() { "none".to_string() } else { names.join(", ") }
    );
    for t in tallies {
        println!("    {t}");
    }
    report_line(12, "shape closures", closures_ok && !holding.is_empty(), &detail, start.elapsed())
}

fn mutation_guard() -> bool {
    let start = Instant::now();
    let guarded: Vec<&str> = SUITES.iter().filter(|c| (2..=11).contains(&c.id)).flat_map(|c| c.checks.iter().copied()).collect();
    let report = fault::with_flipped_graded_sign(|| run(MUTATION_TRIALS, &guarded));
    let caught: Vec<&str> = report.failed().map(|r| r.name.as_str()).collect();
    let detail = format!("flipped graded sign caught by {} of {} checks: {}", caught.len(), guarded.len(), caught.join(", "));
    report_line(14, "mutation guard", !caught.is_empty(), &detail, start.elapsed())
}

fn reproducibility() -> bool {
    let start = Instant::now();
    let cfg = CheckConfig { trials: 3, ..CheckConfig::default() };
    let first = run_suite(&cfg).expect("valid configuration").without_timing().to_json_string();
    let second = run_suite(&cfg).expect("valid configuration").without_timing().to_json_string();
    let detail = format!("two runs of every check and observation, {} bytes of JSON each", first.len());
    report_line(15, "reproducibility", first == second, &detail, start.elapsed())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = Vec::new();
    for c in SUITES.iter().filter(|c| c.id < 12) {
        results.push(suite_criterion(c));
    }
    results.push(shape_closures());
    for c in SUITES.iter().filter(|c| c.id > 12) {
        results.push(suite_criterion(c));
    }
    results.push(mutation_guard());
    results.push(reproducibility());

    let elapsed = start.elapsed();
    let in_budget = elapsed < BUDGET;
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s (budget {} s){}",
        results.len() - failed,
        results.len(),
        elapsed.as_secs_f64(),
        BUDGET.as_secs(),
        if in_budget { "" } else { ", over budget" }
    );
    if failed == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
