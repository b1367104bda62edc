//! Randomized verification of the identities of the theory.
//!
//! Each registered [`Check`](checks::Check) states one identity and tests it
//! with exact equality on fresh random instances. Trials are independent:
//! trial `i` of a check draws from a ChaCha stream keyed by the check's
//! instance family and `i`, so any trial can be replayed alone and results
//! merge associatively.
//!
//! ```
//! use superanalytic::verify::{run_suite, CheckConfig};
//!
//! let cfg = CheckConfig {
//!     trials: 5,
//!     max_degree: 2,
//!     suite: vec!["ber-addition".into()],
//!     ..CheckConfig::default()
//! };
//! let report = run_suite(&cfg).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.checks[0].passes, 5);
//! ```

mod checks;
mod closure;
mod random;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::grassmann::MAX_GENERATORS;

pub use checks::{Check, CheckFn, Verdict, REGISTRY};
pub use closure::{chain_product, shape_closure, ClosureReport, Convention, Observation, Tally, OBSERVATIONS};
pub use random::{random_transform, GBody, Sampler, MAX_REDRAWS};

/// Selects everything in [`run_suite`].
pub const ALL: &str = "all";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub generators: usize,
    pub max_degree: usize,
    pub coefficient_bound: u32,
    pub trials: u64,
    pub seed: u64,
    /// Check and observation names, or `"all"`.
    pub suite: Vec<String>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { generators: 4, max_degree: 3, coefficient_bound: 5, trials: 1000, seed: 0, suite: vec![ALL.into()] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("coefficient bound must be at least 1")]
    NoCoefficients,
    #[error("at most {MAX_GENERATORS} generators are supported")]
    TooManyGenerators,
    #[error("check {check} involves odd functions and needs at least 2 generators, got {generators}")]
    TooFewGenerators { check: &'static str, generators: usize },
    #[error("unknown check {name:?}; available: {available}")]
    UnknownCheck { name: String, available: String },
}

/// Every selectable name, checks first.
pub fn available() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).chain(OBSERVATIONS.iter().map(|(n, _)| *n)).collect()
}

pub fn find_check(name: &str) -> Option<&'static Check> {
    REGISTRY.iter().find(|c| c.name == name)
}

struct Selection {
    checks: Vec<&'static Check>,
    observations: Vec<&'static str>,
}

impl CheckConfig {
    fn select(&self) -> Result<Selection, ConfigError> {
        if self.suite.iter().any(|s| s == ALL) {
            return Ok(Selection {
                checks: REGISTRY.iter().collect(),
                observations: OBSERVATIONS.iter().map(|(n, _)| *n).collect(),
            });
        }
        let mut sel = Selection { checks: Vec::new(), observations: Vec::new() };
        for name in &self.suite {
            if let Some(check) = find_check(name) {
                if !sel.checks.iter().any(|c| c.name == check.name) {
                    sel.checks.push(check);
                }
            } else if let Some((obs, _)) = OBSERVATIONS.iter().find(|(n, _)| n == name) {
                if !sel.observations.contains(obs) {
                    sel.observations.push(obs);
                }
            } else {
                return Err(ConfigError::UnknownCheck { name: name.clone(), available: available().join(", ") });
            }
        }
        Ok(sel)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.coefficient_bound == 0 {
            return Err(ConfigError::NoCoefficients);
        }
        if self.generators > MAX_GENERATORS {
            return Err(ConfigError::TooManyGenerators);
        }
        let sel = self.select()?;
        if self.generators < 2 {
            if let Some(check) = sel.checks.iter().find(|c| c.needs_odd) {
                return Err(ConfigError::TooFewGenerators { check: check.name, generators: self.generators });
            }
            if let Some(obs) = sel.observations.first() {
                return Err(ConfigError::TooFewGenerators { check: obs, generators: self.generators });
            }
        }
        Ok(())
    }
}

/// FNV-1a of `key`, offset by the trial index.
pub(crate) fn stream_for(key: &str, trial: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h.wrapping_add(trial)
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub trials: u64,
    pub passes: u64,
    pub failures: u64,
    /// Draws rejected because they violated a precondition.
    pub redraws: u64,
    /// First failing trial: its index, stream, violated statement and inputs.
    pub counterexample: Option<Value>,
    pub millis: u64,
}

impl CheckResult {
    fn empty(check: &Check) -> Self {
        Self {
            name: check.name.into(),
            anchor: check.anchor.into(),
            trials: 0,
            passes: 0,
            failures: 0,
            redraws: 0,
            counterexample: None,
            millis: 0,
        }
    }

    /// Combines partial results of the same check. Associative, and the
    /// counterexample of the left operand wins.
    pub fn merge(mut self, other: CheckResult) -> CheckResult {
        self.trials += other.trials;
        self.passes += other.passes;
        self.failures += other.failures;
        self.redraws += other.redraws;
        self.millis += other.millis;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs trials `range` of one check.
pub fn run_check(check: &Check, cfg: &CheckConfig, range: std::ops::Range<u64>) -> CheckResult {
    let start = Instant::now();
    let mut result = CheckResult::empty(check);
    for trial in range {
        let stream = stream_for(check.family, trial);
        let mut sampler = Sampler::new(cfg, stream);
        let outcome = catch_unwind(AssertUnwindSafe(|| (check.run)(&mut sampler)));
        result.trials += 1;
        result.redraws += sampler.redraws();
        let witness = match outcome {
            Ok(Ok(Ok(()))) => None,
            Ok(Ok(Err(witness))) => Some(witness),
            Ok(Err(e)) => Some(json!({ "error": e.to_string() })),
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Some(json!({ "panic": msg }))
            }
        };
        match witness {
            None => result.passes += 1,
            Some(w) => {
                result.failures += 1;
                if result.counterexample.is_none() {
                    result.counterexample = Some(json!({ "trial": trial, "stream": stream, "detail": w }));
                }
            }
        }
    }
    result.millis = start.elapsed().as_millis() as u64;
    result
}

/// Results of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub config: CheckConfig,
    pub checks: Vec<CheckResult>,
    pub observations: Vec<Observation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn observation(&self, name: &str) -> Option<&Observation> {
        self.observations.iter().find(|o| o.name == name)
    }

    /// The same report with every wall-time field zeroed, which is the part
    /// that legitimately differs between identical runs.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let failed = self.failed().count();
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v["summary"] = json!({ "checks": self.checks.len(), "failed": failed, "passed": failed == 0 });
        v
    }

    /// Pretty JSON; keys are sorted, so equal reports give equal bytes.
    pub fn to_json_string(&self) -> String {
        crate::wire::to_canonical_string(&self.to_json())
    }

    /// One line per check, then one block per observation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {:width$}  {}/{} passed, {} redraws, {} ms  [{}]",
                c.name, c.passes, c.trials, c.redraws, c.millis, c.anchor
            );
            if let Some(cx) = &c.counterexample {
                let _ = writeln!(out, "     counterexample: {cx}");
            }
        }
        for o in &self.observations {
            let _ = writeln!(out, "NOTE {}: {} ({})", o.name, o.summary, o.statement);
            for (label, t) in &o.tallies {
                let _ = writeln!(out, "     {label}: {}/{} held", t.holds, t.trials);
            }
        }
        let failed = self.failed().count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

/// Runs every selected check and observation.
pub fn run_suite(cfg: &CheckConfig) -> Result<CheckReport, ConfigError> {
    cfg.validate()?;
    let sel = cfg.select()?;
    let checks = sel.checks.iter().map(|c| run_check(c, cfg, 0..cfg.trials)).collect();
    let observations = sel.observations.iter().filter_map(|name| closure::observe(name, cfg)).collect();
    Ok(CheckReport { config: cfg.clone(), checks, observations })
}

/// Per-check results keyed by name, for callers that run checks piecemeal.
pub fn merge_results(parts: impl IntoIterator<Item = CheckResult>) -> BTreeMap<String, CheckResult> {
    let mut out: BTreeMap<String, CheckResult> = BTreeMap::new();
    for part in parts {
        match out.remove(&part.name) {
            Some(prev) => {
                out.insert(part.name.clone(), prev.merge(part));
            }
            None => {
                out.insert(part.name.clone(), part);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: &[&str]) -> CheckConfig {
        CheckConfig {
            max_degree: 2,
            trials: 3,
            generators: 3,
            suite: suite.iter().map(|s| s.to_string()).collect(),
            ..CheckConfig::default()
        }
    }

    #[test]
    fn names_are_unique() {
        let names = available();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn unknown_check_lists_available() {
        let err = run_suite(&small(&["nope"])).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("nope") && msg.contains("ber-addition"), "{msg}");
    }

    #[test]
    fn validation() {
        assert_eq!(run_suite(&CheckConfig { trials: 0, ..small(&["ber-addition"]) }).unwrap_err(), ConfigError::NoTrials);
        assert!(matches!(
            run_suite(&CheckConfig { generators: 1, ..small(&["ber-addition"]) }),
            Err(ConfigError::TooFewGenerators { .. })
        ));
        let r = run_suite(&CheckConfig { generators: 0, ..small(&["det-addition"]) }).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn merge_is_associative() {
        let cfg = small(&["chain-rule"]);
        let check = find_check("chain-rule").unwrap();
        let parts: Vec<_> = [0..1, 1..2, 2..3].into_iter().map(|r| run_check(check, &cfg, r)).collect();
        let left = parts[0].clone().merge(parts[1].clone()).merge(parts[2].clone());
        let right = parts[0].clone().merge(parts[1].clone().merge(parts[2].clone()));
        assert_eq!(left, right);
        let whole = run_check(check, &cfg, 0..3);
        assert_eq!(left.passes, whole.passes);
        assert_eq!(left.trials, 3);
    }

    #[test]
    fn every_check_passes_on_a_small_run() {
        let report = run_suite(&small(&[ALL])).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.counterexample);
            assert_eq!(c.passes + c.failures, c.trials);
        }
    }

    #[test]
    fn empty_suite_is_a_valid_report() {
        let report = run_suite(&small(&[])).unwrap();
        assert!(report.passed());
        assert_eq!(report.to_json()["checks"], json!([]));
    }
}
