//! Shape closure of tangent-matrix sets under composition, and the
//! empirical observations that are reported rather than asserted.
//!
//! A set product `P_X · P_Y` does not say which factor is the first map.
//! Both readings are measured:
//!
//! * [`Convention::FirstMapFirst`]: the map applied first is drawn from `X`,
//!   matching the order of the chain rule `P(T̃∘T) = P(T)·(P(T̃)∘T)`.
//! * [`Convention::OuterMapFirst`]: the map applied last is drawn from `X`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cocycle;
use crate::error::Result;
use crate::supermatrix::{MatrixShape, TangentMatrix};
use crate::transform::{ReductionKind, SATransform};
use crate::wire;

use super::random::{GBody, Sampler};
use super::{stream_for, CheckConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    FirstMapFirst,
    OuterMapFirst,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::FirstMapFirst, Convention::OuterMapFirst];

    pub fn name(self) -> &'static str {
        match self {
            Convention::FirstMapFirst => "first-map-first",
            Convention::OuterMapFirst => "outer-map-first",
        }
    }
}

/// The chain-rule product for a pair drawn as `(x, y)` with `x` from the
/// left set, ordered by `convention`. Returns the product together with
/// the inner and outer maps.
pub fn chain_product<'a>(
    convention: Convention,
    x: &'a SATransform,
    y: &'a SATransform,
) -> Result<(TangentMatrix, &'a SATransform, &'a SATransform)> {
    let (inner, outer) = match convention {
        Convention::FirstMapFirst => (x, y),
        Convention::OuterMapFirst => (y, x),
    };
    Ok((cocycle::chained_tangent_matrix(outer, inner)?, inner, outer))
}

/// How often a property held over a batch of random instances.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Tally {
    pub trials: u64,
    pub holds: u64,
    pub fails: u64,
    /// First instance on which the property failed.
    pub counterexample: Option<Value>,
}

impl Tally {
    fn record(&mut self, holds: bool, witness: impl FnOnce() -> Value) {
        self.trials += 1;
        if holds {
            self.holds += 1;
        } else {
            self.fails += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    pub fn always(&self) -> bool {
        self.fails == 0
    }
}

/// Result of measuring `P_X · P_Y ⊆ P_target` in both conventions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub claim: String,
    pub conventions: BTreeMap<Convention, Tally>,
}

impl ClosureReport {
    /// Conventions in which the claim held on every trial.
    pub fn holding(&self) -> Vec<Convention> {
        self.conventions.iter().filter(|(_, t)| t.always()).map(|(c, _)| *c).collect()
    }
}

fn pair_json(inner: &SATransform, outer: &SATransform) -> Value {
    json!({ "inner": wire::transform_to_json(inner), "outer": wire::transform_to_json(outer) })
}

/// Measures `P_left · P_right ⊆ P_target` on `cfg.trials` random pairs per
/// convention.
pub fn shape_closure(left: MatrixShape, right: MatrixShape, target: MatrixShape, cfg: &CheckConfig) -> ClosureReport {
    let claim = format!("P_{}·P_{} ⊆ P_{}", left.symbol(), right.symbol(), target.symbol());
    let mut conventions = BTreeMap::new();
    for convention in Convention::ALL {
        let mut tally = Tally::default();
        let key = format!("closure {claim} {}", convention.name());
        for trial in 0..cfg.trials {
            let mut s = Sampler::new(cfg, stream_for(&key, trial));
            let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<(bool, SATransform, SATransform)> {
                let x = s.shape_transform(left)?;
                let y = s.shape_transform(right)?;
                let (product, _, _) = chain_product(convention, &x, &y)?;
                let holds = product.has_shape(target);
                match convention {
                    Convention::FirstMapFirst => Ok((holds, x, y)),
                    Convention::OuterMapFirst => Ok((holds, y, x)),
                }
            }));
            match outcome {
                Ok(Ok((holds, inner, outer))) => tally.record(holds, || pair_json(&inner, &outer)),
                Ok(Err(e)) => tally.record(false, || json!({ "error": e.to_string() })),
                Err(_) => tally.record(false, || json!({ "error": "panic" })),
            }
        }
        conventions.insert(convention, tally);
    }
    ClosureReport { claim, conventions }
}

/// An empirical finding attached to a report. Observations never fail a
/// suite; they record how the implementation behaves where the algebra does
/// not force an answer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub name: &'static str,
    pub statement: String,
    pub tallies: BTreeMap<String, Tally>,
    pub summary: String,
}

pub const OBSERVATIONS: &[(&str, &str)] = &[
    ("deg-ideal", "P_D·P_A ⊆ P_D, P_D·P_S ⊆ P_D, P_D·P_T ⊆ P_D per factor-order convention"),
    ("tpt-subsemigroup", "rate at which TPt ∘ TPt is again TPt"),
    ("generic-cocycle", "rate at which Dθ̃̃ = Dθ̃·D̃θ̃̃ holds for unreduced pairs"),
    ("delta0-unrestricted", "rate at which DΔ₀ = −(Dθ̃)² holds for unreduced maps, without Q = 0"),
];

pub(crate) fn observe(name: &str, cfg: &CheckConfig) -> Option<Observation> {
    match name {
        "deg-ideal" => Some(deg_ideal(cfg)),
        "tpt-subsemigroup" => Some(rate(cfg, "tpt-subsemigroup", ReductionKind::Tpt, |outer, inner| {
            Ok(outer.compose(inner)?.is_twist_parity())
        })),
        "generic-cocycle" => Some(rate(cfg, "generic-cocycle", ReductionKind::General, cocycle::standard_cocycle)),
        "delta0-unrestricted" => Some(rate(cfg, "delta0-unrestricted", ReductionKind::General, |_, t| {
            let dt = t.d_theta();
            Ok(t.conditions().delta0.d() == -&dt.checked_mul(&dt)?)
        })),
        _ => None,
    }
}

fn statement(name: &str) -> String {
    OBSERVATIONS.iter().find(|(n, _)| *n == name).map(|(_, s)| s.to_string()).unwrap_or_default()
}

fn deg_ideal(cfg: &CheckConfig) -> Observation {
    let mut tallies = BTreeMap::new();
    let mut per_convention: BTreeMap<Convention, bool> = Convention::ALL.iter().map(|c| (*c, true)).collect();
    for right in [MatrixShape::Any, MatrixShape::Superconformal, MatrixShape::TwistParity] {
        let report = shape_closure(MatrixShape::Degenerate, right, MatrixShape::Degenerate, cfg);
        for (convention, tally) in report.conventions {
            if !tally.always() {
                per_convention.insert(convention, false);
            }
            tallies.insert(format!("{} [{}]", report.claim, convention.name()), tally);
        }
    }
    let holding: Vec<&str> = per_convention.iter().filter(|(_, ok)| **ok).map(|(c, _)| c.name()).collect();
    let summary = if holding.is_empty() {
        "the ideal claims fail in both conventions".to_string()
    } else {
        format!("the ideal claims hold in: {}", holding.join(", "))
    };
    Observation { name: "deg-ideal", statement: statement("deg-ideal"), tallies, summary }
}

fn rate(
    cfg: &CheckConfig,
    name: &'static str,
    kind: ReductionKind,
    property: fn(&SATransform, &SATransform) -> Result<bool>,
) -> Observation {
    let mut tally = Tally::default();
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, stream_for(name, trial));
        let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<(bool, SATransform, SATransform)> {
            let inner = s.transform(kind, GBody::Any)?;
            let outer = s.transform(kind, GBody::Any)?;
            Ok((property(&outer, &inner)?, inner, outer))
        }));
        match outcome {
            Ok(Ok((holds, inner, outer))) => tally.record(holds, || pair_json(&inner, &outer)),
            Ok(Err(e)) => tally.record(false, || json!({ "error": e.to_string() })),
            Err(_) => tally.record(false, || json!({ "error": "panic" })),
        }
    }
    let summary = format!("held on {} of {} pairs", tally.holds, tally.trials);
    let mut tallies = BTreeMap::new();
    tallies.insert("all".to_string(), tally);
    Observation { name, statement: statement(name), tallies, summary }
}
