use std::fmt::Write as _;

use serde_json::{json, Value};
use superanalytic::cocycle;
use superanalytic::verify::{run_suite, CheckConfig, GBody, Sampler};
use superanalytic::wire;
use superanalytic::{BerClass, ClassifyMode, ReductionKind, SATransform};

use crate::io::{display_name, read_document, write_output};
use crate::{Command, Format, Outcome, Output, Sampling, UsageError};

pub fn run(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Verify { sampling, suite, output } => verify(&sampling, suite, &output),
        Command::Reduce { input, output } => reduce(&input.input, &output),
        Command::Compose { input, output } => compose(&input.input, &output),
        Command::Classify { input, output } => classify(&input.input, &output),
        Command::DemoCocycle { sampling, output } => demo_cocycle(&sampling, &output),
    }
}

fn config(sampling: &Sampling, suite: Vec<String>) -> Result<CheckConfig, UsageError> {
    let cfg = CheckConfig {
        generators: sampling.generators,
        max_degree: sampling.max_degree,
        coefficient_bound: sampling.coefficient_bound,
        trials: sampling.trials,
        seed: sampling.seed,
        suite,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(output: &Output, json: impl FnOnce() -> Value, text: impl FnOnce() -> String) -> Result<(), UsageError> {
    let body = match output.format {
        Format::Json => wire::to_canonical_string(&json()),
        Format::Text => text(),
    };
    write_output(output.output.as_deref(), &body)
}

fn verify(sampling: &Sampling, suite: Vec<String>, output: &Output) -> Result<Outcome, UsageError> {
    let cfg = config(sampling, suite)?;
    let report = run_suite(&cfg)?;
    emit(output, || report.to_json(), || report.to_text())?;
    Ok(if report.passed() { Outcome::Ok } else { Outcome::CheckFailed })
}

/// Parses the document at `source` with `parse`, prefixing errors with the
/// source name.
fn load<T>(source: &str, parse: impl FnOnce(&Value) -> Result<T, wire::WireError>) -> Result<T, UsageError> {
    let doc = read_document(source)?;
    parse(&doc).map_err(|e| UsageError(format!("{}: {e}", display_name(source))))
}

fn reduce(source: &str, output: &Output) -> Result<Outcome, UsageError> {
    let pair = load(source, |v| wire::reduced_pair_from_json(v, ""))?;
    let t = pair.build()?;
    emit(output, || wire::transform_to_json(&t), || format!("{t}\nkind: {}\n", t.reduction_kind().name()))?;
    Ok(Outcome::Ok)
}

fn classes(t: &SATransform) -> Value {
    json!({ "value": t.classify(ClassifyMode::Value), "derivative": t.classify(ClassifyMode::Derivative) })
}

fn class_name(c: BerClass) -> String {
    json!(c).as_str().unwrap_or_default().to_string()
}

fn class_text(t: &SATransform) -> String {
    format!(
        "berezinian: {} (ε(f) ≢ 0 test), {} (ε(f′) ≢ 0 test)",
        class_name(t.classify(ClassifyMode::Value)),
        class_name(t.classify(ClassifyMode::Derivative))
    )
}

fn compose(source: &str, output: &Output) -> Result<Outcome, UsageError> {
    let (outer, inner) = load(source, |v| {
        let obj = v.as_object().ok_or_else(|| wire::WireError { location: "$".into(), message: "expected an object".into() })?;
        if let Some(k) = obj.keys().find(|k| *k != "outer" && *k != "inner") {
            return Err(wire::WireError { location: "$".into(), message: format!("unknown field \"{k}\"") });
        }
        let get = |key: &str| {
            let v = obj
                .get(key)
                .ok_or_else(|| wire::WireError { location: "$".into(), message: format!("missing field \"{key}\"") })?;
            wire::transform_from_json(v, &format!(".{key}"))
        };
        Ok((get("outer")?, get("inner")?))
    })?;
    let composite = outer.compose(&inner)?;
    let kind = composite.reduction_kind();
    emit(
        output,
        || json!({ "composite": wire::transform_to_json(&composite), "kind": kind.name(), "ber_class": classes(&composite) }),
        || format!("{composite}\nkind: {}\n{}\n", kind.name(), class_text(&composite)),
    )?;
    Ok(Outcome::Ok)
}

fn classify(source: &str, output: &Output) -> Result<Outcome, UsageError> {
    let t = load(source, |v| wire::transform_from_json(v, ""))?;
    let c = t.conditions();
    let kind = t.reduction_kind();
    emit(
        output,
        || {
            json!({
                "kind": kind.name(),
                "ber_class": classes(&t),
                "conditions": {
                    "q": wire::superfield_to_json(&c.q),
                    "delta": wire::superfield_to_json(&c.delta),
                    "delta0": wire::superfield_to_json(&c.delta0),
                },
            })
        },
        || {
            let mut s = String::new();
            let _ = writeln!(s, "kind: {}", kind.name());
            let _ = writeln!(s, "{}", class_text(&t));
            let _ = writeln!(s, "Q  = {}", c.q);
            let _ = writeln!(s, "Δ  = {}", c.delta);
            let _ = writeln!(s, "Δ₀ = {}", c.delta0);
            s
        },
    )?;
    Ok(Outcome::Ok)
}

fn demo_cocycle(sampling: &Sampling, output: &Output) -> Result<Outcome, UsageError> {
    let cfg = config(sampling, vec!["cocycle-standard".into(), "cocycle-mixed".into()])?;
    let mut s = Sampler::new(&cfg, 0);
    let first_scf = s.transform(ReductionKind::Scf, GBody::Any)?;
    let first_tpt = s.transform(ReductionKind::Tpt, GBody::Any)?;
    let second = s.transform(ReductionKind::Scf, GBody::Any)?;
    let standard = cocycle::standard_cocycle(&second, &first_scf)?;
    let mixed = cocycle::mixed_cocycle(&second, &first_tpt)?;
    let verdict = |ok: bool| if ok { "holds" } else { "FAILS" };
    emit(
        output,
        || {
            json!({
                "first_scf": wire::transform_to_json(&first_scf),
                "first_tpt": wire::transform_to_json(&first_tpt),
                "second": wire::transform_to_json(&second),
                "standard_cocycle": standard,
                "mixed_cocycle": mixed,
            })
        },
        || {
            let mut s = String::new();
            let _ = writeln!(s, "U → Ũ (SCf):\n{first_scf}");
            let _ = writeln!(s, "U → Ũ (TPt):\n{first_tpt}");
            let _ = writeln!(s, "Ũ → Ũ̃ (SCf):\n{second}");
            let _ = writeln!(s, "standard cocycle Dθ̃̃ = Dθ̃·D̃θ̃̃ (SCf ∘ SCf): {}", verdict(standard));
            let _ = writeln!(s, "mixed cocycle ∂θ̃̃ = ∂θ̃·D̃θ̃̃, composite TPt (SCf ∘ TPt): {}", verdict(mixed));
            s
        },
    )?;
    Ok(if standard && mixed { Outcome::Ok } else { Outcome::CheckFailed })
}
