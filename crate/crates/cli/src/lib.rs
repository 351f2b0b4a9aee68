//! Commands behind the `trisect` binary. Every command returns a
//! [`RunReport`]; the binary only reads files, prints and sets the exit
//! status.

pub mod examples;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use trisect_core::algebra::Word;
use trisect_core::braid::{
    closure_component_count, identify_closure, total_monodromy, underlying_permutation, BraidError, BraidWord,
    BraidedSurfaceDescriptor, EventKind,
};
use trisect_core::cover::{build_cover, euler_char_cover, validate_spec, BranchedCoverSpec, CoverSpecJson};
use trisect_core::fixtures;
use trisect_core::trisect::{
    invariants, pullback_trisection, seam_link, validate_diagram, BranchLocus, SeamEvent, SingularModel,
    TrisectionDiagram,
};

pub const SCHEMA: &str = "trisect-run-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

/// A named input and its raw bytes.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Input {
    pub fn new(name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        Input { name: name.into(), bytes: bytes.into() }
    }

    fn text(&self) -> Result<&str, CliError> {
        std::str::from_utf8(&self.bytes).map_err(|e| CliError::Parse(format!("{}: {e}", self.name)))
    }

    fn json<T: serde::de::DeserializeOwned>(&self) -> Result<T, CliError> {
        serde_json::from_slice(&self.bytes).map_err(|e| CliError::Parse(format!("{}: {e}", self.name)))
    }
}

/// SHA-256 over the inputs, each prefixed by its byte length.
pub fn inputs_digest(inputs: &[&Input]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.bytes.len() as u64).to_le_bytes());
        h.update(&i.bytes);
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub inputs_digest: String,
    pub results: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

impl RunReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.exit_code == 0 { "ok" } else { "error" };
        out.push_str(&format!("trisect {}: {status} (exit {})\n", self.command, self.exit_code));
        if let Some(checks) = self.results.get("checks").and_then(Value::as_array) {
            for c in checks {
                let anchor = c["anchor"].as_str().unwrap_or_default();
                if c["passed"].as_bool() == Some(true) {
                    out.push_str(&format!("  PASS  {anchor}\n"));
                } else {
                    out.push_str(&format!(
                        "  FAIL  {anchor}: expected {}, got {}\n",
                        c["expected"].as_str().unwrap_or_default(),
                        c["actual"].as_str().unwrap_or_default()
                    ));
                }
            }
        } else if let Some(map) = self.results.as_object() {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("  {k}: {shown}\n"));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out
    }
}

/// Results plus an optional domain failure that still carries results.
struct Outcome {
    results: Value,
    failure: Option<String>,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome { results, failure: None, warnings: Vec::new() }
    }

    fn failed(results: Value, why: String) -> Self {
        Outcome { results, failure: Some(why), warnings: Vec::new() }
    }
}

fn finish(command: &str, inputs: &[&Input], run: impl FnOnce() -> Result<Outcome, CliError>) -> RunReport {
    let inputs_digest = inputs_digest(inputs);
    let (results, warnings, error, exit_code) = match run() {
        Ok(o) => {
            let code = if o.failure.is_some() { 1 } else { 0 };
            (o.results, o.warnings, o.failure, code)
        }
        Err(e) => (json!({}), Vec::new(), Some(e.to_string()), e.exit_code()),
    };
    RunReport {
        schema: SCHEMA.to_string(),
        command: command.to_string(),
        inputs_digest,
        results,
        warnings,
        error,
        exit_code,
    }
}

/// A report for inputs that could not be read.
pub fn unreadable(command: &str, what: &str, err: &std::io::Error) -> RunReport {
    finish(command, &[], || Err(CliError::Parse(format!("cannot read {what}: {err}"))))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn parse_diagram(input: &Input) -> Result<TrisectionDiagram, CliError> {
    input.json()
}

fn parse_spec(input: &Input) -> Result<BranchedCoverSpec, CliError> {
    let raw: CoverSpecJson = input.json()?;
    BranchedCoverSpec::try_from(raw).map_err(domain)
}

pub fn cmd_invariants(diagram: &Input) -> RunReport {
    finish("invariants", &[diagram], || {
        let d = parse_diagram(diagram)?;
        let v = validate_diagram(&d).map_err(domain)?;
        if !v.passed {
            let why = v.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            return Ok(Outcome::failed(json!({ "validation": v }), format!("invalid diagram: {why}")));
        }
        let inv = invariants(&d).map_err(domain)?;
        let mut o = Outcome::ok(json!({
            "validation": v,
            "parameters": inv.parameters,
            "parameters_text": inv.parameters.to_string(),
            "h1": inv.homology.h1.to_string(),
            "h2_rank": inv.homology.h2_rank,
            "homology": inv.homology,
            "chi": inv.chi,
            "chi_from_betti": inv.chi_from_betti,
        }));
        if inv.chi != inv.chi_from_betti {
            o.warnings
                .push(format!("Euler characteristic {} disagrees with Betti count {}", inv.chi, inv.chi_from_betti));
        }
        Ok(o)
    })
}

pub fn cmd_cover(spec: &Input) -> RunReport {
    finish("cover", &[spec], || {
        let s = parse_spec(spec)?;
        let validation = validate_spec(&s).map_err(domain)?;
        if !validation.passed {
            let why = format!("surface relator {} maps to {}", validation.relator, validation.relator_image);
            return Ok(Outcome::failed(json!({ "validation": validation }), why));
        }
        let cover = build_cover(&s).map_err(domain)?;
        let components: Vec<Value> = cover
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (v, e, f) = c.cell_counts();
                json!({
                    "index": i,
                    "sheets": c.sheets().iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "genus": c.genus(),
                    "euler_characteristic": c.euler_characteristic(),
                    "cells": { "vertices": v, "edges": e, "faces": f },
                })
            })
            .collect();
        let mut lifts = Vec::new();
        for (a, b) in s.base().handle_names() {
            for g in [a, b] {
                let w = Word::generator(g);
                lifts.push(json!({ "curve": g, "lifts": cover.lift_classes(&w, false).map_err(domain)? }));
            }
        }
        Ok(Outcome::ok(json!({
            "validation": validation,
            "connected": cover.is_connected(),
            "component_count": components.len(),
            "components": components,
            "euler_characteristic": euler_char_cover(&s).map_err(domain)?,
            "euler_characteristic_cells": cover.euler_characteristic(),
            "lifts": lifts,
        })))
    })
}

pub fn cmd_pullback(diagram: &Input, spec: &Input, locus: Option<&Input>) -> RunReport {
    let mut inputs = vec![diagram, spec];
    inputs.extend(locus);
    finish("pullback", &inputs, || {
        let d = parse_diagram(diagram)?;
        let s = parse_spec(spec)?;
        let l: BranchLocus = match locus {
            Some(i) => i.json()?,
            None => BranchLocus::default(),
        };
        let p = pullback_trisection(&d, &s, &l).map_err(domain)?;
        let mut o = Outcome::ok(json!({
            "diagram": p.diagram,
            "parameters": p.parameters,
            "parameters_text": p.parameters.to_string(),
            "h1": p.report.homology.h1.to_string(),
            "h2_rank": p.report.homology.h2_rank,
            "chi": p.report.chi,
            "report": p.report,
        }));
        if let Some(c) = p.report.chi_branched_cover {
            if c != p.report.chi {
                o.warnings.push(format!("branched-cover count gives χ = {c}, parameters give {}", p.report.chi));
            }
        }
        Ok(o)
    })
}

/// The lifted diagram of a successful pullback report.
pub fn pullback_diagram(report: &RunReport) -> Option<&Value> {
    report.results.get("diagram")
}

fn seam_event(kind: EventKind) -> SeamEvent {
    match kind {
        EventKind::Tangency => SeamEvent::Tangency,
        EventKind::PositiveNode => SeamEvent::Model(SingularModel::NodePositive),
        EventKind::NegativeNode => SeamEvent::Model(SingularModel::NodeNegative),
        EventKind::Cusp => SeamEvent::Model(SingularModel::Cusp),
    }
}

/// `input` is a braid word such as `s1^3`, or a braided-surface descriptor
/// when it starts with `{`.
pub fn cmd_braid(input: &Input, strands: Option<usize>) -> RunReport {
    finish("braid", &[input], || {
        let text = input.text()?.trim();
        let (word, events) = if text.starts_with('{') {
            let d: BraidedSurfaceDescriptor = input.json()?;
            let events: Vec<SeamEvent> = d.events().map(|e| seam_event(e.kind)).collect();
            (total_monodromy(&d), Some(events))
        } else {
            let w = BraidWord::parse(text, strands).map_err(|e| match e {
                BraidError::Syntax { .. } => parse_err(e),
                other => domain(other),
            })?;
            (w, None)
        };
        let link = identify_closure(&word).map_err(domain)?;
        let mut results = json!({
            "monodromy": word.to_string(),
            "strands": word.strands(),
            "permutation": underlying_permutation(&word).to_string(),
            "components": closure_component_count(&word),
            "link": link.name(),
            "identification": link,
        });
        if let Some(events) = events {
            results["seam_link"] = to_value(&seam_link(&events).map_err(domain)?);
        }
        Ok(Outcome::ok(results))
    })
}

pub fn cmd_verify_examples() -> RunReport {
    verify_with(&examples::ExampleSet::builtin())
}

/// Runs the example checks on a given set of inputs.
pub fn verify_with(set: &examples::ExampleSet) -> RunReport {
    finish("verify-examples", &[], || {
        let checks = examples::run(set);
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.anchor.as_str()).collect();
        let results = json!({ "passed": checks.len() - failed.len(), "failed": failed.len(), "checks": checks });
        if failed.is_empty() {
            Ok(Outcome::ok(results))
        } else {
            let why = format!("mismatch at {}", failed.join(", "));
            Ok(Outcome::failed(results, why))
        }
    })
}

/// Exports a built-in fixture; `part` selects `diagram`, `cover`, `locus`,
/// `bridge` or `perturbed_bridge`.
pub fn cmd_fixture(name: &str, part: Option<&str>) -> RunReport {
    let input = Input::new("fixture", name.as_bytes());
    finish("fixture", &[&input], || {
        let f = fixtures::fixture(name).map_err(domain)?;
        let whole = to_value(&f);
        match part {
            None => Ok(Outcome::ok(whole)),
            Some(p) => whole
                .get(p)
                .cloned()
                .map(Outcome::ok)
                .ok_or_else(|| CliError::Domain(format!("fixture `{name}` has no part `{p}`"))),
        }
    })
}
