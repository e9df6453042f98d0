//! The report document: one self-describing output per invocation.
//!
//! Machine output is a single JSON document with a schema version and an
//! instance digest; text output is a stable line-oriented table. The two
//! are built side by side from the same data, and golden-file tests pin
//! both byte for byte.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use partact::action::{PartialAction, Violation};
use partact::decomp::{
    DecompositionCertificate, EnvelopingReport, GlobalizedAction, Refutation, Stratification,
};
use partact::structure::StructureReport;

use crate::NamedCheck;

pub const SCHEMA_VERSION: &str = "1";

/// Digest of the canonical instance serialization.
pub fn digest(canonical_text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical_text.as_bytes());
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

/// A payload carries its JSON value and its text lines together.
pub struct Payload {
    pub json: Value,
    pub text: Vec<String>,
}

#[derive(Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub command: String,
    pub instance_digest: Option<String>,
    pub seed: u64,
    pub payload: Value,
    #[serde(skip)]
    text: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, instance_digest: Option<String>, seed: u64) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            instance_digest,
            seed,
            payload: Value::Null,
            text: Vec::new(),
        }
    }

    pub fn with(mut self, payload: Payload) -> Self {
        self.payload = payload.json;
        self.text = payload.text;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("schema {SCHEMA_VERSION}\n"));
        out.push_str(&format!("command {}\n", self.command));
        if let Some(d) = &self.instance_digest {
            out.push_str(&format!("digest {d}\n"));
        }
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

pub mod payload {
    use super::*;

    pub fn validate(violations: &[Violation]) -> Payload {
        let rendered: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        let mut text = Vec::new();
        if violations.is_empty() {
            text.push("status valid".to_string());
        } else {
            text.push("status invalid".to_string());
            for v in &rendered {
                text.push(format!("violation {v}"));
            }
        }
        Payload {
            json: json!({ "valid": violations.is_empty(), "violations": rendered }),
            text,
        }
    }

    pub fn structure(report: &StructureReport, par_group: Option<&str>) -> Payload {
        let blocks: Vec<Value> = report
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "matrix_size": b.matrix_size,
                    "coefficient": b.coefficient_label,
                    "coefficient_order": b.coefficient_subgroup.order(),
                    "simple_summands": b.simple_summands,
                    "dimension": b.dimension(),
                    "stratum_k": b.provenance.stratum_k,
                    "orbit": b.provenance.orbit.render(),
                    "point_orbit": b.provenance.point_orbit,
                })
            })
            .collect();
        let mut text = Vec::new();
        if let Some(spec) = par_group {
            text.push(format!("par_group {spec}"));
        }
        text.extend(crate::structure_lines(report));
        Payload {
            json: json!({
                "par_group": par_group,
                "blocks": blocks,
                "total_dimension": report.total_dimension,
                "k0_rank": report.k0_rank,
                "k1": report.k1,
            }),
            text,
        }
    }

    pub fn certificate(pa: &PartialAction, cert: &DecompositionCertificate) -> Payload {
        let _ = pa;
        let summands: Vec<Value> = cert
            .summands
            .iter()
            .map(|s| {
                json!({
                    "orbit": s.base.render(),
                    "orbit_tuples": s.orbit.iter().map(|t| t.render()).collect::<Vec<_>>(),
                    "stabilizer_order": s.data.stabilizer.order(),
                    "m": s.data.m,
                    "representatives": s.data.reps,
                    "points": s.points,
                })
            })
            .collect();
        let mut text = vec![format!("decomposable n={}", cert.n)];
        for s in &cert.summands {
            text.push(format!(
                "summand orbit={} stabilizer_order={} m={} points={:?}",
                s.base.render(),
                s.data.stabilizer.order(),
                s.data.m,
                s.points
            ));
        }
        Payload {
            json: json!({ "decomposable": true, "n": cert.n, "summands": summands }),
            text,
        }
    }

    pub fn refutation(r: &Refutation) -> Payload {
        Payload {
            json: json!({
                "decomposable": false,
                "n": r.expected,
                "witness_point": r.witness,
                "type_size": r.size,
            }),
            text: vec![format!(
                "refuted n={}: point {} has type size {}",
                r.expected, r.witness, r.size
            )],
        }
    }

    pub fn stratification(strat: &Stratification) -> Payload {
        let strata: Vec<Value> = strat
            .strata
            .iter()
            .map(|s| json!({ "k": s.k, "points": s.points }))
            .collect();
        let chain: Vec<Value> = strat
            .chain
            .iter()
            .map(|s| {
                json!({
                    "k": s.k,
                    "ambient_size": s.ambient.len(),
                    "kernel_size": s.kernel.len(),
                    "quotient_size": s.quotient.len(),
                })
            })
            .collect();
        let mut text = vec![format!("stratification strata={}", strat.strata.len())];
        for s in &strat.strata {
            text.push(format!("stratum k={} points={:?}", s.k, s.points));
        }
        for s in &strat.chain {
            text.push(format!(
                "extension k={} ambient={} kernel={} quotient={}",
                s.k,
                s.ambient.len(),
                s.kernel.len(),
                s.quotient.len()
            ));
        }
        Payload {
            json: json!({ "decomposable": false, "strata": strata, "chain": chain }),
            text,
        }
    }

    pub fn globalization(
        pa: &PartialAction,
        parts: &[(Option<usize>, GlobalizedAction, EnvelopingReport)],
    ) -> Payload {
        let _ = pa;
        let mut text = Vec::new();
        let mut json_parts = Vec::new();
        for (k, glob, report) in parts {
            if let Some(k) = k {
                text.push(format!("stratum k={k}"));
            }
            for s in &glob.summands {
                text.push(format!(
                    "summand orbit={} cosets={} slice={} envelope_size={}",
                    s.base.render(),
                    s.coset_reps.len(),
                    s.slice.len(),
                    s.envelope_points.len()
                ));
            }
            text.push(format!("envelope_points {}", glob.envelope.points()));
            let pairs: Vec<String> = glob
                .embedding
                .iter()
                .enumerate()
                .map(|(x, e)| format!("{x}->{e}"))
                .collect();
            text.push(format!("embedding {}", pairs.join(" ")));
            for c in &report.conditions {
                match &c.witness {
                    Some(w) if !c.ok => {
                        text.push(format!("enveloping {} FAIL ({w})", c.name))
                    }
                    _ => text.push(format!(
                        "enveloping {} {}",
                        c.name,
                        if c.ok { "ok" } else { "FAIL" }
                    )),
                }
            }
            json_parts.push(json!({
                "stratum_k": k,
                "envelope_points": glob.envelope.points(),
                "embedding": glob.embedding,
                "summands": glob.summands.iter().map(|s| json!({
                    "orbit": s.base.render(),
                    "cosets": s.coset_reps.len(),
                    "slice_points": s.slice,
                    "envelope_size": s.envelope_points.len(),
                })).collect::<Vec<_>>(),
                "conditions": report.conditions.iter().map(|c| json!({
                    "name": c.name,
                    "ok": c.ok,
                    "witness": c.witness,
                })).collect::<Vec<_>>(),
            }));
        }
        let pass = parts.iter().all(|(_, _, r)| r.passed());
        text.push(format!("verdict {}", if pass { "pass" } else { "fail" }));
        Payload {
            json: json!({ "parts": json_parts, "pass": pass }),
            text,
        }
    }

    pub fn verification(checks: &[NamedCheck], pass: bool) -> Payload {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| json!({ "name": c.name, "ok": c.ok, "witness": c.witness }))
            .collect();
        let mut text = Vec::new();
        for c in checks {
            match &c.witness {
                Some(w) if !c.ok => text.push(format!("check {} FAIL ({w})", c.name)),
                _ => text.push(format!("check {} {}", c.name, if c.ok { "ok" } else { "FAIL" })),
            }
        }
        text.push(format!("verdict {}", if pass { "pass" } else { "fail" }));
        Payload {
            json: json!({ "checks": rows, "pass": pass }),
            text,
        }
    }
}
