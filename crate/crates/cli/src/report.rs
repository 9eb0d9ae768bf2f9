//! Report documents: JSON for machines, a short text rendering for people.

use std::fmt::Write as _;

use multimult_core::{ReportVerdict, VerificationReport};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::instance::InstanceEcho;

pub const SCHEMA: &str = "multimult-report/1";

/// One checked relation between two independently computed values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub claim: String,
    pub relation: &'static str,
    pub left: Option<String>,
    pub right: Option<String>,
    pub left_path: String,
    pub right_path: String,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

impl VerdictRecord {
    pub fn is_mismatch(&self) -> bool {
        self.verdict == ReportVerdict::Mismatch.to_string()
    }

    /// Equality of two integers with the hypotheses that license it.
    pub fn equality(
        claim: &str,
        left: Option<i64>,
        right: Option<i64>,
        paths: (&str, &str),
        hypotheses: Vec<(String, bool)>,
    ) -> Self {
        let verdict = if hypotheses.iter().any(|(_, ok)| !ok) {
            ReportVerdict::HypothesisUnmet
        } else {
            match (left, right) {
                (Some(l), Some(r)) if l == r => ReportVerdict::Equal,
                (Some(_), Some(_)) => ReportVerdict::Mismatch,
                _ => ReportVerdict::HypothesisUnmet,
            }
        };
        Self {
            claim: claim.to_string(),
            relation: "=",
            left: left.map(|v| v.to_string()),
            right: right.map(|v| v.to_string()),
            left_path: paths.0.to_string(),
            right_path: paths.1.to_string(),
            hypotheses: hyps(hypotheses),
            verdict: verdict.to_string(),
        }
    }
}

fn hyps(list: Vec<(String, bool)>) -> Vec<Hypothesis> {
    list.into_iter()
        .map(|(name, holds)| Hypothesis { name, holds })
        .collect()
}

pub fn rational(v: &BigRational) -> String {
    v.to_string()
}

impl From<&VerificationReport> for VerdictRecord {
    fn from(r: &VerificationReport) -> Self {
        Self {
            claim: r.claim_id.clone(),
            relation: match r.relation {
                multimult_core::Relation::Equal => "=",
                multimult_core::Relation::AtMost => "<=",
            },
            left: r.left.as_ref().map(rational),
            right: r.right.as_ref().map(rational),
            left_path: r.left_path.clone(),
            right_path: r.right_path.clone(),
            hypotheses: hyps(r.hypotheses.clone()),
            verdict: r.verdict.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RequestResult {
    pub index: usize,
    pub line: usize,
    pub request: String,
    /// `ok` or `error`.
    pub status: &'static str,
    pub result: Value,
    pub verdicts: Vec<VerdictRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub requests: usize,
    pub errors: usize,
    pub verdicts: usize,
    pub equal: usize,
    pub leq_strict: usize,
    pub hypothesis_unmet: usize,
    pub mismatch: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub instance: InstanceEcho,
    pub policy: Value,
    pub results: Vec<RequestResult>,
    pub summary: Summary,
    pub timing: Timing,
}

impl Report {
    pub fn new(instance: InstanceEcho, policy: Value, results: Vec<RequestResult>, elapsed_ms: u128) -> Self {
        let mut summary = Summary {
            requests: results.len(),
            ..Summary::default()
        };
        for r in &results {
            if r.status != "ok" {
                summary.errors += 1;
            }
            for v in &r.verdicts {
                summary.verdicts += 1;
                match v.verdict.as_str() {
                    "EQUAL" => summary.equal += 1,
                    "LEQ-STRICT" => summary.leq_strict += 1,
                    "MISMATCH" => summary.mismatch += 1,
                    _ => summary.hypothesis_unmet += 1,
                }
            }
        }
        Self {
            schema: SCHEMA,
            instance,
            policy,
            results,
            summary,
            timing: Timing { elapsed_ms },
        }
    }

    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatch > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = writeln!(out, "[{}] {} ({})", r.index, r.request, r.status);
            if let Some(obj) = r.result.as_object() {
                for (k, v) in obj {
                    if v.is_object() || v.is_array() {
                        continue;
                    }
                    let _ = writeln!(out, "    {k}: {v}");
                }
            }
            for v in &r.verdicts {
                let _ = writeln!(
                    out,
                    "    {}: {} {} {} -> {}",
                    v.claim,
                    v.left.as_deref().unwrap_or("?"),
                    v.relation,
                    v.right.as_deref().unwrap_or("?"),
                    v.verdict
                );
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} requests, {} errors; verdicts: {} equal, {} strict, {} hypothesis unmet, {} mismatch",
            s.requests, s.errors, s.equal, s.leq_strict, s.hypothesis_unmet, s.mismatch
        );
        out
    }
}

/// The JSON text with the timing field zeroed, for comparisons.
pub fn without_timing(json: &str) -> String {
    let mut v: Value = serde_json::from_str(json).expect("report is JSON");
    v["timing"] = Value::Null;
    v.to_string()
}
