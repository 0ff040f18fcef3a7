//! Stable rendering and parsing of sweep reports.
//!
//! Three formats: a human-oriented text listing, a JSON document, and CSV.
//! JSON and CSV hold every numeric field as a decimal string (values
//! routinely exceed machine words) and are parseable back into the exact
//! [`CheckResult`] list; the text format is presentation only. Rendering
//! depends only on outcome values, never on evaluation scheduling, so a
//! report is byte-identical for any job count.
//!
//! Column conventions: claims fold their extra parameters into the shared
//! columns (a prime-power cell reports n = p^l with the range scale in the
//! e column; the shift identity reports its offset pair in the variant
//! column as `a=A;x=X`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

use crate::congruence::{CheckResult, ClaimId, ClaimParams, CongruenceClaim};
use crate::grid::{Outcome, Report};

/// Output encodings for a [`Report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<ReportFormat, String> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format {other:?}, expected text, json, or csv")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Text => "text",
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

/// A report document that could not be parsed back into results.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed report: {0}")]
    Malformed(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

const CSV_HEADER: &str = "claim,n,k,e,variant,modulus,lhs,rhs,pass";

/// The four shared parameter columns of a claim, as strings; absent
/// dimensions render empty.
fn param_columns(claim: &CongruenceClaim) -> (String, String, String, String) {
    let n = claim.params.n.to_string();
    let k = claim.params.k.map(|k| k.to_string()).unwrap_or_default();
    let e = claim.params.e.map(|e| e.to_string()).unwrap_or_default();
    let variant = if claim.id.uses_shift_params() {
        format!(
            "a={};x={}",
            claim.params.a.unwrap_or(0),
            claim.params.x.clone().unwrap_or_else(BigRational::zero)
        )
    } else if claim.id.uses_variant() {
        claim.params.variant.unwrap_or_default().as_str().to_string()
    } else {
        String::new()
    };
    (n, k, e, variant)
}

fn rebuild_claim(
    id: ClaimId,
    n: &str,
    k: &str,
    e: &str,
    variant: &str,
) -> Result<CongruenceClaim, ParseError> {
    let bad = |what: &str, field: &str| {
        ParseError::Malformed(format!("bad {what} field {field:?}"))
    };
    let mut params = ClaimParams::bare(n.parse().map_err(|_| bad("n", n))?);
    if !k.is_empty() {
        params.k = Some(k.parse().map_err(|_| bad("k", k))?);
    }
    if !e.is_empty() {
        params.e = Some(e.parse().map_err(|_| bad("e", e))?);
    }
    if id.uses_shift_params() {
        let (a_part, x_part) = variant
            .split_once(';')
            .ok_or_else(|| bad("shift", variant))?;
        let a = a_part
            .strip_prefix("a=")
            .ok_or_else(|| bad("shift", variant))?;
        let x = x_part
            .strip_prefix("x=")
            .ok_or_else(|| bad("shift", variant))?;
        params.a = Some(a.parse().map_err(|_| bad("a", a))?);
        params.x = Some(BigRational::from_str(x).map_err(|_| bad("x", x))?);
    } else if !variant.is_empty() {
        params.variant = Some(variant.parse().map_err(ParseError::Malformed)?);
    }
    Ok(CongruenceClaim::new(id, params))
}

fn parse_bigint(s: &str, what: &str) -> Result<BigInt, ParseError> {
    BigInt::from_str(s).map_err(|_| ParseError::Malformed(format!("bad {what} field {s:?}")))
}

fn cell_label(claim: &CongruenceClaim) -> String {
    let mut label = format!("{} n={}", claim.id, claim.params.n);
    if let Some(k) = claim.params.k {
        label.push_str(&format!(" k={k}"));
    }
    if let Some(e) = claim.params.e {
        label.push_str(&format!(" e={e}"));
    }
    if claim.id.uses_shift_params() {
        label.push_str(&format!(
            " a={} x={}",
            claim.params.a.unwrap_or(0),
            claim.params.x.clone().unwrap_or_else(BigRational::zero)
        ));
    } else if claim.id.uses_variant() {
        label.push_str(&format!(" variant={}", claim.params.variant.unwrap_or_default()));
    }
    label
}

/// One-line aggregate, shared by the text format and the CLI's file-output
/// confirmation.
pub fn summary_line(report: &Report) -> String {
    let s = report.summary();
    format!(
        "total {} passed {} failed {} skipped {}",
        s.total, s.passed, s.failed, s.skipped
    )
}

/// One outcome as a text-format line (no trailing newline).
pub fn outcome_line(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Checked(result) => {
            let verdict = if result.pass { "ok  " } else { "FAIL" };
            let relation = if result.pass { "==" } else { "!=" };
            format!(
                "{verdict} {} | {} {relation} {} (mod {})",
                cell_label(&result.claim),
                result.lhs,
                result.rhs,
                result.modulus
            )
        }
        Outcome::Skipped { claim, reason } => format!("skip {} | {reason}", cell_label(claim)),
        Outcome::Faulted { claim, message } => format!("fault {} | {message}", cell_label(claim)),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for outcome in &report.outcomes {
        out.push_str(&outcome_line(outcome));
        out.push('\n');
    }
    out.push_str(&summary_line(report));
    out.push('\n');
    out
}

fn result_value(result: &CheckResult) -> Value {
    let (n, k, e, variant) = param_columns(&result.claim);
    json!({
        "claim": result.claim.id.as_str(),
        "params": { "n": n, "k": k, "e": e, "variant": variant },
        "modulus": result.modulus.to_string(),
        "lhs": result.lhs.to_string(),
        "rhs": result.rhs.to_string(),
        "pass": result.pass,
    })
}

fn render_json(report: &Report) -> String {
    let summary = report.summary();
    let results: Vec<Value> = report.results().map(result_value).collect();
    let skipped: Vec<Value> = report
        .skips()
        .map(|(claim, reason)| {
            let (n, k, e, variant) = param_columns(claim);
            json!({
                "claim": claim.id.as_str(),
                "params": { "n": n, "k": k, "e": e, "variant": variant },
                "reason": reason,
            })
        })
        .collect();
    let faults: Vec<Value> = report
        .outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Faulted { claim, message } => Some(json!({
                "claim": claim.id.as_str(),
                "cell": cell_label(claim),
                "message": message,
            })),
            _ => None,
        })
        .collect();
    let document = json!({
        "summary": {
            "total": summary.total,
            "passed": summary.passed,
            "failed": summary.failed,
            "skipped": skipped,
            "faults": faults,
        },
        "results": results,
    });
    let mut text = serde_json::to_string_pretty(&document).expect("value serializes");
    text.push('\n');
    text
}

fn render_csv(report: &Report) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for result in report.results() {
        let (n, k, e, variant) = param_columns(&result.claim);
        out.push_str(&format!(
            "{},{n},{k},{e},{variant},{},{},{},{}\n",
            result.claim.id, result.modulus, result.lhs, result.rhs, result.pass
        ));
    }
    out
}

/// Renders a report in the requested format.
pub fn render(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => render_json(report),
        ReportFormat::Csv => render_csv(report),
    }
}

fn entry_str<'a>(entry: &'a Value, key: &str) -> Result<&'a str, ParseError> {
    entry
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| ParseError::Malformed(format!("missing string field {key:?}")))
}

fn parse_json(text: &str) -> Result<Vec<CheckResult>, ParseError> {
    let document: Value = serde_json::from_str(text)?;
    let entries = document
        .get("results")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Malformed("no results array".into()))?;
    entries
        .iter()
        .map(|entry| {
            let id: ClaimId = entry_str(entry, "claim")?
                .parse()
                .map_err(ParseError::Malformed)?;
            let params = entry
                .get("params")
                .ok_or_else(|| ParseError::Malformed("missing params object".into()))?;
            let claim = rebuild_claim(
                id,
                entry_str(params, "n")?,
                entry_str(params, "k")?,
                entry_str(params, "e")?,
                entry_str(params, "variant")?,
            )?;
            Ok(CheckResult {
                claim,
                modulus: parse_bigint(entry_str(entry, "modulus")?, "modulus")?,
                lhs: parse_bigint(entry_str(entry, "lhs")?, "lhs")?,
                rhs: parse_bigint(entry_str(entry, "rhs")?, "rhs")?,
                pass: entry
                    .get("pass")
                    .and_then(Value::as_bool)
                    .ok_or_else(|| ParseError::Malformed("missing pass flag".into()))?,
            })
        })
        .collect()
}

fn parse_csv(text: &str) -> Result<Vec<CheckResult>, ParseError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        other => {
            return Err(ParseError::Malformed(format!(
                "expected header {CSV_HEADER:?}, got {other:?}"
            )))
        }
    }
    lines
        .filter(|line| !line.is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            let &[claim, n, k, e, variant, modulus, lhs, rhs, pass] = &fields[..] else {
                return Err(ParseError::Malformed(format!(
                    "expected 9 columns, got {}: {line:?}",
                    fields.len()
                )));
            };
            let id: ClaimId = claim.parse().map_err(ParseError::Malformed)?;
            Ok(CheckResult {
                claim: rebuild_claim(id, n, k, e, variant)?,
                modulus: parse_bigint(modulus, "modulus")?,
                lhs: parse_bigint(lhs, "lhs")?,
                rhs: parse_bigint(rhs, "rhs")?,
                pass: match pass {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(ParseError::Malformed(format!("bad pass field {other:?}")))
                    }
                },
            })
        })
        .collect()
}

/// Parses a rendered report back into its result list. Only the machine
/// formats are parseable.
pub fn parse_results(text: &str, format: ReportFormat) -> Result<Vec<CheckResult>, ParseError> {
    match format {
        ReportFormat::Text => Err(ParseError::Malformed(
            "the text format is presentation-only; use json or csv".into(),
        )),
        ReportFormat::Json => parse_json(text),
        ReportFormat::Csv => parse_csv(text),
    }
}
