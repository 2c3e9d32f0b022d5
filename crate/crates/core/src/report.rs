//! Rendering of simulation results as JSON, CSV or plain text.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{invalid, Error, Result};
use crate::montecarlo::ExperimentResult;
use crate::profile::CandidateSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "text",
        })
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            _ => invalid(format!("unknown report format {s:?}")),
        }
    }
}

fn rates(r: &ExperimentResult) -> Value {
    let local: Map<String, Value> = r
        .locally_stable_count
        .keys()
        .map(|q| (q.to_string(), json!(r.locally_stable_rate(*q))))
        .collect();
    json!({
        "agreement": r.agreement_rate(),
        "gehrlein": r.gehrlein_rate(),
        "condorcet_set": r.condorcet_set_rate(),
        "locally_stable": local,
    })
}

/// JSON with every counter plus a derived `rates` object. Keys are sorted.
pub fn to_json(r: &ExperimentResult) -> Result<String> {
    let mut value = serde_json::to_value(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    if let Value::Object(obj) = &mut value {
        obj.insert("rates".into(), rates(r));
    }
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Reads a JSON report back. The derived `rates` object is ignored.
pub fn parse_json_report(text: &str) -> Result<ExperimentResult> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    if let Value::Object(obj) = &mut value {
        obj.remove("rates");
    }
    serde_json::from_value(value).map_err(|e| Error::Parse { line: 0, message: e.to_string() })
}

/// One row per winning set seen by either rule, then `summary:*` rows.
pub fn to_csv(r: &ExperimentResult) -> String {
    let mut out = String::from("winning_set,bloc_count,bloc_prob,copeland_count,copeland_prob\n");
    let sets: BTreeSet<&CandidateSet> = r.bloc_freq.keys().chain(r.copeland_freq.keys()).collect();
    for s in sets {
        let b = r.bloc_freq.get(s).copied().unwrap_or(0);
        let c = r.copeland_freq.get(s).copied().unwrap_or(0);
        // Sets with more than 26 candidates use commas; quote them.
        let label = if s.to_string().contains(',') { format!("\"{s}\"") } else { s.to_string() };
        let _ = writeln!(out, "{label},{b},{},{c},{}", r.bloc_prob(s), r.copeland_prob(s));
    }
    let mut summary = |name: &str, count: u64, rate: f64| {
        let _ = writeln!(out, "summary:{name},{count},{rate},,");
    };
    summary("counted_trials", r.counted_trials, 1.0);
    summary("discarded_trials", r.discarded_trials, 0.0);
    summary("agreement", r.agreement_count, r.agreement_rate());
    summary("gehrlein", r.gehrlein_count, r.gehrlein_rate());
    summary("condorcet_set", r.condorcet_set_count, r.condorcet_set_rate());
    for (q, &n) in &r.locally_stable_count {
        summary(&format!("locally_stable_{q}"), n, r.locally_stable_rate(*q).unwrap_or(0.0));
    }
    summary("bloc_ties", r.bloc_tie_count, 0.0);
    summary("copeland_ties", r.copeland_tie_count, 0.0);
    out
}

pub fn to_text(r: &ExperimentResult) -> String {
    let c = &r.config;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model {} m={} k={} N={} trials={} seed={} ties={}",
        c.model, c.candidates, c.winners, c.voters, c.trials, c.seed, c.tie_policy
    );
    let _ = writeln!(out, "counted {} discarded {}", r.counted_trials, r.discarded_trials);
    let _ = writeln!(out, "{:<12} {:>10} {:>10}", "set", "bloc", "copeland");
    let sets: BTreeSet<&CandidateSet> = r.bloc_freq.keys().chain(r.copeland_freq.keys()).collect();
    for s in sets {
        let _ = writeln!(out, "{:<12} {:>10.4} {:>10.4}", s.to_string(), r.bloc_prob(s), r.copeland_prob(s));
    }
    let _ = writeln!(out, "agreement       {:.4}", r.agreement_rate());
    let _ = writeln!(out, "gehrlein        {:.4}", r.gehrlein_rate());
    let _ = writeln!(out, "condorcet set   {:.4}", r.condorcet_set_rate());
    for q in r.locally_stable_count.keys() {
        let _ = writeln!(out, "{:<16}{:.4}", format!("local ({q})"), r.locally_stable_rate(*q).unwrap_or(0.0));
    }
    if let Some(b) = r.label_lower_bounds {
        let _ = writeln!(out, "label bounds    gehrlein >= {:.4}, local >= {:.4}", b.gehrlein, b.locally_stable);
    }
    let _ = writeln!(out, "ties            bloc {} copeland {}", r.bloc_tie_count, r.copeland_tie_count);
    out
}

pub fn emit_report(r: &ExperimentResult, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(r),
        ReportFormat::Csv => Ok(to_csv(r)),
        ReportFormat::Text => Ok(to_text(r)),
    }
}
