//! Line-oriented profile text format.
//!
//! ```text
//! # comment lines start with '#'
//! m=5
//! 50: A B C D E
//! 40: B E C D A
//! ```
//!
//! Candidates are letters `A`..`Z` when `m <= 26` and decimal indices otherwise.
//! The `m=` header may be omitted, in which case the first ballot fixes it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::profile::{CandidateId, Profile, Ranking, MAX_LETTER_CANDIDATES};

/// Upper bound on `m` accepted from text input.
pub const MAX_PARSED_CANDIDATES: usize = 4096;

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_candidate(token: &str, m: Option<usize>, line: usize) -> Result<CandidateId> {
    let is_letter = token.len() == 1 && token.as_bytes()[0].is_ascii_uppercase();
    if is_letter && m.is_some_and(|m| m > MAX_LETTER_CANDIDATES) {
        return parse_err(line, format!("letter {token:?} used with more than {MAX_LETTER_CANDIDATES} candidates"));
    }
    let c = match CandidateId::parse_label(token) {
        Some(c) => c,
        None => return parse_err(line, format!("unknown candidate {token:?}")),
    };
    match m {
        Some(m) if c.0 >= m => parse_err(line, format!("candidate {token:?} outside m={m}")),
        _ => Ok(c),
    }
}

/// Parses the profile text format. Duplicate ranking lines are merged.
pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut m: Option<usize> = None;
    let mut counts: BTreeMap<Ranking, u64> = BTreeMap::new();
    let mut total: u64 = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(value) = line.strip_prefix("m=").or_else(|| line.strip_prefix("m =")) {
            if m.is_some() {
                return parse_err(line_no, "candidate count declared twice or after ballots");
            }
            let value: usize = match value.trim().parse() {
                Ok(v) => v,
                Err(_) => return parse_err(line_no, format!("bad candidate count {:?}", value.trim())),
            };
            if value == 0 || value > MAX_PARSED_CANDIDATES {
                return parse_err(line_no, format!("candidate count must be in 1..={MAX_PARSED_CANDIDATES}"));
            }
            m = Some(value);
            continue;
        }
        let Some((count, ballot)) = line.split_once(':') else {
            return parse_err(line_no, "expected `<count>: <ranking>`");
        };
        let count = count.trim();
        if count.is_empty() || !count.bytes().all(|b| b.is_ascii_digit()) {
            return parse_err(line_no, format!("bad voter count {count:?}"));
        }
        let count: u64 = match count.parse() {
            Ok(c) => c,
            Err(_) => return parse_err(line_no, format!("voter count {count:?} out of range")),
        };
        let order = ballot
            .split_whitespace()
            .map(|t| parse_candidate(t, m, line_no))
            .collect::<Result<Vec<_>>>()?;
        if order.len() > MAX_PARSED_CANDIDATES {
            return parse_err(line_no, "too many candidates on ballot");
        }
        let expected = *m.get_or_insert(order.len());
        if order.len() != expected {
            return parse_err(line_no, format!("ballot ranks {} candidates, expected {expected}", order.len()));
        }
        let ranking = match Ranking::new(order) {
            Ok(r) => r,
            Err(_) => return parse_err(line_no, "ballot is not a permutation of the candidates"),
        };
        total = match total.checked_add(count) {
            Some(t) => t,
            None => return parse_err(line_no, "total voter count overflows"),
        };
        if count > 0 {
            *counts.entry(ranking).or_insert(0) += count;
        }
    }
    let Some(m) = m else {
        return parse_err(0, "no candidate count and no ballots");
    };
    Profile::from_counts(m, counts)
}

/// Canonical text form: `m=` header then ballots in lexicographic ranking order.
pub fn serialize_profile(p: &Profile) -> String {
    let letters = p.m() <= MAX_LETTER_CANDIDATES;
    let mut out = format!("m={}\n", p.m());
    for (r, n) in p.iter() {
        let _ = write!(out, "{n}:");
        for c in r.order() {
            if letters {
                let _ = write!(out, " {c}");
            } else {
                let _ = write!(out, " {}", c.0);
            }
        }
        out.push('\n');
    }
    out
}
