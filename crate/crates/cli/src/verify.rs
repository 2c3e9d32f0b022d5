//! Fixture files: a profile followed by `#@ <check> => <expected>` lines.
//!
//! ```text
//! m=3
//! 2: A B C
//! 1: C B A
//! #@ bloc k=1 => A
//! #@ pairwise A C => 2-1
//! ```

use std::fmt::Write as _;

use spvote::election::committee_monotonicity_violations;
use spvote::stability::{is_adjacent, is_condorcet_set, is_gehrlein_stable};
use spvote::{
    block_size, bloc_tally, bloc_winners, condorcet_winner, copeland_scores, is_locally_stable,
    k_copeland_winning_sets, median_elimination_ranking, pairwise_matrix, parse_profile, CandidateId,
    CandidateSet, Error, Profile, Quota,
};

/// Fixtures shipped with the binary, as `(name, text)`.
pub const BUILTIN_FIXTURES: &[(&str, &str)] = &[
    ("example1", include_str!("../fixtures/example1.profile")),
    ("median_211", include_str!("../fixtures/median_211.profile")),
    ("center_squeeze_61", include_str!("../fixtures/center_squeeze_61.profile")),
    ("ab_counter_251", include_str!("../fixtures/ab_counter_251.profile")),
    ("bd_counter_205", include_str!("../fixtures/bd_counter_205.profile")),
    ("m6_ab", include_str!("../fixtures/m6_ab.profile")),
    ("m6_bc", include_str!("../fixtures/m6_bc.profile")),
    ("m7_abc", include_str!("../fixtures/m7_abc.profile")),
    ("m7_bce", include_str!("../fixtures/m7_bce.profile")),
    ("m7_k2_cd", include_str!("../fixtures/m7_k2_cd.profile")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Voters,
    SinglePeaked,
    Bloc { k: usize },
    Tally { k: usize },
    Monotonicity { max_k: usize },
    Pairwise(CandidateId, CandidateId),
    CopelandScores,
    CopelandSets { k: usize },
    CondorcetWinner,
    MedianRanking,
    Eliminate(CandidateId),
    Block(CandidateId, CandidateSet),
    LocallyStable(CandidateSet, Quota),
    CondorcetSet(CandidateSet),
    Gehrlein(CandidateSet),
    Adjacent(CandidateSet),
    AllBeat(CandidateSet, CandidateSet),
    Beats(CandidateId, CandidateId),
}

impl CheckKind {
    /// Checks whose answer is an unordered list of tokens.
    fn unordered(&self) -> bool {
        matches!(
            self,
            CheckKind::Tally { .. } | CheckKind::Monotonicity { .. } | CheckKind::CopelandScores | CheckKind::CopelandSets { .. } | CheckKind::Eliminate(_)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub line: usize,
    pub source: String,
    pub kind: CheckKind,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub profile: Profile,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub line: usize,
    pub source: String,
    pub expected: String,
    /// The computed answer, or the error raised while computing it.
    pub actual: Result<String, String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.actual.as_deref() == Ok(self.expected.as_str())
    }
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, Error> {
    Err(Error::Parse { line, message: message.into() })
}

fn candidate(token: &str, line: usize) -> Result<CandidateId, Error> {
    CandidateId::parse_label(token).map_or_else(|| parse_err(line, format!("bad candidate {token:?}")), Ok)
}

fn set(token: &str, line: usize) -> Result<CandidateSet, Error> {
    token.parse().map_err(|e: Error| Error::Parse { line, message: e.to_string() })
}

fn keyed(token: &str, key: &str, line: usize) -> Result<usize, Error> {
    token
        .strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .map_or_else(|| parse_err(line, format!("expected {key}=<n>, got {token:?}")), Ok)
}

fn normalize(expected: &str, unordered: bool) -> String {
    let mut tokens: Vec<&str> = expected.split_whitespace().collect();
    if unordered {
        tokens.sort_unstable();
    }
    tokens.join(" ")
}

fn parse_check(body: &str, line: usize) -> Result<Check, Error> {
    let Some((lhs, rhs)) = body.split_once("=>") else {
        return parse_err(line, "check needs `=>`");
    };
    let words: Vec<&str> = lhs.split_whitespace().collect();
    let Some((&name, args)) = words.split_first() else {
        return parse_err(line, "empty check");
    };
    let arity = |n: usize| -> Result<(), Error> {
        if args.len() == n {
            Ok(())
        } else {
            parse_err(line, format!("{name} takes {n} argument(s), got {}", args.len()))
        }
    };
    let kind = match name {
        "voters" => arity(0).map(|_| CheckKind::Voters)?,
        "single_peaked" => arity(0).map(|_| CheckKind::SinglePeaked)?,
        "copeland_scores" => arity(0).map(|_| CheckKind::CopelandScores)?,
        "condorcet_winner" => arity(0).map(|_| CheckKind::CondorcetWinner)?,
        "median_ranking" => arity(0).map(|_| CheckKind::MedianRanking)?,
        "bloc" => {
            arity(1)?;
            CheckKind::Bloc { k: keyed(args[0], "k", line)? }
        }
        "tally" => {
            arity(1)?;
            CheckKind::Tally { k: keyed(args[0], "k", line)? }
        }
        "copeland_sets" => {
            arity(1)?;
            CheckKind::CopelandSets { k: keyed(args[0], "k", line)? }
        }
        "monotonicity" => {
            arity(1)?;
            CheckKind::Monotonicity { max_k: keyed(args[0], "max_k", line)? }
        }
        "eliminate" => {
            arity(1)?;
            CheckKind::Eliminate(candidate(args[0], line)?)
        }
        "pairwise" | "beats" => {
            arity(2)?;
            let (a, b) = (candidate(args[0], line)?, candidate(args[1], line)?);
            if name == "pairwise" {
                CheckKind::Pairwise(a, b)
            } else {
                CheckKind::Beats(a, b)
            }
        }
        "block" => {
            arity(2)?;
            CheckKind::Block(candidate(args[0], line)?, set(args[1], line)?)
        }
        "locally_stable" => {
            arity(2)?;
            let quota = args[1].parse().map_err(|e: Error| Error::Parse { line, message: e.to_string() })?;
            CheckKind::LocallyStable(set(args[0], line)?, quota)
        }
        "condorcet_set" | "gehrlein" | "adjacent" => {
            arity(1)?;
            let w = set(args[0], line)?;
            match name {
                "condorcet_set" => CheckKind::CondorcetSet(w),
                "gehrlein" => CheckKind::Gehrlein(w),
                _ => CheckKind::Adjacent(w),
            }
        }
        "all_beat" => {
            arity(2)?;
            CheckKind::AllBeat(set(args[0], line)?, set(args[1], line)?)
        }
        other => return parse_err(line, format!("unknown check {other:?}")),
    };
    let expected = normalize(rhs, kind.unordered());
    if expected.is_empty() {
        return parse_err(line, "missing expected value");
    }
    Ok(Check { line, source: lhs.trim().to_string(), kind, expected })
}

/// Parses a fixture. The profile part follows the ordinary profile format.
pub fn parse_fixture(name: &str, text: &str) -> Result<Fixture, Error> {
    let profile = parse_profile(text)?;
    let mut checks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        if let Some(body) = raw.trim().strip_prefix("#@") {
            checks.push(parse_check(body, idx + 1)?);
        }
    }
    if checks.is_empty() {
        return parse_err(0, "fixture has no checks");
    }
    Ok(Fixture { name: name.to_string(), profile, checks })
}

fn yes_no(b: bool) -> String {
    b.to_string()
}

fn evaluate(p: &Profile, kind: &CheckKind) -> Result<String, Error> {
    let matrix = pairwise_matrix(p);
    let within = |w: &CandidateSet| w.check_within(p.m());
    let id = |c: CandidateId| -> Result<CandidateId, Error> {
        CandidateSet::new([c]).check_within(p.m())?;
        Ok(c)
    };
    Ok(match kind {
        CheckKind::Voters => p.voters().to_string(),
        CheckKind::SinglePeaked => yes_no(p.is_single_peaked()),
        CheckKind::Bloc { k } => bloc_winners(p, *k)?.members.to_string(),
        CheckKind::Tally { k } => {
            let tally = bloc_tally(p, *k)?;
            (0..p.m()).map(|i| format!("{}={}", CandidateId(i), tally.votes[i])).collect::<Vec<_>>().join(" ")
        }
        CheckKind::Monotonicity { max_k } => {
            let v = committee_monotonicity_violations(p, *max_k)?;
            if v.is_empty() {
                "none".into()
            } else {
                v.iter().map(|(k, c)| format!("{k}:{c}")).collect::<Vec<_>>().join(" ")
            }
        }
        CheckKind::Pairwise(a, b) => {
            let (a, b) = (id(*a)?, id(*b)?);
            format!("{}-{}", matrix.get(a, b), matrix.get(b, a))
        }
        CheckKind::CopelandScores => copeland_scores(&matrix)
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{}={s}", CandidateId(i)))
            .collect::<Vec<_>>()
            .join(" "),
        CheckKind::CopelandSets { k } => k_copeland_winning_sets(&matrix, *k)?
            .iter()
            .map(|w| w.members.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        CheckKind::CondorcetWinner => condorcet_winner(&matrix).map_or("none".into(), |c| c.to_string()),
        CheckKind::MedianRanking => {
            median_elimination_ranking(p)?.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        }
        CheckKind::Eliminate(c) => {
            let c = id(*c)?;
            let reduced = p.eliminate_candidate(c)?;
            reduced
                .iter()
                .map(|(r, n)| {
                    let labels: String = r
                        .order()
                        .iter()
                        .map(|x| CandidateId(if x.0 >= c.0 { x.0 + 1 } else { x.0 }).to_string())
                        .collect();
                    format!("{n}:{labels}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
        CheckKind::Block(c, w) => block_size(p, *c, w)?.to_string(),
        CheckKind::LocallyStable(w, q) => yes_no(is_locally_stable(p, w, *q)?.stable),
        CheckKind::CondorcetSet(w) => {
            within(w)?;
            yes_no(is_condorcet_set(w, &matrix).is_ok())
        }
        CheckKind::Gehrlein(w) => {
            within(w)?;
            yes_no(is_gehrlein_stable(w, &matrix).is_ok())
        }
        CheckKind::Adjacent(w) => {
            within(w)?;
            yes_no(is_adjacent(w))
        }
        CheckKind::AllBeat(s, w) => {
            within(s)?;
            within(w)?;
            yes_no(s.iter().all(|a| w.iter().all(|b| matrix.beats(a, b))))
        }
        CheckKind::Beats(a, b) => yes_no(matrix.beats(id(*a)?, id(*b)?)),
    })
}

pub fn run_fixture(f: &Fixture) -> Vec<CheckOutcome> {
    f.checks
        .iter()
        .map(|c| CheckOutcome {
            line: c.line,
            source: c.source.clone(),
            expected: c.expected.clone(),
            actual: evaluate(&f.profile, &c.kind)
                .map(|s| normalize(&s, c.kind.unordered()))
                .map_err(|e| e.to_string()),
        })
        .collect()
}

/// Runs every fixture and renders one line per fixture. Returns `(report, all_passed)`.
pub fn verify_all(fixtures: &[(String, String)]) -> (String, bool) {
    let mut out = String::new();
    let mut passed = 0;
    for (name, text) in fixtures {
        match parse_fixture(name, text) {
            Err(e) => {
                let _ = writeln!(out, "FAIL {name}: {e}");
            }
            Ok(f) => {
                let outcomes = run_fixture(&f);
                let failures: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed()).collect();
                if failures.is_empty() {
                    passed += 1;
                    let _ = writeln!(out, "PASS {name} ({} checks)", outcomes.len());
                } else {
                    let _ = writeln!(out, "FAIL {name} ({} of {} checks failed)", failures.len(), outcomes.len());
                    for o in failures {
                        let got = match &o.actual {
                            Ok(s) => s.clone(),
                            Err(e) => format!("error: {e}"),
                        };
                        let _ = writeln!(out, "  line {}: {}: expected {}, got {got}", o.line, o.source, o.expected);
                    }
                }
            }
        }
    }
    let _ = writeln!(out, "{passed}/{} fixtures passed", fixtures.len());
    (out, passed == fixtures.len())
}
