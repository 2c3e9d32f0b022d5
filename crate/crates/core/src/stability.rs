//! Condorcet-style stability checks for committees.
//!
//! * adjacent: the members form a contiguous block of the axis;
//! * Gehrlein-stable: every member beats every non-member head-to-head;
//! * Condorcet set: every non-member is beaten by some member;
//! * locally stable for quota `q`: no non-member is ranked above all members
//!   by `q` or more voters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::election::{condorcet_winner, pairwise_matrix, PairwiseMatrix};
use crate::error::{invalid, Error, Result};
use crate::profile::{CandidateId, CandidateSet, Profile};

/// Block-size threshold used by local stability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quota {
    /// ⌊N/2⌋ + 1
    Majority,
    /// ⌊N/(k+1)⌋ + 1
    Droop,
    Custom(u64),
}

impl Quota {
    pub fn value(self, voters: u64, k: usize) -> u64 {
        match self {
            Quota::Majority => voters / 2 + 1,
            Quota::Droop => voters / (k as u64 + 1) + 1,
            Quota::Custom(q) => q,
        }
    }

    /// Checks `1 <= value <= N`.
    pub fn validate(self, voters: u64, k: usize) -> Result<u64> {
        let v = self.value(voters, k);
        if v == 0 || v > voters {
            return invalid(format!("quota {self} = {v} outside 1..={voters}"));
        }
        Ok(v)
    }
}

impl fmt::Display for Quota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quota::Majority => f.write_str("majority"),
            Quota::Droop => f.write_str("droop"),
            Quota::Custom(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for Quota {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "majority" => Ok(Quota::Majority),
            "droop" => Ok(Quota::Droop),
            other => other
                .parse()
                .map(Quota::Custom)
                .map_err(|_| Error::InvalidArgument(format!("quota must be majority, droop or an integer, got {other:?}"))),
        }
    }
}

impl Serialize for Quota {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Quota {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// True iff the members occupy consecutive axis positions.
pub fn is_adjacent(w: &CandidateSet) -> bool {
    match (w.members().first(), w.members().last()) {
        (Some(lo), Some(hi)) => hi.0 - lo.0 + 1 == w.len(),
        _ => true,
    }
}

/// Non-members lying strictly between the leftmost and rightmost members.
pub fn interior_gaps(w: &CandidateSet) -> Vec<CandidateId> {
    match (w.members().first(), w.members().last()) {
        (Some(lo), Some(hi)) => (lo.0 + 1..hi.0).map(CandidateId).filter(|c| !w.contains(*c)).collect(),
        _ => Vec::new(),
    }
}

/// All `(outsider, member)` pairs where the outsider wins head-to-head.
pub fn gehrlein_violations(w: &CandidateSet, matrix: &PairwiseMatrix) -> Vec<(CandidateId, CandidateId)> {
    w.complement(matrix.m())
        .flat_map(|c| w.iter().filter(move |&m| matrix.beats(c, m)).map(move |m| (c, m)))
        .collect()
}

/// `Ok(())` when Gehrlein-stable, otherwise the first violating `(outsider, member)`.
pub fn is_gehrlein_stable(w: &CandidateSet, matrix: &PairwiseMatrix) -> Result<(), (CandidateId, CandidateId)> {
    // Odd N: "member does not beat outsider" is the same as "outsider beats member".
    for c in w.complement(matrix.m()) {
        if let Some(m) = w.iter().find(|&m| !matrix.beats(m, c)) {
            return Err((c, m));
        }
    }
    Ok(())
}

/// Non-members that no member beats.
pub fn uncovered_candidates(w: &CandidateSet, matrix: &PairwiseMatrix) -> Vec<CandidateId> {
    w.complement(matrix.m()).filter(|&c| !w.iter().any(|m| matrix.beats(m, c))).collect()
}

/// `Ok(())` when every outsider is beaten by some member, otherwise an uncovered outsider.
pub fn is_condorcet_set(w: &CandidateSet, matrix: &PairwiseMatrix) -> Result<(), CandidateId> {
    match uncovered_candidates(w, matrix).first() {
        Some(&c) => Err(c),
        None => Ok(()),
    }
}

/// Voters ranking `c` strictly above every member of `w`.
pub fn block_size(p: &Profile, c: CandidateId, w: &CandidateSet) -> Result<u64> {
    if w.contains(c) {
        return invalid(format!("candidate {c} is a member of {w}"));
    }
    if c.0 >= p.m() {
        return invalid(format!("candidate {c} outside a {}-candidate profile", p.m()));
    }
    w.check_within(p.m())?;
    Ok(p
        .iter()
        .filter(|(r, _)| {
            // c is above all of w iff c appears before the first member of w.
            r.order().iter().find(|&&x| x == c || w.contains(x)) == Some(&c)
        })
        .map(|(_, n)| n)
        .sum())
}

/// Largest blocking coalition against a committee.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocker {
    pub candidate: CandidateId,
    pub block_size: u64,
}

/// Local-stability verdict together with the strongest blocker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalStability {
    pub stable: bool,
    pub quota: u64,
    pub blocker: Option<Blocker>,
}

/// Stable iff every outsider's block is smaller than the quota (a block of exactly `q` violates).
pub fn is_locally_stable(p: &Profile, w: &CandidateSet, quota: Quota) -> Result<LocalStability> {
    w.check_within(p.m())?;
    let q = quota.validate(p.voters(), w.len())?;
    let blocker = strongest_blocker(p, w)?;
    let stable = blocker.is_none_or(|b| b.block_size < q);
    Ok(LocalStability { stable, quota: q, blocker })
}

/// The outsider with the largest block (lowest index on ties).
pub fn strongest_blocker(p: &Profile, w: &CandidateSet) -> Result<Option<Blocker>> {
    let mut best: Option<Blocker> = None;
    for c in w.complement(p.m()) {
        let size = block_size(p, c, w)?;
        if best.is_none_or(|b| size > b.block_size) {
            best = Some(Blocker { candidate: c, block_size: size });
        }
    }
    Ok(best)
}

/// Every stability verdict for one committee, with witnesses for failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub members: CandidateSet,
    pub members_index: Vec<usize>,
    pub adjacent: bool,
    /// Non-members inside the committee's span.
    pub adjacency_gaps: Vec<CandidateId>,
    pub gehrlein_stable: bool,
    /// `[outsider, member]` with the outsider winning head-to-head.
    pub gehrlein_witness: Option<(CandidateId, CandidateId)>,
    pub condorcet_set: bool,
    pub condorcet_witness: Option<CandidateId>,
    pub condorcet_winner: Option<CandidateId>,
    /// Absent when the profile has no Condorcet winner.
    pub contains_condorcet_winner: Option<bool>,
    pub locally_stable: BTreeMap<Quota, bool>,
    pub local_witness: BTreeMap<Quota, LocalStability>,
}

impl StabilityReport {
    pub fn locally_stable_under(&self, q: Quota) -> Option<bool> {
        self.locally_stable.get(&q).copied()
    }
}

/// [`classify_with`] using the majority and Droop quotas.
pub fn classify(p: &Profile, w: &CandidateSet) -> Result<StabilityReport> {
    classify_with(p, w, &[Quota::Majority, Quota::Droop])
}

pub fn classify_with(p: &Profile, w: &CandidateSet, quotas: &[Quota]) -> Result<StabilityReport> {
    p.ensure_odd()?;
    w.check_within(p.m())?;
    if w.is_empty() {
        return invalid("committee must not be empty");
    }
    let matrix = pairwise_matrix(p);
    let gehrlein = is_gehrlein_stable(w, &matrix);
    let condorcet = is_condorcet_set(w, &matrix);
    let winner = condorcet_winner(&matrix);
    let mut locally_stable = BTreeMap::new();
    let mut local_witness = BTreeMap::new();
    for &q in quotas {
        let verdict = is_locally_stable(p, w, q)?;
        locally_stable.insert(q, verdict.stable);
        local_witness.insert(q, verdict);
    }
    let report = StabilityReport {
        members: w.clone(),
        members_index: w.iter().map(|c| c.0).collect(),
        adjacent: is_adjacent(w),
        adjacency_gaps: interior_gaps(w),
        gehrlein_stable: gehrlein.is_ok(),
        gehrlein_witness: gehrlein.err(),
        condorcet_set: condorcet.is_ok(),
        condorcet_witness: condorcet.err(),
        condorcet_winner: winner,
        contains_condorcet_winner: winner.map(|c| w.contains(c)),
        locally_stable,
        local_witness,
    };
    debug_assert!(!report.gehrlein_stable || report.condorcet_set);
    if report.gehrlein_stable {
        let majority = is_locally_stable(p, w, Quota::Majority)?;
        debug_assert!(majority.stable);
    }
    if p.is_single_peaked() {
        debug_assert_eq!(Some(report.condorcet_set), report.contains_condorcet_winner);
    }
    Ok(report)
}
