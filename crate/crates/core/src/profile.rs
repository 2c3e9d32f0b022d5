//! Candidates, rankings and anonymous voter profiles.
//!
//! Candidates are identified by their position on the left-to-right axis, so
//! candidate `0` is the leftmost one. A profile never stores individual
//! voters: it maps each distinct ranking to the number of voters casting it.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Candidates beyond this many are rendered as decimal indices instead of letters.
pub const MAX_LETTER_CANDIDATES: usize = 26;

/// A candidate, identified by its axis position (0 = leftmost).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }

    /// Letter for the first 26 candidates, decimal index otherwise.
    pub fn label(self) -> String {
        self.to_string()
    }

    /// Parses a single letter (`A`..`Z`) or a decimal index.
    pub fn parse_label(token: &str) -> Option<CandidateId> {
        let bytes = token.as_bytes();
        match bytes {
            [b] if b.is_ascii_uppercase() => Some(CandidateId((b - b'A') as usize)),
            _ if !token.is_empty() && bytes.iter().all(u8::is_ascii_digit) => {
                token.parse().ok().map(CandidateId)
            }
            _ => None,
        }
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < MAX_LETTER_CANDIDATES {
            write!(f, "{}", (b'A' + self.0 as u8) as char)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for CandidateId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CandidateId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CandidateId::parse_label(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("bad candidate label {s:?}")))
    }
}

/// Splits `"B,D"`, `"B D"` or `"BD"` into candidate labels.
fn candidate_tokens(text: &str) -> Result<Vec<CandidateId>> {
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let expand = |t: &str| -> Result<Vec<CandidateId>> {
        if let Some(c) = CandidateId::parse_label(t) {
            return Ok(vec![c]);
        }
        if t.bytes().all(|b| b.is_ascii_uppercase()) {
            return Ok(t
                .bytes()
                .map(|b| CandidateId((b - b'A') as usize))
                .collect());
        }
        invalid(format!("unknown candidate {t:?}"))
    };
    if tokens.len() == 1 {
        return expand(tokens[0]);
    }
    tokens
        .into_iter()
        .map(|t| {
            CandidateId::parse_label(t).ok_or_else(|| Error::InvalidArgument(format!("unknown candidate {t:?}")))
        })
        .collect()
}

fn write_candidates(f: &mut fmt::Formatter<'_>, items: &[CandidateId], sep_letters: &str) -> fmt::Result {
    let letters = items.iter().all(|c| c.0 < MAX_LETTER_CANDIDATES);
    let sep = if letters { sep_letters } else { "," };
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        if letters {
            write!(f, "{c}")?;
        } else {
            write!(f, "{}", c.0)?;
        }
    }
    Ok(())
}

/// A sorted set of distinct candidates, e.g. a committee.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateSet(Vec<CandidateId>);

impl CandidateSet {
    pub fn new(members: impl IntoIterator<Item = CandidateId>) -> Self {
        let mut v: Vec<CandidateId> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        CandidateSet(v)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Self::new(indices.iter().copied().map(CandidateId))
    }

    /// The contiguous block `start..start + len`.
    pub fn interval(start: usize, len: usize) -> Self {
        CandidateSet((start..start + len).map(CandidateId).collect())
    }

    pub fn members(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.0.iter().copied()
    }

    /// Candidates of `0..m` that are not in the set.
    pub fn complement(&self, m: usize) -> impl Iterator<Item = CandidateId> + '_ {
        (0..m).map(CandidateId).filter(move |c| !self.contains(*c))
    }

    /// Checks every member is below `m`.
    pub fn check_within(&self, m: usize) -> Result<()> {
        match self.0.last() {
            Some(c) if c.0 >= m => invalid(format!("candidate {c} outside a {m}-candidate profile")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_candidates(f, &self.0, "")
    }
}

impl FromStr for CandidateSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let members = candidate_tokens(s)?;
        let set = CandidateSet::new(members.iter().copied());
        if set.len() != members.len() {
            return invalid(format!("duplicate candidate in {s:?}"));
        }
        Ok(set)
    }
}

impl Serialize for CandidateSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CandidateSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A strict preference order over all candidates, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking(Vec<CandidateId>);

impl Ranking {
    /// Builds a ranking, checking that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<CandidateId>) -> Result<Self> {
        let m = order.len();
        if m == 0 {
            return invalid("a ranking needs at least one candidate");
        }
        let mut seen = vec![false; m];
        for c in &order {
            if c.0 >= m || std::mem::replace(&mut seen[c.0], true) {
                let shown: Vec<usize> = order.iter().map(|c| c.0).collect();
                return invalid(format!("ranking {shown:?} is not a permutation of 0..{m}"));
            }
        }
        Ok(Ranking(order))
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().copied().map(CandidateId).collect())
    }

    /// Candidates in axis order, i.e. the ranking `A ≻ B ≻ …`.
    pub fn identity(m: usize) -> Self {
        Ranking((0..m).map(CandidateId).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn first(&self) -> CandidateId {
        self.0[0]
    }

    /// The `k` most preferred candidates.
    pub fn top(&self, k: usize) -> &[CandidateId] {
        &self.0[..k.min(self.0.len())]
    }

    /// `positions()[c]` is the rank of candidate `c` (0 = top).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (rank, c) in self.0.iter().enumerate() {
            pos[c.0] = rank;
        }
        pos
    }

    pub fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        for &c in &self.0 {
            if c == a {
                return a != b;
            }
            if c == b {
                return false;
            }
        }
        false
    }

    pub fn is_single_peaked(&self) -> bool {
        is_single_peaked(self)
    }

    /// Removes `c` and shifts every higher index down by one.
    pub fn without(&self, c: CandidateId) -> Ranking {
        Ranking(
            self.0
                .iter()
                .filter(|&&x| x != c)
                .map(|&x| if x > c { CandidateId(x.0 - 1) } else { x })
                .collect(),
        )
    }
}

impl Borrow<[CandidateId]> for Ranking {
    fn borrow(&self) -> &[CandidateId] {
        &self.0
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_candidates(f, &self.0, " ")
    }
}

impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ranking::new(candidate_tokens(s)?)
    }
}

/// True iff every top-`j` prefix of `r` is a contiguous interval of the axis.
pub fn is_single_peaked(r: &Ranking) -> bool {
    let order = r.order();
    let (mut lo, mut hi) = (order[0].0, order[0].0);
    for c in &order[1..] {
        if lo > 0 && c.0 == lo - 1 {
            lo -= 1;
        } else if c.0 == hi + 1 {
            hi += 1;
        } else {
            return false;
        }
    }
    true
}

/// All `2^(m-1)` single-peaked rankings over `m` candidates, in lexicographic order.
pub fn enumerate_single_peaked_rankings(m: usize) -> Result<Vec<Ranking>> {
    if m == 0 {
        return invalid("m must be at least 1");
    }
    if m > 63 {
        return invalid(format!("2^{} rankings do not fit in memory", m - 1));
    }
    fn extend(m: usize, lo: usize, hi: usize, prefix: &mut Vec<CandidateId>, out: &mut Vec<Ranking>) {
        if prefix.len() == m {
            out.push(Ranking(prefix.clone()));
            return;
        }
        if lo > 0 {
            prefix.push(CandidateId(lo - 1));
            extend(m, lo - 1, hi, prefix, out);
            prefix.pop();
        }
        if hi + 1 < m {
            prefix.push(CandidateId(hi + 1));
            extend(m, lo, hi + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(1 << (m - 1));
    let mut prefix = Vec::with_capacity(m);
    for peak in 0..m {
        prefix.push(CandidateId(peak));
        extend(m, peak, peak, &mut prefix, &mut out);
        prefix.pop();
    }
    out.sort_unstable();
    Ok(out)
}

/// An anonymous preference profile: ranking → number of voters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    counts: BTreeMap<Ranking, u64>,
    voters: u64,
    single_peaked: bool,
}

impl Profile {
    /// Merges duplicate rankings and drops zero counts. Even totals are allowed
    /// here; election entry points reject them.
    pub fn from_counts(m: usize, entries: impl IntoIterator<Item = (Ranking, u64)>) -> Result<Self> {
        if m == 0 {
            return invalid("a profile needs at least one candidate");
        }
        let mut counts = BTreeMap::new();
        for (ranking, count) in entries {
            if ranking.m() != m {
                return invalid(format!("ranking {ranking} has {} candidates, expected {m}", ranking.m()));
            }
            if count > 0 {
                *counts.entry(ranking).or_insert(0u64) += count;
            }
        }
        Ok(Self::from_map(m, counts))
    }

    /// Like [`Profile::from_counts`] but also requires an odd number of voters.
    pub fn for_election(m: usize, entries: impl IntoIterator<Item = (Ranking, u64)>) -> Result<Self> {
        let p = Self::from_counts(m, entries)?;
        p.ensure_odd()?;
        Ok(p)
    }

    pub(crate) fn from_map(m: usize, counts: BTreeMap<Ranking, u64>) -> Self {
        let voters = counts.values().sum();
        let single_peaked = counts.keys().all(is_single_peaked);
        Profile { m, counts, voters, single_peaked }
    }

    /// `n` voters all casting `ranking`.
    pub fn unanimous(ranking: Ranking, n: u64) -> Self {
        let m = ranking.m();
        Self::from_map(m, [(ranking, n)].into_iter().filter(|(_, n)| *n > 0).collect())
    }

    pub fn ensure_odd(&self) -> Result<()> {
        if self.voters % 2 == 1 {
            Ok(())
        } else {
            invalid(format!("elections need an odd number of voters, got {}", self.voters))
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn voters(&self) -> u64 {
        self.voters
    }

    pub fn is_single_peaked(&self) -> bool {
        self.single_peaked
    }

    /// Distinct rankings with positive count, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Ranking, u64)> + '_ {
        self.counts.iter().map(|(r, &n)| (r, n))
    }

    pub fn distinct_rankings(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, ranking: &Ranking) -> u64 {
        self.counts.get(ranking).copied().unwrap_or(0)
    }

    /// Number of first-place votes per candidate.
    pub fn first_place_votes(&self) -> Vec<u64> {
        let mut v = vec![0; self.m];
        for (r, n) in self.iter() {
            v[r.first().0] += n;
        }
        v
    }

    /// Deletes candidate `c` from every ballot; higher indices shift down by one.
    pub fn eliminate_candidate(&self, c: CandidateId) -> Result<Profile> {
        if c.0 >= self.m {
            return invalid(format!("candidate {c} outside a {}-candidate profile", self.m));
        }
        if self.m == 1 {
            return invalid("cannot eliminate the only candidate");
        }
        let mut counts = BTreeMap::new();
        for (r, n) in self.iter() {
            *counts.entry(r.without(c)).or_insert(0) += n;
        }
        let out = Self::from_map(self.m - 1, counts);
        debug_assert_eq!(out.voters, self.voters);
        debug_assert!(!self.single_peaked || out.single_peaked);
        Ok(out)
    }
}
