//! Bloc and k-Copeland elections, pairwise majorities and the Condorcet ranking.
//!
//! All tallies are exact integers. A candidate `i` beats `j` head-to-head when
//! `2 * T[i][j] > N`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::profile::{CandidateId, CandidateSet, Profile};

fn check_committee_size(m: usize, k: usize) -> Result<()> {
    if k == 0 || k >= m {
        return invalid(format!("committee size k={k} must satisfy 1 <= k < m={m}"));
    }
    Ok(())
}

/// Number of voters ranking each candidate among their top `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocTally {
    pub k: usize,
    pub votes: Vec<u64>,
}

impl BlocTally {
    pub fn get(&self, c: CandidateId) -> u64 {
        self.votes[c.0]
    }
}

/// The outcome of a multiwinner election.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinningSet {
    pub members: CandidateSet,
    /// True when a tie straddled the k-th place and had to be resolved.
    pub tie_broken: bool,
    /// The candidates sharing the boundary score, when a tie occurred.
    pub tied_candidates: Option<CandidateSet>,
}

impl fmt::Display for WinningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members)
    }
}

/// Picks the `k` best candidates by `score`, breaking ties toward the lower index.
fn top_k<S: Ord + Copy>(scores: &[S], k: usize) -> WinningSet {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then(a.cmp(&b)));
    let members = CandidateSet::new(order[..k].iter().map(|&i| CandidateId(i)));
    let boundary = scores[order[k - 1]];
    let tie_broken = k < scores.len() && scores[order[k]] == boundary;
    let tied_candidates = tie_broken.then(|| {
        CandidateSet::new((0..scores.len()).filter(|&i| scores[i] == boundary).map(CandidateId))
    });
    WinningSet { members, tie_broken, tied_candidates }
}

pub fn bloc_tally(p: &Profile, k: usize) -> Result<BlocTally> {
    check_committee_size(p.m(), k)?;
    p.ensure_odd()?;
    let mut votes = vec![0u64; p.m()];
    for (r, n) in p.iter() {
        for c in r.top(k) {
            votes[c.0] += n;
        }
    }
    Ok(BlocTally { k, votes })
}

/// Bloc winners; a tie at the k-th place goes to the leftmost candidates.
pub fn bloc_winners(p: &Profile, k: usize) -> Result<WinningSet> {
    let tally = bloc_tally(p, k)?;
    Ok(top_k(&tally.votes, k))
}

/// Head-to-head counts: `get(i, j)` voters prefer `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseMatrix {
    m: usize,
    voters: u64,
    counts: Vec<u64>,
}

impl PairwiseMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn voters(&self) -> u64 {
        self.voters
    }

    pub fn get(&self, i: CandidateId, j: CandidateId) -> u64 {
        self.counts[i.0 * self.m + j.0]
    }

    /// Strict majority: `2 * T[i][j] > N`.
    pub fn beats(&self, i: CandidateId, j: CandidateId) -> bool {
        2 * self.get(i, j) > self.voters
    }

    fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.m).map(CandidateId)
    }

    /// True when the majority relation is a strict total order (no ties, no cycles).
    pub fn is_linear_order(&self) -> bool {
        let scores = copeland_scores(self);
        let mut wins: Vec<u32> = scores.iter().map(|s| s.0).collect();
        wins.sort_unstable();
        wins.iter().enumerate().all(|(i, &w)| w == 2 * i as u32)
    }
}

pub fn pairwise_matrix(p: &Profile) -> PairwiseMatrix {
    let m = p.m();
    let mut counts = vec![0u64; m * m];
    for (r, n) in p.iter() {
        let order = r.order();
        for (a, &winner) in order.iter().enumerate() {
            for &loser in &order[a + 1..] {
                counts[winner.0 * m + loser.0] += n;
            }
        }
    }
    let matrix = PairwiseMatrix { m, voters: p.voters(), counts };
    debug_assert!(matrix.candidates().all(|i| matrix.candidates().all(|j| {
        i == j || matrix.get(i, j) + matrix.get(j, i) == matrix.voters
    })));
    matrix
}

/// A Copeland score counted in half points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CopelandScore(pub u32);

impl CopelandScore {
    pub fn from_points(points: u32) -> Self {
        CopelandScore(2 * points)
    }

    pub fn half_points(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for CopelandScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

/// One point per head-to-head win, half a point per tie.
pub fn copeland_scores(matrix: &PairwiseMatrix) -> Vec<CopelandScore> {
    matrix
        .candidates()
        .map(|c| {
            let half = matrix
                .candidates()
                .filter(|&d| d != c)
                .map(|d| match matrix.get(c, d).cmp(&matrix.get(d, c)) {
                    std::cmp::Ordering::Greater => 2,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Less => 0,
                })
                .sum();
            CopelandScore(half)
        })
        .collect()
}

/// Every committee of the `k` highest Copeland scores; more than one set when
/// the score at the k-th place is shared. Sets are in lexicographic order.
pub fn k_copeland_winning_sets(matrix: &PairwiseMatrix, k: usize) -> Result<Vec<WinningSet>> {
    check_committee_size(matrix.m(), k)?;
    let scores = copeland_scores(matrix);
    let chosen = top_k(&scores, k);
    let Some(tied) = chosen.tied_candidates.clone() else {
        return Ok(vec![chosen]);
    };
    let boundary = scores[tied.members()[0].0];
    let sure: Vec<CandidateId> = matrix.candidates().filter(|c| scores[c.0] > boundary).collect();
    let need = k - sure.len();
    let mut out = Vec::new();
    for combo in combinations(tied.members(), need) {
        out.push(WinningSet {
            members: CandidateSet::new(sure.iter().copied().chain(combo)),
            tie_broken: true,
            tied_candidates: Some(tied.clone()),
        });
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// Deterministic k-Copeland committee (leftmost tie resolution).
pub fn k_copeland_winners(matrix: &PairwiseMatrix, k: usize) -> Result<WinningSet> {
    check_committee_size(matrix.m(), k)?;
    Ok(top_k(&copeland_scores(matrix), k))
}

fn combinations(items: &[CandidateId], r: usize) -> Vec<Vec<CandidateId>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if items.len() < r {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], r - 1) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The candidate beating every other head-to-head, if any.
pub fn condorcet_winner(matrix: &PairwiseMatrix) -> Option<CandidateId> {
    matrix
        .candidates()
        .find(|&c| matrix.candidates().all(|d| d == c || matrix.beats(c, d)))
}

/// Condorcet ranking of a single-peaked profile by repeated median elimination.
///
/// Each round lays the first-place votes out in axis order, takes the
/// candidate holding position ⌈N/2⌉, appends it and removes it from every ballot.
pub fn median_elimination_ranking(p: &Profile) -> Result<Vec<CandidateId>> {
    if !p.is_single_peaked() {
        return Err(Error::Domain("median elimination needs a single-peaked profile".into()));
    }
    p.ensure_odd()?;
    let median_position = p.voters().div_ceil(2);
    let mut remaining: Vec<CandidateId> = (0..p.m()).map(CandidateId).collect();
    let mut current = p.clone();
    let mut ranking = Vec::with_capacity(p.m());
    while remaining.len() > 1 {
        let firsts = current.first_place_votes();
        let mut seen = 0;
        let local = firsts
            .iter()
            .position(|&v| {
                seen += v;
                seen >= median_position
            })
            .expect("first-place votes sum to N");
        ranking.push(remaining.remove(local));
        current = current.eliminate_candidate(CandidateId(local))?;
    }
    ranking.extend(remaining);
    Ok(ranking)
}

/// Pairs `(k, c)` where `c` wins a Bloc election for `k` seats but not for `k + 1`.
pub fn committee_monotonicity_violations(p: &Profile, max_k: usize) -> Result<Vec<(usize, CandidateId)>> {
    check_committee_size(p.m(), max_k)?;
    let mut out = Vec::new();
    let mut current = bloc_winners(p, 1)?;
    for k in 1..=max_k {
        if k + 1 >= p.m() {
            break;
        }
        let next = bloc_winners(p, k + 1)?;
        out.extend(current.members.iter().filter(|&c| !next.members.contains(c)).map(|c| (k, c)));
        current = next;
    }
    Ok(out)
}
