#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spvote::{enumerate_single_peaked_rankings, CandidateId, CandidateSet, Model, Profile, Ranking};

/// A profile built from a handful of single-peaked rankings with random weights.
/// Sparse profiles reach the extreme corners that smooth generators rarely visit.
pub fn sparse_profile(m: usize, voters: u64, rng: &mut ChaCha8Rng) -> Profile {
    let all = enumerate_single_peaked_rankings(m).unwrap();
    let support = rng.random_range(1..=5usize);
    let picks: Vec<Ranking> = (0..support).map(|_| all[rng.random_range(0..all.len())].clone()).collect();
    let mut entries = Vec::new();
    let mut left = voters;
    for (i, r) in picks.iter().enumerate() {
        let n = if i + 1 == picks.len() { left } else { rng.random_range(0..=left) };
        left -= n;
        entries.push((r.clone(), n));
    }
    Profile::for_election(m, entries).unwrap()
}

/// Random single-peaked profile with `m` candidates and `voters` (odd) voters.
/// `kind` picks the generator: sparse, IAC, EN or EB.
pub fn profile_from(m: usize, voters: u64, seed: u64, kind: u8) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind % 4 {
        0 => sparse_profile(m, voters, &mut rng),
        1 => Model::Iac.sample(m, voters, &mut rng).unwrap(),
        2 => Model::En.sample(m, voters.max(m as u64 | 1), &mut rng).unwrap(),
        _ => Model::Eb.sample(m, voters.max(m as u64 | 1), &mut rng).unwrap(),
    }
}

/// One ballot per voter.
pub fn expand(p: &Profile) -> Vec<Vec<usize>> {
    p.iter()
        .flat_map(|(r, n)| std::iter::repeat_n(r.order().iter().map(|c| c.0).collect::<Vec<_>>(), n as usize))
        .collect()
}

fn position(ballot: &[usize], c: usize) -> usize {
    ballot.iter().position(|&x| x == c).unwrap()
}

/// `wins[i][j]`: strictly more than half the voters rank i above j.
pub fn majority_oracle(p: &Profile) -> Vec<Vec<bool>> {
    let ballots = expand(p);
    let m = p.m();
    let mut wins = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let n = ballots.iter().filter(|b| position(b, i) < position(b, j)).count();
                wins[i][j] = 2 * n > ballots.len();
            }
        }
    }
    wins
}

/// Voters ranking `c` above every member of `w`, counted ballot by ballot.
pub fn block_oracle(p: &Profile, c: usize, w: &[usize]) -> u64 {
    expand(p)
        .iter()
        .filter(|b| w.iter().all(|&x| position(b, c) < position(b, x)))
        .count() as u64
}

/// No candidate between two others on the axis is ranked below both.
pub fn single_peaked_oracle(order: &[usize]) -> bool {
    let m = order.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let pb = position(order, b);
                if pb > position(order, a) && pb > position(order, c) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn ids(set: &CandidateSet) -> Vec<usize> {
    set.iter().map(|c| c.0).collect()
}

pub fn id(i: usize) -> CandidateId {
    CandidateId(i)
}

/// Every subset of `0..m` with exactly `k` members.
pub fn k_subsets(m: usize, k: usize) -> Vec<CandidateSet> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| CandidateSet::new((0..m).filter(|i| mask >> i & 1 == 1).map(CandidateId)))
        .collect()
}
