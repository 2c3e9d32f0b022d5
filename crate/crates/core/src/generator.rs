//! Random single-peaked profiles.
//!
//! Three models are provided: uniform over anonymous profiles restricted to
//! single-peaked rankings (`iac`), and one-dimensional spatial electorates with
//! normal (`en`) or bimodal (`eb`) voter ideal points.
//!
//! # Random streams
//!
//! Trial `t` of a run with master seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream number `t`
//! (`set_stream(t)`). ChaCha streams are independent 2^64-block sequences, so a
//! trial's profile depends only on `(s, t)` and never on thread scheduling.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::profile::{enumerate_single_peaked_rankings, CandidateId, Profile, Ranking};

/// The stream type handed to samplers.
pub type TrialRng = ChaCha8Rng;

/// Master seed from which per-trial streams are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSource {
    pub master_seed: u64,
}

impl RandomSource {
    pub fn new(master_seed: u64) -> Self {
        RandomSource { master_seed }
    }

    pub fn derive_stream(&self, trial_index: u64) -> TrialRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial_index);
        rng
    }
}

/// Profile generation model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Uniform over count vectors of single-peaked rankings.
    Iac,
    /// Voters ~ N(0, 1).
    En,
    /// Voters ~ ½·N(-1, 1) + ½·N(1, 1).
    Eb,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Iac => "iac",
            Model::En => "en",
            Model::Eb => "eb",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iac" => Ok(Model::Iac),
            "en" => Ok(Model::En),
            "eb" => Ok(Model::Eb),
            _ => invalid(format!("unknown model {s:?}; expected iac, en or eb")),
        }
    }
}

impl Model {
    /// Draws one profile from this model.
    pub fn sample<R: Rng + ?Sized>(self, m: usize, voters: u64, rng: &mut R) -> Result<Profile> {
        match self {
            Model::Iac => sample_iac_single_peaked(m, voters, rng),
            Model::En => sample_spatial(&SpatialSpec::new(VoterDistribution::standard_normal(), voters, m), rng)
                .map(|s| s.profile),
            Model::Eb => sample_spatial(&SpatialSpec::new(VoterDistribution::bimodal(), voters, m), rng)
                .map(|s| s.profile),
        }
    }
}

/// Uniform draw from all count vectors `(x_1, …, x_r)` with `Σ x_i = N` over
/// the `r = 2^(m-1)` single-peaked rankings.
///
/// Stars and bars: choose `r - 1` distinct bar positions in `1..=N+r-1`; the
/// gaps between consecutive bars, minus one, are the counts.
pub fn sample_iac_single_peaked<R: Rng + ?Sized>(m: usize, voters: u64, rng: &mut R) -> Result<Profile> {
    if m < 2 {
        return invalid("IAC sampling needs at least two candidates");
    }
    if voters % 2 == 0 {
        return invalid(format!("voter count must be odd, got {voters}"));
    }
    let rankings = enumerate_single_peaked_rankings(m)?;
    let r = rankings.len();
    let slots = usize::try_from(voters).map_err(|_| Error::InvalidArgument("too many voters".into()))? + r - 1;
    let mut bars: Vec<usize> = index::sample(rng, slots, r - 1).into_iter().map(|i| i + 1).collect();
    bars.sort_unstable();
    let mut counts = Vec::with_capacity(r);
    let mut prev = 0;
    for &b in &bars {
        counts.push((b - prev - 1) as u64);
        prev = b;
    }
    counts.push((slots + 1 - prev - 1) as u64);
    debug_assert_eq!(counts.iter().sum::<u64>(), voters);
    Profile::from_counts(m, rankings.into_iter().zip(counts))
}

/// Distribution of voter ideal points on the line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VoterDistribution {
    Normal { mean: f64, stddev: f64 },
    /// Equal-weight mixture of two normals sharing one standard deviation.
    Bimodal { left_mean: f64, right_mean: f64, stddev: f64 },
}

impl VoterDistribution {
    pub fn standard_normal() -> Self {
        VoterDistribution::Normal { mean: 0.0, stddev: 1.0 }
    }

    /// Unit-variance normals centered at -1 and 1.
    pub fn bimodal() -> Self {
        VoterDistribution::Bimodal { left_mean: -1.0, right_mean: 1.0, stddev: 1.0 }
    }

    fn stddev(&self) -> f64 {
        match *self {
            VoterDistribution::Normal { stddev, .. } | VoterDistribution::Bimodal { stddev, .. } => stddev,
        }
    }
}

/// Parameters of a spatial election.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpatialSpec {
    pub distribution: VoterDistribution,
    pub voters: u64,
    pub candidates: usize,
}

impl SpatialSpec {
    pub fn new(distribution: VoterDistribution, voters: u64, candidates: usize) -> Self {
        SpatialSpec { distribution, voters, candidates }
    }

    pub fn validate(&self) -> Result<()> {
        let sd = self.distribution.stddev();
        if !(sd > 0.0 && sd.is_finite()) {
            return invalid(format!("standard deviation must be positive, got {sd}"));
        }
        if self.voters % 2 == 0 {
            return invalid(format!("voter count must be odd, got {}", self.voters));
        }
        if self.candidates == 0 || self.candidates as u64 > self.voters {
            return invalid(format!("need 1 <= m <= N, got m={} N={}", self.candidates, self.voters));
        }
        Ok(())
    }
}

/// A spatial draw: the profile plus the positions behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialSample {
    pub profile: Profile,
    /// Sorted ascending; index `i` is candidate `i`.
    pub candidate_positions: Vec<f64>,
    pub voter_positions: Vec<f64>,
}

fn draw_voters<R: Rng + ?Sized>(dist: VoterDistribution, n: usize, rng: &mut R) -> Vec<f64> {
    match dist {
        VoterDistribution::Normal { mean, stddev } => {
            let normal = Normal::new(mean, stddev).expect("validated stddev");
            (0..n).map(|_| normal.sample(rng)).collect()
        }
        VoterDistribution::Bimodal { left_mean, right_mean, stddev } => {
            let left = Normal::new(left_mean, stddev).expect("validated stddev");
            let right = Normal::new(right_mean, stddev).expect("validated stddev");
            (0..n)
                .map(|_| if rng.random::<bool>() { right.sample(rng) } else { left.sample(rng) })
                .collect()
        }
    }
}

/// Candidate positions drawn without replacement from the voters, sorted, or
/// `None` if two chosen voters share a position.
fn pick_candidates<R: Rng + ?Sized>(voters: &[f64], m: usize, rng: &mut R) -> Option<Vec<f64>> {
    let mut pos: Vec<f64> = index::sample(rng, voters.len(), m).into_iter().map(|i| voters[i]).collect();
    pos.sort_by(f64::total_cmp);
    pos.windows(2).all(|w| w[0] < w[1]).then_some(pos)
}

/// Candidates ordered by distance from `x`; equal distances favour the lower index.
fn rank_by_distance(x: f64, candidates: &[f64], out: &mut Vec<CandidateId>) {
    out.clear();
    out.extend((0..candidates.len()).map(CandidateId));
    out.sort_by(|a, b| {
        let da = (x - candidates[a.0]).abs();
        let db = (x - candidates[b.0]).abs();
        da.total_cmp(&db).then(a.cmp(b))
    });
}

/// Spatial election: voters rank candidates by distance on the line.
pub fn sample_spatial<R: Rng + ?Sized>(spec: &SpatialSpec, rng: &mut R) -> Result<SpatialSample> {
    spec.validate()?;
    let n = usize::try_from(spec.voters).map_err(|_| Error::InvalidArgument("too many voters".into()))?;
    let m = spec.candidates;
    let mut voter_positions = draw_voters(spec.distribution, n, rng);
    let candidate_positions = match pick_candidates(&voter_positions, m, rng) {
        Some(c) => c,
        None => {
            voter_positions = draw_voters(spec.distribution, n, rng);
            pick_candidates(&voter_positions, m, rng)
                .ok_or_else(|| Error::Domain("candidate positions coincide twice in a row".into()))?
        }
    };

    // Neighbouring voters on the line almost always share a ranking, so walk
    // them in sorted order and only materialise a ranking when it changes.
    let mut sorted = voter_positions.clone();
    sorted.sort_by(f64::total_cmp);
    let mut counts = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut scratch = Vec::with_capacity(m);
    let mut run = 0u64;
    for &x in &sorted {
        rank_by_distance(x, &candidate_positions, &mut scratch);
        if run > 0 && scratch == current {
            run += 1;
            continue;
        }
        if run > 0 {
            counts.push((Ranking::new(current.clone())?, run));
        }
        std::mem::swap(&mut current, &mut scratch);
        run = 1;
    }
    counts.push((Ranking::new(current)?, run));
    let profile = Profile::from_counts(m, counts)?;
    assert!(profile.is_single_peaked(), "distance rankings on a line are single-peaked");
    Ok(SpatialSample { profile, candidate_positions, voter_positions })
}

/// Writes `voter_pos,candidate_pos` rows; `candidate_pos` is empty past the m-th row.
pub fn write_positions_csv<W: Write>(sample: &SpatialSample, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv write failed: {e}"));
    w.write_record(["voter_pos", "candidate_pos"]).map_err(io)?;
    for (i, v) in sample.voter_positions.iter().enumerate() {
        let c = sample.candidate_positions.get(i).map(|c| c.to_string()).unwrap_or_default();
        w.write_record([v.to_string(), c]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(format!("csv write failed: {e}")))?;
    Ok(())
}
