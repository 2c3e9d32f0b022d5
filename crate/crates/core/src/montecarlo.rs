//! Simulation campaigns comparing Bloc and k-Copeland committees.
//!
//! Trials run in parallel, but each trial owns the random stream derived from
//! `(seed, trial index)` and results are merged with integer counters only, so
//! the outcome does not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::election::{bloc_winners, k_copeland_winners, pairwise_matrix};
use crate::error::{invalid, Error, Result};
use crate::generator::{Model, RandomSource};
use crate::profile::CandidateSet;
use crate::stability::{is_condorcet_set, is_gehrlein_stable, strongest_blocker, Quota};

/// What to do with a trial whose Bloc or Copeland committee needed a tie-break.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiePolicy {
    #[default]
    ResolveLeftmost,
    DiscardTrial,
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TiePolicy::ResolveLeftmost => "resolve_leftmost",
            TiePolicy::DiscardTrial => "discard_trial",
        })
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "resolve_leftmost" => Ok(TiePolicy::ResolveLeftmost),
            "discard_trial" => Ok(TiePolicy::DiscardTrial),
            _ => invalid(format!("unknown tie policy {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub candidates: usize,
    pub winners: usize,
    pub voters: u64,
    pub trials: u64,
    pub model: Model,
    pub seed: u64,
    #[serde(default)]
    pub tie_policy: TiePolicy,
    pub quotas: Vec<Quota>,
}

impl ExperimentConfig {
    /// Defaults: 1001 voters, 20,000 trials, seed 0, majority and Droop quotas.
    pub fn new(model: Model, candidates: usize, winners: usize) -> Self {
        ExperimentConfig {
            candidates,
            winners,
            voters: 1001,
            trials: 20_000,
            model,
            seed: 0,
            tie_policy: TiePolicy::ResolveLeftmost,
            quotas: vec![Quota::Majority, Quota::Droop],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidates < 2 {
            return invalid(format!("need at least 2 candidates, got {}", self.candidates));
        }
        if self.winners == 0 || self.winners >= self.candidates {
            return invalid(format!("winners must satisfy 1 <= k < m, got k={} m={}", self.winners, self.candidates));
        }
        if self.voters % 2 == 0 {
            return invalid(format!("voter count must be odd, got {}", self.voters));
        }
        if self.model != Model::Iac && self.candidates as u64 > self.voters {
            return invalid("spatial models need at least as many voters as candidates");
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        for q in &self.quotas {
            q.validate(self.voters, self.winners)?;
        }
        Ok(())
    }
}

/// Stability lower bounds obtained from winning-set labels alone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelBounds {
    pub gehrlein: f64,
    pub locally_stable: f64,
}

/// Aggregated counts of a simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Trials that entered the statistics (trials minus discards).
    pub counted_trials: u64,
    pub discarded_trials: u64,
    pub bloc_freq: BTreeMap<CandidateSet, u64>,
    pub copeland_freq: BTreeMap<CandidateSet, u64>,
    pub agreement_count: u64,
    pub bloc_tie_count: u64,
    pub copeland_tie_count: u64,
    /// Trials whose Bloc committee is Gehrlein-stable.
    pub gehrlein_count: u64,
    pub condorcet_set_count: u64,
    pub locally_stable_count: BTreeMap<Quota, u64>,
    pub label_lower_bounds: Option<LabelBounds>,
}

impl ExperimentResult {
    fn rate(&self, count: u64) -> f64 {
        if self.counted_trials == 0 {
            0.0
        } else {
            count as f64 / self.counted_trials as f64
        }
    }

    pub fn agreement_rate(&self) -> f64 {
        self.rate(self.agreement_count)
    }

    pub fn gehrlein_rate(&self) -> f64 {
        self.rate(self.gehrlein_count)
    }

    pub fn condorcet_set_rate(&self) -> f64 {
        self.rate(self.condorcet_set_count)
    }

    pub fn locally_stable_rate(&self, q: Quota) -> Option<f64> {
        self.locally_stable_count.get(&q).map(|&c| self.rate(c))
    }

    pub fn bloc_prob(&self, set: &CandidateSet) -> f64 {
        self.rate(self.bloc_freq.get(set).copied().unwrap_or(0))
    }

    pub fn copeland_prob(&self, set: &CandidateSet) -> f64 {
        self.rate(self.copeland_freq.get(set).copied().unwrap_or(0))
    }
}

/// Which Bloc committees are guaranteed stable for a given `(m, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GuaranteeTable {
    /// Every possible Bloc committee is Gehrlein-stable (k ≥ ⌈m/2⌉).
    All,
    Listed {
        gehrlein: Vec<CandidateSet>,
        /// Locally stable but not necessarily Gehrlein-stable.
        locally_stable: Vec<CandidateSet>,
    },
}

impl GuaranteeTable {
    pub fn for_size(m: usize, k: usize) -> Result<Self> {
        if !(4..=7).contains(&m) || k < 2 || k >= m {
            return Err(Error::Unsupported(format!("no guarantee table for m={m}, k={k}")));
        }
        if k >= m.div_ceil(2) {
            return Ok(GuaranteeTable::All);
        }
        let sets = |labels: &[&str]| labels.iter().map(|s| s.parse().expect("static label")).collect();
        let (gehrlein, locally_stable) = match (m, k) {
            (5, 2) => (sets(&["BC", "CD"]), sets(&["BD"])),
            (6, 2) => (sets(&["CD"]), sets(&["BD", "BE", "CE"])),
            (7, 2) => (Vec::new(), Vec::new()),
            (7, 3) => (sets(&["BCD", "CDE", "DEF"]), sets(&["BCE", "CEF"])),
            _ => unreachable!("k < ceil(m/2) cases for m in 4..=7 are listed above"),
        };
        Ok(GuaranteeTable::Listed { gehrlein, locally_stable })
    }

    pub fn guarantees_gehrlein(&self, set: &CandidateSet) -> bool {
        match self {
            GuaranteeTable::All => true,
            GuaranteeTable::Listed { gehrlein, .. } => gehrlein.contains(set),
        }
    }

    pub fn guarantees_local_stability(&self, set: &CandidateSet) -> bool {
        match self {
            GuaranteeTable::All => true,
            GuaranteeTable::Listed { gehrlein, locally_stable } => gehrlein.contains(set) || locally_stable.contains(set),
        }
    }
}

/// Sums Bloc winning-set frequencies over the guaranteed classes.
pub fn stability_lower_bound_from_labels(result: &ExperimentResult) -> Result<LabelBounds> {
    let table = GuaranteeTable::for_size(result.config.candidates, result.config.winners)?;
    let sum = |pred: &dyn Fn(&CandidateSet) -> bool| -> u64 {
        result.bloc_freq.iter().filter(|(s, _)| pred(s)).map(|(_, &n)| n).sum()
    };
    Ok(LabelBounds {
        gehrlein: result.rate(sum(&|s| table.guarantees_gehrlein(s))),
        locally_stable: result.rate(sum(&|s| table.guarantees_local_stability(s))),
    })
}

#[derive(Clone, Debug, Default)]
struct Tally {
    counted: u64,
    discarded: u64,
    bloc_freq: BTreeMap<CandidateSet, u64>,
    copeland_freq: BTreeMap<CandidateSet, u64>,
    agreement: u64,
    bloc_ties: u64,
    copeland_ties: u64,
    gehrlein: u64,
    condorcet_set: u64,
    /// Parallel to `ExperimentConfig::quotas`.
    locally_stable: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.counted += other.counted;
        self.discarded += other.discarded;
        for (s, n) in other.bloc_freq {
            *self.bloc_freq.entry(s).or_insert(0) += n;
        }
        for (s, n) in other.copeland_freq {
            *self.copeland_freq.entry(s).or_insert(0) += n;
        }
        self.agreement += other.agreement;
        self.bloc_ties += other.bloc_ties;
        self.copeland_ties += other.copeland_ties;
        self.gehrlein += other.gehrlein;
        self.condorcet_set += other.condorcet_set;
        if self.locally_stable.len() < other.locally_stable.len() {
            self.locally_stable.resize(other.locally_stable.len(), 0);
        }
        for (a, b) in self.locally_stable.iter_mut().zip(other.locally_stable) {
            *a += b;
        }
        self
    }
}

fn run_trial(cfg: &ExperimentConfig, source: &RandomSource, trial: u64) -> Result<Tally> {
    let mut rng = source.derive_stream(trial);
    let profile = cfg.model.sample(cfg.candidates, cfg.voters, &mut rng)?;
    let bloc = bloc_winners(&profile, cfg.winners)?;
    let matrix = pairwise_matrix(&profile);
    let copeland = k_copeland_winners(&matrix, cfg.winners)?;

    let mut t = Tally {
        bloc_ties: bloc.tie_broken as u64,
        copeland_ties: copeland.tie_broken as u64,
        locally_stable: vec![0; cfg.quotas.len()],
        ..Tally::default()
    };
    if cfg.tie_policy == TiePolicy::DiscardTrial && (bloc.tie_broken || copeland.tie_broken) {
        t.discarded = 1;
        return Ok(t);
    }
    t.counted = 1;
    t.agreement = (bloc.members == copeland.members) as u64;
    t.gehrlein = is_gehrlein_stable(&bloc.members, &matrix).is_ok() as u64;
    t.condorcet_set = is_condorcet_set(&bloc.members, &matrix).is_ok() as u64;
    debug_assert!(bloc.tie_broken || t.agreement == t.gehrlein);
    let blocker = strongest_blocker(&profile, &bloc.members)?.map_or(0, |b| b.block_size);
    for (slot, q) in t.locally_stable.iter_mut().zip(&cfg.quotas) {
        *slot = (blocker < q.value(cfg.voters, cfg.winners)) as u64;
    }
    t.bloc_freq.insert(bloc.members, 1);
    t.copeland_freq.insert(copeland.members, 1);
    Ok(t)
}

fn finish(cfg: &ExperimentConfig, tally: Tally) -> ExperimentResult {
    let mut locally_stable_count = BTreeMap::new();
    for (i, q) in cfg.quotas.iter().enumerate() {
        locally_stable_count.insert(*q, tally.locally_stable.get(i).copied().unwrap_or(0));
    }
    let mut result = ExperimentResult {
        config: cfg.clone(),
        counted_trials: tally.counted,
        discarded_trials: tally.discarded,
        bloc_freq: tally.bloc_freq,
        copeland_freq: tally.copeland_freq,
        agreement_count: tally.agreement,
        bloc_tie_count: tally.bloc_ties,
        copeland_tie_count: tally.copeland_ties,
        gehrlein_count: tally.gehrlein,
        condorcet_set_count: tally.condorcet_set,
        locally_stable_count,
        label_lower_bounds: None,
    };
    result.label_lower_bounds = stability_lower_bound_from_labels(&result).ok();
    result
}

/// Runs the campaign on the current rayon pool.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let source = RandomSource::new(cfg.seed);
    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, &source, t))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(finish(cfg, tally))
}

/// Runs the campaign on a dedicated pool with `threads` workers (`None` = rayon default).
pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<ExperimentResult> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_experiment(cfg))
}
