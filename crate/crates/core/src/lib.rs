//! Committee elections on single-peaked preference profiles.
//!
//! The crate covers profile representation and parsing, the Bloc and
//! k-Copeland rules, Condorcet-style stability checks, random profile
//! generators and parallel simulation campaigns.
//!
//! ```
//! use spvote::{bloc_winners, parse_profile};
//!
//! let p = parse_profile("m=3\n2: A B C\n1: C B A\n").unwrap();
//! assert_eq!(bloc_winners(&p, 2).unwrap().members.to_string(), "AB");
//! ```

pub mod election;
pub mod error;
pub mod format;
pub mod generator;
pub mod montecarlo;
pub mod profile;
pub mod report;
pub mod stability;

pub use election::{
    bloc_tally, bloc_winners, committee_monotonicity_violations, condorcet_winner, copeland_scores,
    k_copeland_winners, k_copeland_winning_sets, median_elimination_ranking, pairwise_matrix, BlocTally,
    CopelandScore, PairwiseMatrix, WinningSet,
};
pub use error::{Error, Result};
pub use format::{parse_profile, serialize_profile};
pub use generator::{sample_iac_single_peaked, sample_spatial, Model, RandomSource, SpatialSpec, VoterDistribution};
pub use montecarlo::{
    run_experiment, run_experiment_with_threads, stability_lower_bound_from_labels, ExperimentConfig,
    ExperimentResult, TiePolicy,
};
pub use profile::{enumerate_single_peaked_rankings, is_single_peaked, CandidateId, CandidateSet, Profile, Ranking};
pub use report::{emit_report, ReportFormat};
pub use stability::{block_size, classify, classify_with, is_locally_stable, Quota, StabilityReport};
