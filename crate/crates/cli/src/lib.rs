//! Command-line front end for `spvote`.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on usage,
//! parse or validation errors.

pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use spvote::generator::{sample_spatial, write_positions_csv, SpatialSpec, VoterDistribution};
use spvote::{
    bloc_tally, bloc_winners, classify_with, copeland_scores, emit_report, enumerate_single_peaked_rankings,
    k_copeland_winners, k_copeland_winning_sets, pairwise_matrix, parse_profile, run_experiment_with_threads,
    CandidateId, CandidateSet, ExperimentConfig, Model, Profile, Quota, RandomSource, ReportFormat, StabilityReport,
    TiePolicy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "spvote", version, about = "Bloc and k-Copeland elections on single-peaked profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bloc,
    Copeland,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every single-peaked ranking of m candidates.
    Rankings {
        #[arg(long)]
        candidates: usize,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Run a Bloc or k-Copeland election on a profile file.
    Elect {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        winners: usize,
        #[arg(long, value_enum, default_value = "bloc")]
        method: Method,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Classify a committee: adjacency, Gehrlein stability, Condorcet set, local stability.
    Classify {
        #[arg(long)]
        profile: PathBuf,
        /// Committee such as "B,D" or "BD".
        #[arg(long)]
        set: CandidateSet,
        /// majority, droop or an integer; may be repeated.
        #[arg(long = "quota", default_values = ["majority", "droop"])]
        quotas: Vec<Quota>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Run a Monte Carlo campaign.
    Simulate {
        /// iac, en or eb
        #[arg(long)]
        model: Model,
        #[arg(long)]
        candidates: usize,
        #[arg(long)]
        winners: usize,
        #[arg(long, default_value_t = 1001)]
        voters: u64,
        #[arg(long, default_value_t = 20_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "resolve-leftmost")]
        tie_policy: TiePolicy,
        #[arg(long = "quota", default_values = ["majority", "droop"])]
        quotas: Vec<Quota>,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Write the report here and print a short summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long, env = "SPVOTE_THREADS")]
        threads: Option<usize>,
        /// Dump voter and candidate positions of trial 0 as CSV (spatial models).
        #[arg(long)]
        dump_positions: Option<PathBuf>,
    },
    /// Replay the bundled example fixtures.
    Verify {
        /// Print fixture names without running them.
        #[arg(long)]
        list: bool,
        /// Read `*.profile` fixtures from a directory instead of the bundled set.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn read_profile(path: &Path) -> anyhow::Result<Profile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let profile = parse_profile(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(profile)
}

fn no_csv(format: ReportFormat, what: &str) -> anyhow::Result<()> {
    if format == ReportFormat::Csv {
        bail!("csv output is only available for simulate, not {what}");
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Rankings { candidates, format } => {
            no_csv(format, "rankings")?;
            let rankings = enumerate_single_peaked_rankings(candidates)?;
            let text = if format == ReportFormat::Json {
                let list: Vec<String> = rankings.iter().map(|r| r.to_string()).collect();
                pretty(&json!({ "candidates": candidates, "count": rankings.len(), "rankings": list }))?
            } else {
                let mut s = String::new();
                for r in &rankings {
                    let _ = writeln!(s, "{r}");
                }
                let _ = writeln!(s, "{} rankings", rankings.len());
                s
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Elect { profile, winners, method, format } => {
            no_csv(format, "elect")?;
            let p = read_profile(&profile)?;
            p.ensure_odd()?;
            let text = match method {
                Method::Bloc => elect_bloc(&p, winners, format)?,
                Method::Copeland => elect_copeland(&p, winners, format)?,
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Classify { profile, set, quotas, format } => {
            no_csv(format, "classify")?;
            let p = read_profile(&profile)?;
            let report = classify_with(&p, &set, &quotas)?;
            let text = match format {
                ReportFormat::Json => pretty(&serde_json::to_value(&report)?)?,
                _ => classify_text(&p, &report),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Simulate {
            model,
            candidates,
            winners,
            voters,
            trials,
            seed,
            tie_policy,
            quotas,
            format,
            out: path,
            threads,
            dump_positions,
        } => {
            if threads == Some(0) {
                bail!("--threads must be at least 1");
            }
            let cfg = ExperimentConfig { candidates, winners, voters, trials, model, seed, tie_policy, quotas };
            let result = run_experiment_with_threads(&cfg, threads)?;
            let report = emit_report(&result, format)?;
            if let Some(dump) = dump_positions {
                dump_trial_positions(&cfg, &dump)?;
            }
            match path {
                Some(path) => {
                    fs::write(&path, &report).with_context(|| format!("cannot write {}", path.display()))?;
                    writeln!(
                        out,
                        "{} trials ({} counted): agreement {:.4}, gehrlein {:.4}, condorcet set {:.4}; report in {}",
                        cfg.trials,
                        result.counted_trials,
                        result.agreement_rate(),
                        result.gehrlein_rate(),
                        result.condorcet_set_rate(),
                        path.display()
                    )?;
                }
                None => out.write_all(report.as_bytes())?,
            }
        }
        Command::Verify { list, fixtures } => {
            let all = load_fixtures(fixtures.as_deref())?;
            if list {
                for (name, _) in &all {
                    writeln!(out, "{name}")?;
                }
                return Ok(EXIT_OK);
            }
            let (report, ok) = verify::verify_all(&all);
            out.write_all(report.as_bytes())?;
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    Ok(EXIT_OK)
}

fn pretty(value: &serde_json::Value) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn labelled<T: Copy + std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{}={v}", CandidateId(i)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn header(p: &Profile) -> String {
    format!(
        "{} voters, {} candidates, {}\n",
        p.voters(),
        p.m(),
        if p.is_single_peaked() { "single-peaked" } else { "not single-peaked" }
    )
}

fn set_json(w: &CandidateSet) -> serde_json::Value {
    json!({ "set": w.to_string(), "index": w.iter().map(|c| c.0).collect::<Vec<_>>() })
}

fn elect_bloc(p: &Profile, k: usize, format: ReportFormat) -> anyhow::Result<String> {
    let tally = bloc_tally(p, k)?;
    let winners = bloc_winners(p, k)?;
    if format == ReportFormat::Json {
        let named: BTreeMap<String, u64> = (0..p.m()).map(|i| (CandidateId(i).to_string(), tally.votes[i])).collect();
        return pretty(&json!({
            "method": "bloc",
            "k": k,
            "voters": p.voters(),
            "candidates": p.m(),
            "single_peaked": p.is_single_peaked(),
            "tally": named,
            "tally_index": tally.votes,
            "winners": set_json(&winners.members),
            "tie_broken": winners.tie_broken,
            "tied_candidates": winners.tied_candidates.as_ref().map(set_json),
        }));
    }
    let mut s = header(p);
    let _ = writeln!(s, "bloc, k={k}");
    let _ = writeln!(s, "tally: {}", labelled(&tally.votes));
    let _ = write!(s, "winners: {}", winners.members);
    if let Some(tied) = &winners.tied_candidates {
        let _ = write!(s, " (tie among {tied} resolved leftmost)");
    }
    s.push('\n');
    Ok(s)
}

fn elect_copeland(p: &Profile, k: usize, format: ReportFormat) -> anyhow::Result<String> {
    let matrix = pairwise_matrix(p);
    let scores = copeland_scores(&matrix);
    let sets = k_copeland_winning_sets(&matrix, k)?;
    let chosen = k_copeland_winners(&matrix, k)?;
    if format == ReportFormat::Json {
        let named: BTreeMap<String, f64> = scores.iter().enumerate().map(|(i, s)| (CandidateId(i).to_string(), s.as_f64())).collect();
        let rows: Vec<Vec<u64>> = (0..p.m())
            .map(|i| (0..p.m()).map(|j| matrix.get(CandidateId(i), CandidateId(j))).collect())
            .collect();
        return pretty(&json!({
            "method": "copeland",
            "k": k,
            "voters": p.voters(),
            "candidates": p.m(),
            "single_peaked": p.is_single_peaked(),
            "pairwise": rows,
            "scores": named,
            "scores_index": scores.iter().map(|s| s.as_f64()).collect::<Vec<_>>(),
            "winning_sets": sets.iter().map(|w| set_json(&w.members)).collect::<Vec<_>>(),
            "winners": set_json(&chosen.members),
            "tie_broken": chosen.tie_broken,
        }));
    }
    let mut s = header(p);
    let _ = writeln!(s, "copeland, k={k}");
    let _ = writeln!(s, "scores: {}", labelled(&scores));
    let listed: Vec<String> = sets.iter().map(|w| w.members.to_string()).collect();
    if listed.len() > 1 {
        let _ = writeln!(s, "winning sets: {} (tied)", listed.join(" "));
        let _ = writeln!(s, "selected: {}", chosen.members);
    } else {
        let _ = writeln!(s, "winners: {}", chosen.members);
    }
    Ok(s)
}

fn classify_text(p: &Profile, r: &StabilityReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = header(p);
    let _ = writeln!(s, "committee: {}", r.members);
    let _ = write!(s, "adjacent: {}", yes(r.adjacent));
    if !r.adjacency_gaps.is_empty() {
        let gaps: String = r.adjacency_gaps.iter().map(|c| c.to_string()).collect();
        let _ = write!(s, " (gaps {gaps})");
    }
    s.push('\n');
    let _ = write!(s, "gehrlein-stable: {}", yes(r.gehrlein_stable));
    if let Some((c, m)) = r.gehrlein_witness {
        let _ = write!(s, " ({c} is not beaten by {m})");
    }
    s.push('\n');
    let _ = write!(s, "condorcet set: {}", yes(r.condorcet_set));
    if let Some(c) = r.condorcet_witness {
        let _ = write!(s, " (no member beats {c})");
    }
    s.push('\n');
    match r.condorcet_winner {
        Some(c) => {
            let _ = writeln!(s, "condorcet winner: {c} ({})", if r.members.contains(c) { "member" } else { "outsider" });
        }
        None => s.push_str("condorcet winner: none\n"),
    }
    for (q, v) in &r.local_witness {
        let _ = write!(s, "locally stable ({q}, q={}): {}", v.quota, yes(v.stable));
        if let Some(b) = v.blocker {
            let _ = write!(s, " (largest block: {} with {})", b.candidate, b.block_size);
        }
        s.push('\n');
    }
    s
}

fn dump_trial_positions(cfg: &ExperimentConfig, path: &Path) -> anyhow::Result<()> {
    let distribution = match cfg.model {
        Model::En => VoterDistribution::standard_normal(),
        Model::Eb => VoterDistribution::bimodal(),
        Model::Iac => bail!("--dump-positions needs a spatial model (en or eb)"),
    };
    let spec = SpatialSpec::new(distribution, cfg.voters, cfg.candidates);
    let sample = sample_spatial(&spec, &mut RandomSource::new(cfg.seed).derive_stream(0))?;
    let file = fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    write_positions_csv(&sample, file)?;
    Ok(())
}

/// Bundled fixtures, or every `*.profile` file in `dir` sorted by name.
pub fn load_fixtures(dir: Option<&Path>) -> anyhow::Result<Vec<(String, String)>> {
    let Some(dir) = dir else {
        return Ok(verify::BUILTIN_FIXTURES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect());
    };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "profile"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .profile files in {}", dir.display());
    }
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let text = fs::read_to_string(&p).with_context(|| format!("cannot read {}", p.display()))?;
            Ok((name, text))
        })
        .collect()
}
