//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. Pass a substring to run only matching criteria.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use spvote::election::k_copeland_winning_sets;
use spvote::montecarlo::GuaranteeTable;
use spvote::stability::{is_adjacent, is_condorcet_set, is_gehrlein_stable};
use spvote::{
    block_size, bloc_tally, bloc_winners, classify, condorcet_winner, copeland_scores, is_locally_stable,
    median_elimination_ranking, pairwise_matrix, parse_profile, run_experiment, sample_iac_single_peaked,
    CandidateId, CandidateSet, ExperimentConfig, ExperimentResult, Model, Profile, Quota, RandomSource,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const EXACT_FIXTURE_BUDGET_SECS: f64 = 1.0;
const PROPERTY_PROFILES: u64 = 10_000;
const SIM_VOTERS: u64 = 1001;
const SIM_TRIALS: u64 = 20_000;
const SIM_SEED: u64 = 1;
const SIM_TOL: f64 = 0.02;
const IAC_DRAWS: u64 = 1_000_000;
const CHI_SQUARE_MIN_P: f64 = 0.001;
const IAC_M7_K2_MIN_AGREEMENT: f64 = 0.90;

const EXAMPLE1: &str = include_str!("../fixtures/example1.profile");
const MEDIAN_211: &str = include_str!("../fixtures/median_211.profile");
const CENTER_SQUEEZE_61: &str = include_str!("../fixtures/center_squeeze_61.profile");
const AB_COUNTER_251: &str = include_str!("../fixtures/ab_counter_251.profile");
const BD_COUNTER_205: &str = include_str!("../fixtures/bd_counter_205.profile");
const M6_AB: &str = include_str!("../fixtures/m6_ab.profile");
const M6_BC: &str = include_str!("../fixtures/m6_bc.profile");
const M7_ABC: &str = include_str!("../fixtures/m7_abc.profile");
const M7_BCE: &str = include_str!("../fixtures/m7_bce.profile");

/// Collects sub-check failures for one criterion.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn near(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let msg = format!("{what} {got:.4} (target {want} ± {tol})");
        if (got - want).abs() > tol {
            self.failures.push(msg);
        } else {
            self.notes.push(msg);
        }
    }

    fn truth(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self) -> Result<String, String> {
        if self.failures.is_empty() {
            Ok(self.notes.join("; "))
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn c(label: &str) -> CandidateId {
    CandidateId::parse_label(label).unwrap()
}

fn set(s: &str) -> CandidateSet {
    s.parse().unwrap()
}

fn profile(text: &str) -> Profile {
    parse_profile(text).unwrap()
}

fn contest(p: &Profile, a: &str, b: &str) -> (u64, u64) {
    let m = pairwise_matrix(p);
    (m.get(c(a), c(b)), m.get(c(b), c(a)))
}

fn beats(p: &Profile, a: &str, b: &str) -> bool {
    pairwise_matrix(p).beats(c(a), c(b))
}

fn bloc(p: &Profile, k: usize) -> String {
    bloc_winners(p, k).unwrap().members.to_string()
}

fn copeland_sets(p: &Profile, k: usize) -> Vec<String> {
    let mut v: Vec<String> = k_copeland_winning_sets(&pairwise_matrix(p), k)
        .unwrap()
        .iter()
        .map(|w| w.members.to_string())
        .collect();
    v.sort();
    v
}

fn half_scores(p: &Profile, order: &str) -> Vec<f64> {
    let s = copeland_scores(&pairwise_matrix(p));
    order.chars().map(|l| s[c(&l.to_string()).0].as_f64()).collect()
}

fn criterion_1() -> Result<String, String> {
    let p = profile(EXAMPLE1);
    let mut ck = Checks::default();
    for (k, want) in [(1, "A"), (2, "AB"), (3, "BCE"), (4, "BCDE")] {
        ck.eq(&format!("bloc k={k}"), bloc(&p, k), want.to_string());
    }
    ck.eq("tally k=2", bloc_tally(&p, 2).unwrap().votes, vec![50, 140, 20, 35, 45]);
    ck.finish()
}

fn criterion_2() -> Result<String, String> {
    let p = profile(EXAMPLE1);
    let mut ck = Checks::default();
    let table = [
        ("A", "B", 50, 95),
        ("A", "C", 50, 95),
        ("A", "D", 50, 95),
        ("A", "E", 50, 95),
        ("B", "C", 125, 20),
        ("B", "D", 110, 35),
        ("B", "E", 140, 5),
        ("C", "D", 110, 35),
        ("C", "E", 70, 75),
        ("D", "E", 105, 40),
    ];
    for (a, b, x, y) in table {
        ck.eq(&format!("{a} vs {b}"), contest(&p, a, b), (x, y));
    }
    ck.eq("copeland scores", half_scores(&p, "ABCDE"), vec![0.0, 4.0, 2.0, 2.0, 2.0]);
    ck.eq("k=2 tied sets", copeland_sets(&p, 2), vec!["BC".into(), "BD".into(), "BE".into()]);
    ck.eq(
        "k=3 tied sets",
        copeland_sets(&p, 3),
        vec!["BCD".into(), "BCE".into(), "BDE".into(), "CDE".into()],
    );
    ck.finish()
}

fn criterion_3() -> Result<String, String> {
    let p = profile(MEDIAN_211);
    let mut ck = Checks::default();
    let ranking: String = median_elimination_ranking(&p).unwrap().iter().map(|x| x.to_string()).collect();
    ck.eq("median elimination", ranking, "CBAD".to_string());
    ck.eq("copeland (C,B,A,D)", half_scores(&p, "CBAD"), vec![3.0, 2.0, 1.0, 0.0]);
    ck.finish()
}

fn criterion_4() -> Result<String, String> {
    let p = profile(CENTER_SQUEEZE_61);
    let w = set("BD");
    let mut ck = Checks::default();
    ck.eq("bloc k=2", bloc(&p, 2), "BD".into());
    ck.eq("condorcet winner", condorcet_winner(&pairwise_matrix(&p)), Some(c("C")));
    ck.eq("block_size(C, BD)", block_size(&p, c("C"), &w).unwrap(), 21);
    ck.eq("stable at q=31", is_locally_stable(&p, &w, Quota::Custom(31)).unwrap().stable, true);
    ck.eq("Droop quota", Quota::Droop.value(p.voters(), 2), 21);
    ck.eq("stable at Droop", is_locally_stable(&p, &w, Quota::Droop).unwrap().stable, false);
    let r = classify(&p, &w).unwrap();
    ck.eq("condorcet set", r.condorcet_set, false);
    ck.eq("gehrlein", r.gehrlein_stable, false);
    ck.finish()
}

fn criterion_5() -> Result<String, String> {
    let mut ck = Checks::default();
    let p = profile(AB_COUNTER_251);
    ck.eq("251: bloc k=2", bloc(&p, 2), "AB".into());
    let t = bloc_tally(&p, 2).unwrap().votes;
    ck.eq("251: tallies A/B", (t[0], t[1]), (101, 151));
    for x in ["C", "D", "E"] {
        ck.eq(&format!("251: {x} vs A"), contest(&p, x, "A"), (151, 101));
    }
    ck.eq("251: C vs B", contest(&p, "C", "B"), (151, 101));
    ck.eq("251: locally stable (majority)", is_locally_stable(&p, &set("AB"), Quota::Majority).unwrap().stable, false);

    let q = profile(BD_COUNTER_205);
    ck.eq("205: bloc k=2", bloc(&q, 2), "BD".into());
    let t = bloc_tally(&q, 2).unwrap().votes;
    ck.eq("205: tallies B/D", (t[1], t[3]), (102, 103));
    ck.eq("205: E vs B", contest(&q, "E", "B"), (103, 102));
    ck.eq("205: C vs B", contest(&q, "C", "B"), (104, 101));
    ck.eq("205: C vs D", contest(&q, "C", "D"), (103, 102));
    ck.finish()
}

fn criterion_6() -> Result<String, String> {
    let mut ck = Checks::default();
    let p = profile(M6_AB);
    ck.eq("AB profile: bloc", bloc(&p, 2), "AB".into());
    for x in ["C", "D", "E", "F"] {
        for w in ["A", "B"] {
            ck.truth(&format!("AB profile: {x} should beat {w}"), beats(&p, x, w));
        }
    }
    ck.eq("AB profile: condorcet winner", condorcet_winner(&pairwise_matrix(&p)), Some(c("D")));
    let v = is_locally_stable(&p, &set("AB"), Quota::Majority).unwrap();
    ck.eq("AB profile: locally stable", v.stable, false);
    ck.eq("AB profile: largest block", v.blocker.map(|b| b.block_size), Some(5));

    let q = profile(M6_BC);
    ck.eq("BC profile: bloc", bloc(&q, 2), "BC".into());
    ck.truth("BC profile: D should beat B", beats(&q, "D", "B"));
    ck.truth("BC profile: D should beat C", beats(&q, "D", "C"));
    ck.finish()
}

fn criterion_7() -> Result<String, String> {
    let mut ck = Checks::default();
    let p = profile(M7_ABC);
    ck.eq("ABC profile: bloc", bloc(&p, 3), "ABC".into());
    ck.eq("ABC profile: condorcet winner", condorcet_winner(&pairwise_matrix(&p)), Some(c("D")));
    ck.eq("ABC profile: block of D", block_size(&p, c("D"), &set("ABC")).unwrap(), 5);
    ck.eq("ABC profile: locally stable", is_locally_stable(&p, &set("ABC"), Quota::Majority).unwrap().stable, false);

    let q = profile(M7_BCE);
    ck.eq("BCE profile: bloc", bloc(&q, 3), "BCE".into());
    ck.eq("BCE profile: condorcet winner", condorcet_winner(&pairwise_matrix(&q)), Some(c("E")));
    ck.truth("BCE profile: D should beat B", beats(&q, "D", "B"));
    ck.truth("BCE profile: D should beat C", beats(&q, "D", "C"));
    let r = classify(&q, &set("BCE")).unwrap();
    ck.eq("BCE profile: gehrlein", r.gehrlein_stable, false);
    ck.eq("BCE profile: condorcet set", r.condorcet_set, true);
    ck.eq("BCE profile: locally stable", r.locally_stable_under(Quota::Majority), Some(true));
    ck.finish()
}

/// Random single-peaked profiles: m in 4..=7, odd N up to 201, mixing IAC
/// (sparse at small N) with the two spatial models.
fn random_profile(i: u64) -> Profile {
    let m = 4 + (i % 4) as usize;
    let voters = 2 * ((i / 4) % 101) + 1;
    let mut rng = RandomSource::new(0xACCE_0001).derive_stream(i);
    match (i / 404) % 3 {
        0 => Model::Iac.sample(m, voters, &mut rng),
        1 => Model::En.sample(m, voters.max(m as u64 | 1), &mut rng),
        _ => Model::Eb.sample(m, voters.max(m as u64 | 1), &mut rng),
    }
    .unwrap()
}

fn k_subsets(m: usize, k: usize) -> Vec<CandidateSet> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| CandidateSet::new((0..m).filter(|i| mask >> i & 1 == 1).map(CandidateId)))
        .collect()
}

fn condorcet_order(p: &Profile) -> Vec<CandidateId> {
    let scores = copeland_scores(&pairwise_matrix(p));
    let mut order: Vec<CandidateId> = (0..p.m()).map(CandidateId).collect();
    order.sort_by_key(|x| std::cmp::Reverse(scores[x.0]));
    order
}

/// Counts violations per named property; reports the first witness of each.
#[derive(Default)]
struct Violations(BTreeMap<&'static str, (u64, String)>);

impl Violations {
    fn record(&mut self, name: &'static str, witness: impl FnOnce() -> String) {
        let e = self.0.entry(name).or_insert((0, String::new()));
        if e.0 == 0 {
            e.1 = witness();
        }
        e.0 += 1;
    }

    fn finish(self, profiles: u64) -> Result<String, String> {
        if self.0.is_empty() {
            Ok(format!("{profiles} profiles, no violations"))
        } else {
            Err(self
                .0
                .iter()
                .map(|(k, (n, w))| format!("{k}: {n} violation(s), e.g. {w}"))
                .collect::<Vec<_>>()
                .join("; "))
        }
    }
}

fn criterion_8() -> Result<String, String> {
    let mut v = Violations::default();
    for i in 0..PROPERTY_PROFILES {
        let p = random_profile(i);
        let matrix = pairwise_matrix(&p);
        if !matrix.is_linear_order() {
            v.record("strict total order", || format!("profile #{i}"));
        }
        let mut halves: Vec<u32> = copeland_scores(&matrix).iter().map(|s| s.half_points()).collect();
        halves.sort_unstable();
        if halves != (0..p.m() as u32).map(|s| 2 * s).collect::<Vec<_>>() {
            v.record("scores 0..m-1", || format!("profile #{i}: {halves:?}"));
        }
        if median_elimination_ranking(&p).unwrap() != condorcet_order(&p) {
            v.record("median = copeland order", || format!("profile #{i}"));
        }
    }
    v.finish(PROPERTY_PROFILES)
}

fn criterion_9() -> Result<String, String> {
    let mut v = Violations::default();
    for i in 0..PROPERTY_PROFILES {
        let p = random_profile(i);
        let matrix = pairwise_matrix(&p);
        let order = condorcet_order(&p);
        let winner = condorcet_winner(&matrix);
        for k in 1..p.m() {
            let top = CandidateSet::new(order[..k].iter().copied());
            for w in k_subsets(p.m(), k) {
                let stable = is_gehrlein_stable(&w, &matrix).is_ok();
                if stable && !is_adjacent(&w) {
                    v.record("gehrlein => adjacent", || format!("profile #{i} {w}"));
                }
                if stable != (w == top) {
                    v.record("gehrlein <=> condorcet top-k", || format!("profile #{i} {w}"));
                }
                if is_condorcet_set(&w, &matrix).is_ok() != winner.is_some_and(|x| w.contains(x)) {
                    v.record("condorcet set <=> contains winner", || format!("profile #{i} {w}"));
                }
            }
        }
    }
    v.finish(PROPERTY_PROFILES)
}

/// A profile where a candidate left of the committee beats a distant winner.
const EDGE_WITNESS: &str = "m=7\n3: B A C D E F G\n3: B C A D E F G\n3: F G E D C B A\n2: F E D C B A G\n";

fn structural_checks(p: &Profile, label: &str, v: &mut Violations) {
    let m = p.m();
    let matrix = pairwise_matrix(p);
    for k in 1..m {
        let bw = bloc_winners(p, k).unwrap();
        if bw.tie_broken {
            continue;
        }
        let w = &bw.members;
        let idx: Vec<usize> = w.iter().map(|x| x.0).collect();
        if k >= m.div_ceil(2) && !(is_adjacent(w) && is_gehrlein_stable(w, &matrix).is_ok()) {
            v.record("k >= m/2 adjacent and gehrlein", || format!("{label} k={k} {w}"));
        }
        for &i in &idx {
            let left_ok = i >= k || (i + 1..k).all(|j| w.contains(CandidateId(j)));
            let right_ok = i < m - k || (m - k..i).all(|j| w.contains(CandidateId(j)));
            if !(left_ok && right_ok) {
                v.record("winning-set closure", || format!("{label} k={k} {w}"));
            }
        }
        for pair in idx.windows(2) {
            let gap = pair[1] - pair[0] - 1;
            if gap >= 1 && gap <= k {
                for x in pair[0] + 1..pair[1] {
                    if 2 * block_size(p, CandidateId(x), w).unwrap() >= p.voters() {
                        v.record("gap block bound", || format!("{label} k={k} {w} c={}", CandidateId(x)));
                    }
                }
            }
        }
        let (lo, hi) = (idx[0], idx[idx.len() - 1]);
        if lo <= k {
            for x in 0..lo {
                if let Some(&y) = idx.iter().find(|&&y| matrix.beats(CandidateId(x), CandidateId(y))) {
                    v.record("edge head-to-head bound", || {
                        format!("{label} k={k} {w}: {} beats {}", CandidateId(x), CandidateId(y))
                    });
                }
            }
        }
        if hi + 1 >= m - k {
            for x in hi + 1..m {
                if let Some(&y) = idx.iter().find(|&&y| matrix.beats(CandidateId(x), CandidateId(y))) {
                    v.record("edge head-to-head bound", || {
                        format!("{label} k={k} {w}: {} beats {}", CandidateId(x), CandidateId(y))
                    });
                }
            }
        }
        if let Ok(table) = GuaranteeTable::for_size(m, k) {
            if table.guarantees_gehrlein(w) && is_gehrlein_stable(w, &matrix).is_err() {
                v.record("classification (gehrlein)", || format!("{label} m={m} k={k} {w}"));
            }
            if table.guarantees_local_stability(w) && !is_locally_stable(p, w, Quota::Majority).unwrap().stable {
                v.record("classification (local)", || format!("{label} m={m} k={k} {w}"));
            }
        }
    }
}

fn criterion_10() -> Result<String, String> {
    let mut v = Violations::default();
    for i in 0..PROPERTY_PROFILES {
        structural_checks(&random_profile(i), &format!("profile #{i}"), &mut v);
    }
    structural_checks(&profile(EDGE_WITNESS), "witness", &mut v);
    v.finish(PROPERTY_PROFILES + 1)
}

fn criterion_11() -> Result<String, String> {
    let rankings = spvote::enumerate_single_peaked_rankings(3).unwrap();
    let mut rng = RandomSource::new(11).derive_stream(0);
    let mut seen: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for _ in 0..IAC_DRAWS {
        let p = sample_iac_single_peaked(3, 3, &mut rng).unwrap();
        *seen.entry(rankings.iter().map(|r| p.count(r)).collect()).or_insert(0) += 1;
    }
    let mut ck = Checks::default();
    ck.eq("distinct outcomes", seen.len(), 20);
    let expected = IAC_DRAWS as f64 / 20.0;
    let stat: f64 = seen.values().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let p_value = ChiSquared::new(19.0).unwrap().sf(stat);
    if p_value > CHI_SQUARE_MIN_P {
        ck.note(format!("chi-square {stat:.2}, p = {p_value:.4}"));
    } else {
        ck.truth(&format!("chi-square {stat:.2}, p = {p_value:.6} <= {CHI_SQUARE_MIN_P}"), false);
    }
    ck.finish()
}

fn simulate(model: Model, m: usize, k: usize) -> ExperimentResult {
    let cfg = ExperimentConfig { voters: SIM_VOTERS, trials: SIM_TRIALS, seed: SIM_SEED, ..ExperimentConfig::new(model, m, k) };
    run_experiment(&cfg).unwrap()
}

fn criterion_12() -> Result<String, String> {
    let r = simulate(Model::Iac, 4, 2);
    let mut ck = Checks::default();
    ck.near("P(AB)", r.bloc_prob(&set("AB")), 0.062, SIM_TOL);
    ck.near("P(BC)", r.bloc_prob(&set("BC")), 0.876, SIM_TOL);
    ck.near("P(CD)", r.bloc_prob(&set("CD")), 0.062, SIM_TOL);
    ck.eq("agreement", r.agreement_count, r.counted_trials);
    ck.finish()
}

fn criterion_13() -> Result<String, String> {
    let r = simulate(Model::Iac, 5, 3);
    let mut ck = Checks::default();
    ck.near("P(BCD)", r.bloc_prob(&set("BCD")), 0.965, SIM_TOL);
    ck.eq("agreement", r.agreement_count, r.counted_trials);
    ck.finish()
}

fn criterion_14() -> Result<String, String> {
    let r = simulate(Model::En, 5, 2);
    let mut ck = Checks::default();
    ck.near("agreement", r.agreement_rate(), 0.632, SIM_TOL);
    ck.near("P(BD)", r.bloc_prob(&set("BD")), 0.200, SIM_TOL);
    ck.finish()
}

fn criterion_15() -> Result<String, String> {
    let r = simulate(Model::Eb, 5, 2);
    let mut ck = Checks::default();
    ck.near("P(BD)", r.bloc_prob(&set("BD")), 0.418, SIM_TOL);
    ck.near("agreement", r.agreement_rate(), 0.281, SIM_TOL);
    ck.finish()
}

fn criterion_16() -> Result<String, String> {
    let mut ck = Checks::default();
    let en = simulate(Model::En, 6, 2).label_lower_bounds.unwrap();
    ck.near("EN gehrlein bound", en.gehrlein, 0.075, SIM_TOL);
    ck.near("EN local bound", en.locally_stable, 0.298, SIM_TOL);
    let eb = simulate(Model::Eb, 6, 2).label_lower_bounds.unwrap();
    ck.near("EB local bound", eb.locally_stable, 0.378, SIM_TOL);
    ck.finish()
}

fn criterion_17() -> Result<String, String> {
    let mut ck = Checks::default();
    ck.near("EN P(BCE)", simulate(Model::En, 7, 3).bloc_prob(&set("BCE")), 0.125, SIM_TOL);
    ck.near("EB P(BCE)", simulate(Model::Eb, 7, 3).bloc_prob(&set("BCE")), 0.334, SIM_TOL);
    for model in [Model::En, Model::Eb] {
        for k in 4..7 {
            let r = simulate(model, 7, k);
            ck.eq(&format!("{model} k={k} agreement"), r.agreement_count, r.counted_trials);
        }
    }
    ck.finish()
}

fn criterion_18() -> Result<String, String> {
    let r = simulate(Model::Iac, 7, 2);
    let mut ck = Checks::default();
    let a = r.agreement_rate();
    ck.truth(&format!("agreement {a:.4} < {IAC_M7_K2_MIN_AGREEMENT}"), a >= IAC_M7_K2_MIN_AGREEMENT);
    ck.note(format!("agreement {a:.4} (reference 0.92484; checked only for >= {IAC_M7_K2_MIN_AGREEMENT})"));
    ck.finish()
}

fn criterion_19() -> Result<String, String> {
    let exe = env!("CARGO_BIN_EXE_spvote");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut ck = Checks::default();
    let mut run = |args: &[&str], threads: &str| -> Vec<u8> {
        let out = Command::new(exe).args(args).args(["--threads", threads]).output().expect("spawn spvote");
        ck.eq(&format!("exit status ({args:?})"), out.status.code(), Some(0));
        out.stdout
    };
    let json = ["simulate", "--model", "en", "--candidates", "5", "--winners", "2", "--trials", "500", "--seed", "42"];
    let a = run(&json, "1");
    let b = run(&json, "1");
    let c = run(&json, "4");
    let csv_path = dir.path().join("r.csv");
    let csv_path = csv_path.to_str().unwrap();
    let csv = [
        "simulate", "--model", "iac", "--candidates", "6", "--winners", "2", "--trials", "500", "--seed", "7", "--format", "csv",
        "--out", csv_path,
    ];
    run(&csv, "1");
    let first = std::fs::read(csv_path).map_err(|e| e.to_string())?;
    run(&csv, "3");
    let second = std::fs::read(csv_path).map_err(|e| e.to_string())?;
    ck.truth("identical json runs differ", a == b);
    ck.truth("json differs across worker counts", a == c);
    ck.truth("csv differs across worker counts", first == second);
    ck.truth("empty report", !a.is_empty() && !first.is_empty());
    ck.note(format!("{} json bytes, {} csv bytes identical", a.len(), first.len()));
    ck.finish()
}

type Criterion = (u32, &'static str, fn() -> Result<String, String>);

const CRITERIA: &[Criterion] = &[
    (1, "145-voter bloc outcomes", criterion_1),
    (2, "145-voter pairwise table and copeland sets", criterion_2),
    (3, "median elimination on 211 voters", criterion_3),
    (4, "61-voter center squeeze", criterion_4),
    (5, "251- and 205-voter counterexamples", criterion_5),
    (6, "six-candidate fixtures", criterion_6),
    (7, "seven-candidate fixtures", criterion_7),
    (8, "majority order and copeland scores", criterion_8),
    (9, "gehrlein and condorcet set characterisation", criterion_9),
    (10, "bloc structure propositions", criterion_10),
    (11, "iac sampler uniformity", criterion_11),
    (12, "iac m=4 k=2", criterion_12),
    (13, "iac m=5 k=3", criterion_13),
    (14, "en m=5 k=2", criterion_14),
    (15, "eb m=5 k=2", criterion_15),
    (16, "label lower bounds m=6 k=2", criterion_16),
    (17, "en/eb m=7", criterion_17),
    (18, "iac m=7 k=2 agreement", criterion_18),
    (19, "byte-identical simulate reports", criterion_19),
];

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    let mut exact_secs = 0.0;
    let mut ran = 0;
    for &(id, name, check) in CRITERIA {
        let key = format!("criterion_{id} {name}");
        if !filters.is_empty() && !filters.iter().any(|f| key.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        if id <= 7 {
            exact_secs += secs;
        }
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS {name} ({secs:.2}s){}", if detail.is_empty() { String::new() } else { format!(": {detail}") }),
            Err(detail) => {
                println!("criterion {id:>2} FAIL {name} ({secs:.2}s): {detail}");
                failed.push(id);
            }
        }
    }
    if filters.is_empty() && exact_secs > EXACT_FIXTURE_BUDGET_SECS {
        println!("fixture criteria took {exact_secs:.2}s, over the {EXACT_FIXTURE_BUDGET_SECS}s budget");
        failed.push(0);
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed.iter().filter(|&&i| i > 0).count());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
