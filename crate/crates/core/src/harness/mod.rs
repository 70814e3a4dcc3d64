//! Seeded property-verification suite.
//!
//! Every trial draws its instance from a ChaCha stream seeded with
//! `SHA-256(suite seed, lemma id, trial index)`, so reports do not depend on
//! scheduling or thread count, and any failure can be replayed from its seed.

mod lemmas;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    Smalldeg,
    TreeCut,
    Stiebitz,
    ErdosSzekeres,
    PathTree,
    Independent,
    BigDegec,
    Pw2Xi,
    Twk2r,
    MeshTiny,
    PackSep,
    SepEp,
    PackLeCover,
    PipelinesTh1,
    PipelinesTh2,
}

impl LemmaId {
    pub const ALL: [LemmaId; 15] = [
        LemmaId::Smalldeg,
        LemmaId::TreeCut,
        LemmaId::Stiebitz,
        LemmaId::ErdosSzekeres,
        LemmaId::PathTree,
        LemmaId::Independent,
        LemmaId::BigDegec,
        LemmaId::Pw2Xi,
        LemmaId::Twk2r,
        LemmaId::MeshTiny,
        LemmaId::PackSep,
        LemmaId::SepEp,
        LemmaId::PackLeCover,
        LemmaId::PipelinesTh1,
        LemmaId::PipelinesTh2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::Smalldeg => "smalldeg",
            LemmaId::TreeCut => "tree_cut",
            LemmaId::Stiebitz => "stiebitz",
            LemmaId::ErdosSzekeres => "erdos_szekeres",
            LemmaId::PathTree => "path_tree",
            LemmaId::Independent => "independent",
            LemmaId::BigDegec => "big_degec",
            LemmaId::Pw2Xi => "pw2_xi",
            LemmaId::Twk2r => "twk2r",
            LemmaId::MeshTiny => "mesh_tiny",
            LemmaId::PackSep => "pack_sep",
            LemmaId::SepEp => "sep_ep",
            LemmaId::PackLeCover => "pack_le_cover",
            LemmaId::PipelinesTh1 => "pipelines_th1",
            LemmaId::PipelinesTh2 => "pipelines_th2",
        }
    }

    /// The instance distribution, as recorded in reports.
    pub fn instances(self) -> &'static str {
        lemmas::describe(self)
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown lemma id {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub lemmas: Vec<LemmaId>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Corrupts every checked output before verification (harness self-test).
    pub fault: bool,
    pub limits: Limits,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        SuiteConfig {
            seed,
            trials,
            lemmas: LemmaId::ALL.to_vec(),
            threads: None,
            fault: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: usize,
    /// Hex trial seed accepted by [`replay_trial`].
    pub seed: String,
    pub clause: String,
    pub detail: String,
    pub instance: String,
}

/// Result of one lemma's trials. Wall-clock time is logged, never serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lemma: LemmaId,
    pub suite_seed: u64,
    pub trials: usize,
    /// Trials whose hypothesis held, so the property was actually exercised.
    pub checked: usize,
    pub vacuous: usize,
    pub failures: usize,
    pub failure_records: Vec<FailureRecord>,
    pub instances: String,
    pub fault_injected: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of a single trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TrialOutcome {
    Checked,
    Vacuous,
    Failed { clause: String, detail: String, instance: String },
}

pub fn trial_seed(suite_seed: u64, lemma: LemmaId, trial: usize) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(suite_seed.to_le_bytes());
    h.update(lemma.as_str().as_bytes());
    h.update((trial as u64).to_le_bytes());
    h.finalize().into()
}

/// Runs one trial from an explicit seed.
pub fn run_trial(lemma: LemmaId, seed: [u8; 32], fault: bool, limits: &Limits) -> TrialOutcome {
    let mut ctx = lemmas::Ctx {
        rng: ChaCha8Rng::from_seed(seed),
        fault,
        limits,
        instance: String::new(),
    };
    match lemmas::run(lemma, &mut ctx) {
        Ok(true) => TrialOutcome::Checked,
        Ok(false) => TrialOutcome::Vacuous,
        Err(f) => TrialOutcome::Failed {
            clause: f.clause,
            detail: f.detail,
            instance: ctx.instance,
        },
    }
}

/// Reruns a recorded failure from its hex seed.
pub fn replay_trial(lemma: LemmaId, seed_hex: &str, fault: bool, limits: &Limits) -> Result<TrialOutcome> {
    let bytes = hex::decode(seed_hex).map_err(|e| Error::Parameter(format!("bad seed: {e}")))?;
    let seed: [u8; 32] = bytes
        .try_into()
        .map_err(|_| Error::Parameter("a trial seed has 32 bytes".into()))?;
    Ok(run_trial(lemma, seed, fault, limits))
}

fn run_lemma(lemma: LemmaId, config: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let outcomes: Vec<(usize, [u8; 32], TrialOutcome)> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(config.seed, lemma, i);
            (i, seed, run_trial(lemma, seed, config.fault, &config.limits))
        })
        .collect();
    let mut report = VerificationReport {
        lemma,
        suite_seed: config.seed,
        trials: config.trials,
        checked: 0,
        vacuous: 0,
        failures: 0,
        failure_records: Vec::new(),
        instances: lemma.instances().to_string(),
        fault_injected: config.fault,
    };
    for (trial, seed, outcome) in outcomes {
        match outcome {
            TrialOutcome::Checked => report.checked += 1,
            TrialOutcome::Vacuous => report.vacuous += 1,
            TrialOutcome::Failed { clause, detail, instance } => {
                report.failures += 1;
                report.failure_records.push(FailureRecord {
                    trial,
                    seed: hex::encode(seed),
                    clause,
                    detail,
                    instance,
                });
            }
        }
    }
    log::info!(
        "{lemma}: {} trials, {} failures, {:.2?}",
        report.trials,
        report.failures,
        start.elapsed()
    );
    report
}

/// Runs the selected lemmas in order; reports are identical for any thread count.
pub fn run_verification_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let run = || config.lemmas.iter().map(|&l| run_lemma(l, config)).collect();
    match config.threads {
        None => Ok(run()),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
    }
}

/// Reports as canonical JSON text.
pub fn reports_json(reports: &[VerificationReport], pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(reports).expect("reports serialize")
    } else {
        serde_json::to_string(reports).expect("reports serialize")
    }
}
