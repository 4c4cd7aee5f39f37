//! Randomized checking of the catalog.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::catalog::StatementId;
use super::check::{check_statement, Outcome, SkipReason};
use super::gen::{GenParams, Generator, Instance};
use super::session::{digest, instance_session};
use crate::error::Result;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one trial; depends only on the campaign seed, the statement and
/// the trial index, so any trial can be regenerated on its own.
pub fn trial_seed(seed: u64, statement: StatementId, trial: usize) -> u64 {
    let idx = StatementId::ALL.iter().position(|&s| s == statement).unwrap() as u64;
    splitmix(splitmix(splitmix(seed) ^ idx) ^ trial as u64)
}

/// Regenerates the instance of one trial together with the seed used for
/// the check's own sampling.
pub fn trial_instance(
    params: &GenParams,
    statement: StatementId,
    trial: usize,
) -> Result<(Instance, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(params.seed, statement, trial));
    let instance = Generator::new(params, &mut rng).instance(statement.shape())?;
    Ok((instance, rng.gen()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub statement: StatementId,
    pub trial: usize,
    /// SHA-256 of the replay session.
    pub digest: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Session text reproducing the instance.
    pub session: String,
}

/// Generates and checks one trial. Generation failures are errors.
pub fn run_trial(params: &GenParams, statement: StatementId, trial: usize) -> Result<Verdict> {
    let (instance, sample_seed) = trial_instance(params, statement, trial)?;
    let outcome = check_statement(statement, &instance, sample_seed)?;
    let session = instance_session(&instance, params);
    Ok(Verdict { statement, trial, digest: digest(&session), outcome, session })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatementSummary {
    pub statement: String,
    pub passed: usize,
    pub vacuous: usize,
    pub failed: usize,
    pub skipped: BTreeMap<SkipReason, usize>,
    pub generation_errors: usize,
}

impl StatementSummary {
    pub fn skipped_total(&self) -> usize {
        self.skipped.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub params: GenParams,
    pub trials: usize,
    pub statements: Vec<StatementSummary>,
    pub failures: Vec<Verdict>,
    pub generation_errors: Vec<String>,
    pub total: usize,
    pub failed: usize,
    pub skipped: usize,
    pub skip_rate: f64,
}

impl CampaignReport {
    pub fn skip_reasons(&self) -> BTreeMap<SkipReason, usize> {
        let mut out = BTreeMap::new();
        for s in &self.statements {
            for (&r, &n) in &s.skipped {
                *out.entry(r).or_insert(0) += n;
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `trials` trials of each statement. The report is a function of the
/// arguments only.
pub fn campaign(params: &GenParams, trials: usize, statements: &[StatementId]) -> CampaignReport {
    let mut summaries = Vec::with_capacity(statements.len());
    let mut failures = Vec::new();
    let mut generation_errors = Vec::new();
    for &id in statements {
        let mut s = StatementSummary { statement: id.name().to_string(), ..Default::default() };
        for trial in 0..trials {
            let verdict = match run_trial(params, id, trial) {
                Ok(v) => v,
                Err(e) => {
                    s.generation_errors += 1;
                    generation_errors.push(format!("{id} trial {trial}: {e}"));
                    continue;
                }
            };
            match verdict.outcome {
                Outcome::Pass { vacuous: false } => s.passed += 1,
                Outcome::Pass { vacuous: true } => s.vacuous += 1,
                Outcome::Skipped { reason } => *s.skipped.entry(reason).or_insert(0) += 1,
                Outcome::Fail { .. } => {
                    s.failed += 1;
                    failures.push(verdict);
                }
            }
        }
        summaries.push(s);
    }
    let total = statements.len() * trials;
    let failed = summaries.iter().map(|s| s.failed).sum();
    let skipped = summaries.iter().map(|s| s.skipped_total()).sum();
    CampaignReport {
        params: params.clone(),
        trials,
        statements: summaries,
        failures,
        generation_errors,
        total,
        failed,
        skipped,
        skip_rate: if total == 0 { 0.0 } else { skipped as f64 / total as f64 },
    }
}
