//! Named verification suites and demos.

mod closure;
mod demo;
mod embed;
mod hahn;
mod oag;
mod translation;

use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::oag::Construction;
use crate::report::{CaseRecord, Outcome, SuiteReport};
use crate::sample::case_rng;

pub const CATALOG: [&str; 15] = [
    "psi-vs-search",
    "hprime-descriptor",
    "hprime-locality",
    "lambda1-formula",
    "embedding-laws",
    "f1-exists-closure",
    "f1-ea-closure",
    "f2-interval",
    "gamma-counterexample",
    "lambda-repair",
    "hahn-ring",
    "a-membership",
    "translation-soundness",
    "perturbation",
    "truncated-inverse",
];

pub const DEMOS: [&str; 3] = ["gamma-counterexample", "lambda-repair", "ha-witness"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// `None` picks the suite's natural construction.
    pub construction: Option<Construction>,
    pub seed: u64,
    /// `None` picks the suite's default sample count.
    pub samples: Option<usize>,
    pub coeff_bound: Option<u32>,
    pub executor: Executor,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            construction: None,
            seed: 42,
            samples: None,
            coeff_bound: None,
            executor: Executor::default(),
        }
    }
}

impl SuiteOptions {
    pub fn with_construction(mut self, c: Construction) -> Self {
        self.construction = Some(c);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = Some(n);
        self
    }

    pub fn with_coeff_bound(mut self, k: u32) -> Self {
        self.coeff_bound = Some(k);
        self
    }

    pub fn with_executor(mut self, e: Executor) -> Self {
        self.executor = e;
        self
    }

    fn construction_or(&self, c: Construction) -> Construction {
        self.construction.unwrap_or(c)
    }

    fn samples_or(&self, n: usize) -> usize {
        self.samples.unwrap_or(n)
    }

    fn bound_or(&self, k: u32) -> u32 {
        self.coeff_bound.unwrap_or(k)
    }

    /// Fails for suites that only make sense on one construction.
    fn only(&self, c: Construction, suite: &str) -> Result<Construction> {
        match self.construction {
            Some(other) if other != c => {
                Err(Error::Precondition(format!("{suite} runs on the {c} construction only")))
            }
            _ => Ok(c),
        }
    }
}

/// Result of one case before it is stamped with its index and seed.
pub(crate) struct Case {
    pub inputs: Vec<String>,
    pub outcome: Outcome,
    pub detail: String,
}

impl Case {
    pub fn new(inputs: Vec<String>, outcome: Outcome, detail: impl Into<String>) -> Self {
        Case {
            inputs,
            outcome,
            detail: detail.into(),
        }
    }

    pub fn check(inputs: Vec<String>, ok: bool, detail: impl Into<String>) -> Self {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        Case::new(inputs, outcome, detail)
    }
}

/// Runs `n` cases, each with its own `(seed, index)` stream. Errors become
/// failing records.
pub(crate) fn run_cases<F>(opts: &SuiteOptions, offset: u64, n: usize, f: F) -> Vec<CaseRecord>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Result<Case> + Sync + Send,
{
    let seed = opts.seed;
    opts.executor.map_range(n, |i| {
        let index = offset + i as u64;
        let mut rng = case_rng(seed, index);
        match f(index, &mut rng) {
            Ok(c) => CaseRecord::new(index, seed, c.inputs, c.outcome, c.detail),
            Err(e) => CaseRecord::new(index, seed, Vec::new(), Outcome::Fail, format!("error: {e}")),
        }
    })
}

pub(crate) fn record(index: u64, seed: u64, case: Result<Case>) -> CaseRecord {
    match case {
        Ok(c) => CaseRecord::new(index, seed, c.inputs, c.outcome, c.detail),
        Err(e) => CaseRecord::new(index, seed, Vec::new(), Outcome::Fail, format!("error: {e}")),
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = match name {
        "psi-vs-search" => oag::psi_vs_search(opts)?,
        "hprime-descriptor" => oag::hprime_descriptor_suite(opts)?,
        "hprime-locality" => oag::hprime_locality(opts)?,
        "lambda1-formula" => oag::lambda1_formula(opts)?,
        "embedding-laws" => embed::embedding_laws(opts)?,
        "f1-exists-closure" => closure::f1_exists_closure(opts)?,
        "f1-ea-closure" => closure::f1_ea_closure(opts)?,
        "f2-interval" => embed::f2_interval(opts)?,
        "gamma-counterexample" => demo::gamma_counterexample(opts)?,
        "lambda-repair" => demo::lambda_repair(opts)?,
        "hahn-ring" => hahn::hahn_ring(opts)?,
        "a-membership" => hahn::a_membership(opts)?,
        "translation-soundness" => translation::translation_soundness(opts)?,
        "perturbation" => embed::perturbation(opts)?,
        "truncated-inverse" => hahn::truncated_inverse(opts)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn run_demo(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = match name {
        "gamma-counterexample" => demo::gamma_counterexample(opts)?,
        "lambda-repair" => demo::lambda_repair(opts)?,
        "ha-witness" => demo::ha_witness(opts)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

pub use demo::{gamma_counterexample, lambda_repair};
