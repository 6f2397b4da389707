//! Machine-readable verdict records for the verification suites.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::oag::Construction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub index: u64,
    /// Inputs rendered as literals.
    pub inputs: Vec<String>,
    pub outcome: Outcome,
    pub detail: String,
    pub seed: u64,
}

impl CaseRecord {
    pub fn new(index: u64, seed: u64, inputs: Vec<String>, outcome: Outcome, detail: impl Into<String>) -> Self {
        CaseRecord {
            index,
            inputs,
            outcome,
            detail: detail.into(),
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub construction: Construction,
    pub seed: u64,
    pub cases: Vec<CaseRecord>,
    pub counts: Counts,
    /// Largest tolerated number of `Unknown` cases; `None` means unlimited.
    pub max_unknown: Option<usize>,
    /// Not serialized, so identical runs give identical JSON.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: &str, construction: Construction, seed: u64, cases: Vec<CaseRecord>) -> Self {
        let mut counts = Counts::default();
        for c in &cases {
            match c.outcome {
                Outcome::Pass => counts.pass += 1,
                Outcome::Fail => counts.fail += 1,
                Outcome::Unknown => counts.unknown += 1,
            }
        }
        SuiteReport {
            suite: suite.to_string(),
            construction,
            seed,
            cases,
            counts,
            max_unknown: None,
            wall_time_ms: 0,
        }
    }

    pub fn with_unknown_budget(mut self, budget: usize) -> Self {
        self.max_unknown = Some(budget);
        self
    }

    pub fn passed(&self) -> bool {
        self.counts.fail == 0 && self.max_unknown.is_none_or(|b| self.counts.unknown <= b)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    /// Summary plus the first few failing cases.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} [{}] seed {}: {} pass, {} fail, {} unknown{} in {} ms -> {}",
            self.suite,
            self.construction,
            self.seed,
            self.counts.pass,
            self.counts.fail,
            self.counts.unknown,
            self.max_unknown.map(|b| format!(" (budget {b})")).unwrap_or_default(),
            self.wall_time_ms,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for c in self.failures().take(5) {
            let _ = writeln!(out, "  case {}: {} | {}", c.index, c.inputs.join(" ; "), c.detail);
        }
        out
    }
}
