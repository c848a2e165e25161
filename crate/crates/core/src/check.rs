//! Outcome records for seeded identity checks.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::random::rng_for;

/// At most this many witnesses are kept per check; `cases` still counts all.
pub const MAX_WITNESSES: usize = 8;

/// A counterexample: the inputs and the nonzero residual, both as DSL text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub residual: String,
}

impl Failure {
    pub fn new(inputs: Vec<String>, residual: impl ToString) -> Self {
        Failure {
            inputs,
            residual: residual.to_string(),
        }
    }
}

/// Result of checking one identity over a batch of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The identity being checked, written out in plain notation.
    #[serde(rename = "paper_ref")]
    pub statement: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl CheckResult {
    /// Assembles a result from per-case outcomes, keeping input order.
    pub fn from_outcomes(
        name: impl Into<String>,
        statement: impl Into<String>,
        outcomes: impl IntoIterator<Item = Option<Failure>>,
    ) -> Self {
        let mut cases = 0;
        let mut failures = Vec::new();
        let mut failed = false;
        for outcome in outcomes {
            cases += 1;
            if let Some(f) = outcome {
                failed = true;
                if failures.len() < MAX_WITNESSES {
                    failures.push(f);
                }
            }
        }
        CheckResult {
            name: name.into(),
            statement: statement.into(),
            cases,
            passed: !failed,
            failures,
        }
    }

    /// Runs `case` once per sample, each with its own stream derived from
    /// `(seed, salt, index)`; samples run in parallel.
    pub fn sampled<F>(name: &str, statement: &str, seed: u64, salt: u32, samples: usize, case: F) -> Self
    where
        F: Fn(&mut ChaCha8Rng) -> Option<Failure> + Sync + Send,
    {
        let outcomes: Vec<_> = (0..samples as u64)
            .into_par_iter()
            .map(|i| case(&mut rng_for(seed, (u64::from(salt) << 32) | i)))
            .collect();
        Self::from_outcomes(name, statement, outcomes)
    }

    /// Runs `case` over fixed inputs in parallel, keeping input order.
    pub fn over<T, F>(name: &str, statement: &str, items: &[T], case: F) -> Self
    where
        T: Sync,
        F: Fn(&T) -> Option<Failure> + Sync + Send,
    {
        let outcomes: Vec<_> = items.par_iter().map(case).collect();
        Self::from_outcomes(name, statement, outcomes)
    }

    /// Concatenates the cases of two runs of the same identity.
    pub fn merged(mut self, other: CheckResult) -> Self {
        self.cases += other.cases;
        self.passed &= other.passed;
        for f in other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(f);
            }
        }
        self
    }

    /// Single yes/no verdict.
    pub fn verdict(name: &str, statement: &str, failure: Option<Failure>) -> Self {
        Self::from_outcomes(name, statement, [failure])
    }
}

/// `true` iff every check passed.
pub fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed)
}
