//! Suite reports: the stable JSON schema and the human-readable rendering.

use std::fmt::Write as _;

use hcourant::check::CheckResult;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub samples: usize,
    pub degree: u32,
    pub points: usize,
}

/// Everything one `check` invocation produced. Field order is the JSON key
/// order, so serialization is byte-stable for identical inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub params: Params,
    pub quantifier_scope: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, m: usize, n: usize, seed: u64, params: Params, scope: String, checks: Vec<CheckResult>) -> Self {
        let passed = hcourant::check::all_passed(&checks);
        SuiteReport {
            suite: suite.to_string(),
            m,
            n,
            seed,
            params,
            quantifier_scope: scope,
            checks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = writeln!(
            out,
            "suite {}  m={} n={}  seed={}  samples={} degree={} points={}",
            self.suite, self.m, self.n, self.seed, p.samples, p.degree, p.points
        );
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {tag}  {:<28} {:>6} cases   {}", c.name, c.cases, c.statement);
            for f in &c.failures {
                let _ = writeln!(out, "        inputs:   {}", f.inputs.join("  |  "));
                let _ = writeln!(out, "        residual: {}", f.residual);
            }
        }
        let _ = writeln!(out, "scope: {}", self.quantifier_scope);
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}
