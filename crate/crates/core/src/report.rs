//! Machine-checkable reports: every verifier returns one record per
//! named check with an instance count and located counterexamples.

use std::fmt;

/// Outcome of one verifier over its whole sample grid.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    /// Which statement was checked.
    pub theorem: String,
    /// Echo of the inputs (object, bounds).
    pub inputs: String,
    pub instances: u64,
    pub failure_count: u64,
    /// Located counterexamples (capped).
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: impl Into<String>, inputs: impl Into<String>) -> Self {
        TheoremReport {
            theorem: theorem.into(),
            inputs: inputs.into(),
            instances: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, locate: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 16 {
                self.failures.push(locate());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }

    /// One machine-readable line per report.
    pub fn summary_line(&self) -> String {
        format!(
            "{} | {} | checks={} failures={} | {}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.theorem,
            self.instances,
            self.failure_count,
            self.inputs
        )
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary_line())?;
        for line in &self.failures {
            writeln!(f, "  counterexample: {line}")?;
        }
        Ok(())
    }
}
