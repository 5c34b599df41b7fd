//! Pass/fail reports produced by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed check: what was substituted and what was left over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub residual: String,
}

/// Result of a verification routine. A report passes when it has no failures
/// and all of its sections pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<VerificationReport>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.sections.iter().all(|s| s.passed())
    }

    /// Records one check; `residual` is `None` when the check succeeded.
    pub fn record(&mut self, inputs: impl FnOnce() -> Vec<String>, residual: Option<String>) {
        self.checked += 1;
        if let Some(residual) = residual {
            self.failures.push(Failure {
                inputs: inputs(),
                residual,
            });
        }
    }

    /// Records a boolean check with a description used on failure.
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                inputs: vec![what()],
                residual: "check failed".into(),
            });
        }
    }

    pub fn push_section(&mut self, section: VerificationReport) {
        self.sections.push(section);
    }

    pub fn total_checked(&self) -> usize {
        self.checked
            + self
                .sections
                .iter()
                .map(|s| s.total_checked())
                .sum::<usize>()
    }

    pub fn total_failures(&self) -> usize {
        self.failures.len()
            + self
                .sections
                .iter()
                .map(|s| s.total_failures())
                .sum::<usize>()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures
            .first()
            .or_else(|| self.sections.iter().find_map(|s| s.first_failure()))
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.sections.extend(other.sections);
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{pad}[{verdict}] {} ({} checks)",
            self.name, self.checked
        )?;
        for failure in self.failures.iter().take(10) {
            writeln!(
                f,
                "{pad}    {} => {}",
                failure.inputs.join(", "),
                failure.residual
            )?;
        }
        if self.failures.len() > 10 {
            writeln!(f, "{pad}    ... {} more", self.failures.len() - 10)?;
        }
        for s in &self.sections {
            s.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}
