use std::fmt;

use serde::Serialize;

/// Number of violation witnesses kept verbatim; the rest are only counted.
const KEPT_WITNESSES: usize = 8;

/// Outcome of an exhaustive check. Witnesses are kept in the order they were
/// found, and every checker walks its domain in canonical order, so the first
/// witness is stable across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: usize,
    pub violation_count: usize,
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport {
            title: title.into(),
            checks: 0,
            violation_count: 0,
            witnesses: Vec::new(),
        }
    }

    /// Record one check; `witness` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.violation_count += 1;
            if self.witnesses.len() < KEPT_WITNESSES {
                self.witnesses.push(witness());
            }
        }
        ok
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Fold another report's counts and witnesses into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks += other.checks;
        self.violation_count += other.violation_count;
        for w in other.witnesses {
            if self.witnesses.len() < KEPT_WITNESSES {
                self.witnesses.push(format!("[{}] {w}", other.title));
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checks, {} violations",
            self.title, self.checks, self.violation_count
        )?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}
