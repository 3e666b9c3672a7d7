//! Validation reports (per-object axiom checks) and aggregate check reports.

use serde::{Deserialize, Serialize};

/// One violated axiom instance, with the first violating tuple as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub message: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
    /// Informational observations that are not axiom failures.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// False when part of the check was sampled rather than exhaustive.
    pub exhaustive: bool,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            violations: Vec::new(),
            notes: Vec::new(),
            exhaustive: true,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate<W, S>(&mut self, axiom: &str, message: impl Into<String>, witness: W)
    where
        W: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            message: message.into(),
            witness: witness.into_iter().map(Into::into).collect(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn has_violation(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Folds another report into this one, prefixing its axiom names.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut v in other.violations {
            v.axiom = format!("{prefix}/{}", v.axiom);
            self.violations.push(v);
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
        self.exhaustive &= other.exhaustive;
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            return format!("{}: valid", self.subject);
        }
        let first = &self.violations[0];
        format!(
            "{}: {} violation(s); first: {}: {} [{}]",
            self.subject,
            self.violations.len(),
            first.axiom,
            first.message,
            first.witness.join(", ")
        )
    }
}

/// A named check inside a [`Report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub exhaustive: bool,
}

/// Machine-readable outcome of a batch of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: true,
            witness: None,
            detail: Some(detail.into()).filter(|d: &String| !d.is_empty()),
            exhaustive: true,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
            detail: None,
            exhaustive: true,
        });
    }

    /// Records a check from a validation report; a failure carries the first violation.
    pub fn from_validation(&mut self, name: impl Into<String>, v: &ValidationReport) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: v.is_valid(),
            witness: v
                .violations
                .first()
                .map(|x| format!("{}: {} [{}]", x.axiom, x.message, x.witness.join(", "))),
            detail: None,
            exhaustive: v.exhaustive,
        });
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.subject);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let scope = if c.exhaustive { "" } else { " (sampled)" };
            out.push_str(&format!("  [{status}] {}{scope}", c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("\n         witness: {w}"));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}
