//! Verification outcomes and reports shared by every checking module.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graded_tensor::GradedMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The printed relation fails but holds with the opposite overall sign.
    #[serde(rename = "paper-sign-mismatch")]
    SignMismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SignMismatch => "paper-sign-mismatch",
            Status::Skipped => "skipped",
        })
    }
}

/// Where two sides of an identity first differ: integer coordinates (matrix
/// indices, mode exponents, …) and the two coefficient values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub coordinates: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

/// Result of a single exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationOutcome {
    pub fn pass() -> VerificationOutcome {
        VerificationOutcome {
            status: Status::Pass,
            counterexample: None,
            note: None,
        }
    }

    pub fn fail(counterexample: Option<Counterexample>) -> VerificationOutcome {
        VerificationOutcome {
            status: Status::Fail,
            counterexample,
            note: None,
        }
    }

    pub fn skipped(note: impl Into<String>) -> VerificationOutcome {
        VerificationOutcome {
            status: Status::Skipped,
            counterexample: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> VerificationOutcome {
        self.note = Some(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Compares two matrices entry by entry; the first differing entry in
    /// row-major order becomes the counterexample.
    pub fn compare_matrices(lhs: &GradedMatrix, rhs: &GradedMatrix) -> VerificationOutcome {
        if lhs.dim() != rhs.dim() {
            return VerificationOutcome::fail(None).with_note(format!(
                "dimension mismatch {} vs {}",
                lhs.dim(),
                rhs.dim()
            ));
        }
        if lhs == rhs {
            return VerificationOutcome::pass();
        }
        for r in 0..lhs.dim() {
            let cols: std::collections::BTreeSet<usize> =
                lhs.row(r).map(|(c, _)| c).chain(rhs.row(r).map(|(c, _)| c)).collect();
            for c in cols {
                let (a, b) = (lhs.get(r, c), rhs.get(r, c));
                if a != b {
                    return VerificationOutcome::fail(Some(Counterexample {
                        coordinates: vec![r as i64, c as i64],
                        lhs: a.to_string(),
                        rhs: b.to_string(),
                    }));
                }
            }
        }
        unreachable!("unequal matrices have a differing entry")
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub m: usize,
    pub n: usize,
    pub relation: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub mismatch: usize,
    pub skipped: usize,
}

/// A list of check records for one suite or one full run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> VerificationReport {
        VerificationReport::default()
    }

    pub fn push(&mut self, id: &str, m: usize, n: usize, relation: &str, outcome: VerificationOutcome, millis: u64) {
        self.checks.push(CheckRecord {
            id: id.to_string(),
            m,
            n,
            relation: relation.to_string(),
            status: outcome.status,
            counterexample: outcome.counterexample,
            note: outcome.note,
            millis,
        });
    }

    /// Runs `f`, timing it, and records its outcome.
    pub fn record<F>(&mut self, id: &str, m: usize, n: usize, relation: &str, f: F)
    where
        F: FnOnce() -> VerificationOutcome,
    {
        let start = Instant::now();
        let outcome = f();
        self.push(id, m, n, relation, outcome, start.elapsed().as_millis() as u64);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SignMismatch => s.mismatch += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn find(&self, relation: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.relation == relation)
    }

    pub fn status_of(&self, relation: &str) -> Option<Status> {
        self.find(relation).map(|c| c.status)
    }

    /// Zeroes all timings, for byte-reproducible output.
    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.millis = 0;
        }
    }
}
