use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

/// One disagreement (or undecided comparison) between the two sides of a law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Seed that regenerates the inputs of this case.
    pub case_seed: u64,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn new(inputs: Vec<String>, point: Option<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Failure { case_seed: 0, inputs, point, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

/// Outcome of running one law on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub instance: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub unknown: Vec<Failure>,
    pub verdict: Verdict,
}

impl LawReport {
    pub fn new(law: &str, instance: &str) -> Self {
        LawReport {
            law: law.to_string(),
            instance: instance.to_string(),
            seed: 0,
            cases: 0,
            failures: Vec::new(),
            unknown: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    fn settle(&mut self) {
        self.verdict = if !self.failures.is_empty() {
            Verdict::Fail
        } else if !self.unknown.is_empty() {
            Verdict::Unknown
        } else {
            Verdict::Pass
        };
    }

    /// Counts one comparison.
    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, failure: Failure) {
        self.failures.push(failure);
        self.settle();
    }

    pub fn undecided(&mut self, failure: Failure) {
        self.unknown.push(failure);
        self.settle();
    }

    /// Records one comparison that either agrees or fails with `failure`.
    pub fn expect(&mut self, agree: bool, failure: impl FnOnce() -> Failure) {
        self.case();
        if !agree {
            self.fail(failure());
        }
    }

    /// Folds the cases of `other`, stamping its findings with `case_seed`.
    pub fn absorb(&mut self, other: LawReport, case_seed: u64) {
        self.cases += other.cases;
        for mut f in other.failures {
            f.case_seed = case_seed;
            self.failures.push(f);
        }
        for mut f in other.unknown {
            f.case_seed = case_seed;
            self.unknown.push(f);
        }
        self.settle();
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LawsError {
    #[error("invalid regrouping: {0}")]
    InvalidRegrouping(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("expected {expected} elements, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("empty cycle")]
    EmptyCycle,
}
