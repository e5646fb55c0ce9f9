//! Replayable reports for theorem checks and randomized campaigns.

use exact_linalg::Ring;
use perv_core::{MorphismFile, PervMorphism};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ExpectedCounterexampleConfirmed,
    /// The check does not apply over the requested ring (e.g. dimension
    /// counts need a field); distinct from a failure.
    UnsupportedRing,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::ExpectedCounterexampleConfirmed)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ExpectedCounterexampleConfirmed => "expected-counterexample-confirmed",
            Verdict::UnsupportedRing => "unsupported-ring",
        };
        f.write_str(s)
    }
}

/// A failing trial, with everything needed to replay it by hand: the
/// serialized morphism plus the two sides of the assertion that broke.
#[derive(Debug, Clone, Serialize)]
pub struct FailureWitness {
    pub trial: u64,
    pub replay_seed: u64,
    pub assertion: String,
    pub left: String,
    pub right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismFile>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub ring: String,
    pub verdict: Verdict,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<FailureWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    /// One human-readable line per report, stable across runs.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{}: {} (ring {}, trials {}, seed {})",
            self.suite, self.verdict, self.ring, self.trials, self.seed
        );
        if let Some(first) = self.failures.first() {
            line.push_str(&format!(
                "; first failure at trial {} (replay seed {}): {}",
                first.trial, first.replay_seed, first.assertion
            ));
        }
        for note in &self.notes {
            line.push_str(&format!("; {note}"));
        }
        line
    }
}

/// Internal accumulator used by the checkers: a failed assertion with its
/// left/right sides, before trial bookkeeping is attached.
#[derive(Debug, Clone)]
pub struct Violation {
    pub assertion: String,
    pub left: String,
    pub right: String,
}

impl Violation {
    pub fn new(
        assertion: impl Into<String>,
        left: impl Into<String>,
        right: impl Into<String>,
    ) -> Self {
        Violation { assertion: assertion.into(), left: left.into(), right: right.into() }
    }

    pub fn into_witness<R: Ring>(
        self,
        trial: u64,
        replay_seed: u64,
        morphism: Option<&PervMorphism<R>>,
    ) -> FailureWitness {
        FailureWitness {
            trial,
            replay_seed,
            assertion: self.assertion,
            left: self.left,
            right: self.right,
            morphism: morphism.map(MorphismFile::from_morphism),
        }
    }
}
