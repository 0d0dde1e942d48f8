use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of one property suite or conjecture search.
///
/// `worst_margin` is the smallest slack observed, negative when the property
/// was violated; `witness` holds the inputs that produced it. A suite passes
/// iff `worst_margin ≥ −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub worst_margin: f64,
    pub witness: Vec<f64>,
    pub passed: bool,
    pub runtime_ms: u64,
    /// Set for searches of open conjectures; a pass is evidence, not proof.
    pub conjecture: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The same report with `runtime_ms` zeroed, for byte-stable output.
    pub fn without_runtime(mut self) -> Self {
        self.runtime_ms = 0;
        self
    }
}

/// Accumulates the worst margin of a run. Ties keep the earliest witness.
pub(crate) struct Tracker {
    suite: &'static str,
    tolerance: f64,
    conjecture: bool,
    trials: usize,
    seed: u64,
    worst: f64,
    witness: Vec<f64>,
    start: Instant,
}

impl Tracker {
    pub(crate) fn new(suite: &'static str, tolerance: f64, trials: usize, seed: u64) -> Self {
        Self {
            suite,
            tolerance,
            conjecture: false,
            trials,
            seed,
            worst: f64::INFINITY,
            witness: Vec::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn conjecture(mut self) -> Self {
        self.conjecture = true;
        self
    }

    /// Records one slack value. NaN counts as the worst possible margin.
    pub(crate) fn observe(&mut self, margin: f64, witness: &[f64]) {
        let m = if margin.is_nan() { -f64::MAX } else { margin };
        if m < self.worst {
            self.worst = m;
            self.witness = witness.to_vec();
        }
    }

    /// Records a failed evaluation (an error from the code under test).
    pub(crate) fn fail(&mut self, witness: &[f64]) {
        self.observe(f64::NAN, witness);
    }

    pub(crate) fn finish(self) -> VerificationReport {
        let worst = if self.worst.is_finite() { self.worst } else if self.worst > 0.0 { 0.0 } else { -f64::MAX };
        VerificationReport {
            suite: self.suite.to_string(),
            trials: self.trials,
            seed: self.seed,
            worst_margin: worst,
            witness: self.witness,
            passed: worst >= -self.tolerance,
            runtime_ms: self.start.elapsed().as_millis() as u64,
            conjecture: self.conjecture,
        }
    }
}
