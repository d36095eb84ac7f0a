use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    ViolatedAsExpected,
    ViolatedUnexpectedly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::ViolatedAsExpected => "violated-as-expected",
            Verdict::ViolatedUnexpectedly => "violated-unexpectedly",
        }
    }
}

/// Outcome of one law over one sampling run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub law: String,
    pub module: String,
    pub samples_run: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    /// True for laws that are supposed to fail (gyro witnesses).
    pub expected_violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PropertyReport {
    /// An expected violation that the search failed to exhibit.
    pub fn missed_expected(&self) -> bool {
        self.expected_violation && self.verdict != Verdict::ViolatedAsExpected
    }
}

// NaN and infinite residuals are failures; keep them representable in JSON.
fn sanitize(r: f64) -> f64 {
    if r.is_nan() {
        f64::MAX
    } else {
        r.abs().min(f64::MAX)
    }
}

/// Accumulates residuals for a law that must hold.
#[derive(Debug)]
pub struct Tally {
    module: &'static str,
    law: String,
    tolerance: f64,
    samples: u64,
    max: f64,
    worst: Option<(f64, Value)>,
    notes: Vec<String>,
}

impl Tally {
    pub fn new(module: &'static str, law: impl Into<String>, tolerance: f64) -> Self {
        Self {
            module,
            law: law.into(),
            tolerance,
            samples: 0,
            max: 0.0,
            worst: None,
            notes: Vec::new(),
        }
    }

    pub fn law(&self) -> &str {
        &self.law
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    /// Records one residual; `input` is only built when it is the worst
    /// violation seen so far.
    pub fn check(&mut self, residual: f64, input: impl FnOnce() -> Value) {
        self.samples += 1;
        let r = sanitize(residual);
        self.max = self.max.max(r);
        if r > self.tolerance && self.worst.as_ref().is_none_or(|(w, _)| r > *w) {
            self.worst = Some((r, input()));
        }
    }

    /// Indicator form: a failed predicate is residual 1.
    pub fn check_that(&mut self, ok: bool, input: impl FnOnce() -> Value) {
        self.check(if ok { 0.0 } else { 1.0 }, input);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn finish(self) -> PropertyReport {
        let verdict = if self.worst.is_some() {
            Verdict::ViolatedUnexpectedly
        } else {
            Verdict::Holds
        };
        PropertyReport {
            law: self.law,
            module: self.module.to_string(),
            samples_run: self.samples,
            max_residual: self.max,
            tolerance: self.tolerance,
            expected_violation: false,
            counterexample: self.worst.map(|(_, v)| v),
            verdict,
            notes: self.notes,
        }
    }
}

/// Search for a counterexample to a law that is known to fail.
#[derive(Debug)]
pub struct WitnessSearch {
    module: &'static str,
    law: String,
    threshold: f64,
    samples: u64,
    max_gap: f64,
    witness: Option<Value>,
}

impl WitnessSearch {
    pub fn new(module: &'static str, law: impl Into<String>, threshold: f64) -> Self {
        Self {
            module,
            law: law.into(),
            threshold,
            samples: 0,
            max_gap: 0.0,
            witness: None,
        }
    }

    pub fn law(&self) -> &str {
        &self.law
    }

    /// Keeps the first input whose gap clears the threshold.
    pub fn record(&mut self, gap: f64, input: impl FnOnce() -> Value) {
        self.samples += 1;
        let g = if gap.is_nan() { 0.0 } else { gap.abs().min(f64::MAX) };
        self.max_gap = self.max_gap.max(g);
        if g > self.threshold && self.witness.is_none() {
            self.witness = Some(input());
        }
    }

    pub fn finish(self) -> PropertyReport {
        let verdict = if self.witness.is_some() {
            Verdict::ViolatedAsExpected
        } else {
            Verdict::Holds
        };
        PropertyReport {
            law: self.law,
            module: self.module.to_string(),
            samples_run: self.samples,
            max_residual: self.max_gap,
            tolerance: self.threshold,
            expected_violation: true,
            counterexample: self.witness,
            verdict,
            notes: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tally_keeps_worst_violation() {
        let mut t = Tally::new("m", "l", 1e-3);
        t.check(1e-4, || json!("small"));
        t.check(1e-2, || json!("mid"));
        t.check(1e-1, || json!("big"));
        t.check(5e-2, || json!("later"));
        let r = t.finish();
        assert_eq!(r.verdict, Verdict::ViolatedUnexpectedly);
        assert_eq!(r.counterexample, Some(json!("big")));
        assert_eq!(r.samples_run, 4);
    }

    #[test]
    fn nan_residual_is_a_failure() {
        let mut t = Tally::new("m", "l", 1.0);
        t.check(f64::NAN, || json!(null));
        assert_eq!(t.finish().verdict, Verdict::ViolatedUnexpectedly);
    }

    #[test]
    fn clean_tally_has_no_counterexample() {
        let mut t = Tally::new("m", "l", 0.0);
        t.check(0.0, || unreachable!());
        let r = t.finish();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn missing_witness_is_flagged() {
        let mut w = WitnessSearch::new("gyro", "x", 1e-3);
        w.record(1e-6, || json!(1));
        let r = w.finish();
        assert!(r.missed_expected());
        w = WitnessSearch::new("gyro", "x", 1e-3);
        w.record(0.5, || json!(1));
        w.record(0.9, || json!(2));
        let r = w.finish();
        assert_eq!(r.counterexample, Some(json!(1)));
        assert!(!r.missed_expected());
    }

    #[test]
    fn verdict_serializes_kebab() {
        assert_eq!(
            serde_json::to_string(&Verdict::ViolatedAsExpected).unwrap(),
            "\"violated-as-expected\""
        );
    }
}
