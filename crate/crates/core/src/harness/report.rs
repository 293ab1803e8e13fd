use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Comparison {
    /// `|measured − paper_value| ≤ tolerance`
    Abs,
    /// `measured ≥ paper_value − tolerance`
    LowerBound,
    /// `lo ≤ measured ≤ hi`; `paper_value` is the nominal target.
    Band { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportVerdict {
    Pass,
    Fail,
}

/// One checked claim. Wall-clock `runtime_ms` is only filled on request so
/// that reports are bit-identical across runs with the same seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub claim: String,
    pub paper_value: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub verdict: ReportVerdict,
    pub seed: u64,
    pub trials: u64,
    pub runtime_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ExperimentReport {
    fn build(
        claim: impl Into<String>,
        paper_value: f64,
        measured: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        let ok = match comparison {
            Comparison::Abs => (measured - paper_value).abs() <= tolerance,
            Comparison::LowerBound => measured >= paper_value - tolerance,
            Comparison::Band { lo, hi } => (lo..=hi).contains(&measured),
        };
        Self {
            claim: claim.into(),
            paper_value,
            measured,
            tolerance,
            comparison,
            verdict: if ok {
                ReportVerdict::Pass
            } else {
                ReportVerdict::Fail
            },
            seed: 0,
            trials: 0,
            runtime_ms: None,
            note: None,
        }
    }

    pub fn abs(claim: impl Into<String>, paper_value: f64, measured: f64, tolerance: f64) -> Self {
        Self::build(claim, paper_value, measured, tolerance, Comparison::Abs)
    }

    pub fn lower_bound(
        claim: impl Into<String>,
        paper_value: f64,
        measured: f64,
        tolerance: f64,
    ) -> Self {
        Self::build(
            claim,
            paper_value,
            measured,
            tolerance,
            Comparison::LowerBound,
        )
    }

    pub fn band(claim: impl Into<String>, nominal: f64, measured: f64, lo: f64, hi: f64) -> Self {
        Self::build(claim, nominal, measured, 0.0, Comparison::Band { lo, hi })
    }

    pub fn with_run(mut self, seed: u64, trials: u64) -> Self {
        self.seed = seed;
        self.trials = trials;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == ReportVerdict::Pass
    }
}

/// Sample mean and standard error of the mean.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
