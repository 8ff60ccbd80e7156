//! The sweep engine: kernel-weighted and unweighted fits over every split,
//! kernel and bandwidth, followed by convergence detection and stationarity
//! verdicts.

use serde::{Deserialize, Serialize};

use crate::chronology::AllDataTarget;
use crate::error::{Error, Result};
use crate::kernels::{GridSpec, KernelKind, DEFAULT_DECAY_THRESHOLD};
use crate::stats::normality::DEFAULT_ALPHA;

pub mod convergence;
pub mod summary;
pub mod sweep;

pub use convergence::{
    detect_convergence, stationarity_verdict, within_tolerance, ConvergencePoint, Stationarity,
    StationarityVerdict,
};
pub use summary::{summarize, KernelAgreement, SplitSummary, Summary};
pub use sweep::{fit_cell, run_sweep, CellDiagnostics, SplitDiagnostics, SweepCell, SweepResult};

pub const DEFAULT_EPSILON: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    /// Relative convergence tolerance, floored at an absolute `epsilon` when
    /// the uniform RE is below 1.
    pub epsilon: f64,
    /// Weight level that defines the decay horizon.
    pub theta: f64,
    pub grid: GridSpec,
    pub kernels: Vec<KernelKind>,
    /// Significance level for the per-split normality diagnostics and for
    /// resolving `auto` transforms.
    pub alpha: f64,
    pub all_data_target: AllDataTarget,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            epsilon: DEFAULT_EPSILON,
            theta: DEFAULT_DECAY_THRESHOLD,
            grid: GridSpec::default(),
            kernels: KernelKind::ALL.to_vec(),
            alpha: DEFAULT_ALPHA,
            all_data_target: AllDataTarget::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn with_kernels(kernels: &[KernelKind]) -> Self {
        AnalysisConfig {
            kernels: kernels.to_vec(),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(self.epsilon) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if !open_unit(self.theta) {
            return Err(Error::InvalidConfig(format!(
                "theta must lie in (0, 1), got {}",
                self.theta
            )));
        }
        if !open_unit(self.alpha) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.kernels.is_empty() {
            return Err(Error::EmptyInput("kernel set"));
        }
        self.grid.validate()
    }

    /// Kernels in the configured order with repeats removed.
    pub fn kernel_set(&self) -> Vec<KernelKind> {
        let mut out: Vec<KernelKind> = Vec::new();
        for &k in &self.kernels {
            if !out.contains(&k) {
                out.push(k);
            }
        }
        out
    }
}
