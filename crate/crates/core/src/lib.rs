//! Kernel-weighted regression sweeps for spotting drift in chronological
//! software-effort datasets.
//!
//! A dataset is split chronologically into growing training sets. For each
//! split a weighted least-squares model is fitted with observation weights
//! that decay with the age of each project, over a grid of kernel bandwidths.
//! Where the weighted fit keeps beating the unweighted one only at short
//! bandwidths, older data is judged to describe a different process.
//!
//! The modules build on each other:
//!
//! * [`kernels`]: weighting functions, bandwidth grids and decay horizons.
//! * [`stats`]: weighted least squares, relative error, Shapiro-Wilk.
//! * [`datasets`]: descriptors, CSV loading, COCOMO 81 tables, synthetic data.
//! * [`chronology`]: split plans.
//! * [`analysis`]: sweeps, convergence detection and stationarity verdicts.
//! * [`cli`]: the `driftscope` command.

pub mod analysis;
pub mod calendar;
pub mod chronology;
pub mod cli;
pub mod datasets;
pub mod error;
pub mod kernels;
pub mod stats;

pub use analysis::{run_sweep, summarize, AnalysisConfig, Stationarity, Summary, SweepResult};
pub use chronology::{build_split_plan, ChronologyMode, SplitPlan};
pub use datasets::{load_dataset, resolve_descriptor, Dataset, DatasetDescriptor};
pub use error::{Error, Result};
pub use kernels::KernelKind;
