//! Per-cell fitting and the full split x kernel x bandwidth sweep.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisConfig;
use crate::chronology::{build_split_plan_with, ChronologyMode, Split, SplitPlan};
use crate::datasets::{Dataset, DatasetDescriptor, ProjectRecord};
use crate::error::{Error, Result};
use crate::kernels::{build_grid, weights_for_target, BandwidthGrid, KernelKind, PeriodIndex};
use crate::stats::normality::DEFAULT_ALPHA;
use crate::stats::{
    predict, relative_error, shapiro_wilk_at, weighted_least_squares, DesignLayout, DesignMatrix,
    FittedModel, ModelFormula, NormalityReport,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDiagnostics {
    /// Kish effective sample size of the nonuniform weights.
    pub effective_size: f64,
    pub min_weight: f64,
    pub coefficients: Vec<f64>,
}

/// Relative errors of one (split, kernel, bandwidth) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub split: usize,
    pub kernel: KernelKind,
    pub bandwidth: f64,
    pub re_train_nu: f64,
    /// `None` for the all-data split.
    pub re_test_nu: Option<f64>,
    pub re_train_u: f64,
    pub re_test_u: Option<f64>,
    pub diagnostics: CellDiagnostics,
}

/// Facts about one split that do not depend on kernel or bandwidth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitDiagnostics {
    pub split: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub target_period: f64,
    pub train_span: f64,
    /// Formula with any `auto` transforms resolved for this training set.
    pub formula: String,
    pub labels: Vec<String>,
    pub uniform_coefficients: Vec<f64>,
    /// Shapiro-Wilk on the training response, raw and logged.
    pub response_normality: Option<NormalityReport>,
    pub log_response_normality: Option<NormalityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelGrid {
    pub kernel: KernelKind,
    pub grid: BandwidthGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub dataset: String,
    pub formula: String,
    pub chronology: ChronologyMode,
    pub config: AnalysisConfig,
    pub plan: SplitPlan,
    pub grids: Vec<KernelGrid>,
    pub splits: Vec<SplitDiagnostics>,
    /// Ordered by split, then kernel (configured order), then bandwidth.
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn kernels(&self) -> Vec<KernelKind> {
        self.grids.iter().map(|g| g.kernel).collect()
    }

    pub fn grid(&self, kernel: KernelKind) -> Option<&BandwidthGrid> {
        self.grids
            .iter()
            .find(|g| g.kernel == kernel)
            .map(|g| &g.grid)
    }

    /// Cells of one (split, kernel) pair in ascending bandwidth order.
    pub fn slice(&self, split: usize, kernel: KernelKind) -> Vec<&SweepCell> {
        self.cells
            .iter()
            .filter(|c| c.split == split && c.kernel == kernel)
            .collect()
    }

    pub fn split(&self, ordinal: usize) -> Option<&Split> {
        self.plan.splits.iter().find(|s| s.ordinal == ordinal)
    }
}

struct Prepared {
    train_design: DesignMatrix,
    test_design: Option<DesignMatrix>,
    train_indices: Vec<PeriodIndex>,
    target: PeriodIndex,
    uniform: FittedModel,
    re_train_u: f64,
    re_test_u: Option<f64>,
    diagnostics: SplitDiagnostics,
}

fn rows(dataset: &Dataset, rows: &[usize]) -> Vec<ProjectRecord> {
    rows.iter().map(|&i| dataset.records()[i].clone()).collect()
}

/// Relative error of `model` on `design`, on the original scale.
fn evaluate(model: &FittedModel, design: &DesignMatrix) -> Result<f64> {
    let predicted = model.response_transform.invert(&predict(model, design)?);
    relative_error(&predicted, &design.raw_response)
}

fn prepare(
    dataset: &Dataset,
    split: &Split,
    formula: &ModelFormula,
    alpha: f64,
) -> Result<Prepared> {
    let train = rows(dataset, &split.train_rows);
    let test = rows(dataset, &split.test_rows);
    let resolved = if formula.has_auto() {
        formula.resolve(&train, alpha)?
    } else {
        formula.clone()
    };
    let layout = DesignLayout::fit(&train, &resolved)?;
    let train_design = layout.build(&train)?;
    let test_design = if test.is_empty() {
        None
    } else {
        Some(layout.build(&test)?)
    };
    let uniform = weighted_least_squares(&train_design, &vec![1.0; train.len()])?;
    let re_train_u = evaluate(&uniform, &train_design)?;
    let re_test_u = test_design
        .as_ref()
        .map(|d| evaluate(&uniform, d))
        .transpose()?;

    let raw = &train_design.raw_response;
    let response_normality = shapiro_wilk_at(raw, alpha).ok();
    let log_response_normality = if raw.iter().all(|&v| v > 0.0) {
        let logged: Vec<f64> = raw.iter().map(|v| v.ln()).collect();
        shapiro_wilk_at(&logged, alpha).ok()
    } else {
        None
    };
    let all = dataset.period_indices();
    Ok(Prepared {
        train_indices: split.train_rows.iter().map(|&i| all[i]).collect(),
        target: split.target_period,
        diagnostics: SplitDiagnostics {
            split: split.ordinal,
            train_size: split.train.len(),
            test_size: split.test.len(),
            target_period: split.target_period.value(),
            train_span: split.train_span,
            formula: resolved.to_string(),
            labels: layout.labels(),
            uniform_coefficients: uniform.coefficients.clone(),
            response_normality,
            log_response_normality,
        },
        train_design,
        test_design,
        uniform,
        re_train_u,
        re_test_u,
    })
}

fn cell(prep: &Prepared, split: usize, kind: KernelKind, bandwidth: f64) -> Result<SweepCell> {
    let n = prep.train_design.nrows();
    let (re_train_nu, re_test_nu, diagnostics) = if kind == KernelKind::Uniform {
        (
            prep.re_train_u,
            prep.re_test_u,
            CellDiagnostics {
                effective_size: n as f64,
                min_weight: 1.0,
                coefficients: prep.uniform.coefficients.clone(),
            },
        )
    } else {
        let w = weights_for_target(&prep.train_indices, prep.target, kind, bandwidth)?;
        let model = weighted_least_squares(&prep.train_design, &w)?;
        let re_train = evaluate(&model, &prep.train_design)?;
        let re_test = prep
            .test_design
            .as_ref()
            .map(|d| evaluate(&model, d))
            .transpose()?;
        (
            re_train,
            re_test,
            CellDiagnostics {
                effective_size: w.effective_size(),
                min_weight: w.min(),
                coefficients: model.coefficients,
            },
        )
    };
    Ok(SweepCell {
        split,
        kernel: kind,
        bandwidth,
        re_train_nu,
        re_test_nu,
        re_train_u: prep.re_train_u,
        re_test_u: prep.re_test_u,
        diagnostics,
    })
}

/// Fits the nonuniform and uniform models of one cell and scores them.
pub fn fit_cell(
    dataset: &Dataset,
    split: &Split,
    formula: &ModelFormula,
    kind: KernelKind,
    bandwidth: f64,
) -> Result<SweepCell> {
    let prep = prepare(dataset, split, formula, DEFAULT_ALPHA)?;
    cell(&prep, split.ordinal, kind, bandwidth)
}

/// Builds the split plan from the descriptor and sweeps it.
pub fn run_sweep(
    dataset: &Dataset,
    descriptor: &DatasetDescriptor,
    config: &AnalysisConfig,
) -> Result<SweepResult> {
    config.validate()?;
    let plan = build_split_plan_with(
        dataset,
        descriptor.chronology,
        &descriptor.formula,
        descriptor.overrides.as_deref(),
        config.all_data_target,
    )?;
    run_sweep_on_plan(dataset, &descriptor.name, &descriptor.formula, plan, config)
}

/// Sweeps a prepared plan. Every kernel gets one grid shared by all splits,
/// sized for the widest training span in the plan.
pub fn run_sweep_on_plan(
    dataset: &Dataset,
    name: &str,
    formula: &ModelFormula,
    plan: SplitPlan,
    config: &AnalysisConfig,
) -> Result<SweepResult> {
    config.validate()?;
    let kernels = config.kernel_set();
    let max_elapsed = plan.max_elapsed();
    let grids = kernels
        .iter()
        .map(|&kernel| {
            Ok(KernelGrid {
                kernel,
                grid: build_grid(kernel, max_elapsed, config.grid)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let prepared: Vec<Result<Prepared>> = plan
        .splits
        .par_iter()
        .map(|s| prepare(dataset, s, formula, config.alpha))
        .collect();
    let mut ready = Vec::with_capacity(prepared.len());
    for (split, p) in plan.splits.iter().zip(prepared) {
        ready.push(p.map_err(|e| Error::CellFailed {
            split: split.ordinal,
            kernel: grids[0].kernel,
            bandwidth: grids[0].grid.first(),
            source: Box::new(e),
        })?);
    }

    let jobs: Vec<(usize, KernelKind, f64)> = ready
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            grids
                .iter()
                .flat_map(move |g| g.grid.values.iter().map(move |&b| (i, g.kernel, b)))
        })
        .collect();
    let results: Vec<Result<SweepCell>> = jobs
        .par_iter()
        .map(|&(i, kind, b)| {
            let split = plan.splits[i].ordinal;
            cell(&ready[i], split, kind, b).map_err(|e| Error::CellFailed {
                split,
                kernel: kind,
                bandwidth: b,
                source: Box::new(e),
            })
        })
        .collect();
    let cells = results.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(SweepResult {
        dataset: name.to_string(),
        formula: formula.to_string(),
        chronology: plan.mode,
        config: config.clone(),
        splits: ready.into_iter().map(|p| p.diagnostics).collect(),
        grids,
        plan,
        cells,
    })
}
