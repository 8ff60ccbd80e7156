//! Verdicts, relative-error ranges and cross-kernel agreement for a finished
//! sweep.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::convergence::{
    detect_convergence, stationarity_verdict, Stationarity, StationarityVerdict,
};
use crate::analysis::sweep::{SweepCell, SweepResult};
use crate::analysis::AnalysisConfig;
use crate::kernels::KernelKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSummary {
    pub split: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub target_period: f64,
    pub train_span: f64,
    /// One per kernel, read from the training curves.
    pub verdicts: Vec<StationarityVerdict>,
    pub classification: Stationarity,
    pub re_train_u: f64,
    pub re_test_u: Option<f64>,
    /// Extremes of the nonuniform curves over every kernel and bandwidth.
    pub re_train_nu_range: (f64, f64),
    pub re_test_nu_range: Option<(f64, f64)>,
}

/// How closely the non-uniform kernels agree on one split, judged only over
/// the bandwidths every kernel's grid contains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelAgreement {
    pub split: usize,
    pub kernels: Vec<KernelKind>,
    pub common_lo: f64,
    pub common_hi: f64,
    /// Verdicts recomputed on the common range, in `kernels` order.
    pub common_verdicts: Vec<Stationarity>,
    pub agree: bool,
    pub max_train_gap: f64,
    pub max_test_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub dataset: String,
    pub epsilon: f64,
    pub theta: f64,
    pub classification: Stationarity,
    pub splits: Vec<SplitSummary>,
    pub agreement: Vec<KernelAgreement>,
}

impl Summary {
    pub fn verdict(&self, split: usize, kernel: KernelKind) -> Option<&StationarityVerdict> {
        self.splits
            .iter()
            .find(|s| s.split == split)?
            .verdicts
            .iter()
            .find(|v| v.kernel == kernel)
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &StationarityVerdict> {
        self.splits.iter().flat_map(|s| s.verdicts.iter())
    }

    /// Share of splits on which every non-uniform kernel agrees, if at least
    /// two were swept.
    pub fn agreement_rate(&self) -> Option<f64> {
        if self.agreement.is_empty() {
            return None;
        }
        let agree = self.agreement.iter().filter(|a| a.agree).count();
        Some(agree as f64 / self.agreement.len() as f64)
    }
}

fn train_curve(cells: &[&SweepCell]) -> Vec<(f64, f64)> {
    cells.iter().map(|c| (c.bandwidth, c.re_train_nu)).collect()
}

fn range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

pub fn summarize(sweep: &SweepResult, config: &AnalysisConfig) -> Summary {
    let kernels = sweep.kernels();
    let mut splits = Vec::new();
    let mut agreement = Vec::new();
    for diag in &sweep.splits {
        let verdicts: Vec<StationarityVerdict> = kernels
            .iter()
            .map(|&k| {
                let slice = sweep.slice(diag.split, k);
                let uniform = slice.first().map_or(f64::NAN, |c| c.re_train_u);
                let point = detect_convergence(&train_curve(&slice), uniform, config.epsilon);
                stationarity_verdict(
                    diag.split,
                    k,
                    point,
                    diag.train_span,
                    config.epsilon,
                    config.theta,
                )
            })
            .collect();
        let cells: Vec<&SweepCell> = sweep
            .cells
            .iter()
            .filter(|c| c.split == diag.split)
            .collect();
        let first = cells.first();
        splits.push(SplitSummary {
            split: diag.split,
            train_size: diag.train_size,
            test_size: diag.test_size,
            target_period: diag.target_period,
            train_span: diag.train_span,
            classification: Stationarity::aggregate(verdicts.iter().map(|v| v.classification))
                .unwrap_or(Stationarity::NearStationary),
            verdicts,
            re_train_u: first.map_or(f64::NAN, |c| c.re_train_u),
            re_test_u: first.and_then(|c| c.re_test_u),
            re_train_nu_range: range(cells.iter().map(|c| c.re_train_nu))
                .unwrap_or((f64::NAN, f64::NAN)),
            re_test_nu_range: range(cells.iter().filter_map(|c| c.re_test_nu)),
        });
        if let Some(a) = agreement_for(sweep, diag.split, diag.train_span, config) {
            agreement.push(a);
        }
    }
    Summary {
        dataset: sweep.dataset.clone(),
        epsilon: config.epsilon,
        theta: config.theta,
        classification: Stationarity::aggregate(splits.iter().map(|s| s.classification))
            .unwrap_or(Stationarity::NearStationary),
        splits,
        agreement,
    }
}

fn agreement_for(
    sweep: &SweepResult,
    split: usize,
    span: f64,
    config: &AnalysisConfig,
) -> Option<KernelAgreement> {
    let kernels: Vec<KernelKind> = sweep
        .kernels()
        .into_iter()
        .filter(|k| *k != KernelKind::Uniform)
        .collect();
    if kernels.len() < 2 {
        return None;
    }
    let lo = kernels
        .iter()
        .map(|&k| sweep.grid(k).expect("swept").first())
        .fold(f64::MIN, f64::max);
    let hi = kernels
        .iter()
        .map(|&k| sweep.grid(k).expect("swept").last())
        .fold(f64::MAX, f64::min);
    let slices: Vec<Vec<&SweepCell>> = kernels
        .iter()
        .map(|&k| {
            sweep
                .slice(split, k)
                .into_iter()
                .filter(|c| c.bandwidth >= lo - 1e-9 && c.bandwidth <= hi + 1e-9)
                .collect()
        })
        .collect();
    if slices.iter().any(|s| s.is_empty()) {
        return None;
    }
    let common_verdicts: Vec<Stationarity> = kernels
        .iter()
        .zip(&slices)
        .map(|(&k, s)| {
            let point = detect_convergence(&train_curve(s), s[0].re_train_u, config.epsilon);
            stationarity_verdict(split, k, point, span, config.epsilon, config.theta).classification
        })
        .collect();

    let mut max_train_gap: f64 = 0.0;
    let mut max_test_gap: Option<f64> = None;
    for (i, c) in slices[0].iter().enumerate() {
        for other in &slices[1..] {
            let Some(o) = other
                .get(i)
                .filter(|o| (o.bandwidth - c.bandwidth).abs() < 1e-9)
            else {
                continue;
            };
            max_train_gap = max_train_gap.max((c.re_train_nu - o.re_train_nu).abs());
            if let (Some(a), Some(b)) = (c.re_test_nu, o.re_test_nu) {
                max_test_gap = Some(max_test_gap.unwrap_or(0.0).max((a - b).abs()));
            }
        }
    }
    Some(KernelAgreement {
        split,
        kernels,
        common_lo: lo,
        common_hi: hi,
        agree: common_verdicts.windows(2).all(|w| w[0] == w[1]),
        common_verdicts,
        max_train_gap,
        max_test_gap,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} (epsilon {}, theta {})",
            self.dataset, self.classification, self.epsilon, self.theta
        )?;
        writeln!(
            f,
            "{:>5} {:>6} {:>5} {:>6} {:>5}  {:<13} {:<15} {:>7} {:>9}  {:>8} {:>8}",
            "split",
            "train",
            "test",
            "target",
            "span",
            "kernel",
            "verdict",
            "b*",
            "horizon",
            "re_tr_u",
            "re_te_u"
        )?;
        for s in &self.splits {
            for v in &s.verdicts {
                writeln!(
                    f,
                    "{:>5} {:>6} {:>5} {:>6} {:>5}  {:<13} {:<15} {:>7} {:>9}  {:>8} {:>8}",
                    s.split,
                    s.train_size,
                    s.test_size,
                    s.target_period,
                    s.train_span,
                    v.kernel.name(),
                    v.classification.name(),
                    v.convergence
                        .map_or("-".to_string(), |p| p.bandwidth.to_string()),
                    v.horizon.map_or("-".to_string(), |h| format!("{h:.2}")),
                    format!("{:.4}", s.re_train_u),
                    opt(s.re_test_u),
                )?;
            }
        }
        if let Some(rate) = self.agreement_rate() {
            writeln!(f, "kernel agreement: {:.0}% of splits", rate * 100.0)?;
        }
        Ok(())
    }
}
