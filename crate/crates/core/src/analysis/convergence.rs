//! Reading convergence off a relative-error curve and turning it into a
//! stationarity call.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kernels::{decay_horizon, KernelKind};

/// Where a nonuniform curve settles onto the uniform one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    /// Smallest grid bandwidth from which the tolerance holds for every
    /// larger grid bandwidth.
    pub bandwidth: f64,
    pub sustained: bool,
    /// True when `bandwidth` is the first grid value, so the tolerance held
    /// across the entire grid.
    pub at_grid_minimum: bool,
    /// First grid bandwidth within tolerance, even if the curve later left
    /// it again.
    pub first_within: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stationarity {
    Stationary,
    NearStationary,
    NonStationary,
}

impl Stationarity {
    pub fn name(self) -> &'static str {
        match self {
            Stationarity::Stationary => "Stationary",
            Stationarity::NearStationary => "NearStationary",
            Stationarity::NonStationary => "NonStationary",
        }
    }

    /// Any nonstationary evidence wins, then any stationary evidence.
    pub fn aggregate<I: IntoIterator<Item = Stationarity>>(verdicts: I) -> Option<Stationarity> {
        let mut seen = None;
        for v in verdicts {
            seen = Some(match (seen, v) {
                (_, Stationarity::NonStationary) | (Some(Stationarity::NonStationary), _) => {
                    Stationarity::NonStationary
                }
                (_, Stationarity::Stationary) | (Some(Stationarity::Stationary), _) => {
                    Stationarity::Stationary
                }
                _ => Stationarity::NearStationary,
            });
        }
        seen
    }
}

impl fmt::Display for Stationarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityVerdict {
    pub split: usize,
    pub kernel: KernelKind,
    pub classification: Stationarity,
    pub convergence: Option<ConvergencePoint>,
    /// Decay horizon at the convergence bandwidth; `None` without
    /// convergence or for the never-decaying uniform kernel.
    pub horizon: Option<f64>,
    pub train_span: f64,
    pub epsilon: f64,
    pub theta: f64,
}

/// `|re_nu - re_u| <= epsilon * max(1, re_u)`.
pub fn within_tolerance(re_nu: f64, re_u: f64, epsilon: f64) -> bool {
    (re_nu - re_u).abs() <= epsilon * re_u.max(1.0)
}

/// Finds the sustained convergence point of `curve` (bandwidth, RE pairs in
/// ascending bandwidth order) onto `uniform_re`.
pub fn detect_convergence(
    curve: &[(f64, f64)],
    uniform_re: f64,
    epsilon: f64,
) -> Option<ConvergencePoint> {
    let ok: Vec<bool> = curve
        .iter()
        .map(|&(_, re)| within_tolerance(re, uniform_re, epsilon))
        .collect();
    let tail = ok.iter().rev().take_while(|&&b| b).count();
    if tail == 0 {
        return None;
    }
    let start = curve.len() - tail;
    let first = ok.iter().position(|&b| b).expect("tail is nonempty");
    Some(ConvergencePoint {
        bandwidth: curve[start].0,
        sustained: true,
        at_grid_minimum: start == 0,
        first_within: curve[first].0,
    })
}

/// Classifies one (split, kernel) slice.
///
/// No convergence means NonStationary. Convergence over the whole grid means
/// NearStationary. Otherwise the slice is Stationary when the kernel's decay
/// horizon at the convergence bandwidth fits inside the training span.
pub fn stationarity_verdict(
    split: usize,
    kind: KernelKind,
    point: Option<ConvergencePoint>,
    train_span: f64,
    epsilon: f64,
    theta: f64,
) -> StationarityVerdict {
    let horizon = point
        .map(|p| decay_horizon(kind, p.bandwidth, theta))
        .filter(|h| h.is_finite());
    let classification = match point {
        None => Stationarity::NonStationary,
        Some(p) if p.at_grid_minimum => Stationarity::NearStationary,
        Some(_) => match horizon {
            Some(h) if h <= train_span => Stationarity::Stationary,
            _ => Stationarity::NonStationary,
        },
    };
    StationarityVerdict {
        split,
        kernel: kind,
        classification,
        convergence: point,
        horizon,
        train_span,
        epsilon,
        theta,
    }
}
