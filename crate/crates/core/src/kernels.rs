//! Temporal kernel weighting.
//!
//! Every project is placed on a period axis (yearly indices 1, 2, 3, ... or
//! monthly indices 0.1, 0.2, ...). A training project completed at index
//! `origin` receives, relative to a target period, the weight
//! `K((target - origin) / b)` where `K` is one of the kernels below and `b` the
//! bandwidth. Large bandwidths push every weight towards 1, which is the
//! uniform (unweighted) model.
//!
//! Epanechnikov and Triangular kernels vanish at lag 1, so their bandwidths
//! must exceed the largest elapsed time a sweep has to serve. That is enforced
//! through [`min_bandwidth`] and [`build_grid`] rather than by clipping weights
//! to zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::calendar::{CalendarPoint, Granularity};
use crate::error::{Error, Result};

/// Kernel shapes available for temporal weighting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Uniform,
    Gaussian,
    Epanechnikov,
    Triangular,
}

impl KernelKind {
    pub const ALL: [KernelKind; 4] = [
        KernelKind::Uniform,
        KernelKind::Gaussian,
        KernelKind::Epanechnikov,
        KernelKind::Triangular,
    ];

    /// The three kernels that actually discount older projects.
    pub const NONUNIFORM: [KernelKind; 3] = [
        KernelKind::Gaussian,
        KernelKind::Epanechnikov,
        KernelKind::Triangular,
    ];

    pub fn has_finite_support(self) -> bool {
        matches!(self, KernelKind::Epanechnikov | KernelKind::Triangular)
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Uniform => "uniform",
            KernelKind::Gaussian => "gaussian",
            KernelKind::Epanechnikov => "epanechnikov",
            KernelKind::Triangular => "triangular",
        }
    }

    /// Formula in the notation used by `describe`.
    pub fn formula(self) -> &'static str {
        match self {
            KernelKind::Uniform => "W = 1",
            KernelKind::Gaussian => "W = exp(-0.5 * t^2)",
            KernelKind::Epanechnikov => "W = 1 - t^2, t < 1",
            KernelKind::Triangular => "W = 1 - t, t < 1",
        }
    }

    /// Weight at a nonnegative normalized lag.
    pub fn weight(self, lag: f64) -> Result<f64> {
        if !lag.is_finite() || lag < 0.0 {
            return Err(Error::InvalidLag(lag));
        }
        if self.has_finite_support() && lag >= 1.0 {
            return Err(Error::OutOfSupport { kind: self, lag });
        }
        Ok(match self {
            KernelKind::Uniform => 1.0,
            KernelKind::Gaussian => (-0.5 * lag * lag).exp(),
            KernelKind::Epanechnikov => 1.0 - lag * lag,
            KernelKind::Triangular => 1.0 - lag,
        })
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" | "rectangular" => Ok(KernelKind::Uniform),
            "gaussian" | "normal" => Ok(KernelKind::Gaussian),
            "epanechnikov" => Ok(KernelKind::Epanechnikov),
            "triangular" => Ok(KernelKind::Triangular),
            other => Err(Error::InvalidConfig(format!("unknown kernel {other:?}"))),
        }
    }
}

/// Kernel weight at a normalized lag. See [`KernelKind::weight`].
pub fn kernel_weight(kind: KernelKind, lag: f64) -> Result<f64> {
    kind.weight(lag)
}

/// Dimensionless position of a completion period on the time axis.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PeriodIndex(f64);

impl PeriodIndex {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(PeriodIndex(value))
        } else {
            Err(Error::InvalidConfig(format!(
                "period index must be positive, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for PeriodIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Maps completion points to period indices anchored at the oldest period.
///
/// Calendar gaps consume index distance: years 1971, 1972, 1974 map to
/// 1, 2, 4.
pub fn assign_period_indices(
    completions: &[CalendarPoint],
    granularity: Granularity,
) -> Result<Vec<PeriodIndex>> {
    if completions.is_empty() {
        return Err(Error::EmptyInput("completion dates"));
    }
    let ordinals = completions
        .iter()
        .map(|c| c.period_ordinal(granularity))
        .collect::<Result<Vec<_>>>()?;
    let oldest = *ordinals.iter().min().expect("nonempty");
    Ok(ordinals
        .into_iter()
        .map(|o| PeriodIndex(granularity.index_at(o - oldest)))
        .collect())
}

/// Elapsed index distance, snapped to 1e-12 so monthly tenths subtract
/// cleanly (0.4 - 0.1 is 0.3, not 0.30000000000000004).
pub fn elapsed(origin: PeriodIndex, target: PeriodIndex) -> f64 {
    ((target.0 - origin.0) * 1e12).round() / 1e12
}

/// `(target - origin) / bandwidth`.
pub fn normalized_lag(origin: PeriodIndex, target: PeriodIndex, bandwidth: f64) -> Result<f64> {
    if !bandwidth.is_finite() || bandwidth <= 0.0 {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    let e = elapsed(origin, target);
    if e < 0.0 {
        return Err(Error::OriginAfterTarget {
            origin: origin.0,
            target: target.0,
        });
    }
    Ok(e / bandwidth)
}

/// Per-record regression weights, each in (0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0 && **w <= 1.0))
        {
            return Err(Error::InvalidWeight { index, value });
        }
        Ok(WeightVector(weights))
    }

    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Kish effective sample size, `(sum w)^2 / sum w^2`.
    pub fn effective_size(&self) -> f64 {
        let s: f64 = self.0.iter().sum();
        let s2: f64 = self.0.iter().map(|w| w * w).sum();
        s * s / s2
    }
}

impl std::ops::Deref for WeightVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Vec<f64> {
        w.0
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

/// Weights of the records at `indices` relative to `target`.
pub fn weights_for_target(
    indices: &[PeriodIndex],
    target: PeriodIndex,
    kind: KernelKind,
    bandwidth: f64,
) -> Result<WeightVector> {
    let lags = indices
        .iter()
        .map(|&i| normalized_lag(i, target, bandwidth))
        .collect::<Result<Vec<_>>>()?;
    if kind.has_finite_support() {
        if let Some(&worst) = lags.iter().find(|&&l| l >= 1.0) {
            return Err(Error::BandwidthBelowSupport {
                kind,
                bandwidth,
                max_elapsed: worst * bandwidth,
            });
        }
    }
    let weights = lags
        .into_iter()
        .map(|l| kind.weight(l))
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(weights)
}

/// Grid lower bound used when none is configured.
pub const DEFAULT_GRID_LO: f64 = 1.0;
pub const DEFAULT_GRID_HI: f64 = 100.0;
pub const DEFAULT_GRID_STEP: f64 = 1.0;

/// Smallest admissible bandwidth on a grid anchored at 1 with spacing `step`.
pub fn min_bandwidth(kind: KernelKind, max_elapsed: f64, step: f64) -> f64 {
    min_bandwidth_from(kind, max_elapsed, DEFAULT_GRID_LO, step)
}

/// Smallest admissible bandwidth on the grid `lo, lo + step, ...`.
///
/// Finite-support kernels need every lag strictly below 1, so the result is
/// the first grid value strictly greater than `max_elapsed`. Other kernels
/// accept the grid's lower bound.
pub fn min_bandwidth_from(kind: KernelKind, max_elapsed: f64, lo: f64, step: f64) -> f64 {
    if !kind.has_finite_support() || max_elapsed < lo {
        return lo;
    }
    let k = ((max_elapsed - lo) / step + 1e-9).floor() + 1.0;
    snap(lo + k * step)
}

fn snap(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Lower bound, upper bound and step of a bandwidth sweep, before kernel
/// support is taken into account.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            lo: DEFAULT_GRID_LO,
            hi: DEFAULT_GRID_HI,
            step: DEFAULT_GRID_STEP,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.lo) && ok(self.hi) && ok(self.step)) {
            return Err(Error::InvalidGrid(format!(
                "bounds and step must be positive: {self}"
            )));
        }
        if self.lo > self.hi {
            return Err(Error::InvalidGrid(format!("lo exceeds hi: {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `lo:hi:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(Error::InvalidGrid(format!(
                "expected lo:hi:step, got {s:?}"
            )));
        };
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("bad number {p:?} in {s:?}")))
        };
        let g = GridSpec {
            lo: num(lo)?,
            hi: num(hi)?,
            step: num(step)?,
        };
        g.validate()?;
        Ok(g)
    }
}

/// Ascending list of bandwidths for one kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl BandwidthGrid {
    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("grid is never empty")
    }
}

/// Builds the admissible grid for `kind` given the largest elapsed time it
/// must serve.
pub fn build_grid(kind: KernelKind, max_elapsed: f64, spec: GridSpec) -> Result<BandwidthGrid> {
    spec.validate()?;
    let start = min_bandwidth_from(kind, max_elapsed, spec.lo, spec.step).max(spec.lo);
    if start > spec.hi + 1e-9 {
        return Err(Error::EmptyGrid {
            min: start,
            hi: spec.hi,
        });
    }
    let count = ((spec.hi - start) / spec.step + 1e-9).floor() as usize + 1;
    let values = (0..count)
        .map(|i| snap(start + i as f64 * spec.step))
        .collect();
    Ok(BandwidthGrid {
        lo: start,
        hi: spec.hi,
        step: spec.step,
        values,
    })
}

/// Default weight threshold for the decay horizon.
pub const DEFAULT_DECAY_THRESHOLD: f64 = 0.01;

/// Elapsed time at which the kernel weight first drops to `threshold`.
///
/// Proportional to the bandwidth for every non-uniform kernel. The uniform
/// kernel never decays and returns infinity.
///
/// # Panics
///
/// If `threshold` is not strictly between 0 and 1.
pub fn decay_horizon(kind: KernelKind, bandwidth: f64, threshold: f64) -> f64 {
    assert!(
        threshold > 0.0 && threshold < 1.0,
        "decay threshold must lie in (0, 1), got {threshold}"
    );
    match kind {
        KernelKind::Uniform => f64::INFINITY,
        KernelKind::Gaussian => bandwidth * (-2.0 * threshold.ln()).sqrt(),
        KernelKind::Epanechnikov => bandwidth * (1.0 - threshold).sqrt(),
        KernelKind::Triangular => bandwidth * (1.0 - threshold),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn idx(v: &[f64]) -> Vec<PeriodIndex> {
        v.iter().map(|&x| PeriodIndex::new(x).unwrap()).collect()
    }

    #[test]
    fn yearly_indices_keep_calendar_gaps() {
        let years: Vec<_> = [1971, 1972, 1974].map(CalendarPoint::Year).to_vec();
        let got = assign_period_indices(&years, Granularity::Yearly).unwrap();
        assert_eq!(got, idx(&[1.0, 2.0, 4.0]));

        let same = [CalendarPoint::Year(1999); 2];
        assert_eq!(
            assign_period_indices(&same, Granularity::Yearly).unwrap(),
            idx(&[1.0, 1.0])
        );
    }

    #[test]
    fn monthly_indices_step_by_tenths() {
        let months = [
            CalendarPoint::Month {
                year: 1999,
                month: 10,
            },
            CalendarPoint::Month {
                year: 1999,
                month: 11,
            },
            CalendarPoint::Month {
                year: 2000,
                month: 1,
            },
        ];
        let got = assign_period_indices(&months, Granularity::Monthly).unwrap();
        assert_eq!(got, idx(&[0.1, 0.2, 0.4]));
    }

    #[test]
    fn empty_completions_rejected() {
        assert!(matches!(
            assign_period_indices(&[], Granularity::Yearly),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn lag_examples() {
        let p = |x| PeriodIndex::new(x).unwrap();
        assert_eq!(normalized_lag(p(3.0), p(8.0), 5.0).unwrap(), 1.0);
        assert_eq!(normalized_lag(p(6.0), p(6.0), 3.7).unwrap(), 0.0);
        assert_abs_diff_eq!(
            normalized_lag(p(0.1), p(0.4), 10.0).unwrap(),
            0.03,
            epsilon = 1e-15
        );
        assert!(matches!(
            normalized_lag(p(1.0), p(2.0), 0.0),
            Err(Error::InvalidBandwidth(_))
        ));
        assert!(matches!(
            normalized_lag(p(5.0), p(2.0), 1.0),
            Err(Error::OriginAfterTarget { .. })
        ));
    }

    #[test]
    fn kernel_point_values() {
        assert_eq!(kernel_weight(KernelKind::Gaussian, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            kernel_weight(KernelKind::Gaussian, 1.0).unwrap(),
            0.606531,
            epsilon = 5e-7
        );
        assert_eq!(kernel_weight(KernelKind::Epanechnikov, 0.5).unwrap(), 0.75);
        assert_eq!(kernel_weight(KernelKind::Triangular, 0.25).unwrap(), 0.75);
        assert_eq!(kernel_weight(KernelKind::Uniform, 0.9).unwrap(), 1.0);
    }

    #[test]
    fn kernel_domain_errors() {
        assert!(matches!(
            kernel_weight(KernelKind::Epanechnikov, 1.0),
            Err(Error::OutOfSupport { .. })
        ));
        assert!(matches!(
            kernel_weight(KernelKind::Triangular, 1.5),
            Err(Error::OutOfSupport { .. })
        ));
        assert!(matches!(
            kernel_weight(KernelKind::Gaussian, -0.1),
            Err(Error::InvalidLag(_))
        ));
        // Gaussian has no support restriction
        assert!(kernel_weight(KernelKind::Gaussian, 16.0).unwrap() > 0.0);
    }

    #[test]
    fn weights_examples() {
        let w = weights_for_target(
            &idx(&[1.0, 1.0, 2.0]),
            idx(&[2.0])[0],
            KernelKind::Uniform,
            10.0,
        )
        .unwrap();
        assert_eq!(w.as_slice(), &[1.0, 1.0, 1.0]);

        let w = weights_for_target(
            &idx(&[1.0, 2.0, 3.0]),
            idx(&[3.0])[0],
            KernelKind::Gaussian,
            2.0,
        )
        .unwrap();
        assert_abs_diff_eq!(w[0], 0.606531, epsilon = 5e-7);
        assert_abs_diff_eq!(w[1], 0.882497, epsilon = 5e-7);
        assert_eq!(w[2], 1.0);

        let err = weights_for_target(
            &idx(&[1.0, 3.0]),
            idx(&[3.0])[0],
            KernelKind::Epanechnikov,
            2.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BandwidthBelowSupport { .. }));
    }

    #[test]
    fn weight_vector_rejects_out_of_range() {
        assert!(WeightVector::new(vec![0.5, 0.0]).is_err());
        assert!(WeightVector::new(vec![1.5]).is_err());
        assert!(WeightVector::new(vec![f64::NAN]).is_err());
        assert_eq!(WeightVector::ones(3).effective_size(), 3.0);
    }

    #[test]
    fn grid_minima() {
        assert_eq!(min_bandwidth(KernelKind::Epanechnikov, 16.0, 1.0), 17.0);
        assert_eq!(min_bandwidth(KernelKind::Triangular, 4.0, 1.0), 5.0);
        assert_eq!(min_bandwidth(KernelKind::Triangular, 7.0, 1.0), 8.0);
        assert_eq!(min_bandwidth(KernelKind::Gaussian, 16.0, 1.0), 1.0);
        assert_eq!(min_bandwidth(KernelKind::Triangular, 0.0, 1.0), 1.0);
        // monthly spans
        assert_eq!(min_bandwidth(KernelKind::Triangular, 2.1, 1.0), 3.0);
        assert_eq!(
            min_bandwidth_from(KernelKind::Triangular, 2.1, 0.5, 0.5),
            2.5
        );
    }

    #[test]
    fn grid_examples() {
        let g = build_grid(KernelKind::Gaussian, 16.0, GridSpec::default()).unwrap();
        assert_eq!(g.values.len(), 100);
        assert_eq!((g.first(), g.last()), (1.0, 100.0));

        let g = build_grid(KernelKind::Epanechnikov, 16.0, GridSpec::default()).unwrap();
        assert_eq!((g.first(), g.last(), g.values.len()), (17.0, 100.0, 84));

        assert!(matches!(
            build_grid(KernelKind::Triangular, 120.0, GridSpec::default()),
            Err(Error::EmptyGrid { .. })
        ));

        let g = build_grid(KernelKind::Gaussian, 0.0, "0.5:2:0.5".parse().unwrap()).unwrap();
        assert_eq!(g.values, vec![0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn grid_spec_parsing() {
        let g: GridSpec = "17:100:1".parse().unwrap();
        assert_eq!(
            g,
            GridSpec {
                lo: 17.0,
                hi: 100.0,
                step: 1.0
            }
        );
        assert!("1:2".parse::<GridSpec>().is_err());
        assert!("5:1:1".parse::<GridSpec>().is_err());
        assert!("1:5:0".parse::<GridSpec>().is_err());
    }

    #[test]
    fn horizon_examples() {
        assert_abs_diff_eq!(
            decay_horizon(KernelKind::Gaussian, 5.0, 0.01),
            15.17,
            epsilon = 0.01
        );
        assert_abs_diff_eq!(
            decay_horizon(KernelKind::Triangular, 10.0, 1e-15),
            10.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            decay_horizon(KernelKind::Epanechnikov, 20.0, 0.01),
            19.90,
            epsilon = 0.005
        );
        assert!(decay_horizon(KernelKind::Uniform, 3.0, 0.01).is_infinite());
        // the horizon is where the weight reaches the threshold
        for kind in KernelKind::NONUNIFORM {
            let h = decay_horizon(kind, 4.0, 0.2);
            let w = if kind.has_finite_support() {
                kind.weight(h / 4.0).unwrap()
            } else {
                (-0.5 * (h / 4.0f64).powi(2)).exp()
            };
            assert_abs_diff_eq!(w, 0.2, epsilon = 1e-12);
        }
    }

    #[test]
    fn kernel_names_round_trip() {
        for k in KernelKind::ALL {
            assert_eq!(k.name().parse::<KernelKind>().unwrap(), k);
        }
        assert!("box".parse::<KernelKind>().is_err());
    }

    proptest! {
        #[test]
        fn weights_bounded_and_monotone(lag in 0.0f64..0.999, dl in 0.0f64..0.5) {
            for kind in KernelKind::ALL {
                let a = kind.weight(lag).unwrap();
                let hi = (lag + dl).min(0.999_999);
                let b = kind.weight(hi).unwrap();
                prop_assert!(a > 0.0 && a <= 1.0);
                prop_assert!(b <= a);
            }
        }

        #[test]
        fn weight_increases_with_bandwidth(e in 0.1f64..20.0, b in 1.0f64..50.0, db in 0.1f64..10.0) {
            for kind in KernelKind::NONUNIFORM {
                let b1 = b.max(e * 1.01);
                let w1 = kind.weight(e / b1).unwrap();
                let w2 = kind.weight(e / (b1 + db)).unwrap();
                prop_assert!(w2 > w1);
            }
        }

        #[test]
        fn horizon_scales_with_bandwidth(b in 0.5f64..200.0, theta in 0.001f64..0.999) {
            for kind in KernelKind::NONUNIFORM {
                let h1 = decay_horizon(kind, b, theta);
                let h2 = decay_horizon(kind, 2.0 * b, theta);
                prop_assert!((h2 - 2.0 * h1).abs() <= 1e-9 * h2.max(1.0));
            }
        }

        #[test]
        fn uniform_weights_are_ones(v in proptest::collection::vec(1u32..30, 1..20), b in 0.5f64..100.0) {
            let ix: Vec<_> = v.iter().map(|&x| PeriodIndex::new(f64::from(x)).unwrap()).collect();
            let target = PeriodIndex::new(31.0).unwrap();
            let w = weights_for_target(&ix, target, KernelKind::Uniform, b).unwrap();
            prop_assert!(w.iter().all(|&x| x == 1.0));
        }

        #[test]
        fn indices_permutation_invariant(years in proptest::collection::vec(1960i32..2000, 1..15), rot in 0usize..15) {
            let pts: Vec<_> = years.iter().map(|&y| CalendarPoint::Year(y)).collect();
            let base = assign_period_indices(&pts, Granularity::Yearly).unwrap();
            let r = rot % pts.len();
            let mut rotated = pts.clone();
            rotated.rotate_left(r);
            let mut expect = base.clone();
            expect.rotate_left(r);
            prop_assert_eq!(assign_period_indices(&rotated, Granularity::Yearly).unwrap(), expect);
        }
    }
}
