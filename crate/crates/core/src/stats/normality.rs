//! Shapiro-Wilk W test using Royston's approximation (algorithm AS R94),
//! valid for 3 <= n <= 5000 and complete (uncensored) samples.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.05;

/// Result of one normality test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
    pub alpha: f64,
    /// `p_value < alpha`.
    pub rejects_normality: bool,
}

// polynomial coefficients from AS R94, lowest order first
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];
const SMALL_P: f64 = 1e-19;

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// Shapiro-Wilk test at the default significance level of 0.05.
pub fn shapiro_wilk(sample: &[f64]) -> Result<NormalityReport> {
    shapiro_wilk_at(sample, DEFAULT_ALPHA)
}

pub fn shapiro_wilk_at(sample: &[f64], alpha: f64) -> Result<NormalityReport> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::TooFewObservations { needed: 3, got: n });
    }
    if n > 5000 {
        return Err(Error::SampleTooLarge(n));
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("normality sample"));
    }
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.total_cmp(b));
    let range = x[n - 1] - x[0];
    if range <= 0.0 {
        return Err(Error::ZeroVariance("normality sample"));
    }

    let a = coefficients(n);
    let mean = x.iter().sum::<f64>() / n as f64;
    // scale by the range so W is not sensitive to the data's magnitude
    let ssq: f64 = x.iter().map(|v| ((v - mean) / range).powi(2)).sum();
    let lin: f64 = a
        .iter()
        .zip(&x)
        .map(|(ai, xi)| ai * (xi - mean) / range)
        .sum();
    let w = (lin * lin / ssq).min(1.0);

    let p_value = p_value(w, n);
    Ok(NormalityReport {
        statistic: w,
        p_value,
        n,
        alpha,
        rejects_normality: p_value < alpha,
    })
}

/// Antisymmetric weights `a_1..a_n` applied to the ordered sample.
fn coefficients(n: usize) -> Vec<f64> {
    if n == 3 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        return vec![-h, 0.0, h];
    }
    let normal = std_normal();
    let an = n as f64;
    let m: Vec<f64> = (1..=n)
        .map(|i| normal.inverse_cdf((i as f64 - 0.375) / (an + 0.25)))
        .collect();
    let summ2: f64 = m.iter().map(|v| v * v).sum();
    let ssumm2 = summ2.sqrt();
    let u = 1.0 / an.sqrt();

    let mut a = vec![0.0; n];
    let an_last = m[n - 1] / ssumm2 + poly(&C1, u);
    if n > 5 {
        let an_prev = m[n - 2] / ssumm2 + poly(&C2, u);
        let phi = (summ2 - 2.0 * m[n - 1].powi(2) - 2.0 * m[n - 2].powi(2))
            / (1.0 - 2.0 * an_last.powi(2) - 2.0 * an_prev.powi(2));
        let root = phi.sqrt();
        for i in 2..n - 2 {
            a[i] = m[i] / root;
        }
        a[n - 1] = an_last;
        a[n - 2] = an_prev;
        a[0] = -an_last;
        a[1] = -an_prev;
    } else {
        let phi = (summ2 - 2.0 * m[n - 1].powi(2)) / (1.0 - 2.0 * an_last.powi(2));
        let root = phi.sqrt();
        for i in 1..n - 1 {
            a[i] = m[i] / root;
        }
        a[n - 1] = an_last;
        a[0] = -an_last;
    }
    a
}

fn p_value(w: f64, n: usize) -> f64 {
    if n == 3 {
        let p = 1.0 - 6.0 / std::f64::consts::PI * w.sqrt().acos();
        return p.clamp(0.0, 1.0);
    }
    if w >= 1.0 {
        return 1.0;
    }
    let normal = std_normal();
    let an = n as f64;
    let y = (1.0 - w).ln();
    let (z, m, s) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return SMALL_P;
        }
        (-(gamma - y).ln(), poly(&C3, an), poly(&C4, an).exp())
    } else {
        let xx = an.ln();
        (y, poly(&C5, xx), poly(&C6, xx).exp())
    };
    (1.0 - normal.cdf((z - m) / s)).clamp(0.0, 1.0)
}
