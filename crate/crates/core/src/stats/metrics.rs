//! Relative error: residual variance over the variance of the actual values.
//! A value of 1 matches a constant predictor; values near 0 are accurate.

use crate::error::{Error, Result};

/// Sample variance with the `n - 1` denominator.
pub fn sample_variance(values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: n });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("variance input"));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    Ok(values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64)
}

/// `var(actuals - predictions) / var(actuals)` on the original scale.
pub fn relative_error(predictions: &[f64], actuals: &[f64]) -> Result<f64> {
    if predictions.len() != actuals.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} predictions for {} actual values",
            predictions.len(),
            actuals.len()
        )));
    }
    let denom = sample_variance(actuals)?;
    if denom <= 0.0 {
        return Err(Error::ZeroVariance("actual values"));
    }
    let residuals: Vec<f64> = actuals
        .iter()
        .zip(predictions)
        .map(|(a, p)| a - p)
        .collect();
    Ok(sample_variance(&residuals)? / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn variance_examples() {
        assert_eq!(sample_variance(&[2.0, 4.0]).unwrap(), 2.0);
        assert_eq!(sample_variance(&[3.5, 3.5, 3.5]).unwrap(), 0.0);
        assert!(sample_variance(&[1.0]).is_err());
    }

    #[test]
    fn relative_error_examples() {
        assert_eq!(relative_error(&[10.0, 12.0], &[10.0, 12.0]).unwrap(), 0.0);
        assert_eq!(relative_error(&[9.0, 13.0], &[10.0, 12.0]).unwrap(), 1.0);
        assert_eq!(
            relative_error(&[7.0, 7.0, 7.0], &[1.0, 5.0, 6.0]).unwrap(),
            1.0
        );
    }

    #[test]
    fn relative_error_failures() {
        assert!(matches!(
            relative_error(&[1.0], &[1.0]),
            Err(Error::TooFewObservations { .. })
        ));
        assert!(matches!(
            relative_error(&[1.0, 2.0], &[4.0, 4.0]),
            Err(Error::ZeroVariance(_))
        ));
        assert!(matches!(
            relative_error(&[1.0, 2.0], &[4.0, 4.0, 1.0]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn shift_invariance(v in proptest::collection::vec(-1e3f64..1e3, 2..30), k in -1e3f64..1e3) {
            let a = sample_variance(&v).unwrap();
            let shifted: Vec<f64> = v.iter().map(|x| x + k).collect();
            let b = sample_variance(&shifted).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0) * 1e3);
        }

        #[test]
        fn common_shift_leaves_relative_error(
            pairs in proptest::collection::vec((0.0f64..100.0, 0.0f64..100.0), 3..30),
            k in -50.0f64..50.0,
        ) {
            let (p, a): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            prop_assume!(sample_variance(&a).unwrap() > 1e-6);
            let r1 = relative_error(&p, &a).unwrap();
            let ps: Vec<f64> = p.iter().map(|x| x + k).collect();
            let as_: Vec<f64> = a.iter().map(|x| x + k).collect();
            let r2 = relative_error(&ps, &as_).unwrap();
            prop_assert!((r1 - r2).abs() <= 1e-9 * r1.max(1.0));
        }
    }
}
