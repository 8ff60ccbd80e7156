//! Weighted least squares via a Householder QR of the row-scaled design.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::design::{DesignMatrix, Transform};

/// Size of an R diagonal entry, after scaling every column to unit norm,
/// below which the column counts as linearly dependent.
const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedModel {
    pub coefficients: Vec<f64>,
    pub labels: Vec<String>,
    /// Training residuals on the model (transformed) scale.
    pub residuals: Vec<f64>,
    pub response_transform: Transform,
}

impl FittedModel {
    /// Weighted residual sum of squares on the model scale.
    pub fn weighted_rss(&self, weights: &[f64]) -> f64 {
        self.residuals
            .iter()
            .zip(weights)
            .map(|(r, w)| w * r * r)
            .sum()
    }
}

/// Minimizes `sum_i w_i (y_i - x_i' beta)^2`.
///
/// Rows are scaled by `sqrt(w_i)` and the resulting ordinary least-squares
/// problem is solved through QR, never through the normal equations.
pub fn weighted_least_squares(design: &DesignMatrix, weights: &[f64]) -> Result<FittedModel> {
    let (n, p) = (design.nrows(), design.ncols());
    if weights.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} design rows but {} weights",
            weights.len()
        )));
    }
    if n < p {
        return Err(Error::TooFewObservations { needed: p, got: n });
    }
    if let Some((index, &value)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !(w.is_finite() && **w > 0.0))
    {
        return Err(Error::InvalidWeight { index, value });
    }
    if design
        .x
        .iter()
        .chain(design.response.iter())
        .any(|v| !v.is_finite())
    {
        return Err(Error::NonFinite("design matrix"));
    }

    // Householder QR is not invariant to row order when weights span many
    // magnitudes; putting the heaviest rows first keeps the light ones intact.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &k| weights[k].total_cmp(&weights[i]));
    let root: Vec<f64> = order.iter().map(|&i| weights[i].sqrt()).collect();
    let a = DMatrix::from_fn(n, p, |i, j| root[i] * design.x[(order[i], j)]);
    let b = DVector::from_fn(n, |i, _| root[i] * design.response[order[i]]);

    // equilibrate columns so heavily discounted rows keep their precision
    let col_norms: Vec<f64> = (0..p).map(|j| a.column(j).norm()).collect();
    if let Some(j) = col_norms.iter().position(|&c| c == 0.0) {
        return Err(Error::SingularDesign {
            column: design.labels[j].clone(),
        });
    }
    let a = DMatrix::from_fn(n, p, |i, j| a[(i, j)] / col_norms[j]);
    let qr = a.qr();
    let r = qr.r();
    for j in 0..p {
        if r[(j, j)].abs() <= RANK_TOLERANCE {
            return Err(Error::SingularDesign {
                column: design.labels[j].clone(),
            });
        }
    }
    let qtb = qr.q().transpose() * b;
    let gamma = r
        .solve_upper_triangular(&qtb)
        .ok_or_else(|| Error::SingularDesign {
            column: design.labels[p - 1].clone(),
        })?;
    let beta = DVector::from_fn(p, |j, _| gamma[j] / col_norms[j]);

    let fitted = &design.x * &beta;
    let residuals = (&design.response - fitted).iter().copied().collect();
    Ok(FittedModel {
        coefficients: beta.iter().copied().collect(),
        labels: design.labels.clone(),
        residuals,
        response_transform: design.response_transform,
    })
}

/// Linear predictor `x_i' beta` for every row, on the model scale.
pub fn predict(model: &FittedModel, design: &DesignMatrix) -> Result<Vec<f64>> {
    if model.labels != design.labels {
        return Err(Error::LabelMismatch);
    }
    let beta = DVector::from_column_slice(&model.coefficients);
    Ok((&design.x * beta).iter().copied().collect())
}
