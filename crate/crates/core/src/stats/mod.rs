//! Regression machinery: normality testing, design matrices, weighted least
//! squares and the relative-error metric.

pub mod design;
pub mod metrics;
pub mod normality;
pub mod wls;

pub use design::{
    back_transform, build_design_matrix, DesignLayout, DesignMatrix, ModelFormula, ResponseSpec,
    Term, Transform,
};
pub use metrics::{relative_error, sample_variance};
pub use normality::{shapiro_wilk, shapiro_wilk_at, NormalityReport};
pub use wls::{predict, weighted_least_squares, FittedModel};
