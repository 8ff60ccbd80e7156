//! Model formulas and the design matrices they expand to.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::datasets::ProjectRecord;
use crate::error::{Error, Result};
use crate::stats::normality::shapiro_wilk_at;

/// Transform applied to a numeric column before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    #[default]
    Identity,
    Log,
    /// Natural log if the training values fail a Shapiro-Wilk test and are
    /// all positive, identity otherwise. Resolved per training set.
    Auto,
}

impl Transform {
    fn apply(self, v: f64) -> f64 {
        match self {
            Transform::Log => v.ln(),
            _ => v,
        }
    }

    /// Maps predictions back to the original scale.
    pub fn invert(self, values: &[f64]) -> Vec<f64> {
        match self {
            Transform::Log => back_transform(values),
            _ => values.to_vec(),
        }
    }

    fn label(self, column: &str) -> String {
        match self {
            Transform::Log => format!("ln({column})"),
            Transform::Auto => format!("auto({column})"),
            Transform::Identity => column.to_string(),
        }
    }
}

/// Exponentiates log-scale predictions.
pub fn back_transform(log_predictions: &[f64]) -> Vec<f64> {
    log_predictions.iter().map(|v| v.exp()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseSpec {
    pub column: String,
    #[serde(default)]
    pub transform: Transform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Term {
    Numeric {
        column: String,
        #[serde(default)]
        transform: Transform,
    },
    Categorical {
        column: String,
        reference: String,
    },
}

impl Term {
    pub fn column(&self) -> &str {
        match self {
            Term::Numeric { column, .. } | Term::Categorical { column, .. } => column,
        }
    }
}

/// `response ~ terms` with an implicit intercept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFormula {
    pub response: ResponseSpec,
    pub terms: Vec<Term>,
}

impl ModelFormula {
    /// Every attribute column the formula reads.
    pub fn columns(&self) -> Vec<&str> {
        std::iter::once(self.response.column.as_str())
            .chain(self.terms.iter().map(Term::column))
            .collect()
    }

    pub fn numeric_columns(&self) -> Vec<&str> {
        std::iter::once(self.response.column.as_str())
            .chain(self.terms.iter().filter_map(|t| match t {
                Term::Numeric { column, .. } => Some(column.as_str()),
                Term::Categorical { .. } => None,
            }))
            .collect()
    }

    pub fn has_auto(&self) -> bool {
        self.response.transform == Transform::Auto
            || self.terms.iter().any(|t| {
                matches!(
                    t,
                    Term::Numeric {
                        transform: Transform::Auto,
                        ..
                    }
                )
            })
    }

    /// Number of design columns besides the intercept, counting one
    /// indicator per non-reference level present in `records`.
    pub fn explanatory_count(&self, records: &[ProjectRecord]) -> usize {
        self.terms
            .iter()
            .map(|t| match t {
                Term::Numeric { .. } => 1,
                Term::Categorical { column, reference } => records
                    .iter()
                    .filter_map(|r| r.attributes.get(column))
                    .filter(|l| *l != reference)
                    .collect::<BTreeSet<_>>()
                    .len(),
            })
            .sum()
    }

    /// Replaces every `Auto` transform with `Log` or `Identity` according to
    /// a Shapiro-Wilk test on the training values.
    pub fn resolve(&self, training: &[ProjectRecord], alpha: f64) -> Result<ModelFormula> {
        let decide = |column: &str, t: Transform| -> Result<Transform> {
            if t != Transform::Auto {
                return Ok(t);
            }
            let values = training
                .iter()
                .map(|r| r.numeric(column))
                .collect::<Result<Vec<_>>>()?;
            let positive = values.iter().all(|&v| v > 0.0);
            Ok(match shapiro_wilk_at(&values, alpha) {
                Ok(rep) if rep.rejects_normality && positive => Transform::Log,
                _ => Transform::Identity,
            })
        };
        let mut out = self.clone();
        out.response.transform = decide(&self.response.column, self.response.transform)?;
        for term in &mut out.terms {
            if let Term::Numeric { column, transform } = term {
                *transform = decide(column, *transform)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ModelFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} =",
            self.response.transform.label(&self.response.column)
        )?;
        if self.terms.is_empty() {
            return write!(f, " 1");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            match term {
                Term::Numeric { column, transform } => {
                    write!(f, "{sep}{}", transform.label(column))?
                }
                Term::Categorical { column, reference } => {
                    write!(f, "{sep}{column} [ref {reference}]")?
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum DesignColumn {
    Intercept,
    Numeric {
        column: String,
        transform: Transform,
    },
    Indicator {
        column: String,
        level: String,
    },
}

impl DesignColumn {
    fn label(&self) -> String {
        match self {
            DesignColumn::Intercept => "(intercept)".to_string(),
            DesignColumn::Numeric { column, transform } => transform.label(column),
            DesignColumn::Indicator { column, level } => format!("{column}={level}"),
        }
    }
}

/// Column structure learned from a training set; applying it to other
/// records yields designs whose columns line up with the training design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignLayout {
    response: ResponseSpec,
    columns: Vec<DesignColumn>,
    levels: Vec<(String, Vec<String>)>,
}

impl DesignLayout {
    /// Learns categorical levels from `training`. `formula` must already be
    /// resolved (no `Auto` transforms).
    pub fn fit(training: &[ProjectRecord], formula: &ModelFormula) -> Result<Self> {
        if training.is_empty() {
            return Err(Error::EmptyInput("training records"));
        }
        if formula.has_auto() {
            return Err(Error::InvalidConfig(
                "formula has unresolved auto transforms".to_string(),
            ));
        }
        let mut columns = vec![DesignColumn::Intercept];
        let mut levels = Vec::new();
        for term in &formula.terms {
            match term {
                Term::Numeric { column, transform } => columns.push(DesignColumn::Numeric {
                    column: column.clone(),
                    transform: *transform,
                }),
                Term::Categorical { column, reference } => {
                    let seen = training
                        .iter()
                        .map(|r| r.attr(column).map(str::to_string))
                        .collect::<Result<BTreeSet<_>>>()?;
                    if !seen.contains(reference) {
                        return Err(Error::MissingReferenceLevel {
                            column: column.clone(),
                            level: reference.clone(),
                        });
                    }
                    for level in seen.iter().filter(|l| *l != reference) {
                        columns.push(DesignColumn::Indicator {
                            column: column.clone(),
                            level: level.clone(),
                        });
                    }
                    levels.push((column.clone(), seen.into_iter().collect()));
                }
            }
        }
        Ok(DesignLayout {
            response: formula.response.clone(),
            columns,
            levels,
        })
    }

    pub fn labels(&self) -> Vec<String> {
        self.columns.iter().map(DesignColumn::label).collect()
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn build(&self, records: &[ProjectRecord]) -> Result<DesignMatrix> {
        let n = records.len();
        let p = self.columns.len();
        let mut x = DMatrix::zeros(n, p);
        let mut y = DVector::zeros(n);
        let mut raw = Vec::with_capacity(n);
        for (i, rec) in records.iter().enumerate() {
            let v = transformed(rec, &self.response.column, self.response.transform)?;
            y[i] = v.1;
            raw.push(v.0);
            for (j, col) in self.columns.iter().enumerate() {
                x[(i, j)] = match col {
                    DesignColumn::Intercept => 1.0,
                    DesignColumn::Numeric { column, transform } => {
                        transformed(rec, column, *transform)?.1
                    }
                    DesignColumn::Indicator { column, level } => {
                        f64::from(u8::from(rec.attr(column)? == level))
                    }
                };
            }
            for (column, ls) in &self.levels {
                let value = rec.attr(column)?;
                if !ls.iter().any(|l| l == value) {
                    return Err(Error::UnseenLevel {
                        column: column.clone(),
                        level: value.to_string(),
                    });
                }
            }
        }
        Ok(DesignMatrix {
            labels: self.labels(),
            x,
            response: y,
            raw_response: raw,
            response_transform: self.response.transform,
            ids: records.iter().map(|r| r.id.clone()).collect(),
        })
    }
}

/// Returns (raw, transformed).
fn transformed(rec: &ProjectRecord, column: &str, t: Transform) -> Result<(f64, f64)> {
    let v = rec.numeric(column)?;
    if t == Transform::Log && v <= 0.0 {
        return Err(Error::NonPositiveLog {
            record: rec.id.clone(),
            column: column.to_string(),
            value: v,
        });
    }
    Ok((v, t.apply(v)))
}

/// Intercept, numeric and indicator columns plus the response on the
/// model scale.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    pub labels: Vec<String>,
    pub x: DMatrix<f64>,
    /// Response after the formula's transform.
    pub response: DVector<f64>,
    /// Response on the original scale.
    pub raw_response: Vec<f64>,
    pub response_transform: Transform,
    pub ids: Vec<String>,
}

impl DesignMatrix {
    pub fn nrows(&self) -> usize {
        self.x.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.x.ncols()
    }
}

/// Expands `records` under a resolved `formula`, learning categorical levels
/// from the same records.
pub fn build_design_matrix(
    records: &[ProjectRecord],
    formula: &ModelFormula,
) -> Result<DesignMatrix> {
    DesignLayout::fit(records, formula)?.build(records)
}
