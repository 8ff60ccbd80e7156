//! Seeded synthetic effort data with controllable process drift:
//! `ln(effort) = (b0 + d0*p) + (b1 + d1*p) * ln(size) + noise` for period `p`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::calendar::{CalendarPoint, Granularity};
use crate::chronology::{well_formed_min, ChronologyMode};
use crate::datasets::descriptor::DatasetDescriptor;
use crate::datasets::{Dataset, ProjectRecord};
use crate::error::{Error, Result};
use crate::stats::{ModelFormula, ResponseSpec, Term, Transform};

/// Per-period additive change to the intercept and slope.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Drift {
    pub intercept: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub name: String,
    pub projects: usize,
    pub periods: usize,
    pub seed: u64,
    pub start_year: i32,
    pub intercept: f64,
    pub slope: f64,
    pub drift: Drift,
    pub noise_sd: f64,
    pub size_min: f64,
    pub size_max: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            name: "synthetic".into(),
            projects: 120,
            periods: 8,
            seed: 1,
            start_year: 2000,
            intercept: 1.5,
            slope: 0.9,
            drift: Drift::default(),
            noise_sd: 0.3,
            size_min: 20.0,
            size_max: 2000.0,
        }
    }
}

impl SynthConfig {
    /// `ln(effort) = ln(size)`, the formula the generator follows.
    pub fn formula() -> ModelFormula {
        ModelFormula {
            response: ResponseSpec {
                column: "effort".into(),
                transform: Transform::Log,
            },
            terms: vec![Term::Numeric {
                column: "size".into(),
                transform: Transform::Log,
            }],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        let min = 2 * well_formed_min(&Self::formula(), &[]);
        if self.projects < min {
            return Err(Error::InvalidConfig(format!(
                "{} projects is fewer than the minimum of {min}",
                self.projects
            )));
        }
        if self.periods < 2 || self.periods > self.projects {
            return bad("periods must be at least 2 and at most the project count");
        }
        if !(self.noise_sd.is_finite() && self.noise_sd >= 0.0) {
            return bad("noise_sd must be finite and non-negative");
        }
        if !(self.size_min.is_finite() && self.size_min > 0.0 && self.size_max > self.size_min) {
            return bad("size bounds must satisfy 0 < size_min < size_max");
        }
        let finite = [
            self.intercept,
            self.slope,
            self.drift.intercept,
            self.drift.slope,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return bad("coefficients must be finite");
        }
        Ok(())
    }

    /// Descriptor that loads the CSV written for the synthesized dataset.
    pub fn descriptor(&self, dataset: &Dataset) -> DatasetDescriptor {
        dataset.canonical_descriptor(ChronologyMode::YearAccumulate, Self::formula())
    }
}

/// Generates `config.projects` records spread evenly over consecutive years.
pub fn synthesize(config: &SynthConfig) -> Result<Dataset> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let noise =
        Normal::new(0.0, config.noise_sd).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let (lo, hi) = (config.size_min.ln(), config.size_max.ln());
    let width = config.projects.to_string().len().max(4);

    let mut records = Vec::with_capacity(config.projects);
    for i in 0..config.projects {
        let period = i * config.periods / config.projects;
        let p = period as f64;
        let size = (lo + (hi - lo) * rng.random::<f64>()).exp();
        let e = noise.sample(&mut rng);
        let b0 = config.intercept + config.drift.intercept * p;
        let b1 = config.slope + config.drift.slope * p;
        let effort = (b0 + b1 * size.ln() + e).exp();
        records.push(ProjectRecord {
            id: format!("S{:0width$}", i + 1),
            completion: CalendarPoint::Year(config.start_year + period as i32),
            start: None,
            duration_days: None,
            attributes: BTreeMap::from([
                ("effort".to_string(), effort.to_string()),
                ("size".to_string(), size.to_string()),
            ]),
        });
    }
    Dataset::new(config.name.clone(), Granularity::Yearly, records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::load_dataset;
    use crate::stats::{build_design_matrix, weighted_least_squares};

    #[test]
    fn noiseless_generation_is_exactly_identifiable() {
        let cfg = SynthConfig {
            noise_sd: 0.0,
            projects: 40,
            periods: 4,
            ..Default::default()
        };
        let ds = synthesize(&cfg).unwrap();
        let design = build_design_matrix(ds.records(), &SynthConfig::formula()).unwrap();
        let fit = weighted_least_squares(&design, &vec![1.0; ds.len()]).unwrap();
        assert!((fit.coefficients[0] - cfg.intercept).abs() < 1e-9);
        assert!((fit.coefficients[1] - cfg.slope).abs() < 1e-9);
    }

    #[test]
    fn deterministic_and_round_trips() {
        let cfg = SynthConfig::default();
        let a = synthesize(&cfg).unwrap();
        let b = synthesize(&cfg).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        let other = synthesize(&SynthConfig {
            seed: 2,
            ..cfg.clone()
        })
        .unwrap();
        assert_ne!(a, other);

        let csv = a.to_csv().unwrap();
        let back = load_dataset(&cfg.descriptor(&a), csv.as_bytes()).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.period_ordinals().first(), Some(&2000));
        assert_eq!(a.period_ordinals().last(), Some(&2007));
    }

    #[test]
    fn infeasible_configs() {
        for cfg in [
            SynthConfig {
                projects: 5,
                ..Default::default()
            },
            SynthConfig {
                noise_sd: -1.0,
                ..Default::default()
            },
            SynthConfig {
                size_min: 10.0,
                size_max: 10.0,
                ..Default::default()
            },
            SynthConfig {
                periods: 1,
                ..Default::default()
            },
        ] {
            assert!(matches!(synthesize(&cfg), Err(Error::InvalidConfig(_))));
        }
    }
}
