//! Project records, dataset descriptors, CSV ingestion, COCOMO81 helpers and
//! the synthetic drift generator.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::calendar::{CalendarPoint, Granularity};
use crate::chronology::ChronologyMode;
use crate::error::{Error, Result};
use crate::kernels::{assign_period_indices, PeriodIndex};

pub mod cocomo;
pub mod descriptor;
pub mod load;
pub mod synth;

pub use cocomo::{
    cocomo_effort, effective_multiplier, rating_multiplier, CocomoMode, CocomoModeConstants,
    EffortMultipliers, MULTIPLIER_NAMES, PERSON_HOURS_PER_MONTH,
};
pub use descriptor::{
    builtin_descriptor, resolve_descriptor, ColumnBindings, DatasetDescriptor, DurationUnit,
    RowFilter, BUILTIN_NAMES, EAF_ATTRIBUTE,
};
pub use load::{load_dataset, load_dataset_from_path};
pub use synth::{synthesize, Drift, SynthConfig};

/// One completed project.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectRecord {
    pub id: String,
    pub completion: CalendarPoint,
    pub start: Option<CalendarPoint>,
    pub duration_days: Option<i64>,
    /// Non-missing attribute values keyed by model attribute name, verbatim.
    pub attributes: BTreeMap<String, String>,
}

impl ProjectRecord {
    pub fn attr(&self, column: &str) -> Result<&str> {
        self.attributes
            .get(column)
            .map(String::as_str)
            .ok_or_else(|| Error::MissingValue {
                record: self.id.clone(),
                column: column.to_string(),
            })
    }

    pub fn numeric(&self, column: &str) -> Result<f64> {
        let raw = self.attr(column)?;
        raw.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::TypeMismatch {
                record: self.id.clone(),
                column: column.to_string(),
                value: raw.to_string(),
            })
    }
}

/// Validated records in chronological order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub granularity: Granularity,
    records: Vec<ProjectRecord>,
}

impl Dataset {
    /// Sorts by completion period, then completion day, then id.
    pub fn new(
        name: impl Into<String>,
        granularity: Granularity,
        mut records: Vec<ProjectRecord>,
    ) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyInput("dataset records"));
        }
        let mut seen = BTreeSet::new();
        for r in &records {
            if !seen.insert(r.id.as_str()) {
                return Err(Error::DuplicateId(r.id.clone()));
            }
            r.completion.period_ordinal(granularity)?;
        }
        records.sort_by_cached_key(|r| {
            (
                r.completion.period_ordinal(granularity).expect("checked"),
                r.completion.first_day(),
                r.id.clone(),
            )
        });
        Ok(Dataset {
            name: name.into(),
            granularity,
            records,
        })
    }

    pub fn records(&self) -> &[ProjectRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Period index of every record, aligned with [`Dataset::records`].
    pub fn period_indices(&self) -> Vec<PeriodIndex> {
        let points: Vec<_> = self.records.iter().map(|r| r.completion).collect();
        assign_period_indices(&points, self.granularity).expect("validated at construction")
    }

    pub fn period_ordinals(&self) -> Vec<i64> {
        self.records
            .iter()
            .map(|r| {
                r.completion
                    .period_ordinal(self.granularity)
                    .expect("validated at construction")
            })
            .collect()
    }

    /// Union of attribute names across records.
    pub fn attribute_names(&self) -> Vec<String> {
        self.records
            .iter()
            .flat_map(|r| r.attributes.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Canonical CSV: `id,completion,start,duration_days,<attributes...>`.
    pub fn to_csv(&self) -> Result<String> {
        let attrs = self.attribute_names();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["id", "completion", "start", "duration_days"];
        header.extend(attrs.iter().map(String::as_str));
        w.write_record(&header)?;
        for r in &self.records {
            let mut row = vec![
                r.id.clone(),
                r.completion.to_string(),
                r.start.map(|s| s.to_string()).unwrap_or_default(),
                r.duration_days.map(|d| d.to_string()).unwrap_or_default(),
            ];
            row.extend(
                attrs
                    .iter()
                    .map(|a| r.attributes.get(a).cloned().unwrap_or_default()),
            );
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Descriptor that reads [`Dataset::to_csv`] output back into this
    /// dataset.
    pub fn canonical_descriptor(
        &self,
        chronology: ChronologyMode,
        formula: crate::stats::ModelFormula,
    ) -> DatasetDescriptor {
        let attributes = self
            .attribute_names()
            .into_iter()
            .map(|a| (a.clone(), a))
            .collect();
        DatasetDescriptor {
            name: self.name.clone(),
            granularity: self.granularity,
            chronology,
            columns: ColumnBindings {
                id: Some("id".into()),
                completion: Some("completion".into()),
                start: Some("start".into()),
                duration: Some("duration_days".into()),
                attributes,
                ..ColumnBindings::default()
            },
            filters: Vec::new(),
            formula,
            overrides: None,
            expected_rows: Some(self.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, year: i32) -> ProjectRecord {
        ProjectRecord {
            id: id.into(),
            completion: CalendarPoint::Year(year),
            start: None,
            duration_days: None,
            attributes: BTreeMap::from([("size".to_string(), "3".to_string())]),
        }
    }

    #[test]
    fn sorts_chronologically_and_rejects_duplicates() {
        let d = Dataset::new(
            "t",
            Granularity::Yearly,
            vec![rec("b", 1990), rec("a", 1985), rec("c", 1985)],
        )
        .unwrap();
        let ids: Vec<_> = d.records().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["a", "c", "b"]);
        assert_eq!(
            d.period_indices()
                .iter()
                .map(|p| p.value())
                .collect::<Vec<_>>(),
            [1.0, 1.0, 6.0]
        );

        assert!(matches!(
            Dataset::new("t", Granularity::Yearly, vec![rec("a", 1), rec("a", 2)]),
            Err(Error::DuplicateId(_))
        ));
        assert!(matches!(
            Dataset::new("t", Granularity::Monthly, vec![rec("a", 1990)]),
            Err(Error::InvalidDate { .. })
        ));
    }

    #[test]
    fn numeric_accessor() {
        let r = rec("x", 1990);
        assert_eq!(r.numeric("size").unwrap(), 3.0);
        assert!(matches!(r.numeric("nope"), Err(Error::MissingValue { .. })));
    }
}
