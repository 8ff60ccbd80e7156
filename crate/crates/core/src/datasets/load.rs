//! CSV ingestion under a [`DatasetDescriptor`].

use std::collections::{BTreeMap, HashMap};
use std::io::Read;
use std::path::Path;

use crate::calendar::{CalendarPoint, DEFAULT_DATE_FORMATS};
use crate::chronology::completion_date;
use crate::datasets::cocomo::rating_multiplier;
use crate::datasets::descriptor::{DatasetDescriptor, DurationUnit, RowFilter, EAF_ATTRIBUTE};
use crate::datasets::{Dataset, ProjectRecord};
use crate::error::{Error, Result};
use crate::stats::Term;

/// Cell values treated as missing.
pub const MISSING_TOKENS: [&str; 5] = ["", "?", "NA", "N/A", "null"];

const DAYS_PER_MONTH: f64 = 365.25 / 12.0;

fn is_missing(v: &str) -> bool {
    MISSING_TOKENS.iter().any(|t| t.eq_ignore_ascii_case(v))
}

pub fn load_dataset_from_path(descriptor: &DatasetDescriptor, path: &Path) -> Result<Dataset> {
    load_dataset(descriptor, std::fs::File::open(path)?)
}

/// Parses, filters and validates `source`.
pub fn load_dataset<R: Read>(descriptor: &DatasetDescriptor, source: R) -> Result<Dataset> {
    descriptor.validate()?;
    let cols = &descriptor.columns;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let header: HashMap<String, usize> = reader
        .headers()?
        .iter()
        .enumerate()
        .map(|(i, h)| (h.to_string(), i))
        .collect();
    for c in cols.csv_columns() {
        if !header.contains_key(c) {
            return Err(Error::MissingColumn(c.to_string()));
        }
    }
    let formats: Vec<&str> = if cols.date_formats.is_empty() {
        DEFAULT_DATE_FORMATS.to_vec()
    } else {
        cols.date_formats.iter().map(String::as_str).collect()
    };

    let mut records = Vec::new();
    for (row_no, row) in reader.records().enumerate() {
        let row = row?;
        let cell = |col: &str| -> Option<&str> {
            let v = row.get(header[col]).unwrap_or("");
            (!is_missing(v)).then_some(v)
        };
        let id = match &cols.id {
            Some(c) => cell(c)
                .ok_or_else(|| Error::MissingValue {
                    record: format!("row-{}", row_no + 1),
                    column: c.clone(),
                })?
                .to_string(),
            None => format!("row-{}", row_no + 1),
        };

        let mut attributes: BTreeMap<String, String> = cols
            .attributes
            .iter()
            .filter_map(|(name, col)| cell(col).map(|v| (name.clone(), v.to_string())))
            .collect();
        if let Some(drivers) = &cols.cocomo_multipliers {
            let mut eaf = 1.0;
            let mut complete = true;
            for (driver, col) in drivers {
                match cell(col) {
                    None => complete = false,
                    Some(v) => {
                        let m =
                            rating_multiplier(driver, v).ok_or_else(|| Error::TypeMismatch {
                                record: id.clone(),
                                column: col.clone(),
                                value: v.to_string(),
                            })?;
                        if !(m.is_finite() && m > 0.0) {
                            return Err(Error::NonPositiveMultiplier {
                                name: driver.clone(),
                                value: m,
                            });
                        }
                        eaf *= m;
                    }
                }
            }
            if complete {
                attributes.insert(EAF_ATTRIBUTE.to_string(), eaf.to_string());
            }
        }

        if !descriptor.filters.iter().all(|f| keep(f, &attributes)) {
            continue;
        }

        let start = cols
            .start
            .as_deref()
            .and_then(&cell)
            .map(|v| CalendarPoint::parse_with(v, &formats))
            .transpose()?;
        let duration_days =
            match cols.duration.as_deref().and_then(&cell) {
                None => None,
                Some(v) => Some(parse_duration(v, cols.duration_unit).ok_or_else(|| {
                    Error::TypeMismatch {
                        record: id.clone(),
                        column: cols.duration.clone().unwrap_or_default(),
                        value: v.to_string(),
                    }
                })?),
            };

        let completion = match cols.completion.as_deref().and_then(&cell) {
            Some(v) => match cols.year_offset {
                Some(off) => {
                    let k: i32 = v.parse().map_err(|_| Error::InvalidDate {
                        value: v.to_string(),
                    })?;
                    CalendarPoint::Year(k + off)
                }
                None => CalendarPoint::parse_with(v, &formats)?,
            },
            None => match (start, duration_days) {
                (Some(s), Some(d)) => CalendarPoint::Date(completion_date(s.first_day(), d)?),
                _ => {
                    return Err(Error::MissingValue {
                        record: id,
                        column: cols
                            .completion
                            .clone()
                            .unwrap_or_else(|| "completion".to_string()),
                    })
                }
            },
        };

        let record = ProjectRecord {
            id,
            completion,
            start,
            duration_days,
            attributes,
        };
        check_formula_values(descriptor, &record)?;
        records.push(record);
    }

    if let Some(expected) = descriptor.expected_rows {
        if records.len() != expected {
            return Err(Error::RowCountMismatch {
                expected,
                found: records.len(),
            });
        }
    }
    Dataset::new(descriptor.name.clone(), descriptor.granularity, records)
}

fn keep(filter: &RowFilter, attributes: &BTreeMap<String, String>) -> bool {
    match filter {
        RowFilter::NotMissing { column } => attributes.contains_key(column),
        RowFilter::Equals { column, value } => match attributes.get(column) {
            None => false,
            Some(v) if v == value => true,
            Some(v) => matches!(
                (v.parse::<f64>(), value.parse::<f64>()),
                (Ok(a), Ok(b)) if a == b
            ),
        },
    }
}

fn parse_duration(v: &str, unit: DurationUnit) -> Option<i64> {
    let x: f64 = v
        .parse()
        .ok()
        .filter(|x: &f64| x.is_finite() && *x >= 0.0)?;
    let days = match unit {
        DurationUnit::Days => x,
        DurationUnit::Weeks => x * 7.0,
        DurationUnit::Months => x * DAYS_PER_MONTH,
    };
    Some(days.round() as i64)
}

fn check_formula_values(descriptor: &DatasetDescriptor, record: &ProjectRecord) -> Result<()> {
    let f = &descriptor.formula;
    record.numeric(&f.response.column)?;
    for t in &f.terms {
        match t {
            Term::Numeric { column, .. } => {
                record.numeric(column)?;
            }
            Term::Categorical { column, .. } => {
                record.attr(column)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::builtin_descriptor;
    use chrono::NaiveDate;

    const DESHARNAIS_LIKE: &str = "\
Project,TeamExp,ManagerExp,YearEnd,Effort,PointsAjust,Language
1,1,4,85,5152,253,1
2,0,0,86,5635,197,1
3,?,2,85,805,40,2
4,2,1,87,3829,200,3
";

    #[test]
    fn filters_and_parses_two_digit_years() {
        let mut d = builtin_descriptor("desharnais").unwrap();
        d.expected_rows = Some(3);
        let ds = load_dataset(&d, DESHARNAIS_LIKE.as_bytes()).unwrap();
        let ids: Vec<_> = ds.records().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["1", "2", "4"]);
        assert_eq!(ds.records()[2].completion, CalendarPoint::Year(1987));

        d.expected_rows = Some(4);
        assert!(matches!(
            load_dataset(&d, DESHARNAIS_LIKE.as_bytes()),
            Err(Error::RowCountMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn missing_bound_column_is_named() {
        let d = builtin_descriptor("desharnais").unwrap();
        let csv = DESHARNAIS_LIKE.replace("PointsAjust", "Points");
        assert!(matches!(
            load_dataset(&d, csv.as_bytes()),
            Err(Error::MissingColumn(c)) if c == "PointsAjust"
        ));
    }

    #[test]
    fn type_mismatch_and_duplicates() {
        let mut d = builtin_descriptor("desharnais").unwrap();
        d.expected_rows = None;
        let csv = DESHARNAIS_LIKE.replace("5635", "lots");
        assert!(matches!(
            load_dataset(&d, csv.as_bytes()),
            Err(Error::TypeMismatch { .. })
        ));
        let csv = DESHARNAIS_LIKE.replace("4,2,1,87", "1,2,1,87");
        assert!(matches!(
            load_dataset(&d, csv.as_bytes()),
            Err(Error::DuplicateId(_))
        ));
    }

    #[test]
    fn completion_derived_from_start_and_duration() {
        let mut d = builtin_descriptor("kitchenham").unwrap();
        d.expected_rows = None;
        let csv = "\
Project,Client.code,Project.type,Actual.start.date,Actual.duration,Actual.effort,Adjusted.function.points
1,2,D,31-Dec-94,1,100,10
2,1,D,01-Jan-95,10,100,10
3,2.0,P,28-Feb-96,1,200,20
";
        let ds = load_dataset(&d, csv.as_bytes()).unwrap();
        let done: Vec<_> = ds.records().iter().map(|r| r.completion).collect();
        assert_eq!(
            done,
            [
                CalendarPoint::Date(NaiveDate::from_ymd_opt(1995, 1, 1).unwrap()),
                CalendarPoint::Date(NaiveDate::from_ymd_opt(1996, 2, 29).unwrap()),
            ]
        );
    }

    #[test]
    fn cocomo_ratings_become_eaf() {
        let mut d = builtin_descriptor("nasa93").unwrap();
        d.expected_rows = None;
        let drivers = crate::datasets::cocomo::MULTIPLIER_NAMES.join(",");
        let csv = format!(
            "recordnumber,year,mode,equivphyskloc,act_effort,{drivers}\n\
             1,1985,organic,10,50,h,n,vh,n,n,n,n,n,n,n,n,n,n,n,n\n\
             2,1986,embedded,20,150,1.15,n,n,n,n,n,n,n,n,n,n,n,n,n,n\n"
        );
        let ds = load_dataset(&d, csv.as_bytes()).unwrap();
        let eaf: Vec<f64> = ds
            .records()
            .iter()
            .map(|r| r.numeric("eaf").unwrap())
            .collect();
        assert!((eaf[0] - 1.15 * 1.30).abs() < 1e-12);
        assert_eq!(eaf[1], 1.15);
    }

    #[test]
    fn year_offset_counter() {
        let d = DatasetDescriptor {
            expected_rows: None,
            ..builtin_descriptor("maxwell").unwrap()
        };
        let csv = "Syear,Time,Effort,Size,T08,T09\n86,2,500,100,3,4\n1987,4,800,150,2,5\n";
        let ds = load_dataset(&d, csv.as_bytes()).unwrap();
        assert_eq!(ds.records()[0].completion, CalendarPoint::Year(1986));
        assert_eq!(ds.records()[1].start, Some(CalendarPoint::Year(1987)));
        assert_eq!(ds.records()[0].id, "row-1");
    }
}
