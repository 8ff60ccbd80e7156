//! Sequential-accumulation split plans: training sets grow one completion
//! period at a time and each is evaluated on the projects that follow.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::calendar::Granularity;
use crate::datasets::{Dataset, ProjectRecord};
use crate::error::{Error, Result};
use crate::kernels::{elapsed, PeriodIndex};
use crate::stats::ModelFormula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChronologyMode {
    /// Test on every project of the next project-bearing period.
    YearAccumulate,
    /// As `YearAccumulate`, keeping only test projects that started after the
    /// last training project was completed.
    DateFilteredTest,
    /// Test on everything left after the training set.
    RemainderTest,
}

impl ChronologyMode {
    pub fn name(self) -> &'static str {
        match self {
            ChronologyMode::YearAccumulate => "year_accumulate",
            ChronologyMode::DateFilteredTest => "date_filtered_test",
            ChronologyMode::RemainderTest => "remainder_test",
        }
    }
}

impl fmt::Display for ChronologyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChronologyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ChronologyMode::YearAccumulate,
            ChronologyMode::DateFilteredTest,
            ChronologyMode::RemainderTest,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown chronology mode `{s}`")))
    }
}

/// Where the all-data split is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllDataTarget {
    /// One increment after the newest period, so the newest projects are
    /// themselves discounted by one step.
    #[default]
    NextPeriod,
    /// The newest period itself.
    LastPeriod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    /// 1-based position in the plan.
    pub ordinal: usize,
    pub train: Vec<String>,
    /// Empty for the all-data split.
    pub test: Vec<String>,
    /// Row positions in the dataset, aligned with `train` and `test`.
    pub train_rows: Vec<usize>,
    pub test_rows: Vec<usize>,
    pub target_period: PeriodIndex,
    /// Largest elapsed time between a training project and the target.
    pub train_span: f64,
}

impl Split {
    pub fn is_all_data(&self) -> bool {
        self.test.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub mode: ChronologyMode,
    pub granularity: Granularity,
    pub splits: Vec<Split>,
}

impl SplitPlan {
    /// Splits that carry a test set.
    pub fn test_splits(&self) -> impl Iterator<Item = &Split> {
        self.splits.iter().filter(|s| !s.is_all_data())
    }

    pub fn all_data(&self) -> &Split {
        self.splits
            .last()
            .expect("a plan always ends with the all-data split")
    }

    /// Largest training span over every split.
    pub fn max_elapsed(&self) -> f64 {
        self.splits.iter().map(|s| s.train_span).fold(0.0, f64::max)
    }

    /// Checks the structural invariants against the dataset the plan was
    /// built from.
    pub fn check(&self, dataset: &Dataset, min_train: usize) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidOverride(m));
        let ordinals = dataset.period_ordinals();
        let Some(last) = self.splits.last() else {
            return fail("empty plan".into());
        };
        if !last.is_all_data() || last.train.len() != dataset.len() {
            return fail("plan must end with the all-data split".into());
        }
        for (k, s) in self.splits.iter().enumerate() {
            if s.ordinal != k + 1 || s.train.is_empty() || s.train.len() < min_train {
                return fail(format!("split {} is not well formed", s.ordinal));
            }
            if !s.test.is_empty() && s.test.len() < 2 {
                return fail(format!("split {} has a singleton test set", s.ordinal));
            }
            let train: BTreeSet<_> = s.train_rows.iter().collect();
            if s.test_rows.iter().any(|r| train.contains(r)) {
                return fail(format!("split {} overlaps train and test", s.ordinal));
            }
            let newest_train = s.train_rows.iter().map(|&r| ordinals[r]).max();
            let oldest_test = s.test_rows.iter().map(|&r| ordinals[r]).min();
            if let (Some(a), Some(b)) = (newest_train, oldest_test) {
                if a > b {
                    return fail(format!("split {} tests on older projects", s.ordinal));
                }
            }
            if k > 0 {
                let prev: BTreeSet<_> = self.splits[k - 1].train_rows.iter().collect();
                if !(prev.is_subset(&train) && prev.len() < train.len()) {
                    return fail(format!("split {} does not grow training", s.ordinal));
                }
            }
        }
        Ok(())
    }

    /// CSV with one row per split; ids are joined with `;`.
    pub fn to_table(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "split",
            "target_period",
            "train_span",
            "train_size",
            "test_size",
            "train_ids",
            "test_ids",
        ])?;
        for s in &self.splits {
            w.write_record([
                s.ordinal.to_string(),
                s.target_period.to_string(),
                s.train_span.to_string(),
                s.train.len().to_string(),
                s.test.len().to_string(),
                s.train.join(";"),
                s.test.join(";"),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Smallest training set for a well-formed model: two plus the number of
/// non-intercept design columns, with one indicator per non-reference level
/// present in `records`.
pub fn well_formed_min(formula: &ModelFormula, records: &[ProjectRecord]) -> usize {
    2 + formula.explanatory_count(records)
}

/// `start` advanced by `duration_days` calendar days.
pub fn completion_date(start: NaiveDate, duration_days: i64) -> Result<NaiveDate> {
    let bad = || Error::InvalidDate {
        value: format!("{start} + {duration_days} days"),
    };
    let days = u64::try_from(duration_days).map_err(|_| bad())?;
    start.checked_add_days(Days::new(days)).ok_or_else(bad)
}

/// Earliest test period, or for the all-data split (empty `test`) the newest
/// training period moved according to `rule`.
pub fn target_period(
    train: &[PeriodIndex],
    test: &[PeriodIndex],
    granularity: Granularity,
    rule: AllDataTarget,
) -> Result<PeriodIndex> {
    if let Some(t) = test
        .iter()
        .copied()
        .min_by(|a, b| a.value().total_cmp(&b.value()))
    {
        return Ok(t);
    }
    let newest = train
        .iter()
        .map(|p| p.value())
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
        .ok_or(Error::EmptyInput("training periods"))?;
    let offset = (newest / granularity.increment()).round() as i64 - 1;
    let step = match rule {
        AllDataTarget::NextPeriod => 1,
        AllDataTarget::LastPeriod => 0,
    };
    PeriodIndex::new(granularity.index_at(offset + step))
}

/// Builds the plan with the all-data split evaluated one period ahead.
pub fn build_split_plan(
    dataset: &Dataset,
    mode: ChronologyMode,
    formula: &ModelFormula,
    overrides: Option<&[usize]>,
) -> Result<SplitPlan> {
    build_split_plan_with(dataset, mode, formula, overrides, AllDataTarget::default())
}

pub fn build_split_plan_with(
    dataset: &Dataset,
    mode: ChronologyMode,
    formula: &ModelFormula,
    overrides: Option<&[usize]>,
    all_data: AllDataTarget,
) -> Result<SplitPlan> {
    let records = dataset.records();
    let n = records.len();
    let min = well_formed_min(formula, records);
    if n < min {
        return Err(Error::NoWellFormedSplit(format!(
            "{n} projects but a well-formed model needs {min}"
        )));
    }
    if mode == ChronologyMode::DateFilteredTest {
        if let Some(r) = records.iter().find(|r| r.start.is_none()) {
            return Err(Error::MissingValue {
                record: r.id.clone(),
                column: "start".into(),
            });
        }
    }

    // period groups as half-open row ranges; records are sorted by period
    let ordinals = dataset.period_ordinals();
    let mut bounds = Vec::new();
    for i in 1..=n {
        if i == n || ordinals[i] != ordinals[i - 1] {
            bounds.push(i);
        }
    }

    // (training size, test rows)
    let mut cuts: Vec<(usize, Vec<usize>)> = Vec::new();
    let test_for = |cut: usize| -> Vec<usize> {
        match mode {
            ChronologyMode::RemainderTest => (cut..n).collect(),
            ChronologyMode::YearAccumulate | ChronologyMode::DateFilteredTest => {
                let Some(&end) = bounds.iter().find(|&&b| b > cut) else {
                    return Vec::new();
                };
                let newest_done = records[..cut]
                    .iter()
                    .map(|r| r.completion.last_day())
                    .max()
                    .expect("nonempty training");
                (cut..end)
                    .filter(|&i| {
                        mode == ChronologyMode::YearAccumulate
                            || records[i].start.expect("checked").first_day() > newest_done
                    })
                    .collect()
            }
        }
    };

    match overrides {
        None => {
            for &cut in bounds.iter().filter(|&&b| b >= min && b < n) {
                let test = test_for(cut);
                if test.len() >= 2 {
                    cuts.push((cut, test));
                }
            }
        }
        Some(sizes) => {
            let bad = |m: String| Err(Error::InvalidOverride(m));
            if sizes.windows(2).any(|w| w[0] >= w[1]) {
                return bad("training sizes must be strictly increasing".into());
            }
            for &cut in sizes {
                if cut < min {
                    return bad(format!("training size {cut} is below the minimum of {min}"));
                }
                if cut + 2 > n {
                    return bad(format!(
                        "training size {cut} leaves fewer than 2 of {n} projects to test"
                    ));
                }
                if mode != ChronologyMode::RemainderTest && !bounds.contains(&cut) {
                    return bad(format!(
                        "training size {cut} is inconsistent with chronology: it splits a completion period"
                    ));
                }
                let test = test_for(cut);
                if test.len() < 2 {
                    return bad(format!(
                        "training size {cut} leaves a test set of {}",
                        test.len()
                    ));
                }
                cuts.push((cut, test));
            }
        }
    }

    let indices = dataset.period_indices();
    let oldest = indices[0];
    let make = |ordinal: usize, cut: usize, test: Vec<usize>| -> Result<Split> {
        let train_idx = &indices[..cut];
        let test_idx: Vec<PeriodIndex> = test.iter().map(|&i| indices[i]).collect();
        let target = target_period(train_idx, &test_idx, dataset.granularity, all_data)?;
        Ok(Split {
            ordinal,
            train: records[..cut].iter().map(|r| r.id.clone()).collect(),
            test: test.iter().map(|&i| records[i].id.clone()).collect(),
            train_rows: (0..cut).collect(),
            test_rows: test,
            target_period: target,
            train_span: elapsed(oldest, target),
        })
    };
    let mut splits = Vec::with_capacity(cuts.len() + 1);
    for (k, (cut, test)) in cuts.into_iter().enumerate() {
        splits.push(make(k + 1, cut, test)?);
    }
    splits.push(make(splits.len() + 1, n, Vec::new())?);
    Ok(SplitPlan {
        mode,
        granularity: dataset.granularity,
        splits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calendar::CalendarPoint;
    use crate::datasets::SynthConfig;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn rec(id: &str, completion: CalendarPoint, start: Option<CalendarPoint>) -> ProjectRecord {
        ProjectRecord {
            id: id.into(),
            completion,
            start,
            duration_days: None,
            attributes: BTreeMap::from([
                ("effort".to_string(), "10".to_string()),
                ("size".to_string(), "5".to_string()),
            ]),
        }
    }

    fn yearly(years: &[i32]) -> Dataset {
        let recs = years
            .iter()
            .enumerate()
            .map(|(i, &y)| rec(&format!("p{i:02}"), CalendarPoint::Year(y), None))
            .collect();
        Dataset::new("t", Granularity::Yearly, recs).unwrap()
    }

    fn formula() -> ModelFormula {
        SynthConfig::formula()
    }

    #[test]
    fn completion_date_examples() {
        let d = |y, m, dd| NaiveDate::from_ymd_opt(y, m, dd).unwrap();
        assert_eq!(completion_date(d(1994, 1, 1), 0).unwrap(), d(1994, 1, 1));
        assert_eq!(completion_date(d(1994, 12, 31), 1).unwrap(), d(1995, 1, 1));
        assert_eq!(completion_date(d(1996, 2, 28), 1).unwrap(), d(1996, 2, 29));
        assert!(completion_date(d(1996, 2, 28), -1).is_err());
    }

    #[test]
    fn target_period_examples() {
        let p = |v| PeriodIndex::new(v).unwrap();
        let train: Vec<_> = (1..=7).map(|v| p(v as f64)).collect();
        let t = target_period(
            &train,
            &[p(8.0), p(9.0)],
            Granularity::Yearly,
            AllDataTarget::NextPeriod,
        );
        assert_eq!(t.unwrap().value(), 8.0);
        let all: Vec<_> = (1..=16).map(|v| p(v as f64)).collect();
        let t = target_period(&all, &[], Granularity::Yearly, AllDataTarget::NextPeriod);
        assert_eq!(t.unwrap().value(), 17.0);
        let t = target_period(&all, &[], Granularity::Yearly, AllDataTarget::LastPeriod);
        assert_eq!(t.unwrap().value(), 16.0);
        let months: Vec<_> = (1..=18).map(|k| p(k as f64 / 10.0)).collect();
        let t = target_period(
            &months,
            &[],
            Granularity::Monthly,
            AllDataTarget::NextPeriod,
        );
        assert_eq!(t.unwrap().value(), 1.9);
    }

    #[test]
    fn skips_empty_years_and_merges_singletons() {
        // 1978 x2, 1979 x2, 1980 x2, 1982 x3, 1983 x1, 1984 x2
        let ds = yearly(&[
            1978, 1978, 1979, 1979, 1980, 1980, 1982, 1982, 1982, 1983, 1984, 1984,
        ]);
        let plan = build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), None).unwrap();
        let shape: Vec<(usize, usize, f64)> = plan
            .splits
            .iter()
            .map(|s| (s.train.len(), s.test.len(), s.target_period.value()))
            .collect();
        // minimum is 3, so the first training set runs through 1979
        assert_eq!(
            shape,
            [(4, 2, 3.0), (6, 3, 5.0), (10, 2, 7.0), (12, 0, 8.0)]
        );
        assert_eq!(plan.splits[1].train_span, 4.0);
        plan.check(&ds, 3).unwrap();
    }

    #[test]
    fn date_filter_drops_early_starters() {
        let y = CalendarPoint::Year;
        let recs = vec![
            rec("a", y(1990), Some(y(1989))),
            rec("b", y(1990), Some(y(1990))),
            rec("c", y(1990), Some(y(1988))),
            rec("d", y(1991), Some(y(1991))),
            rec("e", y(1991), Some(y(1990))),
            rec("f", y(1991), Some(y(1991))),
            rec("g", y(1992), Some(y(1992))),
            rec("h", y(1992), Some(y(1992))),
        ];
        let ds = Dataset::new("t", Granularity::Yearly, recs).unwrap();
        let filtered =
            build_split_plan(&ds, ChronologyMode::DateFilteredTest, &formula(), None).unwrap();
        assert_eq!(filtered.splits[0].test, ["d", "f"]);
        let all = build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), None).unwrap();
        assert_eq!(all.splits[0].test, ["d", "e", "f"]);
        // the early starter still joins the next training set
        assert_eq!(filtered.splits[1].train.len(), 6);
    }

    #[test]
    fn remainder_with_overrides() {
        let months: Vec<CalendarPoint> = (0..16)
            .map(|k| CalendarPoint::Month {
                year: 1999 + (9 + k) / 12,
                month: ((9 + k) % 12 + 1) as u32,
            })
            .collect();
        let recs = months
            .iter()
            .enumerate()
            .map(|(i, &m)| rec(&format!("x{i:02}"), m, None))
            .collect();
        let ds = Dataset::new("xbc", Granularity::Monthly, recs).unwrap();
        let plan = build_split_plan(
            &ds,
            ChronologyMode::RemainderTest,
            &formula(),
            Some(&[7, 10, 12, 13, 14]),
        )
        .unwrap();
        let sizes: Vec<(usize, usize)> = plan
            .splits
            .iter()
            .map(|s| (s.train.len(), s.test.len()))
            .collect();
        assert_eq!(sizes, [(7, 9), (10, 6), (12, 4), (13, 3), (14, 2), (16, 0)]);
        assert_eq!(plan.splits[0].target_period.value(), 0.8);
        assert_eq!(plan.all_data().target_period.value(), 1.7);
        plan.check(&ds, 3).unwrap();

        for bad in [&[2usize][..], &[15], &[8, 8]] {
            assert!(matches!(
                build_split_plan(&ds, ChronologyMode::RemainderTest, &formula(), Some(bad)),
                Err(Error::InvalidOverride(_))
            ));
        }
    }

    #[test]
    fn overrides_must_respect_year_boundaries() {
        let ds = yearly(&[1990, 1990, 1990, 1991, 1991, 1992, 1992]);
        assert!(matches!(
            build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), Some(&[4])),
            Err(Error::InvalidOverride(m)) if m.contains("inconsistent")
        ));
        let plan =
            build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), Some(&[5])).unwrap();
        assert_eq!(plan.splits[0].test.len(), 2);
    }

    #[test]
    fn too_few_projects() {
        let ds = yearly(&[1990, 1991]);
        assert!(matches!(
            build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), None),
            Err(Error::NoWellFormedSplit(_))
        ));
    }

    #[test]
    fn table_form() {
        let ds = yearly(&[1990, 1990, 1990, 1991, 1991]);
        let plan = build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), None).unwrap();
        assert_eq!(
            plan.to_table().unwrap(),
            "split,target_period,train_span,train_size,test_size,train_ids,test_ids\n\
             1,2,1,3,2,p00;p01;p02,p03;p04\n\
             2,3,2,5,0,p00;p01;p02;p03;p04,\n"
        );
    }

    proptest! {
        #[test]
        fn plans_satisfy_invariants(
            years in proptest::collection::vec(1980i32..1995, 3..40),
            starts in proptest::collection::vec(0i32..3, 40),
            mode in prop_oneof![
                Just(ChronologyMode::YearAccumulate),
                Just(ChronologyMode::DateFilteredTest),
                Just(ChronologyMode::RemainderTest),
            ],
        ) {
            let recs = years
                .iter()
                .enumerate()
                .map(|(i, &y)| rec(
                    &format!("p{i:02}"),
                    CalendarPoint::Year(y),
                    Some(CalendarPoint::Year(y - starts[i])),
                ))
                .collect();
            let ds = Dataset::new("t", Granularity::Yearly, recs).unwrap();
            let plan = build_split_plan(&ds, mode, &formula(), None).unwrap();
            plan.check(&ds, 3).unwrap();
            let all: BTreeSet<_> = plan.all_data().train.iter().cloned().collect();
            prop_assert_eq!(all.len(), ds.len());
            let again = build_split_plan(&ds, mode, &formula(), None).unwrap();
            prop_assert_eq!(plan.to_table().unwrap(), again.to_table().unwrap());

            if mode == ChronologyMode::DateFilteredTest {
                let year = build_split_plan(&ds, ChronologyMode::YearAccumulate, &formula(), None).unwrap();
                for s in plan.test_splits() {
                    let twin = year
                        .test_splits()
                        .find(|t| t.train.len() == s.train.len())
                        .expect("same training sequence");
                    let tw: BTreeSet<_> = twin.test.iter().collect();
                    prop_assert!(s.test.iter().all(|id| tw.contains(id)));
                }
            }
        }
    }
}
