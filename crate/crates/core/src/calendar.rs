//! Calendar values as they appear in effort datasets: a bare completion year,
//! a year-month, or a full date.

use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resolution at which completion periods are indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    Yearly,
    Monthly,
}

impl Granularity {
    /// Index distance between two consecutive periods.
    pub fn increment(self) -> f64 {
        match self {
            Granularity::Yearly => 1.0,
            Granularity::Monthly => 0.1,
        }
    }

    /// Index of the period `offset` steps after the oldest one (offset 0 is
    /// the oldest period).
    pub fn index_at(self, offset: i64) -> f64 {
        match self {
            Granularity::Yearly => (offset + 1) as f64,
            // divide rather than multiply so 3 months is exactly 0.3
            Granularity::Monthly => (offset + 1) as f64 / 10.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Granularity::Yearly => "yearly",
            Granularity::Monthly => "monthly",
        }
    }
}

/// Default formats tried for full dates when a descriptor does not name one.
pub const DEFAULT_DATE_FORMATS: &[&str] = &[
    "%Y-%m-%d", "%Y/%m/%d", "%d/%m/%Y", "%d-%b-%Y", "%d-%b-%y", "%d %b %Y",
];

/// A point in calendar time at whatever precision the source recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CalendarPoint {
    Year(i32),
    Month { year: i32, month: u32 },
    Date(NaiveDate),
}

impl CalendarPoint {
    pub fn year(&self) -> i32 {
        match *self {
            CalendarPoint::Year(y) => y,
            CalendarPoint::Month { year, .. } => year,
            CalendarPoint::Date(d) => d.year(),
        }
    }

    pub fn month(&self) -> Option<u32> {
        match *self {
            CalendarPoint::Year(_) => None,
            CalendarPoint::Month { month, .. } => Some(month),
            CalendarPoint::Date(d) => Some(d.month()),
        }
    }

    /// Integer position of the containing period: the year for yearly
    /// granularity, months since year 0 for monthly granularity.
    pub fn period_ordinal(&self, granularity: Granularity) -> Result<i64> {
        match granularity {
            Granularity::Yearly => Ok(i64::from(self.year())),
            Granularity::Monthly => match self.month() {
                Some(m) => Ok(i64::from(self.year()) * 12 + i64::from(m) - 1),
                None => Err(Error::InvalidDate {
                    value: format!("{self} (monthly granularity needs a month)"),
                }),
            },
        }
    }

    /// First day covered by this value.
    pub fn first_day(&self) -> NaiveDate {
        match *self {
            CalendarPoint::Year(y) => NaiveDate::from_ymd_opt(y, 1, 1).expect("valid year"),
            CalendarPoint::Month { year, month } => {
                NaiveDate::from_ymd_opt(year, month, 1).expect("valid month")
            }
            CalendarPoint::Date(d) => d,
        }
    }

    /// Last day covered by this value.
    pub fn last_day(&self) -> NaiveDate {
        match *self {
            CalendarPoint::Year(y) => NaiveDate::from_ymd_opt(y, 12, 31).expect("valid year"),
            CalendarPoint::Month { .. } => {
                let first = self.first_day();
                first
                    .checked_add_months(Months::new(1))
                    .and_then(|d| d.pred_opt())
                    .expect("valid month end")
            }
            CalendarPoint::Date(d) => d,
        }
    }

    /// Parses a year (`1987`, two-digit `87` meaning 1987), a year-month
    /// (`1999-10`), or a date in one of `formats`.
    pub fn parse_with(raw: &str, formats: &[&str]) -> Result<Self> {
        let s = raw.trim();
        let bad = || Error::InvalidDate {
            value: raw.to_string(),
        };
        if s.is_empty() {
            return Err(bad());
        }
        if s.chars().all(|c| c.is_ascii_digit()) {
            let y: i32 = s.parse().map_err(|_| bad())?;
            let y = if s.len() <= 2 { 1900 + y } else { y };
            return Ok(CalendarPoint::Year(y));
        }
        if let Some((y, m)) = s.split_once('-') {
            let numeric = |p: &str| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit());
            if y.len() == 4 && m.len() <= 2 && numeric(y) && numeric(m) {
                let year: i32 = y.parse().map_err(|_| bad())?;
                let month: u32 = m.parse().map_err(|_| bad())?;
                if !(1..=12).contains(&month) {
                    return Err(bad());
                }
                return Ok(CalendarPoint::Month { year, month });
            }
        }
        formats
            .iter()
            .find_map(|f| NaiveDate::parse_from_str(s, f).ok())
            .map(CalendarPoint::Date)
            .ok_or_else(bad)
    }
}

impl FromStr for CalendarPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CalendarPoint::parse_with(s, DEFAULT_DATE_FORMATS)
    }
}

impl fmt::Display for CalendarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CalendarPoint::Year(y) => write!(f, "{y:04}"),
            CalendarPoint::Month { year, month } => write!(f, "{year:04}-{month:02}"),
            CalendarPoint::Date(d) => write!(f, "{}", d.format("%Y-%m-%d")),
        }
    }
}

impl From<CalendarPoint> for String {
    fn from(p: CalendarPoint) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for CalendarPoint {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_precision() {
        assert_eq!(
            "1979".parse::<CalendarPoint>().unwrap(),
            CalendarPoint::Year(1979)
        );
        assert_eq!(
            "85".parse::<CalendarPoint>().unwrap(),
            CalendarPoint::Year(1985)
        );
        assert_eq!(
            "1999-10".parse::<CalendarPoint>().unwrap(),
            CalendarPoint::Month {
                year: 1999,
                month: 10
            }
        );
        assert_eq!(
            "1994-01-02".parse::<CalendarPoint>().unwrap(),
            CalendarPoint::Date(NaiveDate::from_ymd_opt(1994, 1, 2).unwrap())
        );
        assert_eq!(
            "02/01/1994".parse::<CalendarPoint>().unwrap(),
            CalendarPoint::Date(NaiveDate::from_ymd_opt(1994, 1, 2).unwrap())
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<CalendarPoint>().is_err());
        assert!("nineteen".parse::<CalendarPoint>().is_err());
        assert!("1999-13".parse::<CalendarPoint>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1979", "1999-03", "2001-08-31"] {
            assert_eq!(s.parse::<CalendarPoint>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn monthly_ordinal_needs_month() {
        assert!(CalendarPoint::Year(1999)
            .period_ordinal(Granularity::Monthly)
            .is_err());
        let oct = CalendarPoint::Month {
            year: 1999,
            month: 10,
        };
        let jan = CalendarPoint::Month {
            year: 2000,
            month: 1,
        };
        let d = jan.period_ordinal(Granularity::Monthly).unwrap()
            - oct.period_ordinal(Granularity::Monthly).unwrap();
        assert_eq!(d, 3);
    }

    #[test]
    fn period_bounds() {
        let feb = CalendarPoint::Month {
            year: 1996,
            month: 2,
        };
        assert_eq!(
            feb.last_day(),
            NaiveDate::from_ymd_opt(1996, 2, 29).unwrap()
        );
        assert_eq!(
            CalendarPoint::Year(1990).last_day(),
            NaiveDate::from_ymd_opt(1990, 12, 31).unwrap()
        );
    }

    #[test]
    fn monthly_index_is_exact_tenths() {
        assert_eq!(Granularity::Monthly.index_at(2), 0.3);
        assert_eq!(Granularity::Yearly.index_at(15), 16.0);
    }
}
