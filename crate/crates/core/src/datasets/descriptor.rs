//! Declarative mapping from a raw CSV to a fittable dataset.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::calendar::Granularity;
use crate::chronology::ChronologyMode;
use crate::datasets::cocomo::MULTIPLIER_NAMES;
use crate::error::{Error, Result};
use crate::stats::{ModelFormula, Term};

/// Attribute name under which the COCOMO81 effort adjustment factor is
/// exposed when multiplier columns are bound.
pub const EAF_ATTRIBUTE: &str = "eaf";

pub const BUILTIN_NAMES: [&str; 5] = ["nasa93", "desharnais", "kitchenham", "maxwell", "xbc"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DurationUnit {
    #[default]
    Days,
    Weeks,
    Months,
}

/// Which CSV columns hold what.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnBindings {
    /// Row number (`row-1`, `row-2`, ...) when absent.
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub completion: Option<String>,
    /// Added to integer completion values (e.g. a period counter).
    #[serde(default)]
    pub year_offset: Option<i32>,
    #[serde(default)]
    pub start: Option<String>,
    #[serde(default)]
    pub duration: Option<String>,
    #[serde(default)]
    pub duration_unit: DurationUnit,
    /// chrono formats for full dates; a built-in list is tried when empty.
    #[serde(default)]
    pub date_formats: Vec<String>,
    /// Model attribute name to CSV column.
    pub attributes: BTreeMap<String, String>,
    /// COCOMO81 driver name to CSV column. Values may be numeric multipliers
    /// or rating labels; their product becomes the `eaf` attribute.
    #[serde(default)]
    pub cocomo_multipliers: Option<BTreeMap<String, String>>,
}

impl ColumnBindings {
    /// Every CSV column the bindings read.
    pub fn csv_columns(&self) -> Vec<&str> {
        let mut cols: Vec<&str> = [&self.id, &self.completion, &self.start, &self.duration]
            .into_iter()
            .flatten()
            .map(String::as_str)
            .collect();
        cols.extend(self.attributes.values().map(String::as_str));
        if let Some(m) = &self.cocomo_multipliers {
            cols.extend(m.values().map(String::as_str));
        }
        cols
    }

    /// Attribute names available to formulas and filters.
    pub fn bound_attributes(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.attributes.keys().map(String::as_str).collect();
        if self.cocomo_multipliers.is_some() {
            names.push(EAF_ATTRIBUTE);
        }
        names
    }
}

/// Row predicate applied before validation. Filters only drop rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowFilter {
    Equals { column: String, value: String },
    NotMissing { column: String },
}

impl RowFilter {
    pub fn column(&self) -> &str {
        match self {
            RowFilter::Equals { column, .. } | RowFilter::NotMissing { column } => column,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetDescriptor {
    pub name: String,
    pub granularity: Granularity,
    pub chronology: ChronologyMode,
    pub columns: ColumnBindings,
    #[serde(default)]
    pub filters: Vec<RowFilter>,
    pub formula: ModelFormula,
    /// Training-set sizes that replace the automatic split plan.
    #[serde(default)]
    pub overrides: Option<Vec<usize>>,
    #[serde(default)]
    pub expected_rows: Option<usize>,
}

impl DatasetDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        let d: DatasetDescriptor = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDescriptor(format!("{}: {m}", self.name)));
        let bound = self.columns.bound_attributes();
        for col in self.formula.columns() {
            if !bound.contains(&col) {
                return bad(format!(
                    "formula column `{col}` is not bound to a CSV column"
                ));
            }
        }
        for f in &self.filters {
            if !bound.contains(&f.column()) {
                return bad(format!("filter column `{}` is not bound", f.column()));
            }
        }
        let c = &self.columns;
        if c.completion.is_none() && (c.start.is_none() || c.duration.is_none()) {
            return bad("bind `completion`, or both `start` and `duration`".into());
        }
        if let Some(m) = &c.cocomo_multipliers {
            if let Some(k) = m.keys().find(|k| !MULTIPLIER_NAMES.contains(&k.as_str())) {
                return bad(format!("unknown COCOMO81 driver `{k}`"));
            }
            if c.attributes.contains_key(EAF_ATTRIBUTE) {
                return bad(format!("`{EAF_ATTRIBUTE}` is derived from the multipliers"));
            }
        }
        if let Some(o) = &self.overrides {
            if o.is_empty() || o[0] == 0 || o.windows(2).any(|w| w[0] >= w[1]) {
                return bad("overrides must be positive and strictly increasing".into());
            }
        }
        if self.formula.terms.iter().any(
            |t| matches!(t, Term::Categorical { reference, .. } if reference.trim().is_empty()),
        ) {
            return bad("categorical terms need a reference level".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = serde_json::to_vec(self).expect("descriptor serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

impl fmt::Display for DatasetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dataset      {}", self.name)?;
        writeln!(f, "granularity  {}", self.granularity.name())?;
        writeln!(f, "chronology   {}", self.chronology)?;
        writeln!(f, "formula      {}", self.formula)?;
        let c = &self.columns;
        let show = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
        writeln!(
            f,
            "id           {}",
            c.id.clone().unwrap_or_else(|| "(row number)".into())
        )?;
        write!(f, "completion   {}", show(&c.completion))?;
        if let Some(off) = c.year_offset {
            write!(f, " (+{off})")?;
        }
        writeln!(f)?;
        writeln!(f, "start        {}", show(&c.start))?;
        writeln!(
            f,
            "duration     {} ({:?})",
            show(&c.duration),
            c.duration_unit
        )?;
        writeln!(f, "attributes")?;
        for (name, col) in &c.attributes {
            writeln!(f, "  {name:<12} <- {col}")?;
        }
        if let Some(m) = &c.cocomo_multipliers {
            let cols: Vec<&str> = m.keys().map(String::as_str).collect();
            writeln!(f, "  {EAF_ATTRIBUTE:<12} <- product of {}", cols.join(","))?;
        }
        for flt in &self.filters {
            match flt {
                RowFilter::Equals { column, value } => {
                    writeln!(f, "filter       {column} == {value}")?
                }
                RowFilter::NotMissing { column } => writeln!(f, "filter       {column} present")?,
            }
        }
        if let Some(o) = &self.overrides {
            writeln!(f, "overrides    {o:?}")?;
        }
        if let Some(n) = self.expected_rows {
            writeln!(f, "expected     {n} rows")?;
        }
        Ok(())
    }
}

pub fn builtin_descriptor(name: &str) -> Result<DatasetDescriptor> {
    let text = match name {
        "nasa93" => include_str!("../../descriptors/nasa93.json"),
        "desharnais" => include_str!("../../descriptors/desharnais.json"),
        "kitchenham" => include_str!("../../descriptors/kitchenham.json"),
        "maxwell" => include_str!("../../descriptors/maxwell.json"),
        "xbc" => include_str!("../../descriptors/xbc.json"),
        _ => return Err(Error::UnknownDescriptor(name.to_string())),
    };
    DatasetDescriptor::from_json(text)
}

/// A built-in name, or a path to a descriptor JSON file.
pub fn resolve_descriptor(name_or_path: &str) -> Result<DatasetDescriptor> {
    if BUILTIN_NAMES.contains(&name_or_path) {
        return builtin_descriptor(name_or_path);
    }
    let path = Path::new(name_or_path);
    if !path.is_file() {
        return Err(Error::UnknownDescriptor(name_or_path.to_string()));
    }
    DatasetDescriptor::from_json(&std::fs::read_to_string(path)?)
}
