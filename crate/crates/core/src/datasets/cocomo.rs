//! Intermediate COCOMO81: mode constants, the fifteen effort multipliers and
//! the nominal effort equation `a * KLOC^b * EAF`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working hours in a COCOMO person-month.
pub const PERSON_HOURS_PER_MONTH: f64 = 152.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CocomoMode {
    Organic,
    #[serde(alias = "semi-detached")]
    Semidetached,
    Embedded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocomoModeConstants {
    pub mode: CocomoMode,
    pub a: f64,
    pub b: f64,
}

impl CocomoMode {
    pub const ALL: [CocomoMode; 3] = [
        CocomoMode::Organic,
        CocomoMode::Semidetached,
        CocomoMode::Embedded,
    ];

    pub fn constants(self) -> CocomoModeConstants {
        let (a, b) = match self {
            CocomoMode::Organic => (3.2, 1.05),
            CocomoMode::Semidetached => (3.0, 1.12),
            CocomoMode::Embedded => (2.8, 1.20),
        };
        CocomoModeConstants { mode: self, a, b }
    }

    pub fn name(self) -> &'static str {
        match self {
            CocomoMode::Organic => "organic",
            CocomoMode::Semidetached => "semidetached",
            CocomoMode::Embedded => "embedded",
        }
    }
}

impl fmt::Display for CocomoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CocomoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .to_ascii_lowercase()
            .replace(['-', '_', ' '], "")
            .as_str()
        {
            "organic" => Ok(CocomoMode::Organic),
            "semidetached" => Ok(CocomoMode::Semidetached),
            "embedded" => Ok(CocomoMode::Embedded),
            _ => Err(Error::InvalidConfig(format!("unknown COCOMO mode `{s}`"))),
        }
    }
}

/// Names of the fifteen cost drivers in their customary order.
pub const MULTIPLIER_NAMES: [&str; 15] = [
    "rely", "data", "cplx", "time", "stor", "virt", "turn", "acap", "aexp", "pcap", "vexp", "lexp",
    "modp", "tool", "sced",
];

// Columns: very low, low, nominal, high, very high, extra high. NaN marks a
// rating the driver does not define.
const N: f64 = f64::NAN;
const RATING_TABLE: [[f64; 6]; 15] = [
    [0.75, 0.88, 1.00, 1.15, 1.40, N],
    [N, 0.94, 1.00, 1.08, 1.16, N],
    [0.70, 0.85, 1.00, 1.15, 1.30, 1.65],
    [N, N, 1.00, 1.11, 1.30, 1.66],
    [N, N, 1.00, 1.06, 1.21, 1.56],
    [N, 0.87, 1.00, 1.15, 1.30, N],
    [N, 0.87, 1.00, 1.07, 1.15, N],
    [1.46, 1.19, 1.00, 0.86, 0.71, N],
    [1.29, 1.13, 1.00, 0.91, 0.82, N],
    [1.42, 1.17, 1.00, 0.86, 0.70, N],
    [1.21, 1.10, 1.00, 0.90, N, N],
    [1.14, 1.07, 1.00, 0.95, N, N],
    [1.24, 1.10, 1.00, 0.91, 0.82, N],
    [1.24, 1.10, 1.00, 0.91, 0.83, N],
    [1.23, 1.08, 1.00, 1.04, 1.10, N],
];

fn rating_column(label: &str) -> Option<usize> {
    let l = label.trim().to_ascii_lowercase().replace([' ', '-'], "_");
    Some(match l.as_str() {
        "vl" | "very_low" => 0,
        "l" | "low" => 1,
        "n" | "nominal" => 2,
        "h" | "high" => 3,
        "vh" | "very_high" => 4,
        "xh" | "xhigh" | "extra_high" => 5,
        _ => return None,
    })
}

/// Multiplier for a driver given either a rating label (`vl`..`xh`) or a
/// numeric value.
pub fn rating_multiplier(driver: &str, value: &str) -> Option<f64> {
    if let Ok(v) = value.trim().parse::<f64>() {
        return Some(v);
    }
    let row = MULTIPLIER_NAMES.iter().position(|n| *n == driver)?;
    let v = RATING_TABLE[row][rating_column(value)?];
    (!v.is_nan()).then_some(v)
}

/// The fifteen COCOMO81 effort multipliers, nominal (1.0) by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EffortMultipliers {
    pub rely: f64,
    pub data: f64,
    pub cplx: f64,
    pub time: f64,
    pub stor: f64,
    pub virt: f64,
    pub turn: f64,
    pub acap: f64,
    pub aexp: f64,
    pub pcap: f64,
    pub vexp: f64,
    pub lexp: f64,
    pub modp: f64,
    pub tool: f64,
    pub sced: f64,
}

impl Default for EffortMultipliers {
    fn default() -> Self {
        Self::from_array([1.0; 15])
    }
}

impl EffortMultipliers {
    /// Values in [`MULTIPLIER_NAMES`] order.
    pub fn from_array(v: [f64; 15]) -> Self {
        EffortMultipliers {
            rely: v[0],
            data: v[1],
            cplx: v[2],
            time: v[3],
            stor: v[4],
            virt: v[5],
            turn: v[6],
            acap: v[7],
            aexp: v[8],
            pcap: v[9],
            vexp: v[10],
            lexp: v[11],
            modp: v[12],
            tool: v[13],
            sced: v[14],
        }
    }

    pub fn to_array(&self) -> [f64; 15] {
        [
            self.rely, self.data, self.cplx, self.time, self.stor, self.virt, self.turn, self.acap,
            self.aexp, self.pcap, self.vexp, self.lexp, self.modp, self.tool, self.sced,
        ]
    }
}

/// Effort adjustment factor: the product of all multipliers.
pub fn effective_multiplier(em: &EffortMultipliers) -> Result<f64> {
    let mut eaf = 1.0;
    for (name, v) in MULTIPLIER_NAMES.iter().zip(em.to_array()) {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NonPositiveMultiplier {
                name: (*name).to_string(),
                value: v,
            });
        }
        eaf *= v;
    }
    Ok(eaf)
}

/// Nominal effort in person-months.
pub fn cocomo_effort(mode: &CocomoModeConstants, kloc: f64, em: &EffortMultipliers) -> Result<f64> {
    if !(kloc.is_finite() && kloc > 0.0) {
        return Err(Error::NonPositiveSize(kloc));
    }
    Ok(mode.a * kloc.powf(mode.b) * effective_multiplier(em)?)
}
