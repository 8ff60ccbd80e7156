//! Files written by the command-line tool: curve tables, verdicts and run
//! manifests. Every file is written to a temporary sibling and renamed into
//! place.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{AnalysisConfig, Stationarity, Summary, SweepResult};
use crate::error::{Error, Result};
use crate::kernels::KernelKind;

pub const CURVES_FILE: &str = "curves.csv";
pub const VERDICTS_FILE: &str = "verdicts.json";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidConfig(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// One row of `curves.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub dataset: String,
    pub split: usize,
    pub kernel: KernelKind,
    pub bandwidth: f64,
    pub re_train_nu: f64,
    pub re_test_nu: Option<f64>,
    pub re_train_u: f64,
    pub re_test_u: Option<f64>,
}

pub fn curve_rows(sweep: &SweepResult) -> Vec<CurveRow> {
    sweep
        .cells
        .iter()
        .map(|c| CurveRow {
            dataset: sweep.dataset.clone(),
            split: c.split,
            kernel: c.kernel,
            bandwidth: c.bandwidth,
            re_train_nu: c.re_train_nu,
            re_test_nu: c.re_test_nu,
            re_train_u: c.re_train_u,
            re_test_u: c.re_test_u,
        })
        .collect()
}

pub fn curves_to_csv(rows: &[CurveRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "dataset",
            "split",
            "kernel",
            "bandwidth",
            "re_train_nu",
            "re_test_nu",
            "re_train_u",
            "re_test_u",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn curves_from_csv(text: &str) -> Result<Vec<CurveRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub split: usize,
    pub kernel: KernelKind,
    pub classification: Stationarity,
    pub b_star: Option<f64>,
    pub first_within: Option<f64>,
    pub horizon: Option<f64>,
    pub train_span: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictFile {
    pub dataset: String,
    pub classification: Stationarity,
    pub epsilon: f64,
    pub theta: f64,
    pub agreement_rate: Option<f64>,
    /// Keyed by `split:kernel`.
    pub verdicts: BTreeMap<String, VerdictEntry>,
}

impl VerdictFile {
    pub fn from_summary(summary: &Summary) -> Self {
        let verdicts = summary
            .verdicts()
            .map(|v| {
                (
                    format!("{}:{}", v.split, v.kernel),
                    VerdictEntry {
                        split: v.split,
                        kernel: v.kernel,
                        classification: v.classification,
                        b_star: v.convergence.map(|p| p.bandwidth),
                        first_within: v.convergence.map(|p| p.first_within),
                        horizon: v.horizon,
                        train_span: v.train_span,
                    },
                )
            })
            .collect();
        VerdictFile {
            dataset: summary.dataset.clone(),
            classification: summary.classification,
            epsilon: summary.epsilon,
            theta: summary.theta,
            agreement_rate: summary.agreement_rate(),
            verdicts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub descriptor_digest: Option<String>,
    pub input_digest: Option<String>,
    pub config: Option<AnalysisConfig>,
    pub seed: Option<u64>,
    /// RFC 3339; taken from `SOURCE_DATE_EPOCH` when set.
    pub timestamp: String,
    /// Output file name to SHA-256.
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            descriptor_digest: None,
            input_digest: None,
            config: None,
            seed: None,
            timestamp: timestamp(),
            outputs: BTreeMap::new(),
        }
    }

    /// Records the digest of an output and writes it.
    pub fn write_output(&mut self, dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
        write_atomic(&dir.join(name), bytes)?;
        self.outputs.insert(name.to_string(), sha256_hex(bytes));
        Ok(())
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        write_atomic(&dir.join(MANIFEST_FILE), text.as_bytes())
    }
}

fn timestamp() -> String {
    use chrono::{DateTime, SecondsFormat, Utc};
    let at = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|s| DateTime::<Utc>::from_timestamp(s, 0))
        .unwrap_or_else(Utc::now);
    at.to_rfc3339_opts(SecondsFormat::Secs, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_rows_round_trip_exactly() {
        let rows = vec![
            CurveRow {
                dataset: "d".into(),
                split: 1,
                kernel: KernelKind::Gaussian,
                bandwidth: 3.0,
                re_train_nu: 0.1 + 0.2,
                re_test_nu: Some(1.0 / 3.0),
                re_train_u: 0.25,
                re_test_u: Some(2.0f64.sqrt()),
            },
            CurveRow {
                dataset: "d".into(),
                split: 2,
                kernel: KernelKind::Triangular,
                bandwidth: 17.0,
                re_train_nu: 1e-17,
                re_test_nu: None,
                re_train_u: 0.5,
                re_test_u: None,
            },
        ];
        let text = curves_to_csv(&rows).unwrap();
        assert!(text.starts_with(
            "dataset,split,kernel,bandwidth,re_train_nu,re_test_nu,re_train_u,re_test_u\n"
        ));
        assert!(text.lines().nth(2).unwrap().contains(",,0.5,"));
        assert_eq!(curves_from_csv(&text).unwrap(), rows);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/x.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }

    #[test]
    fn timestamp_honours_source_date_epoch() {
        // only asserts the format; the environment variable is process-global
        let t = timestamp();
        assert!(t.ends_with('Z') && t.len() == 20, "{t}");
    }
}
