//! The `driftscope` command line: `describe`, `validate`, `sweep`, `plot` and
//! `synth`.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 computation
//! failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{run_sweep, summarize, AnalysisConfig};
use crate::chronology::{build_split_plan_with, well_formed_min, AllDataTarget};
use crate::datasets::{
    load_dataset, resolve_descriptor, synthesize, CocomoMode, DatasetDescriptor, SynthConfig,
    EAF_ATTRIBUTE,
};
use crate::error::{Error, Result};
use crate::kernels::{GridSpec, KernelKind, DEFAULT_DECAY_THRESHOLD};

pub mod output;
pub mod plot;

use output::{
    curve_rows, curves_from_csv, curves_to_csv, sha256_hex, write_atomic, RunManifest, VerdictFile,
    CURVES_FILE, VERDICTS_FILE,
};

#[derive(Debug, Parser)]
#[command(
    name = "driftscope",
    version,
    about = "Kernel-weighted stationarity sweeps for effort datasets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a descriptor's columns, formula, chronology and grid rules.
    Describe {
        /// Built-in name (nasa93, desharnais, kitchenham, maxwell, xbc) or a JSON path.
        #[arg(long)]
        descriptor: String,
    },
    /// Load a dataset and print (or write) its split plan.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Directory for plan.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bandwidth sweep and write curves, verdicts and a manifest.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated kernel list.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "uniform,gaussian,epanechnikov,triangular"
        )]
        kernels: Vec<KernelKind>,
        /// Bandwidth grid as lo:hi:step.
        #[arg(long, default_value = "1:100:1")]
        grid: GridSpec,
        #[arg(long, default_value_t = crate::analysis::DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_DECAY_THRESHOLD)]
        theta: f64,
        /// Evaluate the all-data split one period ahead (`next`) or at the newest period (`last`).
        #[arg(long, default_value = "next", value_parser = parse_target)]
        all_data_target: AllDataTarget,
        #[arg(long, default_value = "driftscope-out")]
        out: PathBuf,
    },
    /// Draw SVG charts from a curves.csv file.
    Plot {
        /// curves.csv written by `sweep`.
        #[arg(long, alias = "curves")]
        data: PathBuf,
        /// Only this split (default: every split).
        #[arg(long)]
        split: Option<usize>,
        /// Only this kernel (default: every kernel).
        #[arg(long)]
        kernel: Option<KernelKind>,
        /// Output directory.
        #[arg(long, default_value = "driftscope-plots")]
        out: PathBuf,
    },
    /// Generate a synthetic dataset and its descriptor.
    Synth {
        /// JSON generator settings; defaults apply to missing keys.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV path; the descriptor is written alongside with a .json extension.
        #[arg(long, default_value = "synthetic.csv")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Built-in descriptor name or descriptor JSON path.
    #[arg(long)]
    pub descriptor: String,
    /// Dataset CSV.
    #[arg(long)]
    pub data: PathBuf,
    /// Training-set sizes replacing the automatic plan, e.g. 7,10,12.
    #[arg(long, value_delimiter = ',')]
    pub overrides: Option<Vec<usize>>,
}

fn parse_target(s: &str) -> std::result::Result<AllDataTarget, String> {
    match s {
        "next" => Ok(AllDataTarget::NextPeriod),
        "last" => Ok(AllDataTarget::LastPeriod),
        _ => Err(format!("expected `next` or `last`, got `{s}`")),
    }
}

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    if e.is_input_error() {
        2
    } else {
        3
    }
}

/// Runs a command and returns what it prints on success.
pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Describe { descriptor } => describe(&resolve_descriptor(descriptor)?),
        Command::Validate { input, out } => validate(input, out.as_deref()),
        Command::Sweep {
            input,
            kernels,
            grid,
            epsilon,
            theta,
            all_data_target,
            out,
        } => {
            let config = AnalysisConfig {
                epsilon: *epsilon,
                theta: *theta,
                grid: *grid,
                kernels: kernels.clone(),
                all_data_target: *all_data_target,
                ..Default::default()
            };
            sweep(input, &config, out)
        }
        Command::Plot {
            data,
            split,
            kernel,
            out,
        } => plot(data, *split, *kernel, out),
        Command::Synth { config, seed, out } => synth(config.as_deref(), *seed, out),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn describe(d: &DatasetDescriptor) -> Result<String> {
    let mut s = d.to_string();
    let _ = writeln!(
        s,
        "well-formed  2 + explanatory columns (one per non-reference level)"
    );
    let _ = writeln!(s, "grid         1..100 step 1; epanechnikov and triangular start above the largest elapsed time");
    let _ = writeln!(s, "kernels");
    for k in KernelKind::ALL {
        let _ = writeln!(s, "  {:<13} {}", k.name(), k.formula());
    }
    if d.columns.cocomo_multipliers.is_some() {
        let _ = writeln!(s, "cocomo81     effort = a * KLOC^b * {EAF_ATTRIBUTE}");
        for m in CocomoMode::ALL {
            let c = m.constants();
            let _ = writeln!(s, "  {:<13} a = {:<4} b = {}", m.name(), c.a, c.b);
        }
    }
    Ok(s)
}

fn load(input: &InputArgs) -> Result<(DatasetDescriptor, crate::datasets::Dataset, Vec<u8>)> {
    let mut descriptor = resolve_descriptor(&input.descriptor)?;
    if let Some(o) = &input.overrides {
        descriptor.overrides = Some(o.clone());
        descriptor.validate()?;
    }
    let bytes = read(&input.data)?;
    let dataset = load_dataset(&descriptor, bytes.as_slice())?;
    Ok((descriptor, dataset, bytes))
}

fn validate(input: &InputArgs, out: Option<&Path>) -> Result<String> {
    let (descriptor, dataset, _) = load(input)?;
    let plan = build_split_plan_with(
        &dataset,
        descriptor.chronology,
        &descriptor.formula,
        descriptor.overrides.as_deref(),
        AllDataTarget::default(),
    )?;
    let table = plan.to_table()?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: {} records, well-formed minimum {}, {} splits ({} with a test set)",
        descriptor.name,
        dataset.len(),
        well_formed_min(&descriptor.formula, dataset.records()),
        plan.splits.len(),
        plan.test_splits().count()
    );
    match out {
        Some(dir) => {
            let path = dir.join("plan.csv");
            write_atomic(&path, table.as_bytes())?;
            let _ = writeln!(s, "wrote {}", path.display());
        }
        None => s.push_str(&table),
    }
    Ok(s)
}

fn sweep(input: &InputArgs, config: &AnalysisConfig, out: &Path) -> Result<String> {
    config.validate()?;
    let (descriptor, dataset, bytes) = load(input)?;
    let result = run_sweep(&dataset, &descriptor, config)?;
    let summary = summarize(&result, config);

    let mut manifest = RunManifest::new("sweep");
    manifest.descriptor_digest = Some(descriptor.digest());
    manifest.input_digest = Some(sha256_hex(&bytes));
    manifest.config = Some(config.clone());

    let curves = curves_to_csv(&curve_rows(&result))?;
    manifest.write_output(out, CURVES_FILE, curves.as_bytes())?;
    let mut verdicts = serde_json::to_string_pretty(&VerdictFile::from_summary(&summary))?;
    verdicts.push('\n');
    manifest.write_output(out, VERDICTS_FILE, verdicts.as_bytes())?;
    manifest.write(out)?;

    Ok(format!("{summary}wrote {}\n", out.display()))
}

fn plot(
    data: &Path,
    split: Option<usize>,
    kernel: Option<KernelKind>,
    out: &Path,
) -> Result<String> {
    let rows = curves_from_csv(&String::from_utf8_lossy(&read(data)?))?;
    let mut slices: Vec<(usize, KernelKind)> = Vec::new();
    for r in &rows {
        if !slices.contains(&(r.split, r.kernel)) {
            slices.push((r.split, r.kernel));
        }
    }
    let wanted: Vec<(usize, KernelKind)> = match (split, kernel) {
        (Some(s), Some(k)) => vec![(s, k)],
        _ => slices
            .into_iter()
            .filter(|(s, k)| split.is_none_or(|x| x == *s) && kernel.is_none_or(|x| x == *k))
            .collect(),
    };
    if wanted.is_empty() {
        return Err(Error::MissingSlice {
            split: split.unwrap_or(0),
            kernel: kernel.map_or_else(|| "any".to_string(), |k| k.to_string()),
        });
    }
    let mut s = String::new();
    for (sp, k) in wanted {
        let svg = plot::render_svg(&rows, sp, k)?;
        let path = out.join(format!("split{sp}_{k}.svg"));
        write_atomic(&path, svg.as_bytes())?;
        let _ = writeln!(s, "wrote {}", path.display());
    }
    Ok(s)
}

fn synth(config: Option<&Path>, seed: Option<u64>, out: &Path) -> Result<String> {
    let mut cfg: SynthConfig = match config {
        Some(p) => serde_json::from_slice(&read(p)?)?,
        None => SynthConfig::default(),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let dataset = synthesize(&cfg)?;
    let csv = dataset.to_csv()?;
    let mut descriptor = cfg.descriptor(&dataset);
    descriptor.name = cfg.name.clone();
    let json = descriptor.to_json()? + "\n";
    let desc_path = out.with_extension("json");
    write_atomic(out, csv.as_bytes())?;
    write_atomic(&desc_path, json.as_bytes())?;
    Ok(format!(
        "wrote {} ({} projects, seed {}) and {}\n",
        out.display(),
        dataset.len(),
        cfg.seed,
        desc_path.display()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn describe_shows_formula_and_modes() {
        let text = describe(&resolve_descriptor("maxwell").unwrap()).unwrap();
        assert!(text.contains("ln(effort) = ln(size) + t08 + t09"));
        let text = describe(&resolve_descriptor("nasa93").unwrap()).unwrap();
        assert!(text.contains("embedded      a = 2.8  b = 1.2"));
    }

    #[test]
    fn usage_errors_are_parse_errors() {
        assert!(Cli::try_parse_from(["driftscope", "frobnicate"]).is_err());
        let e = Cli::try_parse_from([
            "driftscope",
            "sweep",
            "--descriptor",
            "x",
            "--data",
            "y",
            "--grid",
            "1:2",
        ])
        .unwrap_err();
        assert!(e.use_stderr());
        let help = Cli::try_parse_from(["driftscope", "--help"]).unwrap_err();
        assert!(!help.use_stderr());
    }

    #[test]
    fn unknown_descriptor_is_input_error() {
        let e = resolve_descriptor("no-such-thing").unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }
}
