//! Runs the full bandwidth sweep on a drifting synthetic dataset and prints
//! the per-split verdicts.
//!
//!     cargo run --release --example sweep_verdicts

use driftscope::analysis::{run_sweep, summarize, AnalysisConfig};
use driftscope::datasets::{synthesize, Drift, SynthConfig};

fn main() -> driftscope::Result<()> {
    let cfg = SynthConfig {
        drift: Drift {
            intercept: 0.3,
            slope: 0.0,
        },
        noise_sd: 0.15,
        seed: 3,
        ..Default::default()
    };
    let dataset = synthesize(&cfg)?;
    let config = AnalysisConfig::default();
    let sweep = run_sweep(&dataset, &cfg.descriptor(&dataset), &config)?;
    println!(
        "{} cells over {} splits",
        sweep.cells.len(),
        sweep.splits.len()
    );

    let summary = summarize(&sweep, &config);
    print!("{summary}");

    // the Gaussian curve of the last test split, every tenth bandwidth
    let last = sweep
        .plan
        .test_splits()
        .last()
        .expect("has test splits")
        .ordinal;
    println!("\nsplit {last}, gaussian:");
    println!("{:>4} {:>9} {:>9}", "b", "train", "test");
    for c in sweep
        .slice(last, driftscope::KernelKind::Gaussian)
        .iter()
        .step_by(10)
    {
        println!(
            "{:>4} {:>9.4} {:>9.4}",
            c.bandwidth,
            c.re_train_nu,
            c.re_test_nu.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
