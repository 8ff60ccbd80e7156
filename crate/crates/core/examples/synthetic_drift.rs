//! How often the Gaussian kernel flags drift as the injected drift grows.
//!
//!     cargo run --release --example synthetic_drift

use driftscope::analysis::{run_sweep, summarize, AnalysisConfig, Stationarity};
use driftscope::datasets::{synthesize, Drift, SynthConfig};
use driftscope::KernelKind;

fn main() -> driftscope::Result<()> {
    let config = AnalysisConfig::with_kernels(&[KernelKind::Gaussian]);
    println!("{:>6} {:>8}   (10 seeds each)", "drift", "flagged");
    for drift in [0.0, 0.1, 0.25, 0.5] {
        let mut flagged = 0;
        for seed in 1..=10 {
            let cfg = SynthConfig {
                seed,
                noise_sd: if drift == 0.0 { 0.3 } else { 0.1 },
                drift: Drift {
                    intercept: drift,
                    slope: 0.0,
                },
                ..Default::default()
            };
            let ds = synthesize(&cfg)?;
            let summary = summarize(&run_sweep(&ds, &cfg.descriptor(&ds), &config)?, &config);
            if summary.classification == Stationarity::NonStationary {
                flagged += 1;
            }
        }
        println!("{drift:>6} {flagged:>8}");
    }
    Ok(())
}
