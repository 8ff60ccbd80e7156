//! Sweeps a synthetic dataset, writes its curve table and renders one SVG
//! chart per kernel for the first split.
//!
//!     cargo run --release --example plot_curves -- [output-dir]

use std::path::PathBuf;

use driftscope::analysis::{run_sweep, AnalysisConfig};
use driftscope::cli::output::{curve_rows, curves_to_csv, write_atomic};
use driftscope::cli::plot::render_svg;
use driftscope::datasets::{synthesize, SynthConfig};

fn main() -> driftscope::Result<()> {
    let out: PathBuf = std::env::args_os().nth(1).map_or_else(
        || std::env::temp_dir().join("driftscope-plots"),
        PathBuf::from,
    );
    let cfg = SynthConfig::default();
    let dataset = synthesize(&cfg)?;
    let config = AnalysisConfig::default();
    let sweep = run_sweep(&dataset, &cfg.descriptor(&dataset), &config)?;

    let rows = curve_rows(&sweep);
    write_atomic(&out.join("curves.csv"), curves_to_csv(&rows)?.as_bytes())?;
    for kernel in sweep.kernels() {
        let path = out.join(format!("split1_{kernel}.svg"));
        write_atomic(&path, render_svg(&rows, 1, kernel)?.as_bytes())?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
