//! Weights each kernel gives to projects of increasing age, the smallest
//! bandwidth each kernel may use, and how far back a bandwidth reaches.
//!
//!     cargo run --example kernel_weights

use driftscope::calendar::{CalendarPoint, Granularity};
use driftscope::kernels::{
    assign_period_indices, build_grid, decay_horizon, weights_for_target, GridSpec, KernelKind,
    PeriodIndex, DEFAULT_DECAY_THRESHOLD,
};

fn main() -> driftscope::Result<()> {
    // completion years with a gap at 1974
    let years = [1971, 1972, 1973, 1975, 1976];
    let points: Vec<CalendarPoint> = years.iter().map(|&y| CalendarPoint::Year(y)).collect();
    let indices = assign_period_indices(&points, Granularity::Yearly)?;
    let target = PeriodIndex::new(7.0)?;
    let bandwidth = 8.0;

    println!("target index {target}, bandwidth {bandwidth}");
    print!("{:<13}", "year");
    for (y, i) in years.iter().zip(&indices) {
        print!(" {y}({i})");
    }
    println!();
    for kind in KernelKind::ALL {
        let w = weights_for_target(&indices, target, kind, bandwidth)?;
        print!("{:<13}", kind.name());
        for v in w.iter() {
            print!(" {v:>9.4}");
        }
        println!("   effective n = {:.2}", w.effective_size());
    }

    println!("\nlargest elapsed time 16:");
    for kind in KernelKind::ALL {
        let grid = build_grid(kind, 16.0, GridSpec::default())?;
        println!(
            "  {:<13} grid {}..{} ({} bandwidths), horizon at b = 10: {:.2}",
            kind.name(),
            grid.first(),
            grid.last(),
            grid.values.len(),
            decay_horizon(kind, 10.0, DEFAULT_DECAY_THRESHOLD)
        );
    }

    // finite-support kernels refuse bandwidths that would zero a project
    let err = weights_for_target(&indices, target, KernelKind::Triangular, 6.0).unwrap_err();
    println!("\ntriangular at b = 6: {err}");
    Ok(())
}
