//! Builds the chronological split plan for a synthetic dataset under each
//! chronology mode, and under explicit training-size overrides.
//!
//!     cargo run --example split_plan

use driftscope::chronology::{build_split_plan, ChronologyMode};
use driftscope::datasets::{synthesize, SynthConfig};

fn main() -> driftscope::Result<()> {
    let cfg = SynthConfig {
        projects: 40,
        periods: 5,
        ..Default::default()
    };
    let dataset = synthesize(&cfg)?;
    let formula = SynthConfig::formula();

    let plan = build_split_plan(&dataset, ChronologyMode::YearAccumulate, &formula, None)?;
    println!(
        "{} splits, largest elapsed time {}",
        plan.splits.len(),
        plan.max_elapsed()
    );
    for s in &plan.splits {
        println!(
            "  split {}: train {:>2}  test {:>2}  target {}  span {}{}",
            s.ordinal,
            s.train.len(),
            s.test.len(),
            s.target_period,
            s.train_span,
            if s.is_all_data() { "  (all data)" } else { "" }
        );
    }

    let plan = build_split_plan(
        &dataset,
        ChronologyMode::RemainderTest,
        &formula,
        Some(&[10, 20, 30]),
    )?;
    println!("remainder test with overrides 10,20,30:");
    for s in &plan.splits {
        println!(
            "  split {}: train {:>2}  test {:>2}",
            s.ordinal,
            s.train.len(),
            s.test.len()
        );
    }

    let err = build_split_plan(
        &dataset,
        ChronologyMode::YearAccumulate,
        &formula,
        Some(&[10]),
    )
    .unwrap_err();
    println!("override 10 under year accumulation: {err}");
    Ok(())
}
