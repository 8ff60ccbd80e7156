//! Nominal COCOMO81 effort for a 40 KLOC project in each mode, with and
//! without adjusted cost drivers.
//!
//!     cargo run --example cocomo

use driftscope::datasets::{
    cocomo_effort, effective_multiplier, rating_multiplier, CocomoMode, EffortMultipliers,
    PERSON_HOURS_PER_MONTH,
};

fn main() -> driftscope::Result<()> {
    let nominal = EffortMultipliers::default();
    let adjusted = EffortMultipliers {
        rely: rating_multiplier("rely", "h").expect("defined rating"),
        cplx: rating_multiplier("cplx", "vh").expect("defined rating"),
        acap: rating_multiplier("acap", "h").expect("defined rating"),
        tool: rating_multiplier("tool", "l").expect("defined rating"),
        ..nominal
    };
    println!(
        "EAF nominal {:.3}, adjusted {:.3}",
        effective_multiplier(&nominal)?,
        effective_multiplier(&adjusted)?
    );
    for mode in CocomoMode::ALL {
        let c = mode.constants();
        let pm = cocomo_effort(&c, 40.0, &nominal)?;
        let pm_adj = cocomo_effort(&c, 40.0, &adjusted)?;
        println!(
            "{:<13} {:>7.1} PM ({:>6.0} h)   adjusted {:>7.1} PM",
            mode.name(),
            pm,
            pm * PERSON_HOURS_PER_MONTH,
            pm_adj
        );
    }
    Ok(())
}
