//! Shapiro-Wilk on skewed effort values before and after a log transform.
//!
//!     cargo run --example normality

use driftscope::stats::shapiro_wilk;
use rand::SeedableRng;
use rand_distr::{Distribution, LogNormal};

fn main() -> driftscope::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let dist = LogNormal::new(5.0, 1.1).expect("valid parameters");
    let effort: Vec<f64> = (0..60).map(|_| dist.sample(&mut rng)).collect();
    let logged: Vec<f64> = effort.iter().map(|v| v.ln()).collect();

    for (label, sample) in [("effort", &effort), ("ln(effort)", &logged)] {
        let r = shapiro_wilk(sample)?;
        println!(
            "{label:<11} n = {}  W = {:.4}  p = {:.4}  {}",
            r.n,
            r.statistic,
            r.p_value,
            if r.rejects_normality {
                "not normal"
            } else {
                "consistent with normal"
            }
        );
    }
    Ok(())
}
