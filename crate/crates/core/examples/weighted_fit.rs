//! Fits ln(effort) ~ ln(size) with and without age weights and compares the
//! coefficients.
//!
//!     cargo run --example weighted_fit

use std::collections::BTreeMap;

use driftscope::calendar::CalendarPoint;
use driftscope::datasets::ProjectRecord;
use driftscope::kernels::{KernelKind, PeriodIndex};
use driftscope::stats::{
    build_design_matrix, relative_error, weighted_least_squares, ModelFormula, ResponseSpec, Term,
    Transform,
};

fn record(i: usize, size: f64, effort: f64) -> ProjectRecord {
    ProjectRecord {
        id: format!("P{i}"),
        completion: CalendarPoint::Year(2000 + (i / 4) as i32),
        start: None,
        duration_days: None,
        attributes: BTreeMap::from([
            ("size".to_string(), size.to_string()),
            ("effort".to_string(), effort.to_string()),
        ]),
    }
}

fn main() -> driftscope::Result<()> {
    // productivity improves over time: newer projects need less effort
    let records: Vec<ProjectRecord> = (0..20)
        .map(|i| {
            let size = 50.0 + 37.0 * ((i * 7) % 20) as f64;
            let age_factor = 1.0 - 0.06 * (i / 4) as f64;
            record(i, size, 2.0 * size.powf(0.95) * age_factor)
        })
        .collect();
    let formula = ModelFormula {
        response: ResponseSpec {
            column: "effort".into(),
            transform: Transform::Log,
        },
        terms: vec![Term::Numeric {
            column: "size".into(),
            transform: Transform::Log,
        }],
    };
    let design = build_design_matrix(&records, &formula)?;

    let target = PeriodIndex::new(6.0)?;
    let indices: Vec<PeriodIndex> = records
        .iter()
        .map(|r| PeriodIndex::new((r.completion.year() - 1999) as f64))
        .collect::<driftscope::Result<_>>()?;
    let weights =
        driftscope::kernels::weights_for_target(&indices, target, KernelKind::Gaussian, 2.0)?;

    println!("formula {formula}");
    for (label, w) in [
        ("uniform", vec![1.0; records.len()]),
        ("gaussian b=2", weights.to_vec()),
    ] {
        let model = weighted_least_squares(&design, &w)?;
        let fitted = model.response_transform.invert(
            &design
                .response
                .iter()
                .zip(&model.residuals)
                .map(|(y, r)| y - r)
                .collect::<Vec<_>>(),
        );
        println!(
            "{label:<13} coefficients {:?}  training RE {:.4}",
            model
                .coefficients
                .iter()
                .map(|c| (c * 1e4).round() / 1e4)
                .collect::<Vec<_>>(),
            relative_error(&fitted, &design.raw_response)?
        );
    }
    Ok(())
}
