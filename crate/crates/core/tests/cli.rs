//! End-to-end runs of the `driftscope` binary.

use std::path::Path;
use std::process::{Command, Output};

use driftscope::cli::output::{curves_from_csv, RunManifest, VerdictFile};

fn driftscope(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_driftscope"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn synth(dir: &Path, config: &str) {
    std::fs::write(dir.join("cfg.json"), config).unwrap();
    let o = driftscope(&["synth", "--config", "cfg.json", "--out", "data.csv"], dir);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn synth_validate_sweep_plot() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    synth(dir, r#"{"projects": 48, "periods": 4, "seed": 5}"#);
    assert!(dir.join("data.json").exists());

    let o = driftscope(
        &[
            "validate",
            "--descriptor",
            "data.json",
            "--data",
            "data.csv",
        ],
        dir,
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("48 records"), "{text}");
    assert!(text.contains("split,target_period,train_span,train_size,test_size"));

    let o = driftscope(
        &[
            "sweep",
            "--descriptor",
            "data.json",
            "--data",
            "data.csv",
            "--kernels",
            "uniform,gaussian,triangular",
            "--grid",
            "1:30:1",
            "--out",
            "run",
        ],
        dir,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows =
        curves_from_csv(&std::fs::read_to_string(dir.join("run/curves.csv")).unwrap()).unwrap();
    // 4 splits; uniform and gaussian on 30 bandwidths, triangular from 5
    assert_eq!(rows.len(), 4 * (30 + 30 + 26));
    let verdicts: VerdictFile =
        serde_json::from_str(&std::fs::read_to_string(dir.join("run/verdicts.json")).unwrap())
            .unwrap();
    assert_eq!(verdicts.verdicts.len(), 12);
    assert!(verdicts.verdicts.contains_key("4:triangular"));
    let manifest: RunManifest =
        serde_json::from_str(&std::fs::read_to_string(dir.join("run/manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest.timestamp, "2023-11-14T22:13:20Z");
    assert_eq!(manifest.outputs.len(), 2);

    let o = driftscope(
        &[
            "plot",
            "--data",
            "run/curves.csv",
            "--split",
            "2",
            "--kernel",
            "gaussian",
            "--out",
            "plots",
        ],
        dir,
    );
    assert!(o.status.success());
    let svg = std::fs::read_to_string(dir.join("plots/split2_gaussian.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 4);
    let o = driftscope(
        &[
            "plot",
            "--data",
            "run/curves.csv",
            "--kernel",
            "triangular",
            "--out",
            "plots",
        ],
        dir,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn sweeps_are_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    synth(dir, r#"{"projects": 30, "periods": 3}"#);
    for out in ["a", "b"] {
        let o = driftscope(
            &[
                "sweep",
                "--descriptor",
                "data.json",
                "--data",
                "data.csv",
                "--grid",
                "1:10:1",
                "--out",
                out,
            ],
            dir,
        );
        assert!(o.status.success());
    }
    for f in ["curves.csv", "verdicts.json", "manifest.json"] {
        assert_eq!(
            std::fs::read(dir.join("a").join(f)).unwrap(),
            std::fs::read(dir.join("b").join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let code = |args: &[&str]| driftscope(args, dir).status.code();

    assert_eq!(code(&["describe", "--descriptor", "desharnais"]), Some(0));
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&[]), Some(1));
    assert_eq!(code(&["sweep", "--descriptor", "nasa93"]), Some(1));
    assert_eq!(
        code(&[
            "sweep",
            "--descriptor",
            "nasa93",
            "--data",
            "x.csv",
            "--kernels",
            "box"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "validate",
            "--descriptor",
            "nasa93",
            "--data",
            "missing.csv"
        ]),
        Some(2)
    );

    std::fs::write(dir.join("bad.csv"), "recordnumber,year\n1,1980\n").unwrap();
    assert_eq!(
        code(&["validate", "--descriptor", "nasa93", "--data", "bad.csv"]),
        Some(2)
    );

    synth(dir, r#"{"projects": 30, "periods": 3}"#);
    // overrides must land on period boundaries under year accumulation
    let o = driftscope(
        &[
            "validate",
            "--descriptor",
            "data.json",
            "--data",
            "data.csv",
            "--overrides",
            "7",
        ],
        dir,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconsistent with chronology"));
    assert_eq!(code(&["plot", "--data", "data.csv"]), Some(2));
}

#[test]
fn computation_failure_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    // a constant size column is collinear with the intercept
    let mut csv = String::from("id,completion,effort,size\n");
    for i in 0..12 {
        csv.push_str(&format!("P{i},{},{},50\n", 2000 + i / 4, 100 + i * 7));
    }
    std::fs::write(dir.join("flat.csv"), csv).unwrap();
    std::fs::write(
        dir.join("flat.json"),
        r#"{
  "name": "flat",
  "granularity": "yearly",
  "chronology": "year_accumulate",
  "columns": {"id": "id", "completion": "completion", "attributes": {"effort": "effort", "size": "size"}},
  "formula": {
    "response": {"column": "effort", "transform": "log"},
    "terms": [{"kind": "numeric", "column": "size", "transform": "log"}]
  }
}"#,
    )
    .unwrap();
    let o = driftscope(
        &[
            "sweep",
            "--descriptor",
            "flat.json",
            "--data",
            "flat.csv",
            "--grid",
            "1:5:1",
            "--out",
            "run",
        ],
        dir,
    );
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}
