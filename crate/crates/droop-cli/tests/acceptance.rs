//! Acceptance suite, CLI part: the sweep subcommands must reproduce the
//! frozen golden CSVs byte-identically, run after run.

use std::fs;
use std::path::Path;
use std::process::Command;

const REFERENCE_CONFIG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/reference.toml");

fn run_to_file(args: &[&str], out: &Path) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_droop"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .expect("binary runs");
    assert!(status.success(), "{args:?} failed");
    fs::read(out).expect("output readable")
}

#[test]
fn criterion_10_golden_csv_regression() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 2] = [
        (
            "sweep_power_reference.csv",
            &[
                "sweep-power",
                "--config",
                REFERENCE_CONFIG,
                "--pmin",
                "-10",
                "--pmax",
                "8",
                "--step",
                "0.1",
            ],
        ),
        (
            "sweep_spans_reference.csv",
            &[
                "sweep-spans",
                "--config",
                REFERENCE_CONFIG,
                "--nmin",
                "10",
                "--nmax",
                "500",
                "--nstep",
                "10",
            ],
        ),
    ];

    let mut ok = true;
    let mut details = Vec::new();
    for (golden_name, args) in cases {
        let golden = fs::read(
            Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("tests/golden")
                .join(golden_name),
        )
        .expect("golden file present");
        let first = run_to_file(args, &dir.path().join("first.csv"));
        let second = run_to_file(args, &dir.path().join("second.csv"));
        let repeat_ok = first == second;
        let golden_ok = first == golden;
        ok &= repeat_ok && golden_ok;
        details.push(format!(
            "{golden_name}: repeat-identical {repeat_ok}, matches golden {golden_ok}"
        ));
    }
    println!(
        "acceptance 10 (golden csv regression): {} — {}",
        if ok { "PASS" } else { "FAIL" },
        details.join("; ")
    );
    assert!(ok, "golden CSV regression failed: {details:?}");
}
