//! End-to-end checks of the command-line front end.

use std::path::Path;
use std::process::Command;

fn photonrack() -> Command {
    Command::new(env!("CARGO_BIN_EXE_photonrack"))
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn pack_reproduces_the_packing_table() {
    let dir = std::env::temp_dir().join("photonrack-cli-pack");
    let out = photonrack()
        .args(["--out", dir.to_str().unwrap(), "pack"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = read_json(&dir.join("pack.json"));
    assert_eq!(report["total_mcms"], 350);
    let rows = report["rows"].as_array().unwrap();
    let expect = [
        ("cpu", 14, 10),
        ("gpu", 3, 171),
        ("nic", 203, 3),
        ("hbm", 4, 128),
        ("ddr4", 27, 38),
    ];
    for (row, (ty, per, count)) in rows.iter().zip(expect) {
        assert_eq!(row["chip_type"], ty);
        assert_eq!(row["chips_per_mcm"], per);
        assert_eq!(row["mcm_count"], count);
    }
}

#[test]
fn infeasible_chip_exits_2_naming_the_type() {
    let dir = std::env::temp_dir().join("photonrack-cli-infeasible");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("bad.toml");
    std::fs::write(
        &config,
        r#"
[[chips.specs]]
chip_type = "gpu"
escape_gbytes_per_s = 7000.0
count_per_rack = 8
"#,
    )
    .unwrap();
    let out = photonrack()
        .args([
            "--config",
            config.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
            "pack",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("gpu"),
        "stderr must name the chip type: {stderr}"
    );
}

#[test]
fn gpu_only_config_packs_3_per_mcm_over_171() {
    let dir = std::env::temp_dir().join("photonrack-cli-gpu-only");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("gpu.toml");
    std::fs::write(
        &config,
        r#"
[[chips.specs]]
chip_type = "gpu"
escape_gbytes_per_s = 1886.7
count_per_rack = 512
"#,
    )
    .unwrap();
    let out = photonrack()
        .args([
            "--config",
            config.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
            "pack",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = read_json(&dir.join("pack.json"));
    assert_eq!(report["rows"][0]["chips_per_mcm"], 3);
    assert_eq!(report["rows"][0]["mcm_count"], 171);
    assert_eq!(report["total_mcms"], 171);
}

#[test]
fn direct_bw_reports_both_fabric_floors() {
    let dir = std::env::temp_dir().join("photonrack-cli-directbw");
    let out = photonrack()
        .args(["--out", dir.to_str().unwrap(), "direct-bw"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = read_json(&dir.join("direct_bw.json"));
    assert_eq!(report["min_gbps"], 125.0);
    assert_eq!(report["min_wavelengths"], 5);
    // The study anchors echoed back by the feasibility table.
    assert_eq!(report["direct_suffices"]["cpu_mem"], 0.995);

    let out = photonrack()
        .args([
            "--fabric",
            "wss",
            "--out",
            dir.to_str().unwrap(),
            "direct-bw",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = read_json(&dir.join("direct_bw.json"));
    assert!(report["min_gbps"].as_f64().unwrap() >= 2304.0);
    assert_eq!(report["switch_count"], 11);
}

#[test]
fn latency_subcommand_reports_35ns_at_4m() {
    let dir = std::env::temp_dir().join("photonrack-cli-latency");
    let out = photonrack()
        .args([
            "--out",
            dir.to_str().unwrap(),
            "latency",
            "--tech",
            "photonic",
            "--distance",
            "4",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = read_json(&dir.join("latency.json"));
    assert_eq!(report["total_ns"], 35.0);
}

#[test]
fn unknown_tech_is_an_internal_error() {
    let out = photonrack()
        .args(["latency", "--tech", "coax"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeated_seeds_give_identical_reports() {
    let dir_a = std::env::temp_dir().join("photonrack-cli-seed-a");
    let dir_b = std::env::temp_dir().join("photonrack-cli-seed-b");
    for dir in [&dir_a, &dir_b] {
        let out = photonrack()
            .args([
                "--seed",
                "7",
                "--out",
                dir.to_str().unwrap(),
                "simulate",
                "--horizon",
                "0.002",
                "--worst-case-gpu",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = std::fs::read(dir_a.join("sim_report.json")).unwrap();
    let b = std::fs::read(dir_b.join("sim_report.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn effective_config_round_trips() {
    let dir = std::env::temp_dir().join("photonrack-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let out = photonrack().arg("dump-config").output().unwrap();
    assert!(out.status.success());
    let config = dir.join("effective.toml");
    std::fs::write(&config, &out.stdout).unwrap();

    // Running from the dumped effective config matches the defaults run.
    let dir_default = dir.join("default");
    let dir_dumped = dir.join("dumped");
    let out = photonrack()
        .args(["--out", dir_default.to_str().unwrap(), "pack"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = photonrack()
        .args([
            "--config",
            config.to_str().unwrap(),
            "--out",
            dir_dumped.to_str().unwrap(),
            "pack",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let a = std::fs::read(dir_default.join("pack.json")).unwrap();
    let b = std::fs::read(dir_dumped.join("pack.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn csv_format_writes_summary_tables() {
    let dir = std::env::temp_dir().join("photonrack-cli-csv");
    let out = photonrack()
        .args(["--out", dir.to_str().unwrap(), "--format", "csv", "pack"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("pack.csv")).unwrap();
    assert!(csv.starts_with("chip_type,chips_per_mcm,mcm_count"));
    assert!(csv.contains("ddr4,27,38"));
}

#[test]
fn trace_emits_line_delimited_records() {
    let dir = std::env::temp_dir().join("photonrack-cli-trace");
    std::fs::create_dir_all(&dir).unwrap();
    let trace = dir.join("trace.jsonl");
    let out = photonrack()
        .args([
            "--out",
            dir.to_str().unwrap(),
            "simulate",
            "--horizon",
            "0.002",
            "--worst-case-gpu",
            "--trace",
            trace.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let first = text.lines().next().unwrap();
    let record: serde_json::Value = serde_json::from_str(first).unwrap();
    assert!(record["decision"].is_string());
    assert!(record["time_s"].is_number());
}
