// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const VECTORS: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../core/data/simon32_64.vectors"
);
const SURVEY: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../core/data/survey_designs.csv"
);
const CALIBRATION: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/calibration.json");

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simon-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = bench(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// `(header, rows)` of a CSV document.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn json_numbers(v: &Value, out: &mut HashSet<u64>) {
    match v {
        Value::Number(n) => {
            out.insert(n.as_f64().unwrap().to_bits());
        }
        Value::Array(a) => a.iter().for_each(|x| json_numbers(x, out)),
        Value::Object(o) => o.values().for_each(|x| json_numbers(x, out)),
        _ => {}
    }
}

/// The CSV and JSON renderings carry the same non-integer numbers. Integers
/// are skipped because hex fields and labels also parse as numbers.
fn assert_same_numbers(args: &[&str]) {
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let mut from_json = HashSet::new();
    json_numbers(&json(&json_args), &mut from_json);
    let (_, rows) = csv_rows(&stdout(&bench(&csv_args)));
    let from_csv: HashSet<u64> = rows
        .iter()
        .flatten()
        .filter_map(|f| f.parse::<f64>().ok())
        .map(f64::to_bits)
        .collect();
    let fractional = |set: &HashSet<u64>| -> HashSet<u64> {
        set.iter()
            .copied()
            .filter(|b| f64::from_bits(*b).fract() != 0.0)
            .collect()
    };
    assert_eq!(fractional(&from_json), fractional(&from_csv), "{args:?}");
}

#[test]
fn encrypt_shipped_vectors() {
    let out = bench(&["encrypt", "--vectors", VECTORS, "--verify"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
    let first = &v["vectors"][0];
    assert_eq!(first["ct"], "c69be9bb");
    assert_eq!(first["status"], "ok");
    assert_eq!(first["verified"], true);
}

#[test]
fn encrypt_reports_mismatch_line() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "bad.vectors",
        "# header\nkey=1918111009080100 pt=65656877 ct=c69be9bc\n",
    );
    let out = bench(&["encrypt", "--vectors", s(&p)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn encrypt_input_errors() {
    let dir = TempDir::new().unwrap();
    let bad_hex = write(&dir, "hex.vectors", "key=19181110090801zz pt=65656877\n");
    assert_eq!(code(&bench(&["encrypt", "--vectors", s(&bad_hex)])), 2);
    assert_eq!(
        code(&bench(&["encrypt", "--vectors", "/nonexistent/file"])),
        2
    );
    assert_eq!(code(&bench(&["encrypt"])), 2);
}

#[test]
fn encrypt_without_expected_is_unchecked() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "pt.vectors", "key=1918111009080100 pt=65656877\n");
    let v = json(&["encrypt", "--vectors", s(&p)]);
    assert_eq!(v["vectors"][0]["status"], "unchecked");
    assert_eq!(v["vectors"][0]["ct"], "c69be9bb");
}

#[test]
fn simulate_writes_trace() {
    let dir = TempDir::new().unwrap();
    for (arch, cell, cycles, classes) in [
        ("parallel", "latch8", 33, 2),
        ("serial", "ff", 513, 1),
        ("serial", "latch1", 513, 1),
    ] {
        let trace = dir.path().join(format!("{arch}-{cell}.csv"));
        let out = bench(&[
            "simulate",
            "--arch",
            arch,
            "--cell",
            cell,
            "--vectors",
            VECTORS,
            "--trace",
            s(&trace),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let vectors = v["vectors"].as_array().unwrap();
        assert!(vectors
            .iter()
            .all(|r| r["cycles"] == cycles && r["status"] == "ok"));
        let text = fs::read_to_string(&trace).unwrap();
        let (header, rows) = csv_rows(&text);
        assert_eq!(
            header.join(","),
            "cycle,cell_class,clock_events,data_toggles,comb_toggles"
        );
        assert_eq!(rows.len(), vectors.len() * cycles as usize * (classes + 1));
        let clock: u64 = rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
        let want: u64 = vectors
            .iter()
            .map(|r| r["clock_events"].as_u64().unwrap())
            .sum();
        assert_eq!(clock, want);
    }
}

#[test]
fn compare_passes_with_shipped_calibration() {
    let out = bench(&["compare", "--calibration", CALIBRATION]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let find = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap().clone();
    let saving = find("multi-bit latch energy saving %")["value"]
        .as_f64()
        .unwrap();
    assert!((12.0..=14.0).contains(&saving));
    assert_eq!(find("serial cycles per block")["value"], 513.0);
    assert_eq!(
        find("steady-state serial/parallel cycles per bit")["value"],
        16.0
    );
    // Published power over throughput does not round to the printed energy.
    let note = find("proposed energy per bit from power/throughput");
    assert_eq!(note["pass"], false);
    assert_eq!(note["gating"], false);
}

#[test]
fn compare_rejects_bad_calibration() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "cal.json", "{\"cells\": []}");
    assert_eq!(code(&bench(&["compare", "--calibration", s(&p)])), 2);
}

#[test]
fn compare_flags_out_of_band_calibration() {
    let dir = TempDir::new().unwrap();
    let mut cal: Value = serde_json::from_str(&fs::read_to_string(CALIBRATION).unwrap()).unwrap();
    cal["inventory"]["seq_energy_fraction"] = 0.9.into();
    let p = write(&dir, "cal.json", &cal.to_string());
    assert_eq!(code(&bench(&["compare", "--calibration", s(&p)])), 1);
}

#[test]
fn metrics_shipped_table() {
    let out = bench(&["metrics", "--input", SURVEY, "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header.join(","), "name,column,computed,published,status");
    assert_eq!(rows.len(), 18);
    let iscas: Vec<_> = rows.iter().filter(|r| r[0] == "ISCAS'18").collect();
    assert!(iscas.iter().all(|r| r[2].is_empty()));
    assert!(rows.iter().all(|r| r[4] != "mismatch"));
}

#[test]
fn metrics_flags_deviation() {
    let dir = TempDir::new().unwrap();
    let published = write(
        &dir,
        "pub.csv",
        "name,area_over_f2_e6,energy_eff_per_area,throughput_eff\nThis work,0.43,1.464,0.650\n",
    );
    let out = bench(&["metrics", "--input", SURVEY, "--published", s(&published)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn metrics_edge_inputs() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.csv", "");
    let out = bench(&["metrics", "--input", s(&empty), "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    let bad = write(&dir, "bad.csv", "name,area\nx,1\n");
    assert_eq!(code(&bench(&["metrics", "--input", s(&bad)])), 2);
    let negative = write(
        &dir,
        "neg.csv",
        "name,algorithm,datapath_bits,key_bits,F_nm,area_um2,voltage,energy_pj_per_bit,throughput_mbps\nx,SIMON,32,64,40,-1,0.9,1,1\n",
    );
    assert_eq!(code(&bench(&["metrics", "--input", s(&negative)])), 2);
}

#[test]
fn voltage_sweep_has_one_minimum_near_225_mv() {
    let v = json(&[
        "sweep", "--var", "voltage", "--from", "0.15", "--to", "1.0", "--step", "0.025",
    ]);
    assert_eq!(v["ok"], true);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 35);
    let minima: Vec<f64> = points
        .iter()
        .filter(|p| p["local_minimum"] == true)
        .map(|p| p["voltage"].as_f64().unwrap())
        .collect();
    assert_eq!(minima.len(), 1);
    assert!((0.175..=0.275).contains(&minima[0]), "{minima:?}");
}

#[test]
fn duty_sweep_passes_exactly_on_window() {
    let v = json(&[
        "sweep", "--var", "duty", "--from", "0.05", "--to", "0.30", "--step", "0.01",
    ]);
    for p in v["points"].as_array().unwrap() {
        let d = p["duty_cycle"].as_f64().unwrap();
        let inside = (0.10..=0.24).contains(&d);
        assert_eq!(p["ok"], inside, "duty {d}");
    }
}

#[test]
fn wordlength_sweep_shrinks_to_zero() {
    let v = json(&[
        "sweep",
        "--var",
        "wordlength",
        "--from",
        "8",
        "--to",
        "128",
        "--step",
        "8",
    ]);
    let ge: Vec<f64> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["gate_equivalents"].as_f64().unwrap())
        .collect();
    assert!(ge.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(*ge.last().unwrap(), 0.0);
    assert_eq!(ge[3], 2504.0);
}

#[test]
fn sweep_input_errors() {
    for args in [
        [
            "sweep", "--var", "voltage", "--from", "0.1", "--to", "1.0", "--step", "0.1",
        ],
        [
            "sweep", "--var", "voltage", "--from", "0.5", "--to", "0.2", "--step", "0.1",
        ],
        [
            "sweep", "--var", "duty", "--from", "0.1", "--to", "0.2", "--step", "0",
        ],
        [
            "sweep", "--var", "duty", "--from", "0.5", "--to", "1.5", "--step", "0.5",
        ],
        [
            "sweep",
            "--var",
            "wordlength",
            "--from",
            "8",
            "--to",
            "256",
            "--step",
            "8",
        ],
        [
            "sweep",
            "--var",
            "wordlength",
            "--from",
            "0.5",
            "--to",
            "2",
            "--step",
            "0.5",
        ],
    ] {
        assert_eq!(code(&bench(&args)), 2, "{args:?}");
    }
}

#[test]
fn json_and_csv_carry_the_same_numbers() {
    assert_same_numbers(&["encrypt", "--vectors", VECTORS]);
    assert_same_numbers(&[
        "simulate",
        "--arch",
        "serial",
        "--cell",
        "ff",
        "--vectors",
        VECTORS,
    ]);
    assert_same_numbers(&["compare"]);
    assert_same_numbers(&["metrics", "--input", SURVEY]);
    assert_same_numbers(&[
        "sweep", "--var", "voltage", "--from", "0.15", "--to", "1.0", "--step", "0.025",
    ]);
    assert_same_numbers(&[
        "sweep", "--var", "duty", "--from", "0.05", "--to", "0.30", "--step", "0.01",
    ]);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for format in ["json", "csv"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for p in [&a, &b] {
            let out = bench(&["compare", "--format", format, "--out", s(p)]);
            assert_eq!(code(&out), 0);
            assert!(out.stdout.is_empty());
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}
