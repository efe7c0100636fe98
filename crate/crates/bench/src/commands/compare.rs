// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Serialize;
use simon_engine::cost::{parse_summary_csv, SHIPPED_SUMMARY};
use simon_engine::report::{compare, default_workload, CompareReport, ReportError};

use crate::{load_calibration, read_file, CliError, Output};

/// Long-format CSV row: one per design figure and one per check.
#[derive(Debug, Serialize)]
struct Row {
    section: &'static str,
    name: String,
    value: f64,
    expected: String,
    pass: Option<bool>,
    gating: Option<bool>,
}

#[derive(Serialize)]
struct Report<'a> {
    ok: bool,
    #[serde(flatten)]
    report: &'a CompareReport,
}

fn rows(report: &CompareReport) -> Vec<Row> {
    let mut rows = Vec::new();
    for d in &report.designs {
        let prefix = format!("{:?}/{}", d.style, d.seq_cell);
        let figures = [
            ("clocked_bits", f64::from(d.clocked_bits)),
            ("cycles_per_block", d.cycles_per_block as f64),
            ("cycles_per_bit", d.cycles_per_bit),
            ("relative_area", d.relative_area),
            ("relative_energy_per_cycle", d.relative_energy_per_cycle),
            ("relative_energy_per_bit", d.relative_energy_per_bit),
            ("gate_equivalents", d.gate_equivalents),
            ("area_um2", d.area_um2),
        ];
        for (field, value) in figures {
            rows.push(Row {
                section: "design",
                name: format!("{prefix}/{field}"),
                value,
                expected: String::new(),
                pass: None,
                gating: None,
            });
        }
    }
    for c in &report.checks {
        rows.push(Row {
            section: "check",
            name: c.name.clone(),
            value: c.value,
            expected: c.expected.clone(),
            pass: Some(c.pass),
            gating: Some(c.gating),
        });
    }
    rows
}

pub fn run(calibration: Option<&Path>, published: Option<&Path>) -> Result<Output, CliError> {
    let cal = load_calibration(calibration)?;
    let table_text = match published {
        Some(p) => read_file(p)?,
        None => SHIPPED_SUMMARY.to_string(),
    };
    let table = parse_summary_csv(&table_text).map_err(|e| CliError::Input(e.to_string()))?;
    let report = compare(&cal, &default_workload(), &table).map_err(|e| match e {
        ReportError::WrongCiphertext { .. } => CliError::Mismatch(e.to_string()),
        e => CliError::Input(e.to_string()),
    })?;
    for c in report.checks.iter().filter(|c| !c.pass) {
        let kind = if c.gating { "FAIL" } else { "note" };
        eprintln!("{kind}: {} = {} (expected {})", c.name, c.value, c.expected);
    }
    let ok = report.passed();
    Output::new(
        &Report {
            ok,
            report: &report,
        },
        &rows(&report),
        ok,
    )
}
