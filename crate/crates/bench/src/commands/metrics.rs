// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Serialize;
use simon_engine::cost::{parse_metrics_csv, parse_published_csv, SHIPPED_SURVEY_PUBLISHED};
use simon_engine::report::{metrics_report, CellStatus, MetricsReport};

use crate::{read_file, CliError, Output};

#[derive(Debug, Serialize)]
struct Row<'a> {
    name: &'a str,
    column: &'static str,
    computed: Option<f64>,
    published: Option<f64>,
    status: CellStatus,
}

#[derive(Serialize)]
struct Report<'a> {
    ok: bool,
    #[serde(flatten)]
    report: &'a MetricsReport,
}

pub fn run(input: &Path, published: Option<&Path>) -> Result<Output, CliError> {
    let input_err = |e: simon_engine::cost::CostError| CliError::Input(e.to_string());
    let records = parse_metrics_csv(&read_file(input)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let published_text = match published {
        Some(p) => read_file(p)?,
        None => SHIPPED_SURVEY_PUBLISHED.to_string(),
    };
    let published = parse_published_csv(&published_text).map_err(input_err)?;
    let report = metrics_report(&records, &published);
    let rows: Vec<Row> = report
        .rows
        .iter()
        .flat_map(|r| {
            r.cells.iter().map(|c| Row {
                name: &r.name,
                column: c.column,
                computed: c.computed,
                published: c.published.map(|p| p.value),
                status: c.status,
            })
        })
        .collect();
    for r in rows.iter().filter(|r| r.status == CellStatus::Mismatch) {
        eprintln!(
            "{} {}: computed {:?}, published {:?}",
            r.name, r.column, r.computed, r.published
        );
    }
    let ok = report.passed();
    Output::new(
        &Report {
            ok,
            report: &report,
        },
        &rows,
        ok,
    )
}
