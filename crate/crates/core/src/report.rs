// SPDX-License-Identifier: Apache-2.0

//! Summary-table reports: simulated designs against published expectations.
//!
//! These are the computations behind the `compare` and `metrics` commands,
//! kept here so the command-line front end only formats them.

use serde::Serialize;
use thiserror::Error;

use crate::cipher::{encrypt_block, Block, Key};
use crate::cost::{
    energy_per_bit, estimate_area, estimate_energy_per_cycle, serial_parallel_ratios,
    throughput_mbps, Calibration, CostError, DesignInventory, DisplayedValue, EnergyReference,
    MetricsRecord, PublishedRow, SummaryRow,
};
use crate::sim::{
    cycles_per_bit, trace_summary, ActivityTrace, Engine, MicroarchConfig, SeqCell, SimError, Style,
};
use crate::vectors::{parse_vectors, SHIPPED_VECTORS};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error("{style:?}/{cell} produced {got} for pt {pt}, expected {want}")]
    WrongCiphertext {
        style: Style,
        cell: SeqCell,
        pt: Block,
        got: Block,
        want: Block,
    },
    #[error("published table has no `{0}` row")]
    MissingRow(&'static str),
}

/// Plaintext/key pairs from the shipped vector file.
pub fn default_workload() -> Vec<(Block, Key)> {
    parse_vectors(SHIPPED_VECTORS)
        .expect("shipped vectors parse")
        .into_iter()
        .map(|v| (v.pt, v.key))
        .collect()
}

/// One simulated design, relative to the flip-flop bit-parallel engine.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignReport {
    pub style: Style,
    pub seq_cell: SeqCell,
    pub clocked_bits: u32,
    pub cycles_per_block: u64,
    pub cycles_per_bit: f64,
    pub relative_area: f64,
    pub relative_energy_per_cycle: f64,
    /// Energy per cycle times cycles per bit.
    pub relative_energy_per_bit: f64,
    pub gate_equivalents: f64,
    pub area_um2: f64,
}

/// Runs `cfg` over `workload`, checking every ciphertext.
pub fn evaluate_design(
    cfg: MicroarchConfig,
    cal: &Calibration,
    workload: &[(Block, Key)],
    reference: &EnergyReference,
) -> Result<DesignReport, ReportError> {
    let mut engine = Engine::new(cfg)?;
    let mut total = ActivityTrace::default();
    for &(pt, key) in workload {
        let (got, t) = engine.run_block(pt, key)?;
        let want = encrypt_block(pt, key);
        if got != want {
            return Err(ReportError::WrongCiphertext {
                style: cfg.style,
                cell: cfg.seq_cell,
                pt,
                got,
                want,
            });
        }
        total.merge(&t);
    }
    let blocks = workload.len().max(1) as u64;
    let summary = trace_summary(&total, &cfg);
    let inv = DesignInventory::for_config(&cfg, cal)?;
    let area = estimate_area(&inv, &cfg, cal)?;
    let energy = estimate_energy_per_cycle(&summary, &inv, cal, reference)?;
    let cpb = cycles_per_bit(&cfg);
    Ok(DesignReport {
        style: cfg.style,
        seq_cell: cfg.seq_cell,
        clocked_bits: cfg.clocked_bits(),
        cycles_per_block: total.cycles / blocks,
        cycles_per_bit: cpb,
        relative_area: area.relative,
        relative_energy_per_cycle: energy.total,
        relative_energy_per_bit: energy.total * cpb,
        gate_equivalents: area.gate_equivalents,
        area_um2: area.um2,
    })
}

/// One pass/fail line of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: String,
    pub pass: bool,
    /// Informational checks are reported but do not fail the report.
    pub gating: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, expected: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            value,
            expected: expected.into(),
            pass,
            gating: true,
        }
    }

    fn in_range(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self::new(
            name,
            value,
            format!("[{lo}, {hi}]"),
            (lo..=hi).contains(&value),
        )
    }

    fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub designs: Vec<DesignReport>,
    pub checks: Vec<Check>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || !c.gating)
    }

    fn design(&self, style: Style, cell: SeqCell) -> &DesignReport {
        self.designs
            .iter()
            .find(|d| d.style == style && d.seq_cell == cell)
            .expect("every configuration is evaluated")
    }
}

fn published<'a>(
    table: &'a [SummaryRow],
    name: &'static str,
) -> Result<&'a SummaryRow, ReportError> {
    table
        .iter()
        .find(|r| r.name == name)
        .ok_or(ReportError::MissingRow(name))
}

fn rounds(name: &str, value: f64, shown: DisplayedValue) -> Check {
    Check::new(
        name,
        value,
        format!("rounds to {shown}"),
        shown.rounds_to(value),
    )
}

fn near(name: &str, value: f64, shown: DisplayedValue) -> Check {
    Check::new(
        name,
        value,
        format!("{shown} +/- {}", shown.unit()),
        shown.within_one_unit(value),
    )
}

/// Simulates every style and cell combination and checks the results
/// against the published summary table.
pub fn compare(
    cal: &Calibration,
    workload: &[(Block, Key)],
    table: &[SummaryRow],
) -> Result<CompareReport, ReportError> {
    let reference = EnergyReference::flip_flop_parallel(workload, cal)?;
    let mut designs = Vec::new();
    for style in [Style::BitParallel, Style::BitSerial] {
        for cell in SeqCell::ALL {
            designs.push(evaluate_design(
                MicroarchConfig::new(style, cell),
                cal,
                workload,
                &reference,
            )?);
        }
    }
    let mut report = CompareReport {
        designs,
        checks: Vec::new(),
    };
    let proposed = published(table, "proposed")?;
    let baseline = published(table, "baseline")?;
    let par = report.design(proposed.style, proposed.seq_cell).clone();
    let ser = report.design(baseline.style, baseline.seq_cell).clone();
    let ff_par = report.design(Style::BitParallel, SeqCell::FlipFlop).clone();
    let checks = &mut report.checks;

    checks.push(Check::new(
        "parallel cycles per block",
        par.cycles_per_block as f64,
        "33",
        par.cycles_per_block == 33,
    ));
    let implied = baseline.freq_mhz.value / baseline.max_throughput_mbps.value * 32.0;
    checks.push(Check::new(
        "serial cycles per block",
        ser.cycles_per_block as f64,
        format!("{implied:.1} +/- 1"),
        (ser.cycles_per_block as f64 - implied).abs() <= 1.0,
    ));
    let steady = ser.cycles_per_bit / par.cycles_per_bit;
    checks.push(Check::new(
        "steady-state serial/parallel cycles per bit",
        steady,
        "16",
        steady == 16.0,
    ));

    for (label, row, design) in [("proposed", proposed, &par), ("baseline", baseline, &ser)] {
        let tp = throughput_mbps(row.freq_mhz.value, design.cycles_per_bit)?;
        // Steady state; the serial figure as published also carries the load cycle.
        checks.push(near(
            &format!("{label} throughput at {} MHz", row.freq_mhz),
            tp,
            row.max_throughput_mbps,
        ));
    }
    for (label, row) in [("proposed", proposed), ("baseline", baseline)] {
        let e = energy_per_bit(row.power_uw.value, row.max_throughput_mbps.value)?;
        checks.push(
            rounds(
                &format!("{label} energy per bit from power/throughput"),
                e,
                row.energy_pj_per_bit,
            )
            .informational(),
        );
    }

    let ratios = serial_parallel_ratios(&baseline.to_metrics(), &proposed.to_metrics())?;
    checks.push(Check::in_range(
        "published serial/parallel energy ratio",
        ratios.energy_ratio,
        18.8,
        19.0,
    ));
    checks.push(Check::in_range(
        "published serial/parallel area ratio",
        ratios.area_ratio,
        1.24,
        1.26,
    ));

    let area_saving = 100.0 * (1.0 - par.relative_area / ff_par.relative_area);
    let energy_saving =
        100.0 * (1.0 - par.relative_energy_per_cycle / ff_par.relative_energy_per_cycle);
    checks.push(Check::in_range(
        "multi-bit latch area saving %",
        area_saving,
        12.0,
        14.0,
    ));
    checks.push(Check::in_range(
        "multi-bit latch energy saving %",
        energy_saving,
        12.0,
        14.0,
    ));

    for (label, row, design) in [("proposed", proposed, &par), ("baseline", baseline, &ser)] {
        let target = row.core_area_um2.value;
        checks.push(Check::in_range(
            format!("{label} gate-count area um2"),
            design.area_um2,
            0.75 * target,
            1.25 * target,
        ));
    }
    checks.push(
        Check::new(
            "model serial/parallel energy per bit",
            ser.relative_energy_per_bit / par.relative_energy_per_bit,
            format!("{:.1} published", ratios.energy_ratio),
            true,
        )
        .informational(),
    );
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// Within one unit of the last displayed digit.
    Match,
    Mismatch,
    /// Neither computed nor published.
    Absent,
    /// Published, but the inputs needed to recompute it are missing.
    Unverifiable,
    /// Computed, with nothing published to compare against.
    Unpublished,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricCell {
    pub column: &'static str,
    pub computed: Option<f64>,
    pub published: Option<DisplayedValue>,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRow {
    pub name: String,
    pub cells: Vec<MetricCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub rows: Vec<MetricsRow>,
}

impl MetricsReport {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .flat_map(|r| &r.cells)
            .all(|c| c.status != CellStatus::Mismatch)
    }
}

fn cell(
    column: &'static str,
    computed: Option<f64>,
    published: Option<DisplayedValue>,
) -> MetricCell {
    let status = match (computed, published) {
        (Some(x), Some(p)) if p.within_one_unit(x) => CellStatus::Match,
        (Some(_), Some(_)) => CellStatus::Mismatch,
        (None, Some(_)) => CellStatus::Unverifiable,
        (Some(_), None) => CellStatus::Unpublished,
        (None, None) => CellStatus::Absent,
    };
    MetricCell {
        column,
        computed,
        published,
        status,
    }
}

/// Recomputes the derived columns of every record and compares them with the
/// published row of the same name.
pub fn metrics_report(records: &[MetricsRecord], published: &[PublishedRow]) -> MetricsReport {
    let rows = records
        .iter()
        .map(|r| {
            let d = r.derived();
            let p = published.iter().find(|p| p.name == d.name);
            MetricsRow {
                name: d.name.clone(),
                cells: vec![
                    cell(
                        "area_over_f2_e6",
                        d.area_over_f2_e6,
                        p.and_then(|p| p.area_over_f2_e6),
                    ),
                    cell(
                        "energy_eff_per_area",
                        d.energy_eff_per_area,
                        p.and_then(|p| p.energy_eff_per_area),
                    ),
                    cell(
                        "throughput_eff",
                        d.throughput_eff,
                        p.and_then(|p| p.throughput_eff),
                    ),
                ],
            }
        })
        .collect();
    MetricsReport { rows }
}
