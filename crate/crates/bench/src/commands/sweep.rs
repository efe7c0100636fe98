// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Serialize;
use simon_engine::cost::{check_duty_cycle, Calibration, TimingParams};

use crate::{load_calibration, CliError, Output, SweepVar};

const MAX_POINTS: usize = 100_000;

/// Per-round critical-path profile for duty sweeps, in clock periods: every
/// other round overruns by 8% and the next repays it.
pub const DUTY_PROFILE: [f64; 2] = [1.08, 0.90];

/// `from, from + step, ..., <= to`, snapped to 1e-12 so printed values are
/// stable.
pub fn points(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(CliError::Input("sweep bounds must be finite".into()));
    }
    if step <= 0.0 {
        return Err(CliError::Input(format!(
            "--step must be positive, got {step}"
        )));
    }
    if to < from {
        return Err(CliError::Input(format!(
            "empty range: --from {from} exceeds --to {to}"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize + 1;
    if n > MAX_POINTS {
        return Err(CliError::Input(format!(
            "{n} points exceed the limit of {MAX_POINTS}"
        )));
    }
    Ok((0..n)
        .map(|i| ((from + step * i as f64) * 1e12).round() / 1e12)
        .collect())
}

#[derive(Debug, Serialize)]
struct VoltageRow {
    voltage: f64,
    energy_pj_per_bit: f64,
    local_minimum: bool,
}

#[derive(Debug, Serialize)]
struct DutyRow {
    duty_cycle: f64,
    ok: bool,
    max_borrow_used: f64,
}

#[derive(Debug, Serialize)]
struct WordlengthRow {
    wordlength_bits: u32,
    block_bits: u32,
    storage_bits: u32,
    gate_equivalents: f64,
}

#[derive(Serialize)]
struct Report<'a, R> {
    ok: bool,
    variable: SweepVar,
    points: &'a [R],
}

impl Serialize for SweepVar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            SweepVar::Voltage => "voltage",
            SweepVar::Duty => "duty",
            SweepVar::Wordlength => "wordlength",
        })
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn voltage(cal: &Calibration, xs: &[f64]) -> Result<Output, CliError> {
    let energies = xs
        .iter()
        .map(|&v| cal.voltage.energy_per_bit(v))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input)?;
    let rows: Vec<VoltageRow> = energies
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let below = |j: Option<usize>| j.and_then(|j| energies.get(j)).is_none_or(|&n| e < n);
            VoltageRow {
                voltage: xs[i],
                energy_pj_per_bit: e,
                local_minimum: below(i.checked_sub(1)) && below(Some(i + 1)),
            }
        })
        .collect();
    let ok = rows.iter().filter(|r| r.local_minimum).count() == 1;
    Output::new(
        &Report {
            ok,
            variable: SweepVar::Voltage,
            points: &rows,
        },
        &rows,
        ok,
    )
}

fn duty(cal: &Calibration, xs: &[f64]) -> Result<Output, CliError> {
    let delays: Vec<f64> = DUTY_PROFILE.iter().copied().cycle().take(32).collect();
    let rows = xs
        .iter()
        .map(|&d| {
            let mut t = TimingParams::new(1.0, d, delays.clone());
            t.borrow_limit_fraction = cal.borrow_limit_fraction;
            t.duty_window = cal.duty_window;
            check_duty_cycle(&t).map(|c| DutyRow {
                duty_cycle: d,
                ok: c.ok,
                max_borrow_used: c.max_borrow_used,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(input)?;
    Output::new(
        &Report {
            ok: true,
            variable: SweepVar::Duty,
            points: &rows,
        },
        &rows,
        true,
    )
}

fn wordlength(cal: &Calibration, xs: &[f64], block: u32) -> Result<Output, CliError> {
    let rows = xs
        .iter()
        .map(|&w| {
            if w.fract() != 0.0 || w < 1.0 {
                return Err(CliError::Input(format!(
                    "wordlength must be a positive integer, got {w}"
                )));
            }
            let cost = cal.fifo.cost(w as u32, block).map_err(input)?;
            Ok(WordlengthRow {
                wordlength_bits: w as u32,
                block_bits: block,
                storage_bits: cost.storage_bits,
                gate_equivalents: cost.gate_equivalents,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Output::new(
        &Report {
            ok: true,
            variable: SweepVar::Wordlength,
            points: &rows,
        },
        &rows,
        true,
    )
}

pub fn run(
    var: SweepVar,
    from: f64,
    to: f64,
    step: f64,
    block: u32,
    calibration: Option<&Path>,
) -> Result<Output, CliError> {
    let cal = load_calibration(calibration)?;
    let xs = points(from, to, step)?;
    match var {
        SweepVar::Voltage => voltage(&cal, &xs),
        SweepVar::Duty => duty(&cal, &xs),
        SweepVar::Wordlength => wordlength(&cal, &xs, block),
    }
}
