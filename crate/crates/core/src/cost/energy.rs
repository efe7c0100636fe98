// SPDX-License-Identifier: Apache-2.0

//! Activity-driven relative energy and unit-exact energy per bit.

use serde::Serialize;

use crate::cipher::{Block, Key};
use crate::sim::{
    trace_summary, ActivityTrace, Engine, MicroarchConfig, SeqCell, Style, TraceSummary,
};

use super::{require_positive, Calibration, CostError, DesignInventory};

/// Per-cycle activity of the normalization design: a bit-parallel engine
/// built from flip-flops, run on the same workload.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReference {
    /// Sum of clocked bits times per-bit energy, per cycle.
    pub sequential_per_cycle: f64,
    pub comb_toggles_per_cycle: f64,
}

impl EnergyReference {
    pub fn from_summary(summary: &TraceSummary, cal: &Calibration) -> Result<Self, CostError> {
        if summary.cycles == 0 {
            return Err(CostError::EmptyTrace);
        }
        let cycles = summary.cycles as f64;
        Ok(Self {
            sequential_per_cycle: clocked_energy(summary, cal)? / cycles,
            comb_toggles_per_cycle: summary.comb_toggles as f64 / cycles,
        })
    }

    /// Runs the flip-flop bit-parallel engine over `workload`.
    pub fn flip_flop_parallel(
        workload: &[(Block, Key)],
        cal: &Calibration,
    ) -> Result<Self, CostError> {
        let cfg = MicroarchConfig::new(Style::BitParallel, SeqCell::FlipFlop);
        let mut engine = Engine::new(cfg).expect("flip-flop config is valid");
        let mut total = ActivityTrace::default();
        for &(pt, key) in workload {
            let (_, t) = engine
                .run_block(pt, key)
                .expect("idle engine accepts a block");
            total.merge(&t);
        }
        Self::from_summary(&trace_summary(&total, &cfg), cal)
    }
}

fn clocked_energy(summary: &TraceSummary, cal: &Calibration) -> Result<f64, CostError> {
    summary.classes.iter().try_fold(0.0, |acc, c| {
        Ok(acc + c.clock_events as f64 * cal.cell(c.cell)?.energy_per_cycle_per_bit)
    })
}

/// Relative energy per cycle, split into sequential and combinational parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyEstimate {
    pub sequential: f64,
    pub combinational: f64,
    pub total: f64,
}

/// Energy per cycle relative to the reference design.
///
/// The sequential part charges every clock event at its cell's per-cycle
/// energy (clocks are never gated, so idle bits still pay); the
/// combinational part is proportional to gate-output toggles. Both are
/// scaled so the reference design splits `seq_energy_fraction` to
/// `1 - seq_energy_fraction` and totals 1.0.
pub fn estimate_energy_per_cycle(
    summary: &TraceSummary,
    inv: &DesignInventory,
    cal: &Calibration,
    reference: &EnergyReference,
) -> Result<EnergyEstimate, CostError> {
    if summary.cycles == 0 {
        return Err(CostError::EmptyTrace);
    }
    inv.validate()?;
    require_positive(
        "reference sequential energy",
        reference.sequential_per_cycle,
    )?;
    require_positive("reference comb toggles", reference.comb_toggles_per_cycle)?;
    let cycles = summary.cycles as f64;
    let f = inv.seq_energy_fraction;
    let sequential = f * clocked_energy(summary, cal)? / cycles / reference.sequential_per_cycle;
    let combinational =
        (1.0 - f) * summary.comb_toggles as f64 / cycles / reference.comb_toggles_per_cycle;
    Ok(EnergyEstimate {
        sequential,
        combinational,
        total: sequential + combinational,
    })
}

/// Energy per bit in pJ/b from power in µW and throughput in Mbps.
///
/// 1 µW / 1 Mbps = 1e-6 J/s / 1e6 b/s = 1 pJ/b, so no scaling is needed.
pub fn energy_per_bit(power_uw: f64, throughput_mbps: f64) -> Result<f64, CostError> {
    if !(power_uw.is_finite() && power_uw >= 0.0) {
        return Err(CostError::InvalidParameter {
            name: "power_uw",
            reason: format!("must be non-negative, got {power_uw}"),
        });
    }
    require_positive("throughput_mbps", throughput_mbps)?;
    Ok(power_uw / throughput_mbps)
}

/// Throughput in Mbps at `freq_mhz` for a given cycles-per-bit figure.
pub fn throughput_mbps(freq_mhz: f64, cycles_per_bit: f64) -> Result<f64, CostError> {
    require_positive("freq_mhz", freq_mhz)?;
    require_positive("cycles_per_bit", cycles_per_bit)?;
    Ok(freq_mhz / cycles_per_bit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const KEY: Key = Key::new(0x1918, 0x1110, 0x0908, 0x0100);
    const PT: Block = Block::new(0x6565, 0x6877);

    fn run(cfg: MicroarchConfig, pt: Block, key: Key) -> TraceSummary {
        let (_, t) = Engine::new(cfg).unwrap().run_block(pt, key).unwrap();
        trace_summary(&t, &cfg)
    }

    fn estimate(cfg: MicroarchConfig, reference: &EnergyReference) -> EnergyEstimate {
        let cal = Calibration::shipped();
        let inv = DesignInventory::for_config(&cfg, cal).unwrap();
        estimate_energy_per_cycle(&run(cfg, PT, KEY), &inv, cal, reference).unwrap()
    }

    fn reference() -> EnergyReference {
        EnergyReference::flip_flop_parallel(&[(PT, KEY)], Calibration::shipped()).unwrap()
    }

    #[test]
    fn flip_flop_baseline_normalizes_to_one() {
        let e = estimate(
            MicroarchConfig::new(Style::BitParallel, SeqCell::FlipFlop),
            &reference(),
        );
        assert_relative_eq!(e.total, 1.0, max_relative = 1e-12);
        assert_relative_eq!(e.sequential, 0.65, max_relative = 1e-12);
    }

    #[test]
    fn multi_bit_latch_saves_thirteen_percent() {
        let e = estimate(MicroarchConfig::proposed(), &reference());
        assert_relative_eq!(e.total, 0.87, max_relative = 1e-12);
    }

    #[test]
    fn zero_activity_still_pays_for_clocks() {
        let cfg = MicroarchConfig::proposed();
        let cal = Calibration::shipped();
        let s = run(cfg, Block::default(), Key::default());
        let inv = DesignInventory::for_config(&cfg, cal).unwrap();
        let e = estimate_energy_per_cycle(&s, &inv, cal, &reference()).unwrap();
        assert_relative_eq!(e.sequential, 0.65 * 0.8, max_relative = 1e-12);
    }

    #[test]
    fn empty_trace_is_rejected() {
        let cfg = MicroarchConfig::proposed();
        let cal = Calibration::shipped();
        let inv = DesignInventory::for_config(&cfg, cal).unwrap();
        let empty = trace_summary(&ActivityTrace::default(), &cfg);
        assert_eq!(
            estimate_energy_per_cycle(&empty, &inv, cal, &reference()).unwrap_err(),
            CostError::EmptyTrace
        );
    }

    #[test]
    fn published_power_over_throughput() {
        assert_relative_eq!(
            energy_per_bit(434.0, 443.0).unwrap(),
            0.979684,
            epsilon = 1e-6
        );
        assert_relative_eq!(
            energy_per_bit(424.0, 22.7).unwrap(),
            18.678414,
            epsilon = 1e-6
        );
        assert_eq!(energy_per_bit(0.0, 100.0).unwrap(), 0.0);
        assert!(energy_per_bit(1.0, 0.0).is_err());
        assert!(energy_per_bit(-1.0, 1.0).is_err());
    }

    #[test]
    fn throughput_from_clock() {
        assert_eq!(throughput_mbps(443.0, 1.0).unwrap(), 443.0);
        assert_relative_eq!(
            throughput_mbps(364.0, 513.0 / 32.0).unwrap(),
            22.705,
            epsilon = 1e-3
        );
    }
}
