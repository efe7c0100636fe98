// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::sim::SeqCell;

use super::{require_fraction, require_positive, Calibration, CostError};

/// Relative parameters of one sequencing-cell type, per stored bit.
///
/// A pulsed latch has 25% less area, 20% lower energy per cycle and 40%
/// lower clock-pin energy than a flip-flop. With half of the flip-flop's
/// per-cycle energy on the clock pin those three numbers agree:
/// `0.5 * 0.6 + 0.5 = 0.8`.
///
/// The 8-bit multi-bit latch cuts clocking energy per bit by another 40%
/// against the single-bit latch (0.30 -> 0.18), but its shared 2X internal
/// clock buffer costs 0.12 per bit, so the net per-cycle energy stays at
/// 0.80.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellModel {
    pub cell: SeqCell,
    pub area_per_bit: f64,
    pub energy_per_cycle_per_bit: f64,
    /// Share of `energy_per_cycle_per_bit` spent on clocking.
    pub clock_pin_energy_ratio: f64,
}

impl CellModel {
    pub fn clocking_energy_per_bit(&self) -> f64 {
        self.energy_per_cycle_per_bit * self.clock_pin_energy_ratio
    }

    pub fn validate(&self) -> Result<(), CostError> {
        require_positive("area_per_bit", self.area_per_bit)?;
        require_positive("energy_per_cycle_per_bit", self.energy_per_cycle_per_bit)?;
        require_fraction("clock_pin_energy_ratio", self.clock_pin_energy_ratio)
    }
}

/// Calibrated model of `cell` from the shipped calibration.
pub fn cell_model(cell: SeqCell) -> CellModel {
    // The shipped calibration is validated by tests and covers every cell.
    *Calibration::shipped()
        .cell(cell)
        .expect("shipped calibration covers every cell")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn flip_flop_is_the_anchor() {
        let ff = cell_model(SeqCell::FlipFlop);
        assert_eq!(ff.area_per_bit, 1.0);
        assert_eq!(ff.energy_per_cycle_per_bit, 1.0);
        assert_relative_eq!(ff.clocking_energy_per_bit(), 0.5);
    }

    #[test]
    fn pulsed_latch_deltas() {
        let ff = cell_model(SeqCell::FlipFlop);
        let latch = cell_model(SeqCell::PulsedLatch1b);
        assert_relative_eq!(latch.area_per_bit, 0.75);
        assert_relative_eq!(latch.energy_per_cycle_per_bit, 0.80);
        assert_relative_eq!(
            latch.clocking_energy_per_bit(),
            0.6 * ff.clocking_energy_per_bit(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn multi_bit_latch_clocking() {
        let latch = cell_model(SeqCell::PulsedLatch1b);
        let mb = cell_model(SeqCell::MultiBitLatch8b);
        assert_relative_eq!(
            mb.clocking_energy_per_bit(),
            0.6 * latch.clocking_energy_per_bit(),
            max_relative = 1e-12
        );
        assert_relative_eq!(mb.energy_per_cycle_per_bit, 0.80);
    }

    #[test]
    fn validation() {
        let mut m = cell_model(SeqCell::FlipFlop);
        assert!(m.validate().is_ok());
        m.clock_pin_energy_ratio = 1.5;
        assert!(m.validate().is_err());
        m.clock_pin_energy_ratio = 0.5;
        m.area_per_bit = 0.0;
        assert!(m.validate().is_err());
    }
}
