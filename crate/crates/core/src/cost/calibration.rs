// SPDX-License-Identifier: Apache-2.0

//! Calibration file.
//!
//! JSON text whose keys are the field names of [`CellModel`],
//! [`DesignInventory`](super::DesignInventory) and [`VoltageModel`]. The
//! shipped file is the documented default calibration.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::sim::SeqCell;

use super::{
    require_fraction, require_positive, CellModel, CostError, DutyWindow, FifoModel, VoltageModel,
};

pub const SHIPPED_CALIBRATION: &str = include_str!("../../data/calibration.json");

/// Design-level defaults copied into every [`DesignInventory`](super::DesignInventory).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InventoryDefaults {
    /// Share of design area in sequencing cells for a flip-flop design.
    pub seq_area_fraction: f64,
    /// Share of design energy in sequencing cells for a flip-flop design.
    pub seq_energy_fraction: f64,
    #[serde(rename = "technology_F_nm")]
    pub technology_f_nm: f64,
    /// Physical area of one gate equivalent at `technology_F_nm`.
    pub um2_per_ge: f64,
}

/// Gate-equivalent weights.
///
/// Sequencing cells are charged `flip_flop * area_per_bit` per bit, so the
/// single-bit latch comes out at 4.5 GE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateEquivalents {
    pub and2: f64,
    pub xor2: f64,
    pub mux2: f64,
    pub flip_flop: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Calibration {
    pub cells: Vec<CellModel>,
    pub inventory: InventoryDefaults,
    pub gate_equivalents: GateEquivalents,
    pub fifo: FifoModel,
    pub duty_window: DutyWindow,
    /// Largest borrow allowed into the next stage, as a fraction of the
    /// period.
    pub borrow_limit_fraction: f64,
    pub voltage: VoltageModel,
}

impl Calibration {
    /// The shipped default calibration.
    pub fn shipped() -> &'static Calibration {
        static SHIPPED: OnceLock<Calibration> = OnceLock::new();
        SHIPPED.get_or_init(|| {
            Calibration::from_json(SHIPPED_CALIBRATION).expect("shipped calibration is valid")
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CostError> {
        let cal: Calibration =
            serde_json::from_str(text).map_err(|e| CostError::Calibration(e.to_string()))?;
        cal.validate()?;
        Ok(cal)
    }

    pub fn from_path(path: &Path) -> Result<Self, CostError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CostError::Calibration(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("calibration serializes")
    }

    pub fn cell(&self, cell: SeqCell) -> Result<&CellModel, CostError> {
        self.cells
            .iter()
            .find(|c| c.cell == cell)
            .ok_or(CostError::UnknownCell(cell))
    }

    pub fn validate(&self) -> Result<(), CostError> {
        for (i, c) in self.cells.iter().enumerate() {
            c.validate()?;
            if self.cells[..i].iter().any(|o| o.cell == c.cell) {
                return Err(CostError::Calibration(format!(
                    "duplicate cell model for {}",
                    c.cell
                )));
            }
        }
        let inv = &self.inventory;
        require_fraction("seq_area_fraction", inv.seq_area_fraction)?;
        require_fraction("seq_energy_fraction", inv.seq_energy_fraction)?;
        require_positive("technology_F_nm", inv.technology_f_nm)?;
        require_positive("um2_per_ge", inv.um2_per_ge)?;
        let ge = &self.gate_equivalents;
        for (name, v) in [
            ("and2", ge.and2),
            ("xor2", ge.xor2),
            ("mux2", ge.mux2),
            ("flip_flop", ge.flip_flop),
        ] {
            require_positive(name, v)?;
        }
        self.fifo.validate()?;
        self.duty_window.validate()?;
        require_fraction("borrow_limit_fraction", self.borrow_limit_fraction)?;
        self.voltage.validate()
    }
}
