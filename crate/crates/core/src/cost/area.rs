// SPDX-License-Identifier: Apache-2.0

//! Design inventories and area estimation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::sim::{MicroarchConfig, SeqCell, Style};

use super::{require_fraction, require_positive, Calibration, CostError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateType {
    #[serde(rename = "AND2")]
    And2,
    #[serde(rename = "XOR2")]
    Xor2,
    #[serde(rename = "MUX2")]
    Mux2,
}

/// One line of a combinational gate breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateCount {
    pub component: &'static str,
    pub gate: GateType,
    pub count: u32,
}

const fn gc(component: &'static str, gate: GateType, count: u32) -> GateCount {
    GateCount {
        component,
        gate,
        count,
    }
}

use GateType::{And2, Mux2, Xor2};

const PARALLEL_GATES: &[GateCount] = &[
    gc("round function", And2, 16),
    gc("round function", Xor2, 48),
    gc("key expansion", Xor2, 48),
    gc("operand load select", Mux2, 96),
    gc("round counter", Xor2, 5),
    gc("round counter", And2, 4),
    gc("z-sequence lookup", Mux2, 31),
];

// A 16:1 tap selector is 15 MUX2. The datapath slice reads x three times,
// y and k_i once each; the key slice reads k_{i+3} and k_{i+1} twice each
// and shares the k_i tap.
const SERIAL_GATES: &[GateCount] = &[
    gc("round function slice", And2, 1),
    gc("round function slice", Xor2, 3),
    gc("key expansion slice", Xor2, 4),
    gc("tap selection", Mux2, 9 * 15),
    gc("round constant bit", And2, 2),
    gc("operand load select", Mux2, 96),
    gc("round boundary shift", Mux2, 96),
    gc("in-place key write", Mux2, 16),
    gc("staging write", Mux2, 16),
    gc("bit position decoder", And2, 24),
    gc("bit counter", Xor2, 4),
    gc("bit counter", And2, 3),
    gc("round counter", Xor2, 5),
    gc("round counter", And2, 4),
    gc("z-sequence lookup", Mux2, 31),
];

/// Itemised combinational gates of a microarchitecture.
pub fn comb_breakdown(style: Style) -> &'static [GateCount] {
    match style {
        Style::BitParallel => PARALLEL_GATES,
        Style::BitSerial => SERIAL_GATES,
    }
}

/// Cell and gate counts of one design, with design-level area/energy shares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignInventory {
    pub clocked_bits: BTreeMap<SeqCell, u32>,
    pub comb_gate_counts: BTreeMap<GateType, u32>,
    pub seq_area_fraction: f64,
    pub seq_energy_fraction: f64,
    pub gate_equivalents_total: f64,
    pub area_um2: f64,
    #[serde(rename = "technology_F_nm")]
    pub technology_f_nm: f64,
}

impl DesignInventory {
    /// Inventory of a simulated microarchitecture under a calibration.
    pub fn for_config(cfg: &MicroarchConfig, cal: &Calibration) -> Result<Self, CostError> {
        let mut clocked_bits = BTreeMap::new();
        for (cell, bits) in SeqCell::ALL.iter().zip(cfg.clocked_bits_by_cell()) {
            if bits > 0 {
                clocked_bits.insert(*cell, bits);
            }
        }
        let mut comb_gate_counts = BTreeMap::new();
        for g in comb_breakdown(cfg.style) {
            *comb_gate_counts.entry(g.gate).or_insert(0) += g.count;
        }
        let mut inv = DesignInventory {
            clocked_bits,
            comb_gate_counts,
            seq_area_fraction: cal.inventory.seq_area_fraction,
            seq_energy_fraction: cal.inventory.seq_energy_fraction,
            gate_equivalents_total: 0.0,
            area_um2: 0.0,
            technology_f_nm: cal.inventory.technology_f_nm,
        };
        inv.gate_equivalents_total = inv.sequential_ge(cal)? + inv.combinational_ge(cal);
        inv.area_um2 = inv.gate_equivalents_total * cal.inventory.um2_per_ge;
        Ok(inv)
    }

    pub fn total_clocked_bits(&self) -> u32 {
        self.clocked_bits.values().sum()
    }

    pub fn sequential_ge(&self, cal: &Calibration) -> Result<f64, CostError> {
        self.clocked_bits
            .iter()
            .try_fold(0.0, |acc, (&cell, &bits)| {
                let m = cal.cell(cell)?;
                Ok(acc + f64::from(bits) * m.area_per_bit * cal.gate_equivalents.flip_flop)
            })
    }

    pub fn combinational_ge(&self, cal: &Calibration) -> f64 {
        let ge = &cal.gate_equivalents;
        self.comb_gate_counts
            .iter()
            .map(|(g, &n)| {
                f64::from(n)
                    * match g {
                        GateType::And2 => ge.and2,
                        GateType::Xor2 => ge.xor2,
                        GateType::Mux2 => ge.mux2,
                    }
            })
            .sum()
    }

    pub fn validate(&self) -> Result<(), CostError> {
        require_fraction("seq_area_fraction", self.seq_area_fraction)?;
        require_fraction("seq_energy_fraction", self.seq_energy_fraction)?;
        require_positive("gate_equivalents_total", self.gate_equivalents_total)
    }

    /// Bit-weighted mean of a per-bit cell parameter.
    pub(crate) fn mean_per_bit(
        &self,
        cal: &Calibration,
        param: impl Fn(&super::CellModel) -> f64,
    ) -> Result<f64, CostError> {
        let total = self.total_clocked_bits();
        if total == 0 {
            return Err(CostError::InventoryMismatch("no clocked bits".into()));
        }
        let sum = self
            .clocked_bits
            .iter()
            .try_fold(0.0, |acc, (&cell, &bits)| {
                Ok::<_, CostError>(acc + f64::from(bits) * param(cal.cell(cell)?))
            })?;
        Ok(sum / f64::from(total))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaEstimate {
    /// Area relative to the same design built with flip-flops.
    pub relative: f64,
    pub gate_equivalents: f64,
    pub um2: f64,
}

/// Relative and absolute area of a design.
///
/// `relative = seq_area_fraction * mean_cell_area + (1 - seq_area_fraction)`;
/// the absolute figure is `gate_equivalents_total * um2_per_ge`.
pub fn estimate_area(
    inv: &DesignInventory,
    cfg: &MicroarchConfig,
    cal: &Calibration,
) -> Result<AreaEstimate, CostError> {
    inv.validate()?;
    for (cell, bits) in SeqCell::ALL.iter().zip(cfg.clocked_bits_by_cell()) {
        let have = inv.clocked_bits.get(cell).copied().unwrap_or(0);
        if have != bits {
            return Err(CostError::InventoryMismatch(format!(
                "{cell}: inventory has {have} bits, configuration needs {bits}"
            )));
        }
    }
    let cell_area = inv.mean_per_bit(cal, |m| m.area_per_bit)?;
    let f = inv.seq_area_fraction;
    Ok(AreaEstimate {
        relative: f * cell_area + (1.0 - f),
        gate_equivalents: inv.gate_equivalents_total,
        um2: inv.gate_equivalents_total * cal.inventory.um2_per_ge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cal() -> &'static Calibration {
        Calibration::shipped()
    }

    #[test]
    fn flip_flop_design_is_baseline() {
        let cfg = MicroarchConfig::new(Style::BitParallel, SeqCell::FlipFlop);
        let inv = DesignInventory::for_config(&cfg, cal()).unwrap();
        assert_eq!(estimate_area(&inv, &cfg, cal()).unwrap().relative, 1.0);
    }

    #[test]
    fn multi_bit_latch_saves_twelve_and_a_half_percent() {
        let cfg = MicroarchConfig::proposed();
        let inv = DesignInventory::for_config(&cfg, cal()).unwrap();
        assert_relative_eq!(
            estimate_area(&inv, &cfg, cal()).unwrap().relative,
            0.875,
            max_relative = 1e-12
        );
    }

    #[test]
    fn ge_to_um2() {
        let cfg = MicroarchConfig::proposed();
        let mut inv = DesignInventory::for_config(&cfg, cal()).unwrap();
        inv.gate_equivalents_total = 1200.0;
        assert_relative_eq!(
            estimate_area(&inv, &cfg, cal()).unwrap().um2,
            690.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gate_totals() {
        let p = DesignInventory::for_config(&MicroarchConfig::proposed(), cal()).unwrap();
        assert_relative_eq!(p.sequential_ge(cal()).unwrap(), 459.0);
        assert_relative_eq!(p.combinational_ge(cal()), 536.5);
        assert_relative_eq!(p.gate_equivalents_total, 995.5);
        let s = DesignInventory::for_config(&MicroarchConfig::baseline(), cal()).unwrap();
        assert_relative_eq!(s.sequential_ge(cal()).unwrap(), 732.0);
        assert_relative_eq!(s.gate_equivalents_total, 1603.0);
        assert_eq!(s.total_clocked_bits(), 122);
    }

    #[test]
    fn mismatched_inventory_is_rejected() {
        let inv = DesignInventory::for_config(&MicroarchConfig::baseline(), cal()).unwrap();
        assert!(matches!(
            estimate_area(&inv, &MicroarchConfig::proposed(), cal()),
            Err(CostError::InventoryMismatch(_))
        ));
    }

    #[test]
    fn unknown_cell_is_reported() {
        let cfg = MicroarchConfig::proposed();
        let inv = DesignInventory::for_config(&cfg, cal()).unwrap();
        let mut partial = cal().clone();
        partial.cells.retain(|c| c.cell != SeqCell::MultiBitLatch8b);
        assert_eq!(
            estimate_area(&inv, &cfg, &partial).unwrap_err(),
            CostError::UnknownCell(SeqCell::MultiBitLatch8b)
        );
    }
}
