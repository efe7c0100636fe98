// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SimError;

/// Datapath organisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Style {
    /// One full round (16 new state bits) per clock.
    BitParallel,
    /// One new state bit per clock.
    BitSerial,
}

/// Sequencing element used for the state registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeqCell {
    FlipFlop,
    PulsedLatch1b,
    MultiBitLatch8b,
}

impl SeqCell {
    pub const ALL: [SeqCell; 3] = [
        SeqCell::FlipFlop,
        SeqCell::PulsedLatch1b,
        SeqCell::MultiBitLatch8b,
    ];

    /// Bits sharing one clock driver.
    pub const fn group_size(self) -> u32 {
        match self {
            SeqCell::MultiBitLatch8b => 8,
            _ => 1,
        }
    }

    /// Snake-case label used in CSV and JSON reports.
    pub const fn label(self) -> &'static str {
        match self {
            SeqCell::FlipFlop => "flip_flop",
            SeqCell::PulsedLatch1b => "pulsed_latch_1b",
            SeqCell::MultiBitLatch8b => "multi_bit_latch_8b",
        }
    }

    pub(crate) const fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SeqCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SeqCell {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ff" | "flip_flop" | "FlipFlop" => Ok(SeqCell::FlipFlop),
            "latch1" | "pulsed_latch_1b" | "PulsedLatch1b" => Ok(SeqCell::PulsedLatch1b),
            "latch8" | "multi_bit_latch_8b" | "MultiBitLatch8b" => Ok(SeqCell::MultiBitLatch8b),
            other => Err(format!("unknown sequencing cell `{other}`")),
        }
    }
}

/// Register groups of an engine instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegisterGroup {
    /// `x`, `y` state words.
    Data,
    /// Sliding four-word key window.
    Key,
    /// Round counter, bit counter and busy flag.
    Control,
    /// Bit-serial accumulation of the new word.
    Staging,
}

impl RegisterGroup {
    pub const ALL: [RegisterGroup; 4] = [
        RegisterGroup::Data,
        RegisterGroup::Key,
        RegisterGroup::Control,
        RegisterGroup::Staging,
    ];

    pub(crate) const fn index(self) -> usize {
        self as usize
    }
}

pub const DATA_BITS: u32 = 32;
pub const KEY_BITS: u32 = 64;
pub const ROUND_COUNTER_BITS: u32 = 5;
pub const BIT_COUNTER_BITS: u32 = 4;
pub const PHASE_BITS: u32 = 1;
pub const STAGING_BITS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MicroarchConfig {
    pub style: Style,
    pub seq_cell: SeqCell,
    pub multibit_group: u32,
}

impl MicroarchConfig {
    /// Builds a config with the group size implied by the cell.
    pub const fn new(style: Style, seq_cell: SeqCell) -> Self {
        Self {
            style,
            seq_cell,
            multibit_group: seq_cell.group_size(),
        }
    }

    /// Bit-parallel datapath with 8-bit multi-bit pulsed latches.
    pub const fn proposed() -> Self {
        Self::new(Style::BitParallel, SeqCell::MultiBitLatch8b)
    }

    /// Bit-serial datapath with edge-triggered flip-flops.
    pub const fn baseline() -> Self {
        Self::new(Style::BitSerial, SeqCell::FlipFlop)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.multibit_group != self.seq_cell.group_size() {
            return Err(SimError::InvalidConfig(format!(
                "{} requires multibit_group = {}, got {}",
                self.seq_cell,
                self.seq_cell.group_size(),
                self.multibit_group
            )));
        }
        Ok(())
    }

    /// Clocked bits in one register group.
    pub const fn group_bits(&self, group: RegisterGroup) -> u32 {
        match (group, self.style) {
            (RegisterGroup::Data, _) => DATA_BITS,
            (RegisterGroup::Key, _) => KEY_BITS,
            (RegisterGroup::Control, Style::BitParallel) => ROUND_COUNTER_BITS + PHASE_BITS,
            (RegisterGroup::Control, Style::BitSerial) => {
                ROUND_COUNTER_BITS + BIT_COUNTER_BITS + PHASE_BITS
            }
            (RegisterGroup::Staging, Style::BitParallel) => 0,
            (RegisterGroup::Staging, Style::BitSerial) => STAGING_BITS,
        }
    }

    /// Cell class implementing a register group.
    ///
    /// Control bits do not fill an 8-bit multi-bit cell and fall back to
    /// single-bit pulsed latches.
    pub const fn cell_for(&self, group: RegisterGroup) -> SeqCell {
        match (group, self.seq_cell) {
            (RegisterGroup::Control, SeqCell::MultiBitLatch8b) => SeqCell::PulsedLatch1b,
            (_, cell) => cell,
        }
    }

    pub fn clocked_bits(&self) -> u32 {
        RegisterGroup::ALL.iter().map(|&g| self.group_bits(g)).sum()
    }

    /// Clocked bits per cell class, in [`SeqCell::ALL`] order.
    pub fn clocked_bits_by_cell(&self) -> [u32; 3] {
        let mut out = [0; 3];
        for g in RegisterGroup::ALL {
            out[self.cell_for(g).index()] += self.group_bits(g);
        }
        out
    }

    /// Compute cycles for one block, excluding the load cycle.
    pub const fn compute_cycles(&self) -> u32 {
        match self.style {
            Style::BitParallel => crate::cipher::ROUNDS as u32,
            Style::BitSerial => crate::cipher::ROUNDS as u32 * 16,
        }
    }

    /// Cycles for one complete block: one load cycle plus computation.
    pub const fn cycles_per_block(&self) -> u32 {
        1 + self.compute_cycles()
    }
}

/// Steady-state clock cycles per plaintext bit, load cycle excluded.
pub fn cycles_per_bit(cfg: &MicroarchConfig) -> f64 {
    f64::from(cfg.compute_cycles()) / f64::from(DATA_BITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inventories() {
        assert_eq!(MicroarchConfig::proposed().clocked_bits(), 102);
        assert_eq!(MicroarchConfig::baseline().clocked_bits(), 122);
        assert_eq!(
            MicroarchConfig::proposed().clocked_bits_by_cell(),
            [0, 6, 96]
        );
        assert_eq!(
            MicroarchConfig::baseline().clocked_bits_by_cell(),
            [122, 0, 0]
        );
    }

    #[test]
    fn cycle_contracts() {
        let par = MicroarchConfig::proposed();
        let ser = MicroarchConfig::baseline();
        assert_eq!(par.cycles_per_block(), 33);
        assert_eq!(ser.cycles_per_block(), 513);
        assert_eq!(cycles_per_bit(&par), 1.0);
        assert_eq!(cycles_per_bit(&ser), 16.0);
        assert_eq!(cycles_per_bit(&ser) / cycles_per_bit(&par), 16.0);
    }

    #[test]
    fn group_size_must_match_cell() {
        let mut cfg = MicroarchConfig::proposed();
        assert!(cfg.validate().is_ok());
        cfg.multibit_group = 4;
        assert!(cfg.validate().is_err());
        let mut ff = MicroarchConfig::baseline();
        ff.multibit_group = 8;
        assert!(ff.validate().is_err());
    }

    #[test]
    fn cell_names_parse() {
        for cell in SeqCell::ALL {
            assert_eq!(cell.label().parse::<SeqCell>().unwrap(), cell);
        }
        assert_eq!(
            "latch8".parse::<SeqCell>().unwrap(),
            SeqCell::MultiBitLatch8b
        );
        assert!("sram".parse::<SeqCell>().is_err());
    }
}
