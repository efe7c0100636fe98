// SPDX-License-Identifier: Apache-2.0

//! Switching-activity counters.
//!
//! Counters are kept per register group and folded into cell classes on
//! demand. Combinational activity is counted at 2-input gate granularity with
//! zero-delay evaluation, so glitches never appear.

use std::io::{self, Write};

use serde::Serialize;

use super::config::{MicroarchConfig, RegisterGroup, SeqCell};

/// Activity of a single clock cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CycleActivity {
    /// Zero-based cycle index since engine reset.
    pub cycle: u64,
    pub clock_events: [u64; 4],
    pub data_toggles: [u64; 4],
    pub comb_toggles: u64,
}

/// Cumulative activity since reset (or over one block, see
/// [`ActivityTrace::since`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ActivityTrace {
    pub cycles: u64,
    /// Clocked-bit cycles, indexed by [`RegisterGroup`].
    pub clock_events: [u64; 4],
    /// Stored-bit transitions, indexed by [`RegisterGroup`].
    pub data_toggles: [u64; 4],
    pub comb_toggles: u64,
}

impl ActivityTrace {
    pub(crate) fn record(&mut self, c: &CycleActivity) {
        self.cycles += 1;
        for g in 0..4 {
            self.clock_events[g] += c.clock_events[g];
            self.data_toggles[g] += c.data_toggles[g];
        }
        self.comb_toggles += c.comb_toggles;
    }

    /// Activity accumulated after `earlier` was captured.
    pub fn since(&self, earlier: &ActivityTrace) -> ActivityTrace {
        let mut out = ActivityTrace {
            cycles: self.cycles - earlier.cycles,
            comb_toggles: self.comb_toggles - earlier.comb_toggles,
            ..Default::default()
        };
        for g in 0..4 {
            out.clock_events[g] = self.clock_events[g] - earlier.clock_events[g];
            out.data_toggles[g] = self.data_toggles[g] - earlier.data_toggles[g];
        }
        out
    }

    pub fn group_clock_events(&self, group: RegisterGroup) -> u64 {
        self.clock_events[group.index()]
    }

    pub fn group_data_toggles(&self, group: RegisterGroup) -> u64 {
        self.data_toggles[group.index()]
    }

    pub fn total_clock_events(&self) -> u64 {
        self.clock_events.iter().sum()
    }

    pub fn total_data_toggles(&self) -> u64 {
        self.data_toggles.iter().sum()
    }

    /// Sum of another trace into this one.
    pub fn merge(&mut self, other: &ActivityTrace) {
        self.cycles += other.cycles;
        for g in 0..4 {
            self.clock_events[g] += other.clock_events[g];
            self.data_toggles[g] += other.data_toggles[g];
        }
        self.comb_toggles += other.comb_toggles;
    }
}

/// Activity of one sequencing-cell class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassActivity {
    pub cell: SeqCell,
    pub clocked_bits: u32,
    pub clock_events: u64,
    pub data_toggles: u64,
}

/// Per-class view of a trace, the input to energy estimation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSummary {
    pub cycles: u64,
    /// Only classes present in the design, in [`SeqCell::ALL`] order.
    pub classes: Vec<ClassActivity>,
    pub comb_toggles: u64,
}

impl TraceSummary {
    pub fn clocked_bits(&self) -> u32 {
        self.classes.iter().map(|c| c.clocked_bits).sum()
    }

    pub fn clock_events(&self) -> u64 {
        self.classes.iter().map(|c| c.clock_events).sum()
    }

    pub fn data_toggles(&self) -> u64 {
        self.classes.iter().map(|c| c.data_toggles).sum()
    }

    pub fn class(&self, cell: SeqCell) -> Option<&ClassActivity> {
        self.classes.iter().find(|c| c.cell == cell)
    }
}

fn fold_by_class(
    cfg: &MicroarchConfig,
    clock_events: &[u64; 4],
    data_toggles: &[u64; 4],
) -> Vec<ClassActivity> {
    let bits = cfg.clocked_bits_by_cell();
    SeqCell::ALL
        .iter()
        .filter(|c| bits[c.index()] > 0)
        .map(|&cell| {
            let mut a = ClassActivity {
                cell,
                clocked_bits: bits[cell.index()],
                clock_events: 0,
                data_toggles: 0,
            };
            for g in RegisterGroup::ALL {
                if cfg.group_bits(g) > 0 && cfg.cell_for(g) == cell {
                    a.clock_events += clock_events[g.index()];
                    a.data_toggles += data_toggles[g.index()];
                }
            }
            a
        })
        .collect()
}

pub fn trace_summary(trace: &ActivityTrace, cfg: &MicroarchConfig) -> TraceSummary {
    TraceSummary {
        cycles: trace.cycles,
        classes: fold_by_class(cfg, &trace.clock_events, &trace.data_toggles),
        comb_toggles: trace.comb_toggles,
    }
}

pub const TRACE_CSV_HEADER: &str = "cycle,cell_class,clock_events,data_toggles,comb_toggles";

/// Label of the row carrying combinational toggles in trace dumps.
pub const COMB_CLASS: &str = "combinational";

/// Writes the per-cycle CSV dump.
///
/// Each cycle produces one row per sequencing-cell class present in the
/// design plus one `combinational` row, so every column sums to the trace
/// totals.
pub fn write_trace_csv<W: Write>(
    mut out: W,
    cfg: &MicroarchConfig,
    cycles: &[CycleActivity],
) -> io::Result<()> {
    writeln!(out, "{TRACE_CSV_HEADER}")?;
    for c in cycles {
        for class in fold_by_class(cfg, &c.clock_events, &c.data_toggles) {
            writeln!(
                out,
                "{},{},{},{},0",
                c.cycle, class.cell, class.clock_events, class.data_toggles
            )?;
        }
        writeln!(out, "{},{COMB_CLASS},0,0,{}", c.cycle, c.comb_toggles)?;
    }
    Ok(())
}
