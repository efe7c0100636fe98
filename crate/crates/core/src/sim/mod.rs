// SPDX-License-Identifier: Apache-2.0

//! Cycle-accurate models of the bit-parallel and bit-serial engines.

mod config;
mod engine;
mod trace;

pub use config::{
    cycles_per_bit, MicroarchConfig, RegisterGroup, SeqCell, Style, BIT_COUNTER_BITS, DATA_BITS,
    KEY_BITS, PHASE_BITS, ROUND_COUNTER_BITS, STAGING_BITS,
};
pub use engine::{Engine, EngineState, Phase};
pub use trace::{
    trace_summary, write_trace_csv, ActivityTrace, ClassActivity, CycleActivity, TraceSummary,
    COMB_CLASS, TRACE_CSV_HEADER,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("invalid microarchitecture config: {0}")]
    InvalidConfig(String),
    #[error("cannot load while {phase:?}")]
    Busy { phase: Phase },
    #[error("cannot step while {phase:?}")]
    NotComputing { phase: Phase },
}
