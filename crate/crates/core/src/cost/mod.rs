// SPDX-License-Identifier: Apache-2.0

//! Area, energy, timing and efficiency models.
//!
//! Everything here is a pure calculator over value inputs. Sequencing-cell
//! parameters are relative to a flip-flop (area and per-cycle energy of one
//! flip-flop bit are both 1.0); absolute numbers only enter through the
//! µm²-per-GE calibration, the voltage model and published metrics.

mod area;
mod calibration;
mod cells;
mod energy;
mod fifo;
mod metrics;
mod timing;
mod voltage;

pub use area::{comb_breakdown, estimate_area, AreaEstimate, DesignInventory, GateCount, GateType};
pub use calibration::{Calibration, GateEquivalents, InventoryDefaults, SHIPPED_CALIBRATION};
pub use cells::{cell_model, CellModel};
pub use energy::{
    energy_per_bit, estimate_energy_per_cycle, throughput_mbps, EnergyEstimate, EnergyReference,
};
pub use fifo::{fifo_cost, FifoCost, FifoModel};
pub use metrics::{
    compute_metrics, parse_metrics_csv, parse_published_csv, parse_summary_csv,
    serial_parallel_ratios, DerivedMetrics, DisplayedValue, MetricsInput, MetricsRecord,
    PublishedRow, SerialParallelRatios, SummaryRow, METRICS_CSV_HEADER, SHIPPED_SUMMARY,
    SHIPPED_SURVEY, SHIPPED_SURVEY_PUBLISHED,
};
pub use timing::{
    check_duty_cycle, min_cycle_with_borrowing, DutyWindow, TimingCheck, TimingParams,
};
pub use voltage::{DelayFit, FitTargets, VoltageModel, V_DOMAIN};

use thiserror::Error;

use crate::sim::SeqCell;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CostError {
    #[error("no cell model for {0}")]
    UnknownCell(SeqCell),
    #[error("inventory does not match the microarchitecture: {0}")]
    InventoryMismatch(String),
    #[error("empty activity trace")]
    EmptyTrace,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("{0}")]
    Infeasible(String),
    #[error("calibration: {0}")]
    Calibration(String),
    #[error("csv: {0}")]
    Csv(String),
}

pub(crate) fn require_positive(name: &'static str, v: f64) -> Result<(), CostError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CostError::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {v}"),
        })
    }
}

pub(crate) fn require_fraction(name: &'static str, v: f64) -> Result<(), CostError> {
    if v.is_finite() && v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(CostError::InvalidParameter {
            name,
            reason: format!("must lie in (0, 1), got {v}"),
        })
    }
}
