// SPDX-License-Identifier: Apache-2.0

//! Cost of aggregating narrow application words into cipher blocks.

use serde::{Deserialize, Serialize};

use super::{require_positive, CostError};

/// Double-buffered aggregation FIFO: while one block is being encrypted the
/// next one fills.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FifoModel {
    /// Block-sized buffers.
    pub buffers: u32,
    pub ge_per_bit: f64,
    pub control_ge: f64,
}

impl Default for FifoModel {
    fn default() -> Self {
        Self {
            buffers: 2,
            ge_per_bit: 9.0,
            control_ge: 200.0,
        }
    }
}

impl FifoModel {
    pub fn validate(&self) -> Result<(), CostError> {
        if self.buffers == 0 {
            return Err(CostError::InvalidParameter {
                name: "buffers",
                reason: "must be at least 1".into(),
            });
        }
        require_positive("ge_per_bit", self.ge_per_bit)?;
        if !(self.control_ge.is_finite() && self.control_ge >= 0.0) {
            return Err(CostError::InvalidParameter {
                name: "control_ge",
                reason: format!("must be non-negative, got {}", self.control_ge),
            });
        }
        Ok(())
    }

    pub fn cost(
        &self,
        app_wordlength_bits: u32,
        cipher_block_bits: u32,
    ) -> Result<FifoCost, CostError> {
        if app_wordlength_bits == 0 || cipher_block_bits == 0 {
            return Err(CostError::InvalidParameter {
                name: "wordlength",
                reason: "word and block sizes must be positive".into(),
            });
        }
        if app_wordlength_bits > cipher_block_bits {
            return Err(CostError::InvalidParameter {
                name: "wordlength",
                reason: format!(
                    "application word ({app_wordlength_bits} b) exceeds cipher block ({cipher_block_bits} b)"
                ),
            });
        }
        if app_wordlength_bits == cipher_block_bits {
            return Ok(FifoCost::default());
        }
        let storage_bits = self.buffers * cipher_block_bits;
        Ok(FifoCost {
            storage_bits,
            gate_equivalents: f64::from(storage_bits) * self.ge_per_bit + self.control_ge,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FifoCost {
    pub storage_bits: u32,
    pub gate_equivalents: f64,
}

/// [`FifoModel::cost`] under the default model.
pub fn fifo_cost(app_wordlength_bits: u32, cipher_block_bits: u32) -> Result<FifoCost, CostError> {
    FifoModel::default().cost(app_wordlength_bits, cipher_block_bits)
}
