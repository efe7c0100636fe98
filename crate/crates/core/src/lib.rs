// SPDX-License-Identifier: Apache-2.0

//! Simon 32/64 crypto-engine toolkit.
//!
//! - [`cipher`]: bit-exact reference cipher, the functional oracle for the
//!   engine models.
//! - [`sim`]: cycle-accurate bit-parallel and bit-serial engines with
//!   switching-activity traces.
//! - [`cost`]: relative area/energy models of the sequencing cells, FIFO
//!   overhead, pulsed-latch timing, voltage scaling and efficiency metrics.
//! - [`report`]: simulated and published designs side by side.
//! - [`vectors`]: known-answer vector files.

pub mod cipher;
pub mod cost;
pub mod report;
pub mod sim;
pub mod vectors;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cipher.md")]
    mod cipher {}
    #[doc = include_str!("../../../book/src/engines.md")]
    mod engines {}
    #[doc = include_str!("../../../book/src/energy.md")]
    mod energy {}
    #[doc = include_str!("../../../book/src/area.md")]
    mod area {}
    #[doc = include_str!("../../../book/src/fifo.md")]
    mod fifo {}
    #[doc = include_str!("../../../book/src/timing.md")]
    mod timing {}
    #[doc = include_str!("../../../book/src/voltage.md")]
    mod voltage {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
