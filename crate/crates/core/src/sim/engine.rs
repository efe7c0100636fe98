// SPDX-License-Identifier: Apache-2.0

//! Register-transfer models of the two engines.
//!
//! Both engines hold the 32-bit state and a 64-bit sliding key window
//! `k_i..k_{i+3}` and expand one round key per round alongside the datapath.
//!
//! The bit-serial engine computes bit `j` of `y ^ f(x) ^ k_i` in cycle `j` of a
//! round, reading rotated taps from `x`, which only changes at round
//! boundaries. New data bits accumulate in a 16-bit staging register; the new
//! key bit `j` overwrites `k_i[j]` in place because no later bit of the round
//! reads it. On the sixteenth cycle the state and key window advance.

use crate::cipher::{next_round_key, rol16, ror16, Block, Key, ROUNDS, ROUND_CONSTANT};

use super::config::{MicroarchConfig, RegisterGroup, Style, BIT_COUNTER_BITS, ROUND_COUNTER_BITS};
use super::trace::{ActivityTrace, CycleActivity};
use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Phase {
    Idle,
    /// Only observable inside the load cycle.
    Loading,
    Computing,
    Done,
}

/// Register contents and control counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineState {
    pub data: Block,
    /// `key_window[0]` is the current round key.
    pub key_window: [u16; 4],
    /// Bit-serial only.
    pub staging: u16,
    pub round_counter: u8,
    /// Bit-serial only.
    pub bit_counter: u8,
    pub phase: Phase,
}

impl EngineState {
    const RESET: EngineState = EngineState {
        data: Block::new(0, 0),
        key_window: [0; 4],
        staging: 0,
        round_counter: 0,
        bit_counter: 0,
        phase: Phase::Idle,
    };

    fn control_word(&self) -> u32 {
        let busy = u32::from(self.phase == Phase::Computing);
        u32::from(self.round_counter)
            | (u32::from(self.bit_counter) << ROUND_COUNTER_BITS)
            | (busy << (ROUND_COUNTER_BITS + BIT_COUNTER_BITS))
    }

    fn group_word(&self, group: RegisterGroup) -> u64 {
        match group {
            RegisterGroup::Data => u64::from(self.data.to_u32()),
            RegisterGroup::Key => self
                .key_window
                .iter()
                .rev()
                .fold(0u64, |acc, &w| (acc << 16) | u64::from(w)),
            RegisterGroup::Control => u64::from(self.control_word()),
            RegisterGroup::Staging => u64::from(self.staging),
        }
    }
}

/// Outputs of the 2-input gates of the round and key-expansion logic.
///
/// Bit-parallel: 16 AND + 48 XOR in the datapath, 48 XOR in key expansion.
/// Bit-serial: one slice, 1 AND + 3 XOR in the datapath, 4 XOR in key
/// expansion (the slice needs two neighbouring bits of the shifted sum).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct GateNodes([u16; 7]);

impl GateNodes {
    fn toggles(&self, other: &GateNodes) -> u64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| u64::from((a ^ b).count_ones()))
            .sum()
    }
}

#[inline]
fn bit(w: u16, i: u32) -> u16 {
    (w >> (i % 16)) & 1
}

fn parallel_nodes(s: &EngineState) -> GateNodes {
    let x = s.data.x;
    let [k0, k1, _, k3] = s.key_window;
    let and = rol16(x, 1) & rol16(x, 8);
    let f = and ^ rol16(x, 2);
    let y_f = s.data.y ^ f;
    let next_x = y_f ^ k0;
    let t1 = ror16(k3, 3) ^ k1;
    let t2 = t1 ^ ror16(t1, 1);
    let t3 = k0 ^ t2;
    GateNodes([and, f, y_f, next_x, t1, t2, t3])
}

/// Data bit `j` of the new word and key bit `j` of `k_{i+4}`.
struct SerialSlice {
    nodes: GateNodes,
    data_bit: u16,
    key_bit: u16,
}

fn serial_slice(s: &EngineState) -> SerialSlice {
    let j = u32::from(s.bit_counter);
    let x = s.data.x;
    let [k0, k1, _, k3] = s.key_window;
    let and = bit(x, j + 15) & bit(x, j + 8);
    let f = and ^ bit(x, j + 14);
    let y_f = bit(s.data.y, j) ^ f;
    let data_bit = y_f ^ bit(k0, j);
    let a = bit(k3, j + 3) ^ bit(k3, j + 4);
    let b = bit(k1, j) ^ bit(k1, j + 1);
    let t2 = a ^ b;
    let t3 = bit(k0, j) ^ t2;
    let z = if j == 0 {
        crate::cipher::z_bit(usize::from(s.round_counter))
    } else {
        0
    };
    let key_bit = t3 ^ bit(ROUND_CONSTANT, j) ^ z;
    SerialSlice {
        nodes: GateNodes([and, f, y_f, data_bit, a, b, t2 | (t3 << 1)]),
        data_bit,
        key_bit,
    }
}

/// One engine instance. Single-threaded; independent instances may run on
/// different threads.
#[derive(Debug, Clone)]
pub struct Engine {
    cfg: MicroarchConfig,
    state: EngineState,
    nodes: GateNodes,
    trace: ActivityTrace,
    log: Option<Vec<CycleActivity>>,
}

impl Engine {
    /// Creates an idle engine with a zeroed trace.
    pub fn new(cfg: MicroarchConfig) -> Result<Self, SimError> {
        cfg.validate()?;
        let state = EngineState::RESET;
        let nodes = Self::eval_nodes(&cfg, &state);
        Ok(Self {
            cfg,
            state,
            nodes,
            trace: ActivityTrace::default(),
            log: None,
        })
    }

    /// Keeps a per-cycle activity log, needed for trace dumps.
    pub fn with_cycle_log(mut self) -> Self {
        self.log = Some(Vec::new());
        self
    }

    pub fn config(&self) -> &MicroarchConfig {
        &self.cfg
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn phase(&self) -> Phase {
        self.state.phase
    }

    pub fn trace(&self) -> &ActivityTrace {
        &self.trace
    }

    pub fn cycle_log(&self) -> &[CycleActivity] {
        self.log.as_deref().unwrap_or(&[])
    }

    /// The ciphertext, once the engine is done.
    pub fn output(&self) -> Option<Block> {
        (self.state.phase == Phase::Done).then_some(self.state.data)
    }

    fn eval_nodes(cfg: &MicroarchConfig, s: &EngineState) -> GateNodes {
        match cfg.style {
            Style::BitParallel => parallel_nodes(s),
            Style::BitSerial => serial_slice(s).nodes,
        }
    }

    /// Clocks every register once, moving to `next`, and logs the activity.
    fn clock(&mut self, next: EngineState) {
        let mut c = CycleActivity {
            cycle: self.trace.cycles,
            ..Default::default()
        };
        for g in RegisterGroup::ALL {
            let i = g.index();
            c.clock_events[i] = u64::from(self.cfg.group_bits(g));
            let diff = self.state.group_word(g) ^ next.group_word(g);
            c.data_toggles[i] = u64::from(diff.count_ones());
        }
        let nodes = Self::eval_nodes(&self.cfg, &next);
        c.comb_toggles = nodes.toggles(&self.nodes);
        self.nodes = nodes;
        self.state = next;
        self.trace.record(&c);
        if let Some(log) = self.log.as_mut() {
            log.push(c);
        }
    }

    /// Loads plaintext and key in one cycle.
    pub fn load(&mut self, pt: Block, key: Key) -> Result<(), SimError> {
        match self.state.phase {
            Phase::Idle | Phase::Done => {}
            phase => return Err(SimError::Busy { phase }),
        }
        self.state.phase = Phase::Loading;
        let next = EngineState {
            data: pt,
            key_window: key.words(),
            staging: self.state.staging,
            round_counter: 0,
            bit_counter: 0,
            phase: Phase::Computing,
        };
        self.clock(next);
        Ok(())
    }

    /// Advances one clock cycle.
    pub fn step(&mut self) -> Result<(), SimError> {
        if self.state.phase != Phase::Computing {
            return Err(SimError::NotComputing {
                phase: self.state.phase,
            });
        }
        let next = match self.cfg.style {
            Style::BitParallel => self.next_parallel(),
            Style::BitSerial => self.next_serial(),
        };
        self.clock(next);
        Ok(())
    }

    fn finish_round(&self, next: &mut EngineState) {
        let last = usize::from(self.state.round_counter) == ROUNDS - 1;
        next.round_counter = (self.state.round_counter + 1) % (1 << ROUND_COUNTER_BITS);
        if last {
            next.phase = Phase::Done;
        }
    }

    fn next_parallel(&self) -> EngineState {
        let s = &self.state;
        let [k0, k1, k2, k3] = s.key_window;
        let round = usize::from(s.round_counter);
        let mut next = *s;
        next.data = crate::cipher::encrypt_round(s.data, k0);
        next.key_window = [k1, k2, k3, next_round_key(k0, k1, k3, round)];
        self.finish_round(&mut next);
        next
    }

    fn next_serial(&self) -> EngineState {
        let s = &self.state;
        let j = s.bit_counter;
        let slice = serial_slice(s);
        let mut next = *s;
        next.staging = (s.staging & !(1 << j)) | (slice.data_bit << j);
        next.key_window[0] = (s.key_window[0] & !(1 << j)) | (slice.key_bit << j);
        if u32::from(j) == (1 << BIT_COUNTER_BITS) - 1 {
            next.bit_counter = 0;
            next.data = Block::new(next.staging, s.data.x);
            let [k_new, k1, k2, k3] = next.key_window;
            next.key_window = [k1, k2, k3, k_new];
            self.finish_round(&mut next);
        } else {
            next.bit_counter = j + 1;
        }
        next
    }

    /// Loads, runs to completion and returns the ciphertext with the
    /// activity of this block alone.
    pub fn run_block(&mut self, pt: Block, key: Key) -> Result<(Block, ActivityTrace), SimError> {
        let start = self.trace;
        self.load(pt, key)?;
        while self.state.phase == Phase::Computing {
            self.step()?;
        }
        let ct = self.state.data;
        Ok((ct, self.trace.since(&start)))
    }
}
