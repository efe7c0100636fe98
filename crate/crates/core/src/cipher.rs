// SPDX-License-Identifier: Apache-2.0

//! Simon 32/64: 16-bit words, four key words, 32 rounds.
//!
//! Words are plain `u16`. A [`Block`] is the pair `(x, y)` with `x` the upper
//! half of the 32-bit value; a [`Key`] is `k3 k2 k1 k0` with `k3` the most
//! significant word. Both conventions match the published test vector
//! `key = 1918 1110 0908 0100`, `pt = 6565 6877`, `ct = c69b e9bb`.

use std::fmt;

/// Number of rounds for the 32/64 parameter set.
pub const ROUNDS: usize = 32;

/// Number of 16-bit key words.
pub const KEY_WORDS: usize = 4;

/// Round constant `c = 2^16 - 4`.
pub const ROUND_CONSTANT: u16 = 0xFFFC;

/// Length of the `z0` constant sequence.
pub const Z_PERIOD: usize = 62;

/// The `z0` sequence, first bit in the leftmost position.
const Z0: &[u8; Z_PERIOD] = b"11111010001001010110000111001101111101000100101011000011100110";

/// Left circular rotation of a 16-bit word.
///
/// Shift counts are taken modulo 16.
#[inline]
pub const fn rol16(w: u16, s: u32) -> u16 {
    w.rotate_left(s % 16)
}

/// Right circular rotation of a 16-bit word.
#[inline]
pub const fn ror16(w: u16, s: u32) -> u16 {
    w.rotate_right(s % 16)
}

/// The Simon mixing function `(x <<< 1 & x <<< 8) ^ (x <<< 2)`.
#[inline]
pub const fn round_fn(x: u16) -> u16 {
    (rol16(x, 1) & rol16(x, 8)) ^ rol16(x, 2)
}

/// Bit `i mod 62` of the `z0` constant.
#[inline]
pub fn z_bit(i: usize) -> u16 {
    u16::from(Z0[i % Z_PERIOD] == b'1')
}

/// One step of the key-schedule recurrence.
///
/// Given the window `k_i, k_{i+1}, k_{i+3}` and the round index `i`, returns
/// `k_{i+4} = c ^ z0[i] ^ k_i ^ (I ^ S^-1)(S^-3 k_{i+3} ^ k_{i+1})`.
#[inline]
pub fn next_round_key(k_i: u16, k_i1: u16, k_i3: u16, i: usize) -> u16 {
    let tmp = ror16(k_i3, 3) ^ k_i1;
    let tmp = tmp ^ ror16(tmp, 1);
    ROUND_CONSTANT ^ z_bit(i) ^ k_i ^ tmp
}

/// 32-bit cipher state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Block {
    /// Upper word.
    pub x: u16,
    /// Lower word.
    pub y: u16,
}

impl Block {
    pub const fn new(x: u16, y: u16) -> Self {
        Self { x, y }
    }

    pub const fn from_u32(v: u32) -> Self {
        Self {
            x: (v >> 16) as u16,
            y: v as u16,
        }
    }

    pub const fn to_u32(self) -> u32 {
        ((self.x as u32) << 16) | self.y as u32
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08x}", self.to_u32())
    }
}

/// 64-bit master key, stored little-word-first (`words[0] = k0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Key {
    words: [u16; KEY_WORDS],
}

impl Key {
    /// Builds a key from its words in the conventional written order.
    pub const fn new(k3: u16, k2: u16, k1: u16, k0: u16) -> Self {
        Self {
            words: [k0, k1, k2, k3],
        }
    }

    pub const fn from_u64(v: u64) -> Self {
        Self::new(
            (v >> 48) as u16,
            (v >> 32) as u16,
            (v >> 16) as u16,
            v as u16,
        )
    }

    pub const fn to_u64(self) -> u64 {
        let [k0, k1, k2, k3] = self.words;
        ((k3 as u64) << 48) | ((k2 as u64) << 32) | ((k1 as u64) << 16) | k0 as u64
    }

    /// Key words `k0..k3`, which are also the first four round keys.
    pub const fn words(&self) -> [u16; KEY_WORDS] {
        self.words
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.to_u64())
    }
}

/// The 32 round keys derived from a [`Key`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundKeySchedule {
    keys: [u16; ROUNDS],
}

impl RoundKeySchedule {
    pub fn keys(&self) -> &[u16; ROUNDS] {
        &self.keys
    }

    pub fn get(&self, round: usize) -> u16 {
        self.keys[round]
    }
}

/// Expands a master key into the full round-key schedule.
pub fn expand_key(key: Key) -> RoundKeySchedule {
    let mut keys = [0u16; ROUNDS];
    keys[..KEY_WORDS].copy_from_slice(&key.words);
    for i in 0..ROUNDS - KEY_WORDS {
        keys[i + KEY_WORDS] = next_round_key(keys[i], keys[i + 1], keys[i + 3], i);
    }
    RoundKeySchedule { keys }
}

/// One Feistel round: `(x, y) -> (y ^ f(x) ^ k, x)`.
#[inline]
pub fn encrypt_round(state: Block, k: u16) -> Block {
    Block {
        x: state.y ^ round_fn(state.x) ^ k,
        y: state.x,
    }
}

/// Inverse of [`encrypt_round`] under the same round key.
#[inline]
pub fn decrypt_round(state: Block, k: u16) -> Block {
    Block {
        x: state.y,
        y: state.x ^ round_fn(state.y) ^ k,
    }
}

pub fn encrypt_with_schedule(pt: Block, schedule: &RoundKeySchedule) -> Block {
    schedule.keys.iter().fold(pt, |s, &k| encrypt_round(s, k))
}

pub fn decrypt_with_schedule(ct: Block, schedule: &RoundKeySchedule) -> Block {
    schedule
        .keys
        .iter()
        .rev()
        .fold(ct, |s, &k| decrypt_round(s, k))
}

/// Encrypts one block with a freshly expanded schedule.
pub fn encrypt_block(pt: Block, key: Key) -> Block {
    encrypt_with_schedule(pt, &expand_key(key))
}

/// Decrypts one block; round keys are applied in reverse order.
pub fn decrypt_block(ct: Block, key: Key) -> Block {
    decrypt_with_schedule(ct, &expand_key(key))
}
