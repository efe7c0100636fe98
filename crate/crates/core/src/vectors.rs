// SPDX-License-Identifier: Apache-2.0

//! Known-answer vector files.
//!
//! One vector per line: `key=<16 hex> pt=<8 hex> [ct=<8 hex>]`. Blank lines and
//! lines starting with `#` are skipped. Hex is big-endian in word order
//! (`k3k2k1k0`, `xy`).

use std::fmt::Write as _;

use thiserror::Error;

use crate::cipher::{Block, Key};

/// The shipped known-answer file.
pub const SHIPPED_VECTORS: &str = include_str!("../data/simon32_64.vectors");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorError {
    #[error("line {line}: missing field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: field `{field}` must be {digits} hex digits, got `{value}`")]
    BadHex {
        line: usize,
        field: &'static str,
        digits: usize,
        value: String,
    },
    #[error("line {line}: unexpected token `{token}`")]
    UnexpectedToken { line: usize, token: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestVector {
    /// 1-based line number in the source text.
    pub line: usize,
    pub key: Key,
    pub pt: Block,
    /// Expected ciphertext, when the file provides one.
    pub ct: Option<Block>,
}

fn parse_hex(
    line: usize,
    field: &'static str,
    digits: usize,
    value: &str,
) -> Result<u64, VectorError> {
    let bad = || VectorError::BadHex {
        line,
        field,
        digits,
        value: value.to_string(),
    };
    if value.len() != digits || !value.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(bad());
    }
    u64::from_str_radix(value, 16).map_err(|_| bad())
}

/// Parses a single non-comment line.
pub fn parse_line(line_no: usize, text: &str) -> Result<TestVector, VectorError> {
    let (mut key, mut pt, mut ct) = (None, None, None);
    for token in text.split_whitespace() {
        match token.split_once('=') {
            Some(("key", v)) => key = Some(Key::from_u64(parse_hex(line_no, "key", 16, v)?)),
            Some(("pt", v)) => pt = Some(Block::from_u32(parse_hex(line_no, "pt", 8, v)? as u32)),
            Some(("ct", v)) => ct = Some(Block::from_u32(parse_hex(line_no, "ct", 8, v)? as u32)),
            _ => {
                return Err(VectorError::UnexpectedToken {
                    line: line_no,
                    token: token.to_string(),
                })
            }
        }
    }
    Ok(TestVector {
        line: line_no,
        key: key.ok_or(VectorError::MissingField {
            line: line_no,
            field: "key",
        })?,
        pt: pt.ok_or(VectorError::MissingField {
            line: line_no,
            field: "pt",
        })?,
        ct,
    })
}

pub fn parse_vectors(text: &str) -> Result<Vec<TestVector>, VectorError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| parse_line(i + 1, l))
        .collect()
}

/// Formats one vector in file syntax.
pub fn format_vector(key: Key, pt: Block, ct: Option<Block>) -> String {
    let mut s = format!("key={key} pt={pt}");
    if let Some(ct) = ct {
        let _ = write!(s, " ct={ct}");
    }
    s
}
