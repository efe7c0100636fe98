// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Serialize;
use simon_engine::cipher::{decrypt_block, encrypt_block};
use simon_engine::sim::{Engine, MicroarchConfig};

use super::load_vectors;
use crate::{CliError, Output};

#[derive(Debug, Serialize)]
struct Row {
    line: usize,
    key: String,
    pt: String,
    ct: String,
    expected: Option<String>,
    /// `ok`, `mismatch`, or `unchecked` when no ciphertext was given.
    status: &'static str,
    /// Decryption and both engine models agree; only with `--verify`.
    verified: Option<bool>,
}

#[derive(Serialize)]
struct Report<'a> {
    ok: bool,
    vectors: &'a [Row],
}

pub fn run(path: &Path, verify: bool) -> Result<Output, CliError> {
    let vectors = load_vectors(path)?;
    let mut engines = if verify {
        let engine = |cfg| Engine::new(cfg).expect("built-in configs are valid");
        Some((
            engine(MicroarchConfig::proposed()),
            engine(MicroarchConfig::baseline()),
        ))
    } else {
        None
    };
    let mut rows = Vec::with_capacity(vectors.len());
    for v in &vectors {
        let ct = encrypt_block(v.pt, v.key);
        let status = match v.ct {
            None => "unchecked",
            Some(want) if want == ct => "ok",
            Some(_) => "mismatch",
        };
        let verified = engines.as_mut().map(|(par, ser)| {
            let by_engine = |e: &mut Engine| {
                e.run_block(v.pt, v.key)
                    .map(|(c, _)| c == ct)
                    .unwrap_or(false)
            };
            decrypt_block(ct, v.key) == v.pt && by_engine(par) && by_engine(ser)
        });
        rows.push(Row {
            line: v.line,
            key: v.key.to_string(),
            pt: v.pt.to_string(),
            ct: ct.to_string(),
            expected: v.ct.map(|c| c.to_string()),
            status,
            verified,
        });
    }
    for r in rows.iter().filter(|r| r.status == "mismatch") {
        eprintln!(
            "line {}: ciphertext {} does not match expected {}",
            r.line,
            r.ct,
            r.expected.as_deref().unwrap_or("")
        );
    }
    let ok = rows
        .iter()
        .all(|r| r.status != "mismatch" && r.verified != Some(false));
    Output::new(&Report { ok, vectors: &rows }, &rows, ok)
}
