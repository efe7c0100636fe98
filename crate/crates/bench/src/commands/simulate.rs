// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;
use simon_engine::cipher::encrypt_block;
use simon_engine::sim::{write_trace_csv, Engine, MicroarchConfig, SeqCell, Style};

use super::load_vectors;
use crate::{Arch, Cell, CliError, Output};

#[derive(Debug, Serialize)]
struct Row {
    line: usize,
    style: Style,
    seq_cell: SeqCell,
    key: String,
    pt: String,
    ct: String,
    expected: Option<String>,
    /// `ok` when the engine matches the reference cipher and any expected value.
    status: &'static str,
    cycles: u64,
    clock_events: u64,
    data_toggles: u64,
    comb_toggles: u64,
}

#[derive(Serialize)]
struct Report<'a> {
    ok: bool,
    style: Style,
    seq_cell: SeqCell,
    clocked_bits: u32,
    vectors: &'a [Row],
}

pub fn config(arch: Arch, cell: Cell) -> MicroarchConfig {
    let style = match arch {
        Arch::Serial => Style::BitSerial,
        Arch::Parallel => Style::BitParallel,
    };
    let seq_cell = match cell {
        Cell::Ff => SeqCell::FlipFlop,
        Cell::Latch1 => SeqCell::PulsedLatch1b,
        Cell::Latch8 => SeqCell::MultiBitLatch8b,
    };
    MicroarchConfig::new(style, seq_cell)
}

pub fn run(
    arch: Arch,
    cell: Cell,
    vectors: &Path,
    trace: Option<&Path>,
) -> Result<Output, CliError> {
    let cfg = config(arch, cell);
    let vectors = load_vectors(vectors)?;
    let mut engine = Engine::new(cfg).map_err(|e| CliError::Input(e.to_string()))?;
    if trace.is_some() {
        engine = engine.with_cycle_log();
    }
    let mut rows = Vec::with_capacity(vectors.len());
    for v in &vectors {
        let (ct, t) = engine
            .run_block(v.pt, v.key)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let good = ct == encrypt_block(v.pt, v.key) && v.ct.is_none_or(|want| want == ct);
        if !good {
            eprintln!("line {}: engine produced {ct}", v.line);
        }
        rows.push(Row {
            line: v.line,
            style: cfg.style,
            seq_cell: cfg.seq_cell,
            key: v.key.to_string(),
            pt: v.pt.to_string(),
            ct: ct.to_string(),
            expected: v.ct.map(|c| c.to_string()),
            status: if good { "ok" } else { "mismatch" },
            cycles: t.cycles,
            clock_events: t.total_clock_events(),
            data_toggles: t.total_data_toggles(),
            comb_toggles: t.comb_toggles,
        });
    }
    if let Some(path) = trace {
        let io_err = |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::create(path).map_err(io_err)?;
        write_trace_csv(BufWriter::new(file), &cfg, engine.cycle_log()).map_err(io_err)?;
    }
    let ok = rows.iter().all(|r| r.status == "ok");
    let report = Report {
        ok,
        style: cfg.style,
        seq_cell: cfg.seq_cell,
        clocked_bits: cfg.clocked_bits(),
        vectors: &rows,
    };
    Output::new(&report, &rows, ok)
}
