// SPDX-License-Identifier: Apache-2.0

pub mod compare;
pub mod encrypt;
pub mod metrics;
pub mod simulate;
pub mod sweep;

use std::path::Path;

use simon_engine::vectors::{parse_vectors, TestVector};

use crate::{read_file, CliError};

pub(crate) fn load_vectors(path: &Path) -> Result<Vec<TestVector>, CliError> {
    parse_vectors(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
