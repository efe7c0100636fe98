// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use simon_bench::Cli;

fn main() -> ExitCode {
    simon_bench::run(&Cli::parse())
}
