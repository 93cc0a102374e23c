//! Command-line front end: `z`, `figure`, `validate` and `oracle`.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod error;
pub mod figures;
pub mod format;

use std::io::Write;

use args::{Cli, Command};
use error::CliResult;

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Z(a) => commands::cmd_z(a, out),
        Command::Figure(a) => commands::cmd_figure(a, out),
        Command::Validate(a) => commands::cmd_validate(a, out),
        Command::Oracle(a) => commands::cmd_oracle(a, out),
    }
}
