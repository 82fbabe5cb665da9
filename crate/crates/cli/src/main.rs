mod cli;
mod commands;
mod config;
mod error;
mod output;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use cli::{CertifyCommand, Cli, Command};
use error::{CliError, CliResult, EXIT_USAGE};

fn parse(args: &[OsString]) -> Result<Cli, clap::Error> {
    let matches = Cli::command().try_get_matches_from(args)?;
    Cli::from_arg_matches(&matches)
}

/// Parses the command line with the config file's entries spliced in ahead
/// of the explicit flags when `--config` is given.
fn parse_with_config() -> Result<Cli, ExitCode> {
    let args: Vec<OsString> = std::env::args_os().collect();
    let merged = match (config::find_config_arg(&args), config::subcommand_path(&args)) {
        (Some(file), Some(path)) => config::splice_config(&args, &path, &file).map_err(|e| {
            eprintln!("{e}");
            ExitCode::from(EXIT_USAGE)
        })?,
        // without a subcommand clap reports the usage error
        _ => args,
    };
    Ok(parse(&merged).unwrap_or_else(|e| e.exit()))
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Run(a) => commands::cmd_run(a, cli.seed),
        Command::Certify { which } => match which {
            CertifyCommand::Stepsize(a) => commands::cmd_stepsize(a),
            CertifyCommand::Eagc(a) => commands::cmd_eagc(a),
            CertifyCommand::Lyapunov(a) => commands::cmd_lyapunov(a, cli.seed),
        },
        Command::Lowerbound(a) => commands::cmd_lowerbound(a),
        Command::Flow(a) => commands::cmd_flow(a),
    }
}

fn main() -> ExitCode {
    let cli = match parse_with_config() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    match dispatch(&cli) {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
