use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jc_thermo::runner::{
    cmd_negativity, cmd_steady, cmd_table1, cmd_teff, cmd_tracedist, ExperimentConfig,
    OutputFormat, ResultTable,
};
use jc_thermo::JcError;

/// Steady states, thermalization diagnostics, and thermal entanglement of
/// the open Jaynes-Cummings model.
#[derive(Parser)]
#[command(name = "jc-thermo", version, about)]
struct Cli {
    /// JSON experiment configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format; overrides the config, defaults to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Override the configured number of excitation subspaces.
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady-state populations with a thermalization verdict.
    Steady,
    /// Pairwise effective temperatures of the steady state.
    Teff,
    /// Trace distance to Gibbs references over a t_ref sweep.
    Tracedist,
    /// Thermal logarithmic negativity over a g_r sweep.
    Negativity {
        /// Coupling scaling s (g = omega0 / s); repeatable.
        #[arg(long = "s", value_name = "S")]
        s: Vec<f64>,
    },
    /// Crossover and truncation indices of the benchmark grid.
    Table1,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, JcError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| JcError::Config("this command needs --config PATH".into()))?;
    let mut config = ExperimentConfig::load(path)?;
    if let Some(n_d) = cli.truncation {
        config.truncation = n_d;
        config.validate()?;
    }
    Ok(config)
}

fn emit(cli: &Cli, table: &ResultTable, config: Option<&ExperimentConfig>) -> Result<(), JcError> {
    let output = config.and_then(|c| c.output.as_ref());
    let format = cli
        .format
        .map(OutputFormat::from)
        .or(output.map(|o| o.format))
        .unwrap_or(OutputFormat::Csv);
    let rendered = table.render(format);
    match cli.out.as_ref().or(output.map(|o| &o.path)) {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            JcError::Output(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), JcError> {
    match &cli.command {
        Command::Steady => {
            let config = load_config(cli)?;
            emit(cli, &cmd_steady(&config)?, Some(&config))
        }
        Command::Teff => {
            let config = load_config(cli)?;
            emit(cli, &cmd_teff(&config)?, Some(&config))
        }
        Command::Tracedist => {
            let config = load_config(cli)?;
            emit(cli, &cmd_tracedist(&config)?, Some(&config))
        }
        Command::Negativity { s } => {
            let config = load_config(cli)?;
            emit(cli, &cmd_negativity(&config, s)?, Some(&config))
        }
        Command::Table1 => emit(cli, &cmd_table1()?, None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
