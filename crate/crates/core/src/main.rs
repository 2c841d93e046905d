use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use hyperspace::scenario::{self, Format, Overrides};

#[derive(Parser)]
#[command(
    name = "hyperspace",
    version,
    about = "Run hyperspace set-convergence scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file
    Run {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run a built-in scenario, or all of them with `all`
    Builtin {
        name: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// List built-in scenario ids
    ListBuiltins,
}

#[derive(Args)]
struct RunOpts {
    /// table, csv or json
    #[arg(long, default_value = "table")]
    format: Format,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time per check (makes output nondeterministic)
    #[arg(long)]
    timing: bool,
}

impl RunOpts {
    fn overrides(&self) -> Overrides {
        Overrides {
            epsilon: self.epsilon,
            horizon: self.horizon,
            depth: self.depth,
            seed: self.seed,
        }
    }
}

fn execute(scenarios: Vec<scenario::Scenario>, opts: &RunOpts) -> anyhow::Result<bool> {
    let reports: Vec<_> = scenarios
        .iter()
        .map(|s| scenario::run_scenario(s, opts.timing))
        .collect();
    let text = scenario::render(&reports, opts.format)?;
    match &opts.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(reports.iter().all(|r| r.all_expected_met))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::ListBuiltins => {
            for id in scenario::builtin_ids() {
                println!("{id}");
            }
            Ok(true)
        }
        Command::Run { file, opts } => {
            let s = scenario::load_scenario(&file, &opts.overrides())?;
            execute(vec![s], &opts)
        }
        Command::Builtin { name, opts } => {
            let o = opts.overrides();
            let scenarios = if name == "all" {
                scenario::builtin_ids()
                    .iter()
                    .map(|id| scenario::builtin_scenario_with(id, &o))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                vec![scenario::builtin_scenario_with(&name, &o)?]
            };
            execute(scenarios, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
