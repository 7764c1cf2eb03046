use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use regretlab_cli::config::RunConfig;
use regretlab_cli::runner::run_and_write;
use regretlab_cli::sweep::run_sweep_and_write;
use regretlab_cli::trace::format_sig;
use regretlab_cli::verify::{verify_drvu, verify_invariants, verify_oracle};
use regretlab_cli::HarnessError;

/// Simulation laboratory for no-regret learning in time-varying zero-sum
/// matrix games.
#[derive(Parser)]
#[command(name = "regretlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configured simulation and write its CSV trace.
    Run {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Override the schedule horizon.
        #[arg(long = "T", alias = "t")]
        horizon: Option<u64>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit an SVG plot of the three measures.
        #[arg(long)]
        plot: bool,
    },
    /// Sweep every single step size against the two-layer algorithm.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "T", alias = "t")]
        horizon: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; nonzero exit on any violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Horizon of the invariants-suite scenarios.
        #[arg(long = "T", alias = "t", default_value_t = 10_000)]
        horizon: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Drvu,
    Invariants,
    Oracle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(
    path: &std::path::Path,
    horizon: Option<u64>,
    out: Option<PathBuf>,
) -> Result<RunConfig, HarnessError> {
    let mut cfg = RunConfig::from_file(path)?;
    if let Some(t) = horizon {
        cfg.schedule = cfg.schedule.clone().with_horizon(t);
    }
    if let Some(dir) = out {
        cfg.out_dir = dir;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Run {
            config,
            horizon,
            out,
            plot,
        } => {
            let mut cfg = load_config(&config, horizon, out)?;
            cfg.plot = cfg.plot || plot;
            let outcome = run_and_write(&cfg)?;
            println!(
                "T={} reg_x={} reg_y={} dyn_ne_reg={} ne_reg={} dual_gap={} clamped_rounds={}",
                outcome.trace.last().map(|r| r.t).unwrap_or_default(),
                format_sig(outcome.final_reg_x),
                format_sig(outcome.final_reg_y),
                format_sig(outcome.final_dyn_ne_reg),
                format_sig(outcome.final_ne_reg),
                format_sig(outcome.final_dual_gap),
                outcome.clamped_rounds,
            );
            println!(
                "trace written to {}",
                cfg.out_dir.join("trace.csv").display()
            );
            Ok(())
        }
        Command::Sweep {
            config,
            horizon,
            out,
        } => {
            let cfg = load_config(&config, horizon, out)?;
            let outcome = run_sweep_and_write(&cfg)?;
            for m in &outcome.summary.per_measure {
                println!(
                    "{}: best single eta {:.4e} -> {}, two-layer -> {}, ratio {:.3}",
                    m.measure,
                    m.best_eta,
                    format_sig(m.best_single_value),
                    format_sig(m.two_layer_value),
                    m.ratio
                );
            }
            println!(
                "summary written to {}",
                cfg.out_dir.join("summary.json").display()
            );
            Ok(())
        }
        Command::Verify {
            suite,
            seed,
            horizon,
        } => {
            let report = match suite {
                Suite::Drvu => verify_drvu(seed),
                Suite::Oracle => verify_oracle(seed),
                Suite::Invariants => verify_invariants(horizon)?,
            };
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(HarnessError::Verify(
                    report.violations.first().cloned().unwrap_or_default(),
                ))
            }
        }
    }
}
