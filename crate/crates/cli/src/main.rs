use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use iab_cli::commands::{reproduce_paper, run_mechanism, run_profile, run_scenario};
use iab_cli::config::{ConfigFile, Mode, Overrides};
use iab_cli::CliError;
use iab_core::oracle::OracleConfig;
use iab_core::{Shell, SolveReport};

#[derive(Parser)]
#[command(name = "iab", version, about = "Spherical air bladder inflation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario configuration file (TOML with unit-suffixed values).
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Number of through-wall profile samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long = "quad-tol")]
    quad_tol: Option<f64>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            samples: self.samples,
            quad_tolerance: self.quad_tol,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Pressure required to reach a target inner radius.
    Inverse(Common),
    /// Geometry reached under a target pressure.
    Forward(Common),
    /// Through-wall radial stress and hydrostatic pressure table only.
    Profile(Common),
    /// Per-bladder pressures for an axis correction of the 8-bladder mechanism.
    Mechanism(Common),
    /// Run the built-in expansion and compression cases against their published values.
    ReproducePaper {
        /// Optional configuration supplying solver settings.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "quad-tol")]
        quad_tol: Option<f64>,
        /// Recompute each pressure with the fixed-grid trapezoid oracle.
        #[arg(long)]
        cross_check: bool,
    },
}

fn print_report(report: &SolveReport) {
    println!("pressure        {:.9e} Pa", report.pressure);
    println!("inner radius    {:.12e} m", report.deformed.inner_radius());
    println!("outer radius    {:.12e} m", report.deformed.outer_radius());
    println!("wall volume Δ   {:.3e} m^3", report.delta_wall_volume);
    for w in &report.warnings {
        eprintln!("warning: {w:?}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Inverse(c) => {
            let cfg = ConfigFile::load(&c.config)?.scenario(Some(Mode::Inverse), c.overrides())?;
            print_report(&run_scenario("inverse", &cfg, &c.out)?);
        }
        Command::Forward(c) => {
            let cfg = ConfigFile::load(&c.config)?.scenario(Some(Mode::Forward), c.overrides())?;
            print_report(&run_scenario("forward", &cfg, &c.out)?);
        }
        Command::Profile(c) => {
            let cfg = ConfigFile::load(&c.config)?.scenario(None, c.overrides())?;
            print_report(&run_profile(&cfg, &c.out)?);
        }
        Command::Mechanism(c) => {
            let cfg = ConfigFile::load(&c.config)?.mechanism(c.overrides())?;
            let outcome = run_mechanism(&cfg, &c.out)?;
            for (t, s) in outcome.targets.iter().zip(&outcome.solutions) {
                println!(
                    "{:<8} r_i {:.6e} m  P {:.9e} Pa",
                    s.id, t.target_inner_radius, s.report.pressure
                );
            }
        }
        Command::ReproducePaper {
            config,
            out,
            samples,
            quad_tol,
            cross_check,
        } => {
            let file = match config {
                Some(p) => ConfigFile::load(&p)?,
                None => ConfigFile::default(),
            };
            let solver = file.solver_config(Overrides {
                samples,
                quad_tolerance: quad_tol,
            })?;
            let oracle = cross_check.then(OracleConfig::default);
            let (_, summary) = reproduce_paper(solver, oracle, &out)?;
            print!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
