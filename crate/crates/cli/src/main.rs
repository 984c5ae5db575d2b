mod parse;

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdist_core::density::{self, DensityMatrix};
use qdist_core::distinguish::{self, CriterionVerdict};
use qdist_core::figures;
use qdist_core::hilbert::PureState;
use qdist_core::properties::{self, Report, Suite, SuiteConfig};
use qdist_core::sweep::{format_value, Grid};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] qdist_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "qdist", version, about = "Statistical distances between classical distributions and quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Override the slack of bound and property checks.
    #[arg(long, global = true, allow_negative_numbers = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// JSD and half the squared Wootters distance between (a, 1-a) and (b, 1-b).
    Fig1(Fig1Args),
    /// √(2·JSD) in the rotated basis as a function of θ, one column per φ.
    Fig2(Fig2Args),
    /// √(2·JSD) in the rotated basis over a θ × φ grid, long format.
    Fig3(Fig3Args),
    /// Run a randomized property suite and print its report.
    Properties(PropertiesArgs),
    /// Evaluate both distinguishability criteria for two distributions.
    Criteria(CriteriaArgs),
    /// Quantum JSD of two density matrices (files) or pure states (inline vectors).
    Qjsd(QjsdArgs),
    /// Monte-Carlo maximum-likelihood discrimination of two distributions.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct Fig1Args {
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, default_value_t = 0.001)]
    b_start: f64,
    #[arg(long, default_value_t = 0.999)]
    b_stop: f64,
    #[arg(long, default_value_t = 0.001)]
    b_step: f64,
}

#[derive(Args)]
struct Fig2Args {
    /// Comma-separated φ values in [0, π/2].
    #[arg(long, default_value = "0.5,0.8", allow_hyphen_values = true)]
    phi: String,
    /// Number of θ cells on [0, theta-stop].
    #[arg(long, default_value_t = 1024)]
    theta_cells: usize,
    #[arg(long, default_value_t = TAU)]
    theta_stop: f64,
}

#[derive(Args)]
struct Fig3Args {
    /// θ grid points on [0, 2π].
    #[arg(long, default_value_t = 128)]
    theta_points: usize,
    /// φ grid points on [0, π/2].
    #[arg(long, default_value_t = 128)]
    phi_points: usize,
}

#[derive(Args)]
struct PropertiesArgs {
    /// metric, kernel, chain, desig, fubini, simplex, density, criteria, or all.
    suite: String,
    /// Samples per check (default depends on the suite).
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Args)]
struct CriteriaArgs {
    /// First distribution, e.g. 0.5,0.5 (supplies the χ² denominators).
    p1: String,
    /// Second distribution.
    p2: String,
    /// Number of trials L.
    #[arg(long, default_value_t = 1)]
    trials: u64,
}

#[derive(Args)]
struct QjsdArgs {
    /// Matrix file, or comma-separated state amplitudes such as 1,0 or 0.6,0+0.8i.
    rho1: String,
    rho2: String,
}

#[derive(Args)]
struct SimulateArgs {
    p1: String,
    p2: String,
    /// Samples per experiment (L).
    #[arg(long, default_value_t = 101)]
    trials: u64,
    #[arg(long, default_value_t = 10_000)]
    experiments: u64,
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}

fn tolerance(cli: &Cli) -> CliResult<f64> {
    match cli.tolerance {
        Some(t) if !t.is_finite() => Err(CliError::Usage(format!("tolerance must be finite, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(figures::BOUND_TOLERANCE),
    }
}

fn verdict_line(name: &str, v: &CriterionVerdict) -> String {
    format!(
        "criterion={name} trials={} statistic={} threshold={} distinguishable={} min_trials={}\n",
        v.trials,
        format_value(v.statistic),
        format_value(v.threshold),
        v.distinguishable,
        v.min_trials
    )
}

fn load_density(arg: &str) -> CliResult<DensityMatrix> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?;
        return Ok(DensityMatrix::from_rows(&parse::parse_matrix(&text)?)?);
    }
    let state = PureState::normalized(parse::parse_complex_list(arg)?)?;
    Ok(DensityMatrix::from_pure_state(&state))
}

fn run_properties(cli: &Cli, args: &PropertiesArgs) -> CliResult<(String, bool)> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let config = SuiteConfig {
        samples: args.samples,
        seed: cli.seed,
        tolerance: cli.tolerance,
    };
    let mut combined = Report::default();
    for suite in suites {
        combined.checks.extend(properties::run_suite(suite, config)?.checks);
    }
    let ok = combined.passed();
    Ok((combined.to_csv(), ok))
}

/// Output text and whether all checks passed.
fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let tol = tolerance(cli)?;
    let text = match &cli.command {
        Command::Fig1(a) => {
            let grid = Grid::stepped(a.b_start, a.b_stop, a.b_step)?;
            figures::fig1(a.a, &grid, tol)?.to_csv()
        }
        Command::Fig2(a) => {
            let phis = parse::parse_real_list(&a.phi)?;
            if a.theta_cells == 0 {
                return Err(CliError::Usage("theta-cells must be positive".into()));
            }
            let grid = Grid::linspace(0.0, a.theta_stop, a.theta_cells + 1)?;
            figures::fig2(&phis, &grid, tol)?.to_csv()
        }
        Command::Fig3(a) => {
            let theta = Grid::linspace(0.0, TAU, a.theta_points)?;
            let phi = Grid::linspace(0.0, FRAC_PI_2, a.phi_points)?;
            figures::fig3(&theta, &phi, tol)?.to_csv()
        }
        Command::Properties(a) => return run_properties(cli, a),
        Command::Criteria(a) => {
            let p1 = parse::parse_prob_list(&a.p1)?;
            let p2 = parse::parse_prob_list(&a.p2)?;
            let mut out = String::new();
            match distinguish::wootters_criterion(&p1, &p2, a.trials) {
                Ok(v) => out.push_str(&verdict_line("wootters", &v)),
                Err(e @ qdist_core::Error::SingularDenominator { .. }) => {
                    out.push_str(&format!("criterion=wootters singular=\"{e}\"\n"))
                }
                Err(e) => return Err(e.into()),
            }
            out.push_str(&verdict_line("jsd", &distinguish::jsd_criterion(&p1, &p2, a.trials)?));
            out
        }
        Command::Qjsd(a) => {
            let r1 = load_density(&a.rho1)?;
            let r2 = load_density(&a.rho2)?;
            format!(
                "qjsd={} entropy1={} entropy2={}\n",
                format_value(density::quantum_jsd(&r1, &r2)?),
                format_value(density::von_neumann_entropy(&r1)),
                format_value(density::von_neumann_entropy(&r2))
            )
        }
        Command::Simulate(a) => {
            let p1 = parse::parse_prob_list(&a.p1)?;
            let p2 = parse::parse_prob_list(&a.p2)?;
            let r = distinguish::monte_carlo_discrimination(&p1, &p2, a.trials, a.experiments, cli.seed)?;
            format!(
                "seed={} trials={} experiments={} successes={} success_rate={} standard_error={}\n",
                r.seed,
                r.trials,
                r.experiments,
                r.successes,
                format_value(r.success_rate),
                format_value(r.standard_error())
            )
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli).and_then(|(text, ok)| write_output(cli.out.as_deref(), &text).map(|_| ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
