use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use h3_cli::artifacts::{boundary_info, group_info, hamiltonian_tables, spectrum_table};
use h3_cli::{
    emit, exit_status, parse_spacings, render, run_suite, write_report, Artifact, CliError, Format,
    Param, QesConfig, RunConfig, RunReport, Suite,
};
use h3_core::diffop::WeightVector;
use h3_core::discrete::Spacings;
use h3_core::scalar::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "h3", version, about = "Exact verification toolkit for the rational H3 model")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coupling, `p/q` or `formal`.
    #[arg(long, global = true, default_value = "1/3")]
    nu: Param,
    /// Oscillator frequency, `p/q` or `formal`.
    #[arg(long = "om", visible_alias = "omega", global = true, default_value = "1")]
    omega: Param,
    /// Lattice spacings `a,b,c`.
    #[arg(long, global = true, default_value = "1,1,1", value_parser = parse_spacings)]
    delta: Spacings,
    /// Highest flag level.
    #[arg(long, global = true, default_value_t = 6)]
    n: u32,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record per-check wall-clock time.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection group data.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// The invariant coordinates.
    Invariants {
        #[command(subcommand)]
        action: InvariantsAction,
    },
    /// The algebraic Hamiltonian.
    Hamiltonian {
        #[command(subcommand)]
        action: HamiltonianAction,
    },
    /// Eigenvalues and eigenfunctions of h on a flag space.
    Spectrum {
        /// Characteristic vector of the flag.
        #[arg(long, default_value = "1,2,3", value_parser = parse_alpha)]
        alpha: WeightVector,
    },
    /// The second-order integral.
    Integral {
        #[command(subcommand)]
        action: IntegralAction,
    },
    /// The lattice discretization.
    Discrete {
        #[command(subcommand)]
        action: DiscreteAction,
    },
    /// The quasi-exactly-solvable extension on functions of tau1.
    Qes(QesArgs),
    /// The hidden algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Run verification suites.
    Verify {
        /// Suites to run, or `all`.
        #[arg(default_value = "all", value_parser = parse_suite_arg)]
        suites: Vec<SuiteArg>,
        #[command(flatten)]
        qes: QesArgs,
    },
    /// Dump a computed object in canonical form.
    Emit {
        #[arg(value_enum)]
        artifact: Artifact,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        qes: QesArgs,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, reflections and orbit lengths.
    Info,
}

#[derive(Subcommand)]
enum InvariantsAction {
    /// Print tau1, tau2, tau3.
    Emit,
    /// Jacobian and boundary proportionality constants.
    Boundary,
}

#[derive(Subcommand)]
enum HamiltonianAction {
    /// Derive the coefficient functions and compare with the table.
    Derive {
        /// Keep nu and omega symbolic.
        #[arg(long)]
        formal: bool,
    },
}

#[derive(Subcommand)]
enum IntegralAction {
    /// Commutation, flag and eigenvalue-labeling report.
    Check,
}

#[derive(Subcommand)]
enum DiscreteAction {
    /// Compare derived shift coefficients with the tables.
    Compare,
    /// Characteristic-polynomial certificate against the continuum.
    Spectrum,
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Generator, Abelian-set, structure and decomposition checks.
    Check,
}

#[derive(Args, Clone)]
struct QesArgs {
    /// Coefficient of the cubic term.
    #[arg(long, default_value = "1/2", value_parser = parse_rational_arg)]
    a: Rational,
    /// Exponent of the tau1 gauge factor.
    #[arg(long = "gamma-q", default_value = "1/4", value_parser = parse_rational_arg)]
    gamma_q: Rational,
    /// Dimension of the invariant block minus one.
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Clone, Copy)]
enum SuiteArg {
    All,
    One(Suite),
}

fn parse_suite_arg(s: &str) -> Result<SuiteArg, String> {
    if s == "all" {
        return Ok(SuiteArg::All);
    }
    s.parse().map(SuiteArg::One).map_err(|e: CliError| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_alpha(s: &str) -> Result<WeightVector, String> {
    let parts: Vec<u32> = s.split(',').map(|p| p.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let arr: [u32; 3] = parts.try_into().map_err(|_| format!("expected three weights, got {s:?}"))?;
    WeightVector::new(arr).map_err(|e| e.to_string())
}

fn config(g: &Global, suites: Vec<Suite>, qes: Option<&QesArgs>) -> RunConfig {
    let mut c = RunConfig {
        nu: g.nu.clone(),
        omega: g.omega.clone(),
        delta: g.delta.clone(),
        n: g.n,
        suites,
        report: g.report.clone(),
        timings: g.timings,
        ..RunConfig::default()
    };
    if let Some(q) = qes {
        c.qes = QesConfig {
            a: q.a.clone(),
            gamma_q: q.gamma_q.clone(),
            k: q.k,
        };
    }
    c
}

/// Runs checks, optionally keeping only ids with one of `prefixes`.
fn checks(g: &Global, cfg: RunConfig, prefixes: &[&str]) -> Result<u8, CliError> {
    let mut results = run_suite(&cfg)?;
    if !prefixes.is_empty() {
        results.retain(|c| prefixes.iter().any(|p| c.check_id.starts_with(p)));
    }
    let report = RunReport::new(&cfg, &results);
    print!("{}", render(&report, g.format));
    if let Some(path) = &cfg.report {
        write_report(&report, path)?;
    }
    Ok(exit_status(&results))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    let plain = || config(g, Suite::ALL.to_vec(), None);
    plain().validate()?;
    match cli.command {
        Command::Group { action: GroupAction::Info } => print!("{}", group_info(g.format)?),
        Command::Invariants { action } => match action {
            InvariantsAction::Emit => print!("{}", emit(Artifact::Invariants, g.format, &plain())?),
            InvariantsAction::Boundary => print!("{}", boundary_info(g.format)?),
        },
        Command::Hamiltonian { action: HamiltonianAction::Derive { formal } } => {
            let (text, agree) = hamiltonian_tables(g.format, &plain(), formal)?;
            print!("{text}");
            return Ok(u8::from(!agree));
        }
        Command::Spectrum { alpha } => print!("{}", spectrum_table(g.format, &plain(), alpha)?),
        Command::Integral { action: IntegralAction::Check } => {
            return checks(g, config(g, vec![Suite::Integral], None), &[]);
        }
        Command::Discrete { action } => {
            let prefixes: &[&str] = match action {
                DiscreteAction::Compare => &["discrete.table"],
                DiscreteAction::Spectrum => &["discrete.isospectral"],
            };
            return checks(g, config(g, vec![Suite::Discrete], None), prefixes);
        }
        Command::Qes(q) => return checks(g, config(g, vec![Suite::Qes], Some(&q)), &[]),
        Command::Algebra { action: AlgebraAction::Check } => {
            return checks(g, config(g, vec![Suite::Hiddenalg], None), &[]);
        }
        Command::Verify { suites, qes } => {
            let mut chosen = Vec::new();
            for s in suites {
                match s {
                    SuiteArg::All => chosen.extend(Suite::ALL),
                    SuiteArg::One(s) => chosen.push(s),
                }
            }
            return checks(g, config(g, chosen, Some(&qes)), &[]);
        }
        Command::Emit { artifact, output, qes } => {
            let text = emit(artifact, g.format, &config(g, Suite::ALL.to_vec(), Some(&qes)))?;
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("h3: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
