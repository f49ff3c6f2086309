use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use tautcalc::arith::{HarmonicMode, DEFAULT_MAX_DEGREE};
use tautcalc::commands;
use tautcalc::formulas::HMapConvention;
use tautcalc::report::{Format, Report};
use tautcalc::Error;

#[derive(Parser, Debug)]
#[command(
    name = "tautcalc",
    version,
    about = "Exact computations in tautological rings of flat bundles and their arithmetic refinements"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Largest ring degree any construction may use.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
    /// Harmonic numbers as exact rationals or formal symbols h1, h3, ...
    #[arg(long, global = true, value_enum, default_value = "exact")]
    harmonic: HarmonicArg,
    /// Append the elapsed time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Latex,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum HarmonicArg {
    Exact,
    Formal,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConventionArg {
    Literal,
    Dual,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic Pontrjagin class p̂_k of the Hodge bundle.
    Pontrjagin {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        /// Drop the log 2 terms.
        #[arg(long)]
        invert2: bool,
    },
    /// Top power ĉ_1^{1+d(d-1)/2} in the abelian ring.
    C1Power {
        #[arg(long)]
        d: u32,
        /// Drop the log 2 terms.
        #[arg(long)]
        invert2: bool,
    },
    /// Dimensions, bases and relations of the rings for rank d.
    RingInfo {
        #[arg(long)]
        d: u32,
    },
    /// Height polynomial of the Lagrangian Grassmannian ring.
    HeightPoly {
        #[arg(long)]
        d: u32,
    },
    /// Push the Lagrangian relations through the comparison map.
    HmapCheck {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "both")]
        convention: ConventionArg,
    },
    /// Degree of the Lagrangian Grassmannian B_{d-1}.
    Degree {
        #[arg(long)]
        d: u32,
    },
    /// Run verification checks.
    Verify {
        /// Comma-separated subset of: examples, dimensions, two-route, hmap,
        /// ch-even, newton, cauchy, witness-independence.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange(_) | Error::DegreeOverflow { .. } | Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.max_degree > DEFAULT_MAX_DEGREE {
        eprintln!(
            "warning: --max-degree {} exceeds {DEFAULT_MAX_DEGREE}; matrices grow quickly beyond it",
            cli.max_degree
        );
    }
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Latex => Format::Latex,
        FormatArg::Text => Format::Text,
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn harmonic_mode(cli: &Cli) -> HarmonicMode {
    match cli.harmonic {
        HarmonicArg::Exact => HarmonicMode::Exact,
        HarmonicArg::Formal => HarmonicMode::Formal,
    }
}

fn run(cli: &Cli) -> Outcome {
    let cap = cli.max_degree;
    let report = match &cli.command {
        Command::Pontrjagin { d, k, invert2 } => commands::pontrjagin(*d, *k, *invert2, cap),
        Command::C1Power { d, invert2 } => commands::c1_power(*d, *invert2, cap),
        Command::RingInfo { d } => commands::ring_info(*d, cap, harmonic_mode(cli)),
        Command::HeightPoly { d } => commands::height_poly(*d, cap, harmonic_mode(cli)),
        Command::HmapCheck { d, convention } => {
            let conventions = match convention {
                ConventionArg::Literal => vec![HMapConvention::Literal],
                ConventionArg::Dual => vec![HMapConvention::Dual],
                ConventionArg::Both => vec![HMapConvention::Literal, HMapConvention::Dual],
            };
            commands::hmap_check(*d, &conventions, cap)
        }
        Command::Degree { d } => commands::degree(*d),
        Command::Verify { only } => commands::verify(only.as_deref()),
    };
    Ok(report?)
}
