//! `qparity`: parity classes of the rationals from the command line.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, unparseable
//! rationals), 2 on domain errors (enumeration caps, I/O).

mod commands;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qparity_core::density::OrderingKind;
use qparity_core::{Rational, DEFAULT_ELEMENT_CAP};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qparity",
    version,
    about = "Even, odd and none: parity for the rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parity, 2-adic order, dyadic form and Q_P coset of a rational.
    Classify {
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        q: Rational,
    },
    /// p-adic order of a rational.
    Valuation {
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        q: Rational,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(2..))]
        p: i64,
    },
    /// Rows of the Calkin-Wilf tree or levels of the Stern-Brocot tree.
    Tree(TreeArgs),
    /// Prefix densities of the parity classes under an ordering.
    Density(DensityArgs),
    /// Representatives of the Q_P cosets inside Q_{-k}.
    Coset {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
    },
    /// Whether two rationals lie in the same Q_P coset.
    CosetEq {
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        q1: Rational,
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        q2: Rational,
    },
    /// Farey sequence F_N on (0, 1) with its parity counts.
    Farey {
        #[arg(value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
    },
    /// Dyadic points 2^k (2l - 1) with their 2-adic order, as CSV.
    Plane(PlaneArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeKind {
    Cw,
    Sb,
}

#[derive(Debug, Args)]
struct TreeArgs {
    #[arg(value_enum)]
    kind: TreeKind,
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    rows: i64,
    /// Parity strings from the symbol automaton only.
    #[arg(long)]
    parity_only: bool,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: u64,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long, value_parser = parse_ordering)]
    order: OrderingKind,
    #[arg(long, required_unless_present = "n_max", value_parser = clap::value_parser!(u64).range(1..))]
    count: Option<u64>,
    /// For list-order and farey: all denominators up to this bound, with a
    /// checkpoint after each denominator.
    #[arg(long, conflicts_with = "count", value_parser = clap::value_parser!(i64).range(2..))]
    n_max: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: u64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct PlaneArgs {
    #[arg(long)]
    k_min: i64,
    #[arg(long)]
    k_max: i64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_odd: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_ordering(s: &str) -> Result<OrderingKind, String> {
    s.parse::<OrderingKind>().map_err(|e| {
        let tags: Vec<&str> = OrderingKind::ALL.iter().map(|k| k.tag()).collect();
        format!("{e}; expected one of {}", tags.join(", "))
    })
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Classify { q } => commands::classify(&q, out),
        Command::Valuation { q, p } => commands::valuation(&q, p, out),
        Command::Tree(a) => commands::tree(
            a.kind == TreeKind::Cw,
            a.rows,
            a.parity_only,
            a.csv.as_deref(),
            a.cap,
            out,
        ),
        Command::Density(a) => commands::density(
            a.order,
            a.count,
            a.n_max,
            a.checkpoints,
            a.csv.as_deref(),
            a.cap,
            out,
        ),
        Command::Coset { k } => commands::coset(k, out),
        Command::CosetEq { q1, q2 } => commands::coset_eq(&q1, &q2, out),
        Command::Farey { n } => commands::farey(n, out),
        Command::Plane(a) => commands::plane(a.k_min, a.k_max, a.max_odd, a.csv.as_deref(), out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
