//! `abrig`: command-line front end for the abelian rigidity toolkit.
//!
//! Exit codes: 0 success, 2 usage error, 3 malformed input, 4 internal
//! consistency fault. Diagnostics go to stderr.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_rigidity::lattice::Point;
use abelian_rigidity::Error;
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

#[derive(Parser, Debug)]
#[command(name = "abrig", version, about = "Abelian rigidity of lattice patterns")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads; changes speed only, never output.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A figure file path, or `-` for stdin.
type Input = PathBuf;

#[derive(Subcommand, Debug)]
enum Command {
    /// Pattern polynomial of a figure.
    Poly { figure: Input },
    /// Translate a figure so its bounding box starts at the origin.
    Canon { figure: Input },
    /// Whether the figure equals the lattice points of its convex hull.
    ConvexCheck { figure: Input },
    /// Column description of a convex figure in the basis (u, v).
    UvRep {
        figure: Input,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        u: Point,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        v: Point,
    },
    /// Rigidity verdict with certificates.
    Rigidity { figure: Input },
    /// Cyclotomic factors of a 1D pattern, or the first cyclotomic
    /// polynomials when no figure is given.
    Cyclotomic {
        figure: Option<Input>,
        /// Largest index tested (default: exhaustive bound, or 12 without a figure).
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Periodic integer sequence annihilated by a 1D pattern.
    #[command(name = "witness-1d")]
    Witness1d {
        figure: Input,
        #[arg(long)]
        n: usize,
    },
    /// Aperiodic window with one abelian class for a strongly linear divisor.
    #[command(name = "witness-2d")]
    Witness2d {
        figure: Input,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        v: Point,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_size)]
        window: (usize, usize),
    },
    /// Abelian complexity and constant-sum report for a window or sequence file.
    Verify {
        #[arg(long)]
        figure: Input,
        #[arg(long)]
        window_file: Input,
    },
    /// Period vectors of a window up to a max-norm bound.
    Periods {
        window_file: Input,
        #[arg(long)]
        bound: i64,
    },
    /// Exhaustive search for periodic 1D words with one abelian class.
    #[command(name = "search-1d")]
    Search1d {
        figure: Input,
        #[arg(long, required_unless_present = "values")]
        alphabet: Option<usize>,
        #[arg(long)]
        max_len: usize,
        /// Search integer words with values in LO..HI whose weighted sums are all 0.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, conflicts_with = "alphabet")]
        values: Option<(i64, i64)>,
    },
    /// Exhaustive search for windows with one abelian class.
    #[command(name = "search-2d")]
    Search2d {
        figure: Input,
        #[arg(long)]
        alphabet: usize,
        #[arg(long, value_parser = parse_size)]
        window: (usize, usize),
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// The extension bound N(|A|, P).
    #[command(name = "bound-n")]
    BoundN {
        figure: Input,
        #[arg(long)]
        alphabet: usize,
        /// Caller-supplied Delta, as an integer or fraction p/q.
        #[arg(long, value_parser = parse_rational)]
        delta_cap: Option<Rational64>,
    },
}

fn parse_vector(s: &str) -> Result<Point, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, found {s:?}"))?;
    let x = a.trim().parse().map_err(|_| format!("bad integer {a:?}"))?;
    let y = b.trim().parse().map_err(|_| format!("bad integer {b:?}"))?;
    Ok(Point::new(x, y))
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected `WxH`, found {s:?}"))?;
    let w: usize = a.parse().map_err(|_| format!("bad width {a:?}"))?;
    let h: usize = b.parse().map_err(|_| format!("bad height {b:?}"))?;
    if w == 0 || h == 0 {
        return Err("window dimensions must be positive".into());
    }
    Ok((w, h))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `LO..HI`, found {s:?}"))?;
    let lo = a.parse().map_err(|_| format!("bad integer {a:?}"))?;
    let hi = b.parse().map_err(|_| format!("bad integer {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

fn parse_rational(s: &str) -> Result<Rational64, String> {
    let q = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator {p:?}"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator {q:?}"))?;
            if q == 0 {
                return Err("denominator is zero".into());
            }
            Rational64::new(p, q)
        }
        None => Rational64::from_integer(s.trim().parse().map_err(|_| format!("bad number {s:?}"))?),
    };
    Ok(q)
}

/// Failure of a subcommand after argument parsing.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Lib(Error::ConsistencyFault(_)) => 4,
        _ => 3,
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let report = commands::dispatch(&cli.command)?;
    Ok(match cli.format {
        Format::Text => report.text,
        Format::Json => report.json,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t as usize).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Io(format!("cannot start thread pool: {e}"))),
        },
        None => run(&cli),
    };
    let text = match result {
        Ok(t) => t,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(m) => eprintln!("error: {m}"),
            }
            return ExitCode::from(exit_code(&f));
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(m) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
