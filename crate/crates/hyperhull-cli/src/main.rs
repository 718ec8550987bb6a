//! Command-line surface: vertex enumeration, vertex counting, the bound
//! scan, factorization, and next-vertex queries, with stable output formats.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use hyperhull::bounds;
use hyperhull::exactmath::{Int, Rat};
use hyperhull::factor;
use hyperhull::hull::{enumerate_hull, next_vertex_from_x, HullPath, NextResult};
use hyperhull::lattice::{AffineLattice, Basis2, Point2, Vec2};
use hyperhull::transform::{map_back, to_standard, BranchSelector, BranchTag, GeneralHyperbola};

#[derive(Parser)]
#[command(name = "hyperhull", version, about = "Convex hulls of lattice points above a hyperbola")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the hull vertex chain.
    Vertices {
        /// Level of the hyperbola (rational, e.g. 14 or 29/2).
        #[arg(long)]
        n: String,
        /// General hyperbola coefficients a,b,c,x0,y0 (a,b,c integers).
        #[arg(long, conflicts_with_all = ["lattice", "anchor"])]
        general: Option<String>,
        /// Sample point px,py strictly inside the component to enumerate.
        #[arg(long, requires = "general")]
        branch_sample: Option<String>,
        /// Lattice basis w1x,w1y,w2x,w2y (defaults to the integer lattice).
        #[arg(long)]
        lattice: Option<String>,
        /// Lattice anchor ax,ay (defaults to the origin).
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Print the number of hull vertices for an integer level over Z^2.
    Count {
        #[arg(long)]
        n: String,
    },
    /// Scan V(n) with the exact bound checkers and emit CSV.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        chunks: usize,
    },
    /// Report the smallest nontrivial divisor found on the hull, or "prime".
    Factor {
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 1)]
        chunks: u32,
    },
    /// First hull vertex with x at or beyond the given start, over Z^2.
    Next {
        #[arg(long)]
        n: String,
        #[arg(long)]
        from_x: String,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<hyperhull::Error> for CliError {
    fn from(e: hyperhull::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn parse_rat(what: &str, s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s.trim())
        .map_err(|e| CliError::Usage(format!("invalid rational for {what}: {s:?} ({e})")))
}

fn parse_int(what: &str, s: &str) -> Result<Int, CliError> {
    Int::from_str(s.trim())
        .map_err(|e| CliError::Usage(format!("invalid integer for {what}: {s:?} ({e})")))
}

fn parse_rat_list(what: &str, s: &str, expect: usize) -> Result<Vec<Rat>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != expect {
        return Err(CliError::Usage(format!(
            "{what} expects {expect} comma-separated values, got {}",
            parts.len()
        )));
    }
    parts.iter().map(|p| parse_rat(what, p)).collect()
}

fn print_path(path: &HullPath, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for p in path {
        match format {
            Format::Csv => writeln!(out, "{},{}", p.x, p.y)?,
            Format::Jsonl => writeln!(out, "{{\"x\":\"{}\",\"y\":\"{}\"}}", p.x, p.y)?,
        }
    }
    out.flush()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Vertices {
            n,
            general,
            branch_sample,
            lattice,
            anchor,
            format,
        } => {
            let n = parse_rat("--n", &n)?;
            let path = if let Some(general) = general {
                let vals = parse_rat_list("--general", &general, 5)?;
                let as_int = |v: &Rat, what: &str| -> Result<Int, CliError> {
                    if v.is_integer() {
                        Ok(v.numer().clone())
                    } else {
                        Err(CliError::Usage(format!("{what} must be an integer, got {v}")))
                    }
                };
                let h = GeneralHyperbola::new(
                    as_int(&vals[0], "--general a")?,
                    as_int(&vals[1], "--general b")?,
                    as_int(&vals[2], "--general c")?,
                    vals[3].clone(),
                    vals[4].clone(),
                    n,
                )?;
                let branch = match branch_sample {
                    Some(s) => {
                        let p = parse_rat_list("--branch-sample", &s, 2)?;
                        BranchSelector::Sample(Point2::new(p[0].clone(), p[1].clone()))
                    }
                    None => BranchSelector::Tag(BranchTag::Plus),
                };
                let sp = to_standard(&h, &branch)?;
                let standard = enumerate_hull(sp.n_prime(), sp.lattice());
                map_back(&sp, &standard)?
            } else {
                if !n.is_positive() {
                    return Err(CliError::Usage("--n must be positive".into()));
                }
                let lat = build_lattice(lattice.as_deref(), anchor.as_deref())?;
                enumerate_hull(&n, &lat)
            };
            print_path(&path, format).map_err(|e| CliError::Domain(e.to_string()))?;
        }
        Command::Count { n } => {
            let n = parse_int("--n", &n)?;
            if !n.is_positive() {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            println!("{}", bounds::count_vertices(&n));
        }
        Command::Scan {
            from,
            to,
            out,
            chunks,
        } => {
            if from < 1 || from > to {
                return Err(CliError::Usage(format!(
                    "invalid range: --from {from} --to {to}"
                )));
            }
            let reports = bounds::scan_chunked(from, to, chunks)?;
            match out {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| CliError::Domain(format!("cannot create {path:?}: {e}")))?;
                    let mut w = BufWriter::new(file);
                    bounds::write_csv(&reports, &mut w)
                        .and_then(|()| w.flush())
                        .map_err(|e| CliError::Domain(e.to_string()))?;
                }
                None => {
                    let stdout = io::stdout();
                    let mut w = BufWriter::new(stdout.lock());
                    bounds::write_csv(&reports, &mut w)
                        .and_then(|()| w.flush())
                        .map_err(|e| CliError::Domain(e.to_string()))?;
                }
            }
        }
        Command::Factor { n, chunks } => {
            let n = parse_int("--n", &n)?;
            if n < Int::from(2) {
                return Err(CliError::Usage("--n must be at least 2".into()));
            }
            if chunks < 1 {
                return Err(CliError::Usage("--chunks must be at least 1".into()));
            }
            match factor::find_factor(&n, chunks) {
                Some(d) => println!("{d}"),
                None => println!("prime"),
            }
        }
        Command::Next { n, from_x } => {
            let n = parse_rat("--n", &n)?;
            if !n.is_positive() {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let x = parse_rat("--from-x", &from_x)?;
            if x.is_negative() {
                return Err(CliError::Usage("--from-x must be nonnegative".into()));
            }
            match next_vertex_from_x(&n, &AffineLattice::z2(), &x) {
                NextResult::Finite(p) => println!("{},{}", p.x, p.y),
                NextResult::Infinite => println!("infinity"),
            }
        }
    }
    Ok(())
}

fn build_lattice(lattice: Option<&str>, anchor: Option<&str>) -> Result<AffineLattice, CliError> {
    let anchor = match anchor {
        Some(s) => {
            let v = parse_rat_list("--anchor", s, 2)?;
            Point2::new(v[0].clone(), v[1].clone())
        }
        None => Point2::origin(),
    };
    match lattice {
        Some(s) => {
            let v = parse_rat_list("--lattice", s, 4)?;
            let basis = Basis2::new(
                Vec2::new(v[0].clone(), v[1].clone()),
                Vec2::new(v[2].clone(), v[3].clone()),
            )?;
            Ok(AffineLattice::new(anchor, &basis))
        }
        None => Ok(AffineLattice::z2_at(anchor)),
    }
}
