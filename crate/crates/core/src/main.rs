use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bincensus::boundscheck::{run_suite, Suite};
use bincensus::burnside::count_codes;
use bincensus::cyclestruct::{partitions_of, CycleType};
use bincensus::error::Error;
use bincensus::gf2poly::FactorCache;
use bincensus::oracle::{classify, enum_subspaces, invariant_count, Permutation, ENUM_CEILING};
use bincensus::output::{self, CensusRecord, InvariantCountRecord, LatticeRecord, LimitRecord, OracleRecord, SCHEMA};
use bincensus::qarith::{gauss_binomial, gauss_total, scaled_u};
use bincensus::submodcount::lattice_dim_poly;

const CENSUS_CEILING: usize = 60;

#[derive(Parser)]
#[command(name = "bincensus", version, about = "Exact census of inequivalent binary codes")]
struct Cli {
    /// Factorization cache file, read before and written after the command.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// b(n) and its census row as JSON.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        by_dim: bool,
    },
    /// Census rows for n = 1..=max-n.
    Table {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of subspaces of GF(q)^n, or of the d-dimensional ones.
    Gauss {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
    },
    /// Invariant-subspace lattice of a cycle type such as "3,2,1,1".
    Lattice {
        #[arg(long = "type")]
        cycle_type: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Brute-force oracle output.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        classify: bool,
    },
    /// Scaled subspace count u_n = G(n,2) 2^(-n^2/4).
    Limits {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(30..))]
        precision: u32,
    },
}

enum Failure {
    Usage(String),
    Ceiling(String),
    Check(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Ceiling { .. } | Error::BelowMinimum { .. } | Error::DimensionOutOfRange { .. } => {
                Failure::Ceiling(e.to_string())
            }
            Error::InvalidFieldSize(_)
            | Error::EvenModulus(_)
            | Error::InvalidCycleType(_)
            | Error::InvalidPermutation(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn census_range(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Error::BelowMinimum { what: "the census", n, min: 1 }.into());
    }
    if n > CENSUS_CEILING {
        return Err(Error::Ceiling { what: "census", n, max: CENSUS_CEILING }.into());
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).unwrap() + "\n"
}

fn run(command: Command) -> Result<String, Failure> {
    Ok(match command {
        Command::Count { n, by_dim } => {
            census_range(n)?;
            json(&CensusRecord::from_row(&*count_codes(n)?, by_dim))
        }
        Command::Table { max_n, format, out } => {
            census_range(max_n)?;
            let rows = (1..=max_n).map(count_codes).collect::<Result<Vec<_>, _>>()?;
            let text = match format {
                TableFormat::Csv => output::table_csv(rows.iter().map(|r| r.as_ref())),
                TableFormat::Json => output::table_json(rows.iter().map(|r| r.as_ref())),
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
                    String::new()
                }
                None => text,
            }
        }
        Command::Gauss { n, q, d } => {
            let value = match d {
                Some(d) => gauss_binomial(n, d, q)?,
                None => gauss_total(n, q)?,
            };
            format!("{value}\n")
        }
        Command::Lattice { cycle_type } => {
            let ct: CycleType = cycle_type.parse()?;
            json(&LatticeRecord::new(&ct, &lattice_dim_poly(&ct)))
        }
        Command::Verify { suite, max_n, format } => {
            let report = run_suite(suite, max_n)?;
            let text = match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => json(&report),
            };
            if !report.passed() {
                return Err(Failure::Check(text));
            }
            text
        }
        Command::Oracle { n, classify: true } => json(&classify(n)?),
        Command::Oracle { n, classify: false } => {
            if n == 0 || n > ENUM_CEILING {
                return Err(Error::Ceiling { what: "subspace enumeration", n, max: ENUM_CEILING }.into());
            }
            let by_type = partitions_of(n)
                .map(|ct| {
                    Ok(InvariantCountRecord {
                        cycle_type: ct.to_string(),
                        invariant_subspaces: invariant_count(&Permutation::of_type(&ct))?.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            json(&OracleRecord {
                schema: SCHEMA.to_string(),
                n,
                subspaces: enum_subspaces(n)?.len(),
                by_type,
            })
        }
        Command::Limits { n, precision } => json(&LimitRecord {
            schema: SCHEMA.to_string(),
            n,
            u: scaled_u(n, 2, precision)?.to_decimal_string(precision),
            precision,
        }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = FactorCache::global();
    if let Some(path) = &cli.cache {
        if let Err(e) = cache.load(path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = run(cli.command);
    if let Some(path) = &cli.cache {
        if let Err(e) = cache.save(path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Ceiling(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
