//! Argument handling and document rendering for the `cycle-census` binary.

pub mod records;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use cycle_census::balance::residue_sums_from_table;
use cycle_census::genfunc::eval_exact;
use cycle_census::rootloc::{isolate_root_near, DEFAULT_SCAN_MAX_N};
use cycle_census::verify::{run_suite, Suite};
use cycle_census::{CensusError, CensusTable, CyclePolynomial, Limits};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use records::{
    csv_header, to_csv, to_json, BalanceRow, EvalRecord, RootRecord, TableRow, VerifyRecord,
    WitnessFields,
};

#[derive(Debug, Parser)]
#[command(
    name = "cycle-census",
    version,
    about = "Cycle counts of permutations and derangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest family bound `a` accepted.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_a: Option<u64>,

    /// Largest length `n` accepted.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Census table: number of family members of length n with k cycles.
    Table {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Exact value of the cycle polynomial at a rational point.
    Eval {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
        /// Rational such as `-3/2`, `4` or `0.25`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        at: BigRational,
    },
    /// Certified root interval within epsilon of -t.
    Roots {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = parse_rational)]
        epsilon: BigRational,
    },
    /// Cycle counts by residue class modulo q over a grid of lengths.
    Balance {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        q: usize,
        /// `LO:HI:STEP`
        #[arg(long, value_parser = parse_grid)]
        n_grid: Grid,
    },
    /// Run the built-in property suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Plain `PASS`/`FAIL` lines; only meaningful for `verify`.
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub lo: usize,
    pub hi: usize,
    pub step: usize,
}

impl Grid {
    pub fn points(&self) -> impl Iterator<Item = usize> {
        (self.lo..=self.hi).step_by(self.step)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    ResourceCap(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::ResourceCap(_) => 3,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::ResourceCap(_) => CliError::ResourceCap(e.to_string()),
            CensusError::InvalidArgument(_)
            | CensusError::OutOfRange(_)
            | CensusError::Unsupported(_)
            | CensusError::UndefinedNormalization { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// A rendered document and the status the process should exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub status: i32,
}

/// Accepts `p/q`, integers, and finite decimals such as `-0.05`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int = if int.is_empty() || int == "-" || int == "+" {
            "0"
        } else {
            int
        };
        let whole = BigInt::from_str(int).map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = whole.abs() * &scale + part;
        let numer = if negative { -mag } else { mag };
        return Ok(BigRational::new(numer, scale));
    }
    let r = BigRational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(format!("expected LO:HI:STEP, got {s:?}"));
    };
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad grid value {x:?}"))
    };
    let grid = Grid {
        lo: num(lo)?,
        hi: num(hi)?,
        step: num(step)?,
    };
    if grid.step == 0 || grid.lo > grid.hi {
        return Err(format!("grid needs LO <= HI and STEP > 0, got {s:?}"));
    }
    Ok(grid)
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

impl Cli {
    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_a: self.max_a.map_or(d.max_a, |x| x as usize),
            max_n: self.max_n.map_or(d.max_n, |x| x as usize),
        }
    }
}

fn table(a: usize, n: usize, limits: &Limits) -> Result<CensusTable, CliError> {
    Ok(CensusTable::build_with_limits(a, n, limits)?)
}

fn fraction(x: &BigRational) -> String {
    x.to_string()
}

/// Runs one invocation and returns the document without writing it anywhere.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let limits = cli.limits();
    let ok = |document| Outcome {
        document,
        status: 0,
    };
    match &cli.command {
        Command::Table { a, n_max } => {
            let t = table(*a, *n_max, &limits)?;
            let rows: Vec<TableRow> = (0..=*n_max)
                .flat_map(|n| {
                    let row = t.row(n).expect("row in table");
                    row.iter().enumerate().map(move |(k, c)| TableRow {
                        n,
                        k,
                        count: c.to_string(),
                    })
                })
                .collect();
            match cli.format.unwrap_or(Format::Csv) {
                Format::Json => Ok(ok(to_json(&rows)?)),
                Format::Csv => Ok(ok(to_csv(&rows)?)),
                Format::Text => Err(usage("table supports csv and json")),
            }
        }
        Command::Eval { a, n, at } => {
            let t = table(*a, *n, &limits)?;
            let p = CyclePolynomial::from_table(&t, *n)?;
            let record = EvalRecord {
                n: *n,
                a: *a,
                at: fraction(at),
                value: fraction(&eval_exact(&p, at)),
            };
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => Ok(ok(to_json(&record)?)),
                Format::Csv => Ok(ok(to_csv(&[record])?)),
                Format::Text => Err(usage("eval supports csv and json")),
            }
        }
        Command::Roots { a, n, t, epsilon } => {
            let cap = cli.max_n.map_or(DEFAULT_SCAN_MAX_N, |x| x as usize);
            if *n > cap {
                return Err(CliError::ResourceCap(format!(
                    "root isolation limited to n <= {cap}, got {n}; raise with --max-n"
                )));
            }
            if *t == 0 {
                return Err(usage("t must be positive"));
            }
            let tab = table(*a, *n, &limits)?;
            let p = CyclePolynomial::from_table(&tab, *n)?;
            let record = match isolate_root_near(&p, *t, epsilon)? {
                Some(w) => RootRecord {
                    found: true,
                    witness: Some(WitnessFields {
                        a: w.a,
                        n: w.n,
                        t: w.t,
                        epsilon: fraction(&w.epsilon),
                        lo: fraction(&w.lo),
                        hi: fraction(&w.hi),
                        sturm_count: w.sturm_count,
                        achieved_radius: fraction(&w.achieved_radius),
                    }),
                },
                None => RootRecord {
                    found: false,
                    witness: None,
                },
            };
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => Ok(ok(to_json(&record)?)),
                _ => Err(usage("roots supports json only")),
            }
        }
        Command::Balance { a, q, n_grid } => {
            let t = table(*a, n_grid.hi, &limits)?;
            let mut rows = Vec::new();
            for n in n_grid.points() {
                let rep = residue_sums_from_table(&t, n, *q)?;
                let dev = fraction(&rep.max_deviation);
                for (r, (count, ratio)) in rep.counts.iter().zip(&rep.ratios).enumerate() {
                    rows.push(BalanceRow {
                        n,
                        r,
                        count: count.to_string(),
                        ratio: fraction(ratio),
                        max_deviation: dev.clone(),
                    });
                }
            }
            match cli.format.unwrap_or(Format::Csv) {
                Format::Json => Ok(ok(to_json(&rows)?)),
                Format::Csv if rows.is_empty() => Ok(ok(csv_header(&[
                    "n",
                    "r",
                    "count",
                    "ratio",
                    "max_deviation",
                ]))),
                Format::Csv => Ok(ok(to_csv(&rows)?)),
                Format::Text => Err(usage("balance supports csv and json")),
            }
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(*suite);
            let status = if outcomes.iter().all(|o| o.passed) {
                0
            } else {
                1
            };
            let records: Vec<VerifyRecord> = outcomes
                .iter()
                .map(|o| VerifyRecord {
                    suite: o.suite.to_string(),
                    name: o.name.to_string(),
                    passed: o.passed,
                    detail: o.detail.clone(),
                })
                .collect();
            let document = match cli.format.unwrap_or(Format::Text) {
                Format::Text => outcomes.iter().map(|o| format!("{o}\n")).collect(),
                Format::Json => to_json(&records)?,
                Format::Csv => to_csv(&records)?,
            };
            Ok(Outcome { document, status })
        }
    }
}

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_string())
}

/// Writes the document to `--output` or standard output.
pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, &outcome.document)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.document.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
