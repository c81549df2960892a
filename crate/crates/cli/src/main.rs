mod sweep;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nlie_core::{count, multiplier, oracle, Error, MultiplierResult, NLieAlgebra};
use serde::Serialize;

/// Exact computations for n-Lie algebras: basic commutator counts,
/// nilpotent multipliers and free-algebra cross-checks.
#[derive(Parser)]
#[command(name = "nlie", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of basic commutators of weight w on d generators.
    Count {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        w: u64,
        /// Also print the evaluation trace as JSON.
        #[arg(long)]
        trace: bool,
    },
    /// Multiplier dimension for a family of algebras.
    Mult {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        /// Nilpotency degree of the multiplier (abelian and heisenberg).
        #[arg(long)]
        c: Option<u64>,
        /// Algebra file for the `algebra` family; the arity comes from the file.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Invariants of an algebra given as a JSON file.
    Analyze {
        #[arg(long)]
        file: PathBuf,
    },
    /// Closed-form counts against the free-algebra oracle.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        wmax: usize,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Csv)]
        format: VerifyFormat,
    },
    /// Tabulate a calculator over a parameter grid.
    Table {
        #[arg(long)]
        sweep: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Abelian,
    Heisenberg,
    #[value(name = "dimL2one")]
    DimL2One,
    Bound,
    Algebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Csv,
    Latex,
    Json,
}

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
    Compute(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Cap(m) | Failure::Compute(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::TermCap { .. } => Failure::Cap(message),
            Error::ArityMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidParameter(_)
            | Error::Malformed(_)
            | Error::ParseRational(_) => Failure::Usage(message),
            _ => Failure::Compute(message),
        }
    }
}

type CliResult = Result<String, Failure>;

pub fn term_cap() -> Result<usize, Failure> {
    match std::env::var("NLIE_TERM_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("NLIE_TERM_CAP is not a count: {v:?}"))),
        Err(_) => Ok(oracle::DEFAULT_TERM_CAP),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn load_algebra(path: &PathBuf) -> Result<NLieAlgebra, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    NLieAlgebra::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_count(d: u64, n: u64, w: u64, trace: bool) -> CliResult {
    let (total, formula) = count::count_basic(count::CountQuery::new(d, n, w))?;
    if trace {
        Ok(format!("{total}\n{}", to_json(&formula)))
    } else {
        Ok(total.to_string())
    }
}

struct MultArgs {
    family: Family,
    d: Option<u64>,
    n: u64,
    m: Option<u64>,
    k: Option<u64>,
    c: Option<u64>,
    file: Option<PathBuf>,
}

fn cmd_mult(a: MultArgs) -> CliResult {
    let name = a.family.to_possible_value().expect("named").get_name().to_string();
    let allowed: &[&str] = match a.family {
        Family::Abelian => &["d", "c"],
        Family::Heisenberg => &["m", "c"],
        Family::DimL2One => &["d", "m"],
        Family::Bound => &["d", "k"],
        Family::Algebra => &["file"],
    };
    let given = [("d", a.d.is_some()), ("m", a.m.is_some()), ("k", a.k.is_some()), ("c", a.c.is_some()), ("file", a.file.is_some())];
    if let Some((flag, _)) = given.iter().find(|(flag, set)| *set && !allowed.contains(flag)) {
        return Err(Failure::Usage(format!("--{flag} does not apply to --family {name}")));
    }
    let need = |value: Option<u64>, flag: &str| {
        value.ok_or_else(|| Failure::Usage(format!("--family {name} requires --{flag}")))
    };
    let result: MultiplierResult = match a.family {
        Family::Abelian => multiplier::dim_multiplier_abelian(need(a.d, "d")?, a.n, a.c.unwrap_or(2))?,
        Family::Heisenberg => {
            let m = need(a.m, "m")?;
            match a.c.unwrap_or(2) {
                1 => multiplier::dim_multiplier_heisenberg(a.n, m)?,
                2 => multiplier::dim_2multiplier_heisenberg(a.n, m)?,
                c => return Err(Failure::Usage(format!("--family heisenberg supports --c 1 or 2, got {c}"))),
            }
        }
        Family::DimL2One => multiplier::dim_2multiplier_dim_l2_one(need(a.d, "d")?, a.n, need(a.m, "m")?)?,
        Family::Bound => multiplier::bound_2multiplier_dim_l2_k(need(a.d, "d")?, a.n, need(a.k, "k")?)?,
        Family::Algebra => {
            let path = a.file.ok_or_else(|| Failure::Usage("--family algebra requires --file".into()))?;
            multiplier::dim_2multiplier_of_algebra(&load_algebra(&path)?).map_err(|e| match e {
                Error::DerivedDimension(0) => {
                    Failure::Compute("algebra is abelian; use --family abelian with its dimension".into())
                }
                Error::DerivedDimension(k) => Failure::Compute(format!(
                    "derived algebra has dimension {k}, exact formula needs 1; try --family bound with --k {k}"
                )),
                e => e.into(),
            })?
        }
    };
    Ok(to_json(&result))
}

fn cmd_analyze(path: &PathBuf) -> CliResult {
    let algebra = load_algebra(path)?;
    let report = algebra.analyze();
    let mut value = serde_json::to_value(&report).expect("report serializes");
    let violations = serde_json::to_value(algebra.validate().violations).expect("violations serialize");
    value.as_object_mut().expect("report is an object").insert("violations".into(), violations);
    Ok(to_json(&value))
}

fn cmd_verify(d: usize, n: usize, wmax: usize, format: VerifyFormat) -> CliResult {
    let rows = oracle::compare_report(d, n, wmax, term_cap()?)?;
    Ok(match format {
        VerifyFormat::Csv => oracle::compare_csv(&rows).trim_end().to_string(),
        VerifyFormat::Json => to_json(&rows),
    })
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Count { d, n, w, trace } => cmd_count(d, n, w, trace),
        Command::Mult { family, d, n, m, k, c, file } => cmd_mult(MultArgs { family, d, n, m, k, c, file }),
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Verify { d, n, wmax, format } => cmd_verify(d, n, wmax, format),
        Command::Table { sweep, format } => sweep::cmd_table(&sweep, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
