//! The `egy` command line. Reports go to the output stream as JSON (default)
//! or CSV; diagnostics go to the error stream.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid input,
//! 3 resource limit reached.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::arith::{EgyptianRep, Rational};
use crate::error::{Error, Result};
use crate::greedy::greedy_underapprox_limited;
use crate::lemma1::{lemma1_certificate, nongreedy_two_term_measure, slice_length, Lemma1Mode};
use crate::measure::{cell_decay_bound, chain_check_with, sample_chain_density, DecayOptions};
use crate::partition::{
    cell_of_with, cells_in_window_with, cells_to_csv, next_regular_above, Cell, CellRecord,
};
use crate::search::{
    best_underapprox_with, has_representation_with, SearchConfig, DEFAULT_NODE_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "egy",
    version,
    about = "Exact Egyptian-fraction underapproximations"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Node expansions allowed per search.
    #[arg(long, global = true, env = "EGY_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Worker threads; never changes the output.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Greedy n-term underapproximation.
    Greedy { x: Rational, n: usize },
    /// Best n-term underapproximation.
    Best { x: Rational, n: usize },
    /// The level-n cell containing x.
    Cell { x: Rational, n: usize },
    /// Level-n cells covering (a, b].
    Cells {
        a: Rational,
        b: Rational,
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        max_cells: usize,
    },
    /// Smallest point >= x in the closure of the regular n-term numbers.
    Regular { x: Rational, n: usize },
    /// Whether x lies in X(n0, t).
    Chain { x: Rational, n0: usize, t: usize },
    /// Certified non-greedy measure in the slice (1/i, 1/(i-1)].
    Lemma1 {
        i: u64,
        #[arg(long, default_value = "paper")]
        mode: Lemma1Mode,
    },
    /// Exact non-greedy two-term measure in the slice (1/i, 1/(i-1)].
    Nongreedy { i: u64 },
    /// Decay bound for the level-t cell (q, r].
    Decay {
        q: Rational,
        r: Rational,
        t: usize,
        #[arg(long, default_value_t = 10_000_000)]
        imax: u64,
    },
    /// Sampled density of X(s, t) in (0, H_s].
    Sample {
        s: usize,
        t: usize,
        #[arg(long, default_value_t = 2000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        bits: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyOutput {
    pub rep: EgyptianRep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowOutput {
    pub level: usize,
    pub a: Rational,
    pub b: Rational,
    pub cells: Vec<CellRecord>,
    pub covered_measure: Rational,
    pub uncovered_measure: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NongreedyOutput {
    pub i: u64,
    pub measure: Rational,
    pub interval_length: Rational,
    pub ratio: Rational,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// Parses `argv` (program name first), runs the command and writes the report.
pub fn run<W: Write, E: Write>(argv: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let format = if cli.global.csv {
        Format::Csv
    } else {
        Format::Json
    };
    let config = SearchConfig::with_node_budget(cli.global.node_budget);

    let result = match cli.global.threads {
        Some(0) => Err(Error::invalid("--threads must be positive")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, format, &config)),
            Err(e) => Err(Error::invalid(format!("cannot start thread pool: {e}"))),
        },
        None => execute(&cli.command, format, &config),
    };
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INVALID;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_resource_limit() => EXIT_RESOURCE,
        Error::Verification { .. } => EXIT_VERIFICATION,
        _ => EXIT_INVALID,
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value).map_err(|e| Error::invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_only_for(what: &str) -> Error {
    Error::invalid(format!(
        "CSV output is available for cell, cells and sample, not {what}"
    ))
}

fn execute(command: &Command, format: Format, config: &SearchConfig) -> Result<String> {
    let emit = |what: &str, text: Result<String>| -> Result<String> {
        if format == Format::Csv {
            Err(csv_only_for(what))
        } else {
            text
        }
    };
    match command {
        Command::Greedy { x, n } => emit(
            "greedy",
            greedy_underapprox_limited(x, *n, config.max_terms)
                .and_then(|rep| json(&GreedyOutput { rep })),
        ),
        Command::Best { x, n } => emit(
            "best",
            best_underapprox_with(x, *n, config).and_then(|b| json(&b)),
        ),
        Command::Cell { x, n } => {
            let cell = cell_of_with(x, *n, config)?;
            match format {
                Format::Json => json(&cell.record()),
                Format::Csv => Ok(cells_to_csv(&[cell])),
            }
        }
        Command::Cells { a, b, n, max_cells } => {
            let window = cells_in_window_with(a, b, *n, *max_cells, config)?;
            match format {
                Format::Csv => Ok(window.to_csv()),
                Format::Json => json(&WindowOutput {
                    level: *n,
                    a: window.a.clone(),
                    b: window.b.clone(),
                    cells: window.cells.iter().map(Cell::record).collect(),
                    covered_measure: window.covered_measure(),
                    uncovered_measure: window.uncovered_measure.clone(),
                }),
            }
        }
        Command::Regular { x, n } => {
            emit("regular", next_regular_above(x, *n).and_then(|p| json(&p)))
        }
        Command::Chain { x, n0, t } => emit(
            "chain",
            chain_check_with(x, *n0, *t, config).and_then(|r| json(&r)),
        ),
        Command::Lemma1 { i, mode } => emit(
            "lemma1",
            lemma1_certificate(*i, *mode).and_then(|r| json(&r)),
        ),
        Command::Nongreedy { i } => emit(
            "nongreedy",
            nongreedy_two_term_measure(*i).and_then(|measure| {
                let interval_length = slice_length(*i);
                let ratio = &measure / &interval_length;
                json(&NongreedyOutput {
                    i: *i,
                    measure,
                    interval_length,
                    ratio,
                })
            }),
        ),
        Command::Decay { q, r, t, imax } => emit(
            "decay",
            decay_cell(q, r, *t, config)
                .and_then(|cell| cell_decay_bound(&cell, *imax, &DecayOptions::default()))
                .and_then(|r| json(&r)),
        ),
        Command::Sample {
            s,
            t,
            count,
            seed,
            bits,
        } => {
            let report = sample_chain_density(*s, *t, *count, *seed, *bits, config)?;
            match format {
                Format::Json => json(&report),
                Format::Csv => Ok(report.samples_csv()),
            }
        }
    }
}

/// `(q, r]` with a level-`t` representation of `q` for collision checks:
/// the best one when `(q, r]` lies in a single cell, otherwise any.
fn decay_cell(q: &Rational, r: &Rational, t: usize, config: &SearchConfig) -> Result<Cell> {
    if !q.is_positive() || q >= r {
        return Err(Error::invalid(format!(
            "decay needs 0 < q < r, got ({q}, {r}]"
        )));
    }
    let best = best_underapprox_with(r, t, config)?;
    let rep = if best.value == *q {
        best.rep
    } else {
        has_representation_with(q, t, None, config)?.ok_or_else(|| {
            Error::invalid(format!("{q} is not a sum of {t} distinct unit fractions"))
        })?
    };
    Cell::bounded(t, q.clone(), r.clone(), rep)
}
