use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_normal::experiments::{
    convergence_tables, pure_abelian_probe, verify_identity, verify_run_relations,
    verify_worked_examples, write_csv, WeightChoice,
};
use abelian_normal::weight::{weight, DEFAULT_TOL};
use abelian_normal::{
    case_counts, count_abelian, count_exact, Case2Mode, CaseOptions, ContextMode, DigitStream, Word,
};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "abelnorm",
    version,
    about = "Counting and abelian normality on C10 and D10"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    C10,
    D10,
}

impl Source {
    fn stream(self) -> DigitStream {
        match self {
            Source::C10 => DigitStream::C10,
            Source::D10 => DigitStream::D10,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Abelian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    C,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunContext {
    /// Follow boundary runs past the window.
    Full,
    /// Cut the right boundary run at the window end.
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
    Lemma,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightKind {
    Auto,
    Pure,
}

#[derive(clap::Args)]
struct CaseFlags {
    /// Count a balanced window as Case 2 only when it differs from the pattern itself.
    #[arg(long)]
    case2_literal: bool,
    #[arg(long, value_enum, default_value = "full")]
    context: RunContext,
}

impl CaseFlags {
    fn options(&self) -> CaseOptions {
        CaseOptions {
            context: match self.context {
                RunContext::Full => ContextMode::Full,
                RunContext::Left => ContextMode::WindowLeft,
            },
            case2: if self.case2_literal {
                Case2Mode::Literal
            } else {
                Case2Mode::Parikh
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print `len` digits starting at position `start` (1-indexed).
    Digits {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long)]
        start: u64,
        #[arg(long)]
        len: u64,
    },
    /// Maximal binary runs within the first `n` digits as `start,length,zeros,ones`.
    Runs {
        #[arg(long, value_enum, default_value = "c10")]
        source: Source,
        #[arg(long)]
        n: u64,
    },
    /// Exact or abelian occurrences of a pattern in the first `n` digits.
    Count {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long)]
        pattern: Word,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Case 1 (`c`) or Case 2 (`d`) windows of C10 ending by `n`.
    Casecount {
        #[arg(long)]
        pattern: Word,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        which: Which,
        #[command(flatten)]
        case: CaseFlags,
    },
    /// Weight of a pattern as `value,abs_error,case_tag,estimator_n`.
    Weight {
        #[arg(long)]
        pattern: Word,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Prefix length for estimating mixed words.
        #[arg(long, default_value_t = 1_000_000)]
        estimate_n: u64,
    },
    /// Run a verification suite; exits non-zero if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Cutoffs for the identity suite.
        #[arg(long, value_delimiter = ',', default_value = "50000")]
        n: Vec<u64>,
        /// Sampled windows for the lemma suite.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "4501140")]
        pattern: Word,
        /// Keep each cutoff as given instead of moving it to a non-binary position.
        #[arg(long)]
        no_snap: bool,
        #[command(flatten)]
        case: CaseFlags,
    },
    /// Abelian quotients on a grid of cutoffs, written as CSV.
    Converge {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        pattern: Vec<Word>,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        weight: WeightKind,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        estimate_n: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pure-weight quotients on D10, written as CSV.
    ProbePure {
        #[arg(long, value_delimiter = ',', required = true)]
        patterns: Vec<Word>,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Digits { source, start, len } => {
            writeln!(out, "{}", source.stream().window(start, len)?)?;
        }
        Command::Runs { source, n } => {
            writeln!(out, "start,length,zeros,ones")?;
            for r in source.stream().binary_runs(n) {
                writeln!(out, "{},{},{},{}", r.start, r.len, r.zeros, r.ones)?;
            }
        }
        Command::Count {
            source,
            pattern,
            n,
            mode,
        } => {
            let s = source.stream();
            let c = match mode {
                Mode::Exact => count_exact(&s, &pattern, n)?,
                Mode::Abelian => count_abelian(&s, &pattern, n)?,
            };
            writeln!(out, "{c}")?;
        }
        Command::Casecount {
            pattern,
            n,
            which,
            case,
        } => {
            let (c, d) = case_counts(&pattern, n, case.options())?;
            writeln!(
                out,
                "{}",
                match which {
                    Which::C => c,
                    Which::D => d,
                }
            )?;
        }
        Command::Weight {
            pattern,
            tol,
            estimate_n,
        } => {
            writeln!(out, "{}", weight(&pattern, tol, estimate_n)?.csv_line())?;
        }
        Command::Verify {
            suite,
            n,
            samples,
            seed,
            pattern,
            no_snap,
            case,
        } => {
            return Ok(match suite {
                Suite::Paper => {
                    let report = verify_worked_examples()?;
                    write!(out, "{report}")?;
                    report.passed()
                }
                Suite::Lemma => {
                    let report = verify_run_relations(samples, seed)?;
                    write!(out, "{report}")?;
                    report.passed()
                }
                Suite::Identity => {
                    let rows = verify_identity(&pattern, &n, case.options(), !no_snap)?;
                    for row in &rows {
                        writeln!(out, "{row}")?;
                    }
                    rows.iter().all(|r| r.mismatch == 0)
                }
            });
        }
        Command::Converge {
            source,
            pattern,
            grid,
            weight,
            tol,
            estimate_n,
            out: path,
        } => {
            let choice = match weight {
                WeightKind::Auto => WeightChoice::Auto { tol, estimate_n },
                WeightKind::Pure => WeightChoice::Pure,
            };
            let rows = convergence_tables(&source.stream(), &pattern, &grid, choice)?;
            write_csv(&rows, output(Some(&path))?)?;
        }
        Command::ProbePure {
            patterns,
            grid,
            out: path,
        } => {
            let rows = pure_abelian_probe(&patterns, &grid)?;
            write_csv(&rows, output(path.as_ref())?)?;
        }
    }
    Ok(true)
}

fn main() -> Result<ExitCode> {
    Ok(if run(Cli::parse())? {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
