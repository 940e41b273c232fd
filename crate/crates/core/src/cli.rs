//! The `triples` command line.
//!
//! Exit codes: 0 satisfied or solved, 1 violations or no partition, 2 usage,
//! parse or precondition errors, 3 search budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::envy::{blocking_triples, find_violations, satisfies, Concept};
use crate::error::{Error, Result};
use crate::game::{Ashg, PartitionIntoTriples};
use crate::generate;
use crate::io::{self, GraphFile};
use crate::oracle::{brute_force_with, OracleOptions, DEFAULT_CAP};
use crate::outcome::{Certificate, SolveOutcome};
use crate::reductions::{self, Reduction};
use crate::search::{search, Progress, SearchConfig, SearchResult};
use crate::solver_ef::solve_ef_maxdeg2;
use crate::solver_jef::{solve_jef_binary, DEFAULT_BUDGET};
use crate::solver_wjef::solve_wjef_maxdeg2;
use crate::structure::underlying_graph;

/// Environment variable overriding the oracle's agent cap.
pub const ORACLE_CAP_VAR: &str = "TRIPLES_ORACLE_CAP";

/// Games this large report search progress on stderr.
const PROGRESS_FROM: usize = 15;

#[derive(Debug, Parser)]
#[command(
    name = "triples",
    version,
    about = "Envy-freeness and stability for partitions into triples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a partition against a solution concept.
    Check {
        instance: PathBuf,
        partition: PathBuf,
        #[arg(long, value_enum, default_value = "ef")]
        concept: Concept,
    },
    /// Find a partition satisfying a concept, or show that none exists.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "ef")]
        concept: Concept,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Node budget for search beyond the oracle cap.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Print each swap of the dynamics to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Write a seeded instance.
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Number of 4-cycles (wj-no).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of agents.
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a game from a formula or graph.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        input: PathBuf,
        /// Instance path; the name map goes to `<output>.names` unless `--names` is given.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        names: Option<PathBuf>,
        /// Reject formulas whose size is not a multiple of 4 instead of replicating them.
        #[arg(long)]
        strict: bool,
    },
    /// Decide a concept by exhaustive search.
    Oracle {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "ef")]
        concept: Concept,
        /// Agent cap; defaults to the TRIPLES_ORACLE_CAP variable, then 18.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Poly,
    Swap,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    WjNo,
    PathsCycles,
    RandomBinary,
    RandomBinarySymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    X3satEf,
    X3satWjef,
    DtcJef,
    PitJef,
}

/// Runs the CLI and returns the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Ashg> {
    io::parse_instance(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn oracle_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{ORACLE_CAP_VAR}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("write failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check {
            instance,
            partition,
            concept,
        } => {
            let game = load_instance(&instance)?;
            let pi = io::parse_partition(&read(&partition)?, Some(game.num_agents()))
                .map_err(|e| in_file(&partition, e))?;
            check(&game, &pi, concept, out)
        }
        Command::Solve {
            instance,
            concept,
            method,
            budget,
            trace,
        } => {
            let game = load_instance(&instance)?;
            let outcome = solve(&game, concept, method, budget, trace, err)?;
            report(&game, concept, &outcome, out)
        }
        Command::Generate {
            family,
            k,
            n,
            density,
            seed,
            output,
        } => {
            let game = match family {
                Family::WjNo => generate::wj_no(k)?,
                Family::PathsCycles => generate::paths_cycles(n, seed)?,
                Family::RandomBinary => generate::random_binary(n, density, seed)?,
                Family::RandomBinarySymmetric => {
                    generate::random_binary_symmetric(n, density, seed)?
                }
            };
            emit(&io::write_instance(&game), output.as_deref(), out)?;
            Ok(0)
        }
        Command::Reduce {
            from,
            input,
            output,
            names,
            strict,
        } => {
            let text = read(&input)?;
            let red = reduce(from, &text, strict).map_err(|e| in_file(&input, e))?;
            emit(&io::write_instance(&red.game), output.as_deref(), out)?;
            let names_path = names.or_else(|| {
                output.map(|p| {
                    let mut s = p.into_os_string();
                    s.push(".names");
                    PathBuf::from(s)
                })
            });
            if let Some(p) = names_path {
                write_file(&p, &red.names.to_string())?;
            }
            Ok(0)
        }
        Command::Oracle {
            instance,
            concept,
            cap,
        } => {
            let game = load_instance(&instance)?;
            let cap = oracle_cap(cap)?;
            let outcome = run_oracle(&game, concept, cap)?;
            report(&game, concept, &outcome, out)
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn check(
    game: &Ashg,
    pi: &PartitionIntoTriples,
    concept: Concept,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut lines = Vec::new();
    if concept == Concept::Stable {
        for [a, b, c] in blocking_triples(game, pi)? {
            lines.push(format!("BLOCK {} {} {}", a + 1, b + 1, c + 1));
        }
    } else {
        for w in find_violations(game, pi, concept)? {
            lines.push(format!(
                "ENVY {} {} -> {}",
                w.kind,
                w.envier + 1,
                w.envied + 1
            ));
        }
    }
    if lines.is_empty() {
        writeln!(out, "OK").map_err(io_err)?;
        return Ok(0);
    }
    for l in lines {
        writeln!(out, "{l}").map_err(io_err)?;
    }
    Ok(1)
}

fn maxdeg2_precondition(game: &Ashg) -> Result<()> {
    let graph = underlying_graph(game)?;
    if graph.max_degree() > 2 {
        let v = (0..game.num_agents())
            .find(|&a| graph.degree(a) > 2)
            .expect("some agent has degree above 2");
        return Err(Error::Precondition(format!(
            "agent {} has {} neighbours; the polynomial solvers need at most 2",
            v + 1,
            graph.degree(v)
        )));
    }
    Ok(())
}

fn poly(game: &Ashg, concept: Concept) -> Result<SolveOutcome> {
    match concept {
        Concept::Ef => maxdeg2_precondition(game).and_then(|_| solve_ef_maxdeg2(game)),
        Concept::Wjef => maxdeg2_precondition(game).and_then(|_| solve_wjef_maxdeg2(game)),
        other => Err(Error::Precondition(format!(
            "no polynomial solver for {other}; use --method swap for binary jef"
        ))),
    }
}

fn swap(game: &Ashg, concept: Concept, trace: bool, err: &mut dyn Write) -> Result<SolveOutcome> {
    if concept != Concept::Jef {
        return Err(Error::Precondition(format!(
            "swap dynamics solve jef only, not {concept}"
        )));
    }
    let (pi, steps) = solve_jef_binary(game, None)?;
    if trace {
        write!(err, "{steps}").map_err(io_err)?;
    }
    Ok(SolveOutcome::Partition(pi))
}

/// Prints progress lines to the process's stderr when `enabled`.
fn progress_printer(enabled: bool) -> impl Fn(Progress) + Sync {
    move |p: Progress| {
        if enabled {
            eprintln!(
                "progress: shard {}/{}, {} nodes",
                p.shards_done, p.shards_total, p.nodes
            );
        }
    }
}

fn run_oracle(game: &Ashg, concept: Concept, cap: usize) -> Result<SolveOutcome> {
    let printer = progress_printer(game.num_agents() >= PROGRESS_FROM);
    brute_force_with(
        game,
        concept,
        &OracleOptions {
            cap,
            progress: Some(&printer),
            ..Default::default()
        },
    )
}

fn solve(
    game: &Ashg,
    concept: Concept,
    method: Method,
    budget: u64,
    trace: bool,
    err: &mut dyn Write,
) -> Result<SolveOutcome> {
    match method {
        Method::Poly => poly(game, concept),
        Method::Swap => swap(game, concept, trace, err),
        Method::Brute => run_oracle(game, concept, oracle_cap(None)?),
        Method::Auto => {
            let maxdeg2 = matches!(concept, Concept::Ef | Concept::Wjef)
                && game.is_binary()
                && game.is_symmetric()
                && game.max_degree().is_some_and(|d| d <= 2);
            if maxdeg2 {
                return poly(game, concept);
            }
            if concept == Concept::Jef && game.is_binary() {
                return swap(game, concept, trace, err);
            }
            let cap = oracle_cap(None)?;
            if game.num_agents() <= cap {
                return run_oracle(game, concept, cap);
            }
            let printer = progress_printer(true);
            let report = search(
                game,
                concept,
                &SearchConfig {
                    budget: Some(budget),
                    progress: Some(&printer),
                    ..Default::default()
                },
            );
            Ok(match report.result {
                SearchResult::Found(pi) => SolveOutcome::Partition(pi),
                SearchResult::Exhausted => SolveOutcome::NoneExists {
                    certificate: Certificate::Exhaustive,
                },
                SearchResult::BudgetExceeded => SolveOutcome::Unknown,
            })
        }
    }
}

fn report(
    game: &Ashg,
    concept: Concept,
    outcome: &SolveOutcome,
    out: &mut dyn Write,
) -> Result<i32> {
    match outcome {
        SolveOutcome::Partition(pi) => {
            if !satisfies(game, pi, concept) {
                return Err(Error::InvalidInput(format!(
                    "internal error: solver returned a partition that fails {concept}"
                )));
            }
            write!(out, "SAT\n{}", io::write_partition(pi)).map_err(io_err)?;
            Ok(0)
        }
        SolveOutcome::NoneExists { certificate } => {
            writeln!(out, "UNSAT {certificate}").map_err(io_err)?;
            Ok(1)
        }
        SolveOutcome::Unknown => {
            writeln!(out, "UNKNOWN").map_err(io_err)?;
            Ok(3)
        }
    }
}

fn reduce(from: Source, text: &str, strict: bool) -> Result<Reduction> {
    match from {
        Source::X3satEf => reductions::reduce_x3sat_to_ef(&io::parse_formula(text)?),
        Source::X3satWjef => reductions::reduce_x3sat_to_wjef(&io::parse_formula(text)?, strict),
        Source::DtcJef => match io::parse_graph(text)? {
            GraphFile::Directed(g) => reductions::reduce_dtc_to_jef_ternary(&g),
            GraphFile::Undirected(_) => {
                Err(Error::InvalidInput("dtc-jef needs a directed graph".into()))
            }
        },
        Source::PitJef => match io::parse_graph(text)? {
            GraphFile::Undirected(g) => reductions::reduce_pit_to_jef_symmetric(&g),
            GraphFile::Directed(_) => Err(Error::InvalidInput(
                "pit-jef needs an undirected graph".into(),
            )),
        },
    }
}
