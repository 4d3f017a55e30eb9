//! The `spm` command line.
//!
//! Exit codes: 0 on success, 1 on unreadable or invalid input, 2 when an
//! internal cross-check disagrees.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use spm::counters::ceil_lg;
use spm::game::ParityGame;
use spm::io::{emit_text, format_trace, parse_game, parse_tree, trace_from_env, write_game, GameFile, ResultDocument};
use spm::lifting::{solve_with, SolveOptions};
use spm::oracles::{attractor_solve, exhaustive_solve, generate, GeneratorConfig};
use spm::separator::{build_separator, product_and_solve, LassoOutcome, DEFAULT_STATE_LIMIT};
use spm::tree::{succinct_code, verify_coding};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "spm", version, about = "Parity games by succinct progress measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a game in PGSolver format.
    Solve {
        file: PathBuf,
        /// Compare the winning regions with the reference solvers.
        #[arg(long)]
        oracle_check: bool,
        /// Print every successful lift (default from SPM_TRACE).
        #[arg(long)]
        trace: bool,
        /// Emit a JSON document instead of text.
        #[arg(long)]
        json: bool,
        /// Include solver statistics and wall time.
        #[arg(long)]
        stats: bool,
    },
    /// Write a seeded random game.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        max_priority: u32,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0.5)]
        even_bias: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a game through its separating automaton.
    Separator {
        file: PathBuf,
        /// Compare with the lifting solver.
        #[arg(long)]
        cross_check: bool,
        /// Run the automaton on PREFIX·LOOP^ω; vertex ids separated by commas,
        /// `-` for an empty prefix.
        #[arg(long, num_args = 2, value_names = ["PREFIX", "LOOP"])]
        lasso: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        state_limit: usize,
    },
    /// Code the branching directions of a tree by binary strings.
    Codetree { file: PathBuf },
    /// Solve many generated games and check each against a reference solver.
    Bench {
        #[arg(long)]
        seeds: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        max_priority: u32,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

/// An error already rendered for the user, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn mismatch(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_MISMATCH, message: message.into() }
}

type Outcome = Result<(), Failure>;

/// Runs the command line given by `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve { file, oracle_check, trace, json, stats } => {
            solve(&file, oracle_check, trace || trace_from_env(), json, stats, out, err)
        }
        Command::Gen { vertices, max_priority, min_degree, max_degree, even_bias, seed, out: path } => {
            let config = GeneratorConfig { vertices, max_priority, min_degree, max_degree, even_bias, seed };
            gen(&config, &path, out)
        }
        Command::Separator { file, cross_check, lasso, state_limit } => {
            separator(&file, cross_check, lasso.as_deref(), state_limit, out)
        }
        Command::Codetree { file } => codetree(&file, out),
        Command::Bench { seeds, vertices, max_priority, min_degree, max_degree } => {
            let base = GeneratorConfig { vertices, max_priority, min_degree, max_degree, even_bias: 0.5, seed: 0 };
            bench(seeds, &base, out)
        }
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "spm: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<GameFile, Failure> {
    let text = read(path)?;
    parse_game(&text).map_err(|e| input_error(format!("{}:{e}", path.display())))
}

fn io_error(e: std::io::Error) -> Failure {
    input_error(format!("write failed: {e}"))
}

/// Partitions of `game` by the reference solvers, labelled.
fn reference_partitions(game: &ParityGame) -> Vec<(&'static str, spm::game::SolveResult)> {
    let mut refs = vec![("attractor", attractor_solve(game))];
    if let Ok(r) = exhaustive_solve(game) {
        refs.push(("exhaustive", r));
    }
    refs
}

fn solve(
    path: &Path,
    oracle_check: bool,
    trace: bool,
    json: bool,
    stats: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let file = load_game(path)?;
    let options = SolveOptions { trace, ..SolveOptions::default() };
    let start = Instant::now();
    let solution = solve_with(&file.game, &options);
    let elapsed = start.elapsed();
    let doc = ResultDocument::new(&file, &solution, stats.then_some(elapsed));
    // Side output goes to stderr when stdout carries JSON.
    let side: &mut dyn Write = if json { err } else { out };
    if trace {
        write!(side, "{}", format_trace(&file, &solution.trace)).map_err(io_error)?;
    }
    let mut report = Vec::new();
    if oracle_check {
        for (name, r) in reference_partitions(&file.game) {
            if !r.same_partition(&solution.result) {
                return Err(mismatch(format!("{name} solver disagrees with the lifting solver")));
            }
            report.push(name);
        }
        writeln!(side, "oracle-check: agree ({})", report.join(", ")).map_err(io_error)?;
    }
    if json {
        writeln!(out, "{}", doc.to_json()).map_err(io_error)?;
    } else {
        write!(out, "{}", emit_text(&doc, stats)).map_err(io_error)?;
    }
    Ok(())
}

fn gen(config: &GeneratorConfig, path: &Path, out: &mut dyn Write) -> Outcome {
    let game = generate(config).map_err(|e| input_error(e.to_string()))?;
    let (n, m) = (game.len(), game.edge_count());
    let text = write_game(&GameFile::from_game(game));
    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    writeln!(out, "wrote {} ({n} vertices, {m} edges)", path.display()).map_err(io_error)
}

fn parse_word(file: &GameFile, text: &str) -> Result<Vec<usize>, Failure> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let id: u64 = s.trim().parse().map_err(|_| input_error(format!("bad vertex id {s:?} in lasso")))?;
            file.index_of(id).ok_or_else(|| input_error(format!("lasso names unknown vertex {id}")))
        })
        .collect()
}

fn ids(file: &GameFile, set: &std::collections::BTreeSet<usize>) -> String {
    let mut v: Vec<u64> = set.iter().map(|&v| file.id(v)).collect();
    v.sort_unstable();
    v.iter().map(|id| format!(" {id}")).collect()
}

fn separator(path: &Path, cross_check: bool, lasso: Option<&[String]>, limit: usize, out: &mut dyn Write) -> Outcome {
    let file = load_game(path)?;
    let game = &file.game;
    let solution = product_and_solve(game, limit).map_err(|e| input_error(e.to_string()))?;
    let space = solution.automaton_space;
    writeln!(out, "even:{}", ids(&file, &solution.result.even_wins)).map_err(io_error)?;
    writeln!(out, "odd:{}", ids(&file, &solution.result.odd_wins)).map_err(io_error)?;
    writeln!(out, "automaton: g={} d={}", space.budget(), space.d()).map_err(io_error)?;
    writeln!(out, "product states: {}", solution.product_states).map_err(io_error)?;
    if cross_check {
        let lifted = solve_with(game, &SolveOptions::default()).result;
        if !lifted.same_partition(&solution.result) {
            return Err(mismatch("the product solver disagrees with the lifting solver"));
        }
        writeln!(out, "cross-check: agree").map_err(io_error)?;
    }
    if let Some([prefix, cycle]) = lasso {
        let prefix = parse_word(&file, prefix)?;
        let cycle = parse_word(&file, cycle)?;
        let automaton = build_separator(game);
        match automaton.run_on_lasso(&prefix, &cycle).map_err(|e| input_error(e.to_string()))? {
            LassoOutcome::Accept { states } => writeln!(out, "lasso: accept ({states} states)"),
            LassoOutcome::Reject { step } => writeln!(out, "lasso: reject at step {step}"),
        }
        .map_err(io_error)?;
    }
    Ok(())
}

fn render_path<D: std::fmt::Display>(path: &[D]) -> String {
    if path.is_empty() {
        return ".".to_string();
    }
    path.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
}

fn codetree(path: &Path, out: &mut dyn Write) -> Outcome {
    let text = read(path)?;
    let tree = parse_tree(&text).map_err(|e| input_error(format!("{}:{e}", path.display())))?;
    let (coded, mapping) = succinct_code(&tree).map_err(|e| input_error(e.to_string()))?;
    for (p, q) in &mapping {
        writeln!(out, "{} -> {}", render_path(p), render_path(q)).map_err(io_error)?;
    }
    let leaves = tree.leaf_count();
    writeln!(
        out,
        "leaves: {leaves}, height: {}, max bits: {}, budget: {}",
        tree.height(),
        coded.max_path_bits(),
        ceil_lg(leaves as u64)
    )
    .map_err(io_error)?;
    if !verify_coding(&tree, &coded, &mapping) {
        return Err(mismatch("the coding failed verification"));
    }
    Ok(())
}

struct BenchRow {
    seed: u64,
    n: usize,
    m: usize,
    eta: usize,
    lifts: u64,
    max_bits: usize,
    even: usize,
    agree: bool,
}

fn bench(seeds: u64, base: &GeneratorConfig, out: &mut dyn Write) -> Outcome {
    base.validate().map_err(|e| input_error(e.to_string()))?;
    let mut rows: Vec<BenchRow> = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let game = generate(&GeneratorConfig { seed, ..*base }).expect("validated config");
            let s = solve_with(&game, &SolveOptions::default());
            let agree = attractor_solve(&game).same_partition(&s.result);
            BenchRow {
                seed,
                n: game.len(),
                m: game.edge_count(),
                eta: game.eta(),
                lifts: s.stats.total_lifts(),
                max_bits: s.stats.max_bits_used,
                even: s.result.even_wins.len(),
                agree,
            }
        })
        .collect();
    rows.sort_by_key(|r| r.seed);
    for r in &rows {
        writeln!(
            out,
            "seed {}: n={} m={} eta={} lifts={} max bits={} even={} odd={} {}",
            r.seed,
            r.n,
            r.m,
            r.eta,
            r.lifts,
            r.max_bits,
            r.even,
            r.n - r.even,
            if r.agree { "ok" } else { "MISMATCH" }
        )
        .map_err(io_error)?;
    }
    let total: u64 = rows.iter().map(|r| r.lifts).sum();
    let bad = rows.iter().filter(|r| !r.agree).count();
    writeln!(out, "games: {}, total lifts: {total}, mismatches: {bad}", rows.len()).map_err(io_error)?;
    if bad > 0 {
        return Err(mismatch(format!("{bad} games disagree with the attractor solver")));
    }
    Ok(())
}
