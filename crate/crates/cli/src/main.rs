use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use toric_lab::basis_set::{BasisKind, BasisSet};
use toric_lab::oracle::{graver_bounded, markov_analysis, ToricConfig};
use toric_lab::random::random_corpus;
use toric_lab::report::{analyze, analyze_matrix, render_set, AnalyzeOptions, MatrixOptions};
use toric_lab::suite::{parse_corpus_entry, run_graph, run_suite, CorpusEntry, SuiteReport};
use toric_lab::{Error, Graph, GraphError, OracleError};

const EXIT_PARSE: u8 = 2;
const EXIT_SCALE: u8 = 3;
const EXIT_INVARIANT: u8 = 4;
const EXIT_NEGATIVE: u8 = 5;

#[derive(Parser)]
#[command(name = "toric-lab", version, about = "Bases and robustness of toric ideals of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct GraphInput {
    /// Edge list or JSON graph; `-` reads standard input.
    path: PathBuf,
    /// Allow graphs above the default edge limit.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Every basis, the robustness verdicts and the implication checks.
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        /// Cross-check against the matrix oracle.
        #[arg(long)]
        oracle: bool,
        /// Include per-stage timings (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Fiber, Markov, bounded Graver and Gröbner computations for a matrix.
    Matrix {
        /// JSON `{"matrix": [[..]]}` or whitespace/comma separated rows.
        path: PathBuf,
        /// Largest exponent searched by the bounded Graver enumeration.
        #[arg(long = "box", value_name = "N")]
        box_bound: Option<u32>,
        /// Number of random weight orders for Gröbner sampling.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Property suite over a directory of graphs or a random corpus.
    Suite {
        /// Directory of `.txt` and `.json` graphs.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        dir: Option<PathBuf>,
        /// Generate this many random connected graphs instead.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 11)]
        max_edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Graver basis of a graph, or of a matrix with `--matrix`.
    Graver {
        #[command(flatten)]
        input: GraphInput,
        /// Read the input as a matrix.
        #[arg(long)]
        matrix: bool,
        #[arg(long = "box", value_name = "N", default_value_t = 2)]
        box_bound: u32,
    },
    /// Universal Markov basis of a graph, or of a matrix with `--matrix`.
    Markov {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        matrix: bool,
        #[arg(long = "box", value_name = "N", default_value_t = 2)]
        box_bound: u32,
    },
    /// Universal Gröbner basis of a graph.
    Ugb {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Circuits of a graph.
    Circuits {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Robustness verdicts with witnesses.
    Check {
        #[command(flatten)]
        input: GraphInput,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Graph(_) => EXIT_PARSE,
            Error::Oracle(OracleError::NegativeEntry { .. }) => EXIT_NEGATIVE,
            Error::Oracle(_) => EXIT_PARSE,
            Error::ScaleGuard { .. } | Error::TooLarge { .. } => EXIT_SCALE,
            Error::Walk(_) | Error::Invariant(_) => EXIT_INVARIANT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Error::from(e).into()
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Error::from(e).into()
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })?;
    Ok(text)
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(Graph::parse(&read_input(path)?)?)
}

fn load_matrix(path: &Path) -> Result<ToricConfig, Failure> {
    Ok(ToricConfig::parse(&read_input(path)?)?)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(),
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn emit_set(format: Format, set: &BasisSet, prefix: &str) {
    emit(format, set, || render_set(set, prefix));
}

fn invariant(breaches: Vec<String>) -> Outcome {
    if breaches.is_empty() {
        return Ok(());
    }
    Err(Failure { code: EXIT_INVARIANT, message: breaches.join("\n") })
}

fn cmd_analyze(input: &GraphInput, oracle: bool, timings: bool) -> Outcome {
    let graph = load_graph(&input.path)?;
    let report = analyze(&graph, AnalyzeOptions { force: input.force, oracle, timings })?;
    emit(input.common.format, &report, || report.render_text());
    invariant(report.invariant_breaches())
}

fn cmd_matrix(path: &Path, box_bound: Option<u32>, samples: usize, seed: u64, timings: bool, format: Format) -> Outcome {
    let config = load_matrix(path)?;
    let options = MatrixOptions {
        box_bound: box_bound.unwrap_or(MatrixOptions::default().box_bound),
        box_supplied: box_bound.is_some(),
        samples,
        seed,
        timings,
    };
    let report = analyze_matrix(&config, options)?;
    emit(format, &report, || report.render_text());
    Ok(())
}

fn suite_entries_from_dir(dir: &Path) -> Result<Vec<CorpusEntry>, Failure> {
    let io = |e: std::io::Error| Failure { code: EXIT_PARSE, message: format!("{}: {e}", dir.display()) };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.is_file() && matches!(p.extension().and_then(|x| x.to_str()), Some("txt" | "json")))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Failure { code: EXIT_PARSE, message: format!("{}: no .txt or .json graphs", dir.display()) });
    }
    paths
        .iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            parse_corpus_entry(&name, &read_input(p)?)
                .map_err(|e| Failure { code: EXIT_PARSE, message: format!("{name}: {e}") })
        })
        .collect()
}

fn render_suite(report: &SuiteReport) -> String {
    let mut out = String::new();
    for g in &report.graphs {
        let c = &g.counts;
        out.push_str(&format!(
            "{} {} ({}v {}e): circuits={} graver={} ugb={} markov={} indispensable={} generalized_robust={} robust={}\n",
            if g.passed() { "PASS" } else { "FAIL" },
            g.name,
            g.vertices,
            g.edges,
            c.circuits,
            c.graver,
            c.ugb,
            c.markov,
            c.indispensable,
            c.generalized_robust,
            c.robust
        ));
        for f in &g.failures {
            out.push_str(&format!("    {f}\n"));
        }
        if let Some(cx) = &g.counterexample {
            out.push_str(&format!("    counterexample: {cx}\n"));
        }
    }
    out.push_str(&format!("{} passed, {} failed\n", report.passed, report.failed));
    out
}

fn cmd_suite(dir: Option<&Path>, random: Option<usize>, max_vertices: usize, max_edges: usize, seed: u64, format: Format) -> Outcome {
    let entries = match (dir, random) {
        (_, Some(n)) => random_corpus(n, max_vertices, max_edges, seed)
            .into_iter()
            .enumerate()
            .map(|(i, graph)| CorpusEntry { name: format!("random-{}", i + 1), graph, expect: None })
            .collect(),
        (Some(d), None) => suite_entries_from_dir(d)?,
        (None, None) => unreachable!("clap requires a directory or --random"),
    };
    let report = run_suite(&entries, true)?;
    emit(format, &report, || render_suite(&report));
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_INVARIANT, message: format!("{} of {} graphs failed", report.failed, report.graphs.len()) })
    }
}

fn matrix_sets(input: &GraphInput, box_bound: u32) -> Result<(BasisSet, BasisSet), Failure> {
    let config = load_matrix(&input.path)?;
    let graver = graver_bounded(&config, box_bound)?;
    let degrees: Vec<_> = graver.iter().map(|b| b.degree().clone()).collect();
    let m = markov_analysis(&config, &degrees)?;
    Ok((
        BasisSet::untagged(BasisKind::Graver, None, graver),
        BasisSet::untagged(BasisKind::Markov, None, m.universal_markov),
    ))
}

fn cmd_set(input: &GraphInput, kind: BasisKind, matrix: Option<u32>) -> Outcome {
    let format = input.common.format;
    if let Some(box_bound) = matrix {
        let (graver, markov) = matrix_sets(input, box_bound)?;
        emit_set(format, if kind == BasisKind::Graver { &graver } else { &markov }, "x");
        return Ok(());
    }
    let run = run_graph(&load_graph(&input.path)?, input.force)?;
    let set = match kind {
        BasisKind::Graver => run.bases.graver(),
        BasisKind::Markov => run.bases.universal_markov(),
        BasisKind::Ugb => run.bases.universal_groebner(),
        _ => run.bases.circuits(),
    };
    emit_set(format, &set, "e");
    Ok(())
}

fn cmd_check(input: &GraphInput) -> Outcome {
    let run = run_graph(&load_graph(&input.path)?, input.force)?;
    let v = &run.verdict;
    emit(input.common.format, v, || {
        let mut out = format!("generalized_robust={} robust={}\n", v.generalized_robust, v.robust);
        for (name, c) in &v.criteria {
            out.push_str(&format!("{name}: {}", c.holds));
            if !c.rules_violated.is_empty() {
                out.push_str(&format!(" (violates {})", c.rules_violated.join(",")));
            }
            out.push('\n');
        }
        for w in &v.witnesses {
            out.push_str(&format!("witness [{}] {} breaks {}\n", w.criterion, w.binomial.render("e"), w.rules.join(",")));
            for d in &w.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        out
    });
    let mut breaches = Vec::new();
    if !v.checkers_agree() {
        breaches.push("generalized robustness checkers disagree".to_string());
    }
    breaches.extend(run.implications.violations().into_iter().map(|i| format!("implication {} violated", i.name)));
    invariant(breaches)
}

fn configure_threads() {
    let Ok(value) = std::env::var("TORIC_LAB_THREADS") else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring TORIC_LAB_THREADS={value:?}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match &cli.command {
        Command::Analyze { input, oracle, timings } => cmd_analyze(input, *oracle, *timings),
        Command::Matrix { path, box_bound, samples, seed, timings, common } => {
            cmd_matrix(path, *box_bound, *samples, *seed, *timings, common.format)
        }
        Command::Suite { dir, random, max_vertices, max_edges, seed, common } => {
            cmd_suite(dir.as_deref(), *random, *max_vertices, *max_edges, *seed, common.format)
        }
        Command::Graver { input, matrix, box_bound } => cmd_set(input, BasisKind::Graver, matrix.then_some(*box_bound)),
        Command::Markov { input, matrix, box_bound } => cmd_set(input, BasisKind::Markov, matrix.then_some(*box_bound)),
        Command::Ugb { input } => cmd_set(input, BasisKind::Ugb, None),
        Command::Circuits { input } => cmd_set(input, BasisKind::Circuits, None),
        Command::Check { input } => cmd_check(input),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
