//! `pathgraph`: recognize path graphs, print certificates, export
//! attachedness graphs, run the exhaustive oracle and the self-test.
//!
//! Exit status: 0 path graph (or success), 1 not a path graph (or a failed
//! self-test), 2 not chordal, 3 usage error, 4 unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pathgraph::chordal::{clique_separators, is_chordal, Chordality};
use pathgraph::generate::generate;
use pathgraph::oracle::oracle_is_path_graph;
use pathgraph::recognizer::{recognize_with, RecognizeOptions, VerdictKind};
use pathgraph::selftest::{run_selftest, Mutation, SelftestConfig};
use pathgraph::separation::{build_profile, quotient_profile};
use pathgraph::{parse_edge_list, Error, SimpleGraph};

const EXIT_NOT_PATH: u8 = 1;
const EXIT_NOT_CHORDAL: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "pathgraph", version, about = "Path-graph recognition with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the graph in FILE is a path graph.
    Recognize {
        file: PathBuf,
        /// Also print the verdict as JSON, including any certificate.
        #[arg(long)]
        certificate: bool,
        /// Write one attachedness graph per clique separator as DOT.
        #[arg(long, value_name = "DIR")]
        dot_dir: Option<PathBuf>,
        /// Largest clique count for attaching a clique path tree (0 disables).
        #[arg(long, env = "PATHGRAPH_TREE_CLIQUES", default_value_t = 8)]
        tree_cliques: usize,
    },
    /// Decide by trying every labeled tree on the maximal cliques.
    Oracle {
        file: PathBuf,
        #[arg(long, env = "PATHGRAPH_MAX_CLIQUES", default_value_t = 9)]
        max_cliques: usize,
    },
    /// Print the attachedness graph of one clique separator.
    Attachedness {
        file: PathBuf,
        /// Index into the clique separators, in canonical order.
        #[arg(long)]
        separator: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Merge mutually dominating parts first.
        #[arg(long)]
        quotient: bool,
    },
    /// Print a random chordal graph as an edge list.
    Gen {
        #[arg(long, default_value = "subtree")]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Run the eight self-test suites.
    Selftest {
        /// Enumerate every labeled graph up to this many vertices.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Number of subtree-model graphs.
        #[arg(long, env = "PATHGRAPH_SAMPLES", default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Flip the antipodal spoke of W1_3 before testing; the run must fail.
        #[arg(long)]
        mutate: bool,
        /// Print per-suite details.
        #[arg(long, short)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
}

/// A failure that ends the command with a message and an exit status.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MalformedLine { .. } | Error::SelfLoop { .. } => EXIT_INPUT,
            Error::NotChordal => EXIT_NOT_CHORDAL,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Fail> {
    let text = fs::read_to_string(path)
        .map_err(|e| Fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let (g, warnings) = parse_edge_list(&text)
        .map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(g)
}

fn verdict_code(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::PathGraph => 0,
        VerdictKind::NotPathGraph => EXIT_NOT_PATH,
        VerdictKind::NotChordal => EXIT_NOT_CHORDAL,
    }
}

fn write_dots(g: &SimpleGraph, dir: &Path) -> Result<(), Fail> {
    fs::create_dir_all(dir)
        .map_err(|e| Fail(EXIT_INPUT, format!("cannot create {}: {e}", dir.display())))?;
    let Ok(seps) = clique_separators(g) else {
        return Ok(());
    };
    for (i, q) in seps.iter().enumerate() {
        let p = build_profile(g, q)?;
        let path = dir.join(format!("separator-{i}.dot"));
        fs::write(&path, p.to_dot())
            .map_err(|e| Fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_recognize(file: &Path, certificate: bool, dot_dir: Option<&Path>, tree_cliques: usize) -> Result<u8, Fail> {
    let g = read_graph(file)?;
    let v = recognize_with(&g, RecognizeOptions { tree_clique_cap: tree_cliques });
    print!("{}", v.report(&g));
    if certificate {
        let json = serde_json::to_string_pretty(&v.to_json(&g)).expect("plain data serializes");
        println!("{json}");
    }
    if let Some(dir) = dot_dir {
        write_dots(&g, dir)?;
    }
    Ok(verdict_code(v.kind()))
}

fn cmd_oracle(file: &Path, max_cliques: usize) -> Result<u8, Fail> {
    let g = read_graph(file)?;
    if let Chordality::Hole(h) = is_chordal(&g) {
        let labels: Vec<String> = g.labels_of(&h).iter().map(|l| l.to_string()).collect();
        println!("not chordal: chordless cycle {}", labels.join(" "));
        return Ok(EXIT_NOT_CHORDAL);
    }
    match oracle_is_path_graph(&g, max_cliques)? {
        Some(r) => {
            println!("path graph");
            print!("{}", r.to_text(&g));
            Ok(0)
        }
        None => {
            println!("not a path graph: no clique path tree");
            Ok(EXIT_NOT_PATH)
        }
    }
}

fn cmd_attachedness(file: &Path, index: usize, format: Format, quotient: bool) -> Result<u8, Fail> {
    let g = read_graph(file)?;
    let seps = clique_separators(&g)?;
    let q = seps.get(index).ok_or_else(|| {
        Fail(
            EXIT_USAGE,
            format!("separator {index} out of range: the graph has {} clique separators", seps.len()),
        )
    })?;
    let mut p = build_profile(&g, q)?;
    if quotient {
        p = quotient_profile(&p);
    }
    match format {
        Format::Dot => print!("{}", p.to_dot()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&p.to_json()).expect("plain data serializes")),
    }
    Ok(0)
}

fn cmd_gen(model: &str, n: usize, seed: u64) -> Result<u8, Fail> {
    if n == 0 {
        return Err(Fail(EXIT_USAGE, "--n must be at least 1".into()));
    }
    print!("{}", generate(model, n, seed)?.to_edge_list());
    Ok(0)
}

fn cmd_selftest(cfg: SelftestConfig, verbose: bool) -> Result<u8, Fail> {
    if cfg.max_n > 7 {
        return Err(Fail(EXIT_USAGE, "--max-n above 7 enumerates too many graphs".into()));
    }
    let reports = run_selftest(&cfg);
    let mut ok = true;
    for r in &reports {
        println!("{r}");
        if r.is_vacuous() {
            eprintln!("warning: suite {} checked nothing", r.number);
        }
        if verbose || !r.passed() {
            for d in &r.details {
                println!("    {d}");
            }
        }
        ok &= r.passed();
    }
    Ok(if ok { 0 } else { EXIT_NOT_PATH })
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.command {
        Command::Recognize {
            file,
            certificate,
            dot_dir,
            tree_cliques,
        } => cmd_recognize(&file, certificate, dot_dir.as_deref(), tree_cliques),
        Command::Oracle { file, max_cliques } => cmd_oracle(&file, max_cliques),
        Command::Attachedness {
            file,
            separator,
            format,
            quotient,
        } => cmd_attachedness(&file, separator, format, quotient),
        Command::Gen { model, n, seed } => cmd_gen(&model, n, seed),
        Command::Selftest {
            max_n,
            samples,
            seed,
            mutate,
            verbose,
        } => cmd_selftest(
            SelftestConfig {
                max_n,
                samples,
                seed,
                mutation: mutate.then(Mutation::w1_spoke),
            },
            verbose,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
