use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tes_core::bounds::{bounds_report, declared_tes, formula_tes, is_k5_core};
use tes_core::construct::label_graph;
use tes_core::exact::{exact_tes, exists_labelling, SearchConfig, SearchOutcome};
use tes_core::graph::Graph;
use tes_core::harness::format::{emit_certificate, emit_graph, emit_labelled_dot, parse_certificate, parse_graph};
use tes_core::harness::generate::{gen_random_connected, gen_random_tree, gen_random_union};
use tes_core::harness::scan::{scan, summarize, write_csv, write_graph_listing, ScanOptions, Universe};
use tes_core::labelling::{verify_irregular, TotalLabelling};

/// Edge irregular total labellings: construction, verification and search.
#[derive(Parser)]
#[command(name = "tes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a labelling and print its certificate.
    Label {
        graph: PathBuf,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Run the exact solver.
    Exact {
        graph: PathBuf,
        /// Only decide whether a labelling with this bound exists.
        #[arg(long)]
        k: Option<u32>,
        /// Node budget for the search.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        parallel: bool,
        /// Write the certificate found here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print lower and upper bounds and the declared value.
    Bounds { graph: PathBuf },
    /// Compare declared, constructed and exact values over a universe of graphs.
    Scan {
        /// trees:N | connected:N | random:COUNT:NMAX:MMAX:SEED |
        /// unions:COUNT:PARTS:NMAX:MMAX:SEED | k5 | file:PATH
        universe: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Run the exact solver on graphs with at most this many edges.
        #[arg(long, default_value_t = 10)]
        exact_cutoff: usize,
        /// Record wall-clock times (makes the output nondeterministic).
        #[arg(long)]
        timing: bool,
        /// Also write every scanned graph to this file.
        #[arg(long)]
        graphs: Option<PathBuf>,
    },
    /// Generate a random graph.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Edge count (connected only).
        #[arg(long)]
        m: Option<usize>,
        /// Maximum number of components (union only).
        #[arg(long, default_value_t = 3)]
        parts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a verified labelling in dot format.
    Dot {
        graph: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Tree,
    Connected,
    Union,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_certificate(path: &Path) -> Result<TotalLabelling> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_certificate(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Label { graph, out } => {
            let g = read_graph(&graph)?;
            let r = label_graph(&g)?;
            let l = r.certificate.context("no certificate produced")?;
            eprintln!("tes = {} ({}{})", r.value, r.method.as_str(), if r.fallback_used { ", fallback" } else { "" });
            write_output(out.as_deref(), &emit_certificate(&l))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, certificate } => {
            let g = read_graph(&graph)?;
            let l = read_certificate(&certificate)?;
            let report = verify_irregular(&g, &l);
            if report.ok() {
                println!("ok: edge irregular total {}-labelling", l.bound_k);
                return Ok(ExitCode::SUCCESS);
            }
            for v in &report.violations {
                println!("violation: {v}");
            }
            Ok(ExitCode::from(1))
        }
        Command::Exact { graph, k, budget, parallel, out } => {
            let g = read_graph(&graph)?;
            let cfg = SearchConfig { node_budget: budget, parallel, ..SearchConfig::default() };
            let found = match k {
                Some(k) => match exists_labelling(&g, k, &cfg) {
                    SearchOutcome::Found(l) => {
                        println!("found: k = {k}");
                        Some(l)
                    }
                    SearchOutcome::NoneExists => {
                        println!("none: no edge irregular total {k}-labelling");
                        return Ok(ExitCode::from(1));
                    }
                    SearchOutcome::BudgetExhausted => bail!("node budget exhausted at k = {k}"),
                },
                None => {
                    let r = exact_tes(&g, &cfg)?;
                    println!("tes = {}", r.value);
                    r.certificate
                }
            };
            if let (Some(path), Some(l)) = (out, found) {
                write_output(Some(&path), &emit_certificate(&l))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { graph } => {
            let g = read_graph(&graph)?;
            let b = bounds_report(&g)?;
            let delta = g.max_degree()?;
            println!("n = {}", g.vertex_count());
            println!("m = {}", g.edge_count());
            println!("max_degree = {delta}");
            println!("edge_lower = {}", b.edge_lower);
            println!("degree_lower = {}", b.degree_lower);
            println!("trivial_upper = {}", b.trivial_upper);
            match b.conditional_upper {
                Some(x) => println!("conditional_upper = {x}"),
                None => println!("conditional_upper = n/a"),
            }
            println!("formula = {}", formula_tes(g.edge_count(), delta));
            println!("declared = {}{}", declared_tes(&g)?, if is_k5_core(&g) { " (K5)" } else { "" });
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { universe, out, threads, exact_cutoff, timing, graphs } => {
            let universe: Universe = universe.parse()?;
            let list = universe.materialize()?;
            let opts = ScanOptions { exact_cutoff, threads, timing };
            let records = scan(&list, &opts)?;
            let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_csv(&records, io::BufWriter::new(file)).with_context(|| format!("writing {}", out.display()))?;
            if let Some(path) = graphs {
                let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                write_graph_listing(&list, io::BufWriter::new(file))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            for r in records.iter().filter(|r| !r.agree) {
                eprintln!(
                    "disagreement: {} declared={} constructed={} exact={}{}",
                    r.graph_id,
                    r.declared,
                    r.constructed,
                    r.exact.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
                    r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
                );
            }
            let s = summarize(&records);
            println!(
                "{universe}: {} graphs, {} disagreements, {} fallbacks, {} exact checks, {} K5 rows",
                s.total, s.disagreements, s.fallbacks, s.exact_checked, s.k5_rows
            );
            Ok(if s.disagreements == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gen { kind, n, m, parts, seed, out } => {
            let g = match kind {
                GenKind::Tree => gen_random_tree(n, seed)?,
                GenKind::Connected => {
                    let m = m.context("--m is required for connected graphs")?;
                    gen_random_connected(n, m, seed)?
                }
                GenKind::Union => {
                    if n < 2 {
                        bail!("--n must be at least 2");
                    }
                    gen_random_union(parts, n, m.unwrap_or(n * (n - 1) / 2), seed)
                }
            };
            write_output(out.as_deref(), &emit_graph(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { graph, certificate, out } => {
            let g = read_graph(&graph)?;
            let l = read_certificate(&certificate)?;
            match emit_labelled_dot(&g, &l) {
                Ok(dot) => {
                    write_output(out.as_deref(), &dot)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    for v in &e.0.violations {
                        eprintln!("violation: {v}");
                    }
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
