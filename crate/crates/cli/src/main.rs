use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use graph_ideal::combinatorics::{
    even_ear_count, max_join_with_caps, min_even_ear_decomposition, nested_decompositions_by_epsilon,
    DEFAULT_JOIN_EDGE_CAP,
};
use graph_ideal::corpus::{connected_bipartite_graphs, random_corpus, CorpusEntry};
use graph_ideal::graph::DEFAULT_CYCLE_CAP;
use graph_ideal::groebner::DEFAULT_PAIR_CAP;
use graph_ideal::verify::{analyze, run_corpus, RunConfig};
use graph_ideal::{Error, Graph};

/// Binomial edge ideals I(X_G): Groebner bases, regularity and the
/// combinatorial bounds it is compared against.
#[derive(Parser)]
#[command(name = "graph-ideal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Characteristic of the coefficient field
    #[arg(long = "field", global = true, default_value_t = 3)]
    field: u32,
    /// Further characteristics for the field-independence check
    #[arg(long, global = true, value_delimiter = ',', default_value = "5,7")]
    primes: Vec<u32>,
    /// Order of the edge variables, largest first, e.g. "12>23>13"
    #[arg(long = "t-order", global = true)]
    t_order: Option<String>,
    /// Also write the JSON output to this file
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Maximum number of S-pairs processed by Buchberger's algorithm
    #[arg(long = "cap-pairs", global = true, default_value_t = DEFAULT_PAIR_CAP)]
    cap_pairs: usize,
    /// Maximum number of simple cycles enumerated
    #[arg(long = "cap-cycles", global = true, default_value_t = DEFAULT_CYCLE_CAP)]
    cap_cycles: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, Hilbert function, regularity and combinatorial invariants
    Invariants { file: PathBuf },
    /// Reduced Groebner basis of I(X_G)
    Ideal { file: PathBuf },
    /// Maximum join size mu(G) with a maximum join
    Mu { file: PathBuf },
    /// Ear decompositions
    Ears {
        file: PathBuf,
        /// Search for a nested ear decomposition
        #[arg(long)]
        nested: bool,
        /// Report the minimum number of even ears
        #[arg(long)]
        phi: bool,
    },
    /// Evaluate every theorem on the graph
    Check { file: PathBuf },
    /// Check a batch of graphs
    Corpus {
        /// Number of random graphs
        #[arg(long, conflicts_with_all = ["dir", "bipartite"])]
        random: Option<usize>,
        /// Edge bound for random graphs
        #[arg(long = "max-edges", default_value_t = 8)]
        max_edges: usize,
        /// Seed for random graphs
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory of graph files
        #[arg(long, conflicts_with = "bipartite")]
        dir: Option<PathBuf>,
        /// All connected bipartite graphs with at most this many edges
        #[arg(long)]
        bipartite: Option<usize>,
    },
}

/// Exit status: 0 success, 1 a check failed, 2 bad input, 3 resource limit.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Validation(_) | Error::Precondition(_) => 2,
        Error::ResourceLimit { .. } => 3,
        Error::DivisionByZero(_) | Error::Inconsistency(_) => 1,
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Graph::parse(&text)
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn corpus_from_dir(dir: &Path) -> Result<Vec<CorpusEntry>, Error> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let id = p.file_stem().unwrap().to_string_lossy().into_owned();
            Ok(CorpusEntry { id, graph: read_graph(p)? })
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, Error> {
    let o = &cli.opts;
    let cfg = RunConfig {
        p: o.field,
        primes: o.primes.clone(),
        t_order: o.t_order.clone(),
        cap_pairs: o.cap_pairs,
        cap_cycles: o.cap_cycles,
    };
    graph_ideal::algebra::PrimeField::new(cfg.p)?;
    for &q in &cfg.primes {
        graph_ideal::algebra::PrimeField::new(q)?;
    }
    let out = o.json.as_deref();
    match cli.command {
        Command::Invariants { file } => {
            let a = analyze(&read_graph(&file)?, &cfg)?;
            emit(&serde_json::to_value(a.report()).unwrap(), out)?;
            Ok(0)
        }
        Command::Ideal { file } => {
            let g = read_graph(&file)?;
            let gb = cfg.ideal(&g, cfg.p)?;
            emit(&serde_json::to_value(gb.to_json()).unwrap(), out)?;
            Ok(0)
        }
        Command::Mu { file } => {
            let g = read_graph(&file)?;
            let (mu, cert) = max_join_with_caps(&g, DEFAULT_JOIN_EDGE_CAP, cfg.cap_cycles)?;
            emit(&json!({ "mu": mu, "join": cert.edges }), out)?;
            Ok(0)
        }
        Command::Ears { file, nested, phi } => {
            let g = read_graph(&file)?;
            let (min_even, witness) = min_even_ear_decomposition(&g)?;
            let mut value = json!({});
            if nested {
                let found = nested_decompositions_by_epsilon(&g)?;
                match found.iter().next() {
                    Some((eps, d)) => {
                        value["decomposition"] = serde_json::to_value(d).unwrap();
                        value["evenEars"] = json!(eps);
                        value["epsilons"] = json!(found.keys().collect::<Vec<_>>());
                    }
                    None => {
                        log::info!("{g} has no nested ear decomposition");
                        value["decomposition"] = Value::Null;
                    }
                }
            } else {
                value["decomposition"] = serde_json::to_value(&witness).unwrap();
                value["evenEars"] = json!(even_ear_count(&witness));
            }
            if phi {
                value["phi"] = json!(min_even);
            }
            emit(&value, out)?;
            Ok(0)
        }
        Command::Check { file } => {
            let a = analyze(&read_graph(&file)?, &cfg)?;
            emit(&serde_json::to_value(&a.verdicts).unwrap(), out)?;
            Ok(if a.passed() { 0 } else { 1 })
        }
        Command::Corpus { random, max_edges, seed, dir, bipartite } => {
            let entries = match (dir, bipartite) {
                (Some(dir), _) => corpus_from_dir(&dir)?,
                (None, Some(m)) => connected_bipartite_graphs(m),
                (None, None) => random_corpus(random.unwrap_or(50), max_edges, seed),
            };
            let report = run_corpus(&entries, &cfg);
            log::info!("{} graphs: {} passed, {} failed", report.graphs, report.passed, report.failed);
            emit(&serde_json::to_value(&report).unwrap(), out)?;
            Ok(if report.failed > 0 {
                1
            } else if report.resource_limited > 0 {
                3
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let level = std::env::var("GRAPH_IDEAL_LOG").unwrap_or_else(|_| "off".into());
    env_logger::Builder::new().parse_filters(&level).format_timestamp(None).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
