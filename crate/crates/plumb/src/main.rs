use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plumb::commands::{self, split_list, CliError, Options, Transform};
use plumb::format::to_dot;
use plumb::report::Report;
use serde_json::json;

/// Exact invariants of plumbing graphs of normal surface singularities.
///
/// GRAPH arguments are file paths, `-` for stdin, or `ex:<name>` for a
/// built-in graph (dpp, elliptic, star-<n>-<N>, A<n>, D<n>, E6, E7, E8).
#[derive(Parser, Debug)]
#[command(name = "plumb", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit the timestamp so JSON output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    stable: bool,
    /// Also write the (resulting) graph in Graphviz DOT format.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Cross-check every minimization with the exhaustive oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Largest box the oracle may enumerate.
    #[arg(long, global = true, default_value_t = plumb_core::search::ORACLE_CAP)]
    oracle_cap: u128,
    /// Worker threads for the min-χ search (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the graph and print its lattice data.
    Validate { graph: String },
    /// Minimal χ, arithmetic genus and the rationality verdict.
    Invariants { graph: String },
    /// Certified minimum of χ over effective cycles.
    Minchi {
        graph: String,
        /// Restrict to cycles 0 <= l <= BOX (a cycle expression).
        #[arg(long = "box")]
        box_expr: Option<String>,
        /// Print the smallest and largest minimizers.
        #[arg(long)]
        witness: bool,
        /// Print the number of minimizers.
        #[arg(long)]
        count: bool,
    },
    /// Artin's minimal cycle via Laufer's algorithm.
    Laufer { graph: String },
    /// Anticanonical cycle Z_K.
    Zk { graph: String },
    /// Dual cycle E*_v.
    Dual { graph: String, vertex: String },
    /// χ of a cycle expression.
    Chi {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        cycle: String,
    },
    /// E*-support of a cycle and Lipman-cone membership.
    Support {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        cycle: String,
    },
    /// Dimension of the effective Cartier divisor space ECa^l(Z).
    Ecadim {
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long = "Z")]
        z: String,
    },
    /// Blow up, or restrict to a full subgraph.
    Transform {
        graph: String,
        #[arg(long, value_name = "V", conflicts_with_all = ["blowup_edge", "subgraph"])]
        blowup_vertex: Option<String>,
        /// Number of successive blow-ups along the newest curve.
        #[arg(long, default_value_t = 1, requires = "blowup_vertex")]
        times: usize,
        #[arg(long, value_name = "U,W", conflicts_with = "subgraph")]
        blowup_edge: Option<String>,
        /// Comma-separated vertices to keep; components go to OUT.c0, OUT.c1, ...
        #[arg(long, value_name = "V1,V2,...")]
        subgraph: Option<String>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Topological bounds valid for the generic analytic structure.
    Bounds {
        graph: String,
        #[arg(long = "Z")]
        z: String,
        /// Comma-separated vertex set I for e_Z(I).
        #[arg(long = "I", value_name = "V1,V2,...")]
        vertices: Option<String>,
    },
    /// Arithmetic genera of full subgraphs after blow-ups.
    Spectrum {
        graph: String,
        #[arg(long, default_value_t = 0)]
        max_blowups: usize,
        /// Find a blow-up/subgraph witness with p_a = Q.
        #[arg(long, value_name = "Q")]
        realize: Option<i64>,
        #[arg(long, default_value_t = 64)]
        budget: usize,
        /// Largest number of vertex subsets to examine.
        #[arg(long, default_value_t = plumb_core::invariants::SUBSET_CAP)]
        cap: u64,
    },
    /// Print a built-in graph: dpp, star, elliptic, A<n>, D<n>, E6..E8.
    Example {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<i64>,
    },
    /// Print a seeded random negative-definite graph.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        /// Allow cycles, multi-edges and genus-1 vertices with small weights.
        #[arg(long)]
        multi: bool,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let opts = Options { oracle: g.oracle, oracle_cap: g.oracle_cap, threads: g.threads };
    match &cli.command {
        Command::Validate { graph } => commands::validate(&commands::load(graph)?),
        Command::Invariants { graph } => commands::invariants(&commands::load(graph)?, &opts),
        Command::Minchi { graph, box_expr, witness, count } => {
            commands::minchi(&commands::load(graph)?, box_expr.as_deref(), *witness, *count, &opts)
        }
        Command::Laufer { graph } => commands::laufer(&commands::load(graph)?),
        Command::Zk { graph } => commands::zk(&commands::load(graph)?),
        Command::Dual { graph, vertex } => commands::dual(&commands::load(graph)?, vertex),
        Command::Chi { graph, cycle } => commands::chi(&commands::load(graph)?, cycle),
        Command::Support { graph, cycle } => commands::support(&commands::load(graph)?, cycle),
        Command::Ecadim { graph, l, z } => commands::ecadim(&commands::load(graph)?, l, z),
        Command::Transform { graph, blowup_vertex, times, blowup_edge, subgraph, out } => {
            let op = if let Some(v) = blowup_vertex {
                Transform::BlowupVertex { vertex: v.clone(), times: *times }
            } else if let Some(e) = blowup_edge {
                match split_list(e).as_slice() {
                    [u, w] => Transform::BlowupEdge { u: u.clone(), w: w.clone() },
                    _ => return Err(CliError::Usage(format!("--blowup-edge expects U,W, got `{e}`"))),
                }
            } else if let Some(s) = subgraph {
                Transform::Subgraph { kept: split_list(s) }
            } else {
                return Err(CliError::Usage("transform needs --blowup-vertex, --blowup-edge or --subgraph".into()));
            };
            commands::transform(&commands::load(graph)?, &op, out)
        }
        Command::Bounds { graph, z, vertices } => {
            let list = vertices.as_deref().map(split_list);
            commands::bounds(&commands::load(graph)?, z, list.as_deref())
        }
        Command::Spectrum { graph, max_blowups, realize, budget, cap } => {
            commands::spectrum(&commands::load(graph)?, *max_blowups, *realize, *budget, *cap)
        }
        Command::Example { name, n, big_n } => commands::example(name, *n, *big_n),
        Command::Gen { seed, vertices, multi } => commands::gen(*seed, *vertices, *multi),
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
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(report) => {
            if let (Some(path), Some(graph)) = (&cli.global.dot, &report.dot_graph) {
                if let Err(source) = std::fs::write(path, to_dot(graph)) {
                    let err = CliError::Io { path: path.clone(), source };
                    return fail(&cli, &err);
                }
            }
            let text = if cli.global.json {
                let mut s = serde_json::to_string_pretty(&report.envelope(cli.global.stable)).expect("serializable");
                s.push('\n');
                s
            } else {
                report.text()
            };
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => fail(&cli, &e),
    }
}

fn fail(cli: &Cli, e: &CliError) -> ExitCode {
    if cli.global.json {
        let env = json!({"error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}});
        println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
    }
    eprintln!("plumb: {e}");
    ExitCode::from(e.exit_code())
}
