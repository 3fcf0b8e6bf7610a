//! `stn` — exact subtree counting from the command line.
//!
//! Subcommands: `graph` (count subtrees of a graph file under an optional
//! containment constraint), `chain` (exact subtree number of a concrete
//! polyphenylene/spiro chain), `expect` (expected / average values of
//! random chains with exhaustive and Monte Carlo verifiers). Output is
//! JSON or CSV; exact values are emitted losslessly, rationals as `a/b`.
//!
//! Exit codes: 0 success, 1 I/O or usage error, 2 input parse error,
//! 3 precondition violation (wrong graph class, caps, bad probabilities),
//! 4 verification mismatch between an engine and the oracle.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use stn_core::chains::{self, AttachmentMode, ChainFamily, ChainSpec, ProbabilityPair};
use stn_core::engine::{self, ContainmentConstraint};
use stn_core::expect;
use stn_core::format::{dump_graph, parse_graph, parse_weight};
use stn_core::graph::VertexId;
use stn_core::oracle;
use stn_core::ring::{format_exact, ExactInt, ExactRational};

use output::{ChainOutput, ExpectOutput, ExpectRow, GraphOutput, OutputFormat};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "stn", version, about = "Exact subtree counting for trees, unicyclic graphs, and polyphenylene/spiro chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generating-function value of a graph file, optionally cross-checked
    /// against the exhaustive oracle
    Graph(GraphArgs),
    /// Exact subtree number of a concrete chain
    Chain(ChainArgs),
    /// Expected or average subtree number of random chains
    Expect(ExpectArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file (`n m` header, edge lines `u v [g]`, vertex weights `vw u [f]`)
    file: PathBuf,
    /// Restrict to subtrees containing this vertex
    #[arg(long, conflicts_with_all = ["path", "pair"])]
    vertex: Option<u32>,
    /// Restrict to subtrees containing this path, e.g. `0,1,2`
    #[arg(long, conflicts_with = "pair")]
    path: Option<String>,
    /// Restrict to subtrees containing both vertices, e.g. `0,3`
    #[arg(long)]
    pair: Option<String>,
    /// Also run the exhaustive oracle and report MATCH/MISMATCH
    #[arg(long)]
    brute: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct ChainArgs {
    /// Chain family: poly | spiro
    #[arg(long, value_parser = parse_family)]
    family: ChainFamily,
    /// Hexagon count
    #[arg(long)]
    n: usize,
    /// Attachment modes for steps 3..n, e.g. `OMP`
    #[arg(long, conflicts_with = "kind")]
    modes: Option<String>,
    /// Uniform chain kind: ortho | meta | para
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Cross-check against the oracle on the built graph (small n only)
    #[arg(long)]
    brute: bool,
    /// Write the built graph to this file in the graph text format
    #[arg(long)]
    dump_graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct ExpectArgs {
    /// Chain family: poly | spiro
    #[arg(long, value_parser = parse_family)]
    family: ChainFamily,
    /// Single hexagon count
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive hexagon-count range, e.g. `1..8`
    #[arg(long)]
    n_range: Option<String>,
    /// Ortho probability as a rational, e.g. `1/3`
    #[arg(long)]
    p1: Option<String>,
    /// Meta probability as a rational, e.g. `1/3`
    #[arg(long)]
    p2: Option<String>,
    /// closed | exhaustive | mc | all
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    /// Average over all chains (uniform modes) instead of an expectation
    #[arg(long, conflicts_with_all = ["p1", "p2"])]
    average: bool,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Monte Carlo seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ortho,
    Meta,
    Para,
}

impl Kind {
    fn mode(self) -> AttachmentMode {
        match self {
            Kind::Ortho => AttachmentMode::Ortho,
            Kind::Meta => AttachmentMode::Meta,
            Kind::Para => AttachmentMode::Para,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Exhaustive,
    Mc,
    All,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Exhaustive => "exhaustive",
            Method::Mc => "mc",
            Method::All => "all",
        }
    }
}

fn parse_family(s: &str) -> Result<ChainFamily, String> {
    ChainFamily::parse(s).ok_or_else(|| format!("unknown family {s:?}, expected poly or spiro"))
}

enum CliError {
    Io(String),
    Usage(String),
    Core(stn_core::Error),
}

impl From<stn_core::Error> for CliError {
    fn from(e: stn_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn report(&self) -> (u8, String) {
        match self {
            CliError::Io(msg) => (EXIT_IO, msg.clone()),
            CliError::Usage(msg) => (EXIT_IO, msg.clone()),
            CliError::Core(e) => {
                let code = match e {
                    stn_core::Error::Parse { .. } => EXIT_PARSE,
                    _ => EXIT_PRECONDITION,
                };
                (code, e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Graph(args) => cmd_graph(args),
        Command::Chain(args) => cmd_chain(args),
        Command::Expect(args) => cmd_expect(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (code, msg) = e.report();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn parse_id_list(s: &str) -> Result<Vec<VertexId>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map(VertexId)
                .map_err(|_| CliError::Usage(format!("bad vertex id {t:?}")))
        })
        .collect()
}

fn decimal(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

fn cmd_graph(args: GraphArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let text = fs::read_to_string(&args.file)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.file.display())))?;
    let g = parse_graph(&text)?;

    let (constraint, label) = if let Some(v) = args.vertex {
        (ContainmentConstraint::Vertex(VertexId(v)), format!("vertex {v}"))
    } else if let Some(p) = &args.path {
        let ids = parse_id_list(p)?;
        (ContainmentConstraint::Path(ids), format!("path {p}"))
    } else if let Some(p) = &args.pair {
        let ids = parse_id_list(p)?;
        if ids.len() != 2 {
            return Err(CliError::Usage("--pair takes exactly two vertices".into()));
        }
        (
            ContainmentConstraint::VertexPair(ids[0], ids[1]),
            format!("pair {p}"),
        )
    } else {
        (ContainmentConstraint::None, "none".to_string())
    };

    // The engine handles trees and unicyclic graphs; anything else can
    // still be counted by the oracle when --brute is given.
    let engine_value = match engine::evaluate(&g, &constraint) {
        Ok(v) => Some(v),
        Err(stn_core::Error::UnsupportedClass(_)) if args.brute => None,
        Err(e) => return Err(e.into()),
    };
    let oracle_value = if args.brute {
        let (req_v, req_e): (Vec<VertexId>, Vec<(VertexId, VertexId)>) = match &constraint {
            ContainmentConstraint::None => (vec![], vec![]),
            ContainmentConstraint::Vertex(v) => (vec![*v], vec![]),
            ContainmentConstraint::Path(p) => (
                p.clone(),
                p.windows(2).map(|w| (w[0], w[1])).collect(),
            ),
            ContainmentConstraint::VertexPair(a, b) => (vec![*a, *b], vec![]),
        };
        Some(oracle::brute_gf::<ExactRational>(&g, &req_v, &req_e)?)
    } else {
        None
    };

    let verdict = match (&engine_value, &oracle_value) {
        (Some(e), Some(o)) => Some(if e == o { "MATCH" } else { "MISMATCH" }.to_string()),
        _ => None,
    };
    let mismatch = verdict.as_deref() == Some("MISMATCH");
    let (method, value) = match (&engine_value, &oracle_value) {
        (Some(e), _) => ("engine", e.clone()),
        (None, Some(o)) => ("oracle", o.clone()),
        (None, None) => unreachable!("one of the paths always runs"),
    };
    let record = GraphOutput {
        command: "graph",
        file: args.file.display().to_string(),
        constraint: label,
        graph_class: format!("{:?}", g.classify()),
        method,
        value: format_exact(&value),
        value_decimal: decimal(&value),
        brute: oracle_value.as_ref().map(format_exact),
        verdict,
        runtime_ms: start.elapsed().as_millis(),
    };
    println!("{}", record.render(args.format));
    Ok(if mismatch { EXIT_MISMATCH } else { 0 })
}

fn build_spec(args: &ChainArgs) -> Result<ChainSpec, CliError> {
    if let Some(modes) = &args.modes {
        Ok(ChainSpec::from_mode_string(args.family, args.n, modes)?)
    } else if let Some(kind) = args.kind {
        Ok(ChainSpec::uniform(args.family, args.n, kind.mode())?)
    } else if args.n <= 2 {
        Ok(ChainSpec::new(args.family, args.n, vec![])?)
    } else {
        Err(CliError::Usage(
            "chains with n >= 3 need --modes or --kind".into(),
        ))
    }
}

fn cmd_chain(args: ChainArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let spec = build_spec(&args)?;
    let count = chains::chain_stn(&spec);

    let dumped_to = match &args.dump_graph {
        Some(path) => {
            let g = chains::build_chain_graph::<ExactRational>(&spec);
            fs::write(path, dump_graph(&g))
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let (brute, verdict) = if args.brute {
        let g = chains::build_chain_graph::<ExactInt>(&spec);
        let oracle_value = oracle::brute_gf(&g, &[], &[])?;
        let verdict = if oracle_value == count.total { "MATCH" } else { "MISMATCH" };
        (Some(oracle_value.to_string()), Some(verdict.to_string()))
    } else {
        (None, None)
    };

    let mismatch = verdict.as_deref() == Some("MISMATCH");
    let record = ChainOutput {
        command: "chain",
        family: spec.family.as_str(),
        n: spec.n,
        modes: spec.mode_string(),
        value: count.total.to_string(),
        value_decimal: count.total.to_f64().unwrap_or(f64::INFINITY),
        brute,
        verdict,
        dumped_to,
        runtime_ms: start.elapsed().as_millis(),
    };
    println!("{}", record.render(args.format));
    Ok(if mismatch { EXIT_MISMATCH } else { 0 })
}

fn parse_probability(args: &ExpectArgs) -> Result<ProbabilityPair, CliError> {
    let (Some(p1), Some(p2)) = (&args.p1, &args.p2) else {
        return Err(CliError::Usage(
            "--p1 and --p2 are required unless --average is given".into(),
        ));
    };
    let parse = |s: &str| {
        parse_weight(s).ok_or_else(|| CliError::Usage(format!("bad rational {s:?}")))
    };
    Ok(ProbabilityPair::new(parse(p1)?, parse(p2)?)?)
}

fn parse_n_values(args: &ExpectArgs) -> Result<Vec<usize>, CliError> {
    if let Some(n) = args.n {
        return Ok(vec![n]);
    }
    if let Some(range) = &args.n_range {
        let (a, b) = range
            .split_once("..")
            .ok_or_else(|| CliError::Usage("--n-range must look like 1..8".into()))?;
        let a: usize = a.trim().parse().map_err(|_| CliError::Usage("bad range start".into()))?;
        let b: usize = b.trim().parse().map_err(|_| CliError::Usage("bad range end".into()))?;
        if a < 1 || b < a {
            return Err(CliError::Usage("range must satisfy 1 <= start <= end".into()));
        }
        return Ok((a..=b).collect());
    }
    Err(CliError::Usage("one of --n or --n-range is required".into()))
}

fn cmd_expect(args: ExpectArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let ns = parse_n_values(&args)?;
    let mut rows = Vec::new();

    if args.average {
        for &n in &ns {
            let value = expect::average_stn(args.family, n)?;
            rows.push(ExpectRow {
                family: args.family.as_str(),
                n,
                p1: String::new(),
                p2: String::new(),
                method: "average".into(),
                value: format_exact(&value),
                value_decimal: decimal(&value),
                exhaustive: None,
                residual: None,
                std_error: None,
                samples: None,
                seed: None,
            });
        }
    } else {
        let p = parse_probability(&args)?;
        for &n in &ns {
            let mut row = ExpectRow {
                family: args.family.as_str(),
                n,
                p1: format_exact(p.p1()),
                p2: format_exact(p.p2()),
                method: args.method.as_str().into(),
                value: String::new(),
                value_decimal: 0.0,
                exhaustive: None,
                residual: None,
                std_error: None,
                samples: None,
                seed: None,
            };
            match args.method {
                Method::Closed => {
                    let r = expect::expected_stn(args.family, n, &p)?;
                    row.value = format_exact(&r.value);
                    row.value_decimal = decimal(&r.value);
                }
                Method::Exhaustive => {
                    let v = expect::exhaustive_expectation(args.family, n, &p)?;
                    row.value = format_exact(&v);
                    row.value_decimal = decimal(&v);
                }
                Method::Mc => {
                    let r = expect::monte_carlo_estimate(args.family, n, &p, args.samples, args.seed)?;
                    row.value = format!("{}", r.mean);
                    row.value_decimal = r.mean;
                    row.std_error = Some(r.std_error);
                    row.samples = Some(r.samples);
                    row.seed = Some(r.seed);
                }
                Method::All => {
                    let closed = expect::expected_stn(args.family, n, &p)?;
                    let exhaustive = expect::exhaustive_expectation(args.family, n, &p)?;
                    let residual = expect::relation_residual(n, &p)?;
                    row.value = format_exact(&closed.value);
                    row.value_decimal = decimal(&closed.value);
                    row.exhaustive = Some(format_exact(&exhaustive));
                    row.residual = Some(format_exact(&residual));
                }
            }
            rows.push(row);
        }
    }

    let record = ExpectOutput {
        command: "expect",
        rows,
        runtime_ms: start.elapsed().as_millis(),
    };
    println!("{}", record.render(args.format));
    Ok(0)
}
