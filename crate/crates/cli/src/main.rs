//! `powham`: generate graphs, run the exact searches and the absorbing
//! heuristic, and emit one JSON report per invocation.
//!
//! Exit codes: 0 when the question was answered (either way), 2 when a
//! budget ran out or the answer is inconclusive, 1 on usage or input errors
//! and failing checks.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use powham_core::absorbing::connect::DEFAULT_CONNECT_NODES;
use powham_core::absorbing::{connect_ktuples, sample_absorbers, AbsorbError, AbsorberKind, Connection};
use powham_core::checks::{find_check, run_check, CHECKS};
use powham_core::constructions::{ConstructionError, ConstructionSpec, Family};
use powham_core::format::{dot_string, parse_graph, parse_vertex_list, serialize_graph_string, FormatError};
use powham_core::pipeline::{heuristic_multi_seed, HeuristicOutcome, HeuristicParams, Transcript};
use powham_core::solver::{
    embed, find_ham_power, ramsey_scan, tiling_scan, validate_certificate, validate_embedding, RamseyScan,
    SolverError, TilingScan,
};
use powham_core::{Digraph, Mode, Outcome, SearchBudget, VertexSet};

use report::{hex_fingerprint, Counters, Report};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Absorb(#[from] AbsorbError),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Parser, Debug)]
#[command(name = "powham", version, about = "Powers of Hamilton cycles in digraphs")]
struct Cli {
    /// Worker threads for parallel scans and multi-seed runs.
    #[arg(long, global = true, env = "POWHAM_JOBS")]
    jobs: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph from a named family.
    Gen(GenArgs),
    /// Search for the k-th power of a Hamilton cycle or path.
    Solve(SolveArgs),
    /// Search for an embedding of a pattern graph into a host.
    Embed(EmbedArgs),
    /// Exhaustive scans over labelled tournaments.
    Scan(ScanArgs),
    /// Connect two k-tuples by a short k-path.
    Connect(ConnectArgs),
    /// Sample absorbers for a vertex.
    Absorb(AbsorbArgs),
    /// Run the absorbing heuristic.
    Heuristic(HeuristicArgs),
    /// Run named acceptance checks.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct Budget {
    /// Maximum search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Maximum wall-clock milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
}

impl Budget {
    fn get(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_millis: self.budget_ms,
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Edge probability for random digraphs.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    retries: Option<usize>,
    /// Base tournament file for gk.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Graph output file.
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// Also write a DOT rendering.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Also write a JSON summary next to the graph, at `<output>.report.json`.
    #[arg(long)]
    emit_report: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "cycle")]
    mode: Mode,
    #[command(flatten)]
    budget: Budget,
    file: PathBuf,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    host: PathBuf,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanTask {
    Ramsey,
    Tiling,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    task: ScanTask,
    #[arg(long)]
    k: usize,
    /// Largest order scanned (ramsey) or the order scanned (tiling).
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct ConnectArgs {
    #[arg(long)]
    k: usize,
    /// Start tuple, comma separated.
    #[arg(long, value_delimiter = ',')]
    from: Vec<usize>,
    /// End tuple, comma separated.
    #[arg(long, value_delimiter = ',')]
    to: Vec<usize>,
    /// File listing vertices the connector must avoid.
    #[arg(long)]
    avoid: Option<PathBuf>,
    /// Most internal vertices; defaults to 6k.
    #[arg(long)]
    max_internal: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CONNECT_NODES)]
    max_nodes: u64,
    host: PathBuf,
}

#[derive(Args, Debug)]
struct AbsorbArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    vertex: usize,
    #[arg(long, default_value = "digraph")]
    kind: AbsorberKind,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    host: PathBuf,
}

#[derive(Args, Debug)]
struct HeuristicArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed range `S1..S2` (inclusive); the lowest successful seed wins.
    #[arg(long)]
    seeds: Option<String>,
    /// Reservoir fraction in (0, 1/2).
    #[arg(long)]
    reservoir: Option<f64>,
    #[arg(long)]
    max_retries: Option<usize>,
    #[arg(long)]
    absorber_slots: Option<usize>,
    host: PathBuf,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Check name or id; repeatable. `all` runs every check.
    #[arg(long = "property", required = true)]
    properties: Vec<String>,
}

/// Outcome of a command: the report and the exit code it implies.
struct Done {
    report: Report,
    code: u8,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli, argv[1..].to_vec()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("powham: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, command: Vec<String>) -> Result<u8, CliError> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    let done = match cli.command {
        Command::Gen(a) => gen(a, command)?,
        Command::Solve(a) => solve(a, command)?,
        Command::Embed(a) => embed_cmd(a, command)?,
        Command::Scan(a) => scan(a, command)?,
        Command::Connect(a) => connect(a, command)?,
        Command::Absorb(a) => absorb(a, command)?,
        Command::Heuristic(a) => heuristic(a, command)?,
        Command::Check(a) => check(a, command)?,
    };
    let text = serde_json::to_string_pretty(&done.report).expect("reports serialize");
    match &cli.out {
        Some(path) => write_file(path, &(text + "\n"))?,
        None => println!("{text}"),
    }
    Ok(done.code)
}

fn read_graph(path: &Path) -> Result<Digraph, CliError> {
    parse_graph(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Output {
        path: path.to_path_buf(),
        source,
    })
}

fn search_code(o: Outcome) -> u8 {
    if o == Outcome::Budget {
        2
    } else {
        0
    }
}

fn gen(a: GenArgs, command: Vec<String>) -> Result<Done, CliError> {
    let start = Instant::now();
    let base = a.base.as_deref().map(read_graph).transpose()?;
    let spec = ConstructionSpec {
        family: Some(a.family),
        k: a.k,
        n: a.n,
        t: a.t,
        r: a.r,
        l: a.l,
        q: a.q,
        p: a.p,
        seed: a.seed,
        retries: a.retries,
        base,
    };
    let c = spec.build()?;
    let g = &c.graph;
    write_file(&a.output, &serialize_graph_string(g))?;
    if let Some(dot) = &a.dot {
        write_file(dot, &dot_string(g))?;
    }
    let prof = g.degree_profile();
    let params = serde_json::to_value(&spec).expect("spec serializes");
    if a.emit_report {
        let sidecar = json!({
            "family": a.family.name(),
            "params": params,
            "n": g.n(),
            "delta0": prof.min_semi_degree,
            "delta_total": prof.min_total_degree,
            "classify": g.classify().to_string(),
        });
        let mut path = a.output.clone().into_os_string();
        path.push(".report.json");
        write_file(Path::new(&path), &(serde_json::to_string_pretty(&sidecar).expect("json") + "\n"))?;
    }
    let mut report = Report::new(command, params, "GENERATED");
    report.fingerprint = Some(hex_fingerprint(g.fingerprint()));
    report.seeds = vec![a.seed];
    report.counters.elapsed_ms = start.elapsed().as_millis() as u64;
    report.details = json!({
        "output": a.output,
        "n": g.n(),
        "edges": g.edge_count(),
        "class": g.classify().to_string(),
        "min_semi_degree": prof.min_semi_degree,
        "min_total_degree": prof.min_total_degree,
        "notes": c.notes,
    });
    Ok(Done { report, code: 0 })
}

fn solve(a: SolveArgs, command: Vec<String>) -> Result<Done, CliError> {
    let g = read_graph(&a.file)?;
    let r = find_ham_power(&g, a.k, a.mode, a.budget.get())?;
    let mut report = Report::new(
        command,
        json!({ "k": a.k, "mode": a.mode, "budget": a.budget.get(), "file": a.file }),
        r.outcome.to_string(),
    );
    report.fingerprint = Some(hex_fingerprint(g.fingerprint()));
    report.counters = Counters {
        nodes_expanded: r.nodes_expanded,
        elapsed_ms: r.elapsed_ms,
    };
    if let Some(cert) = &r.witness {
        debug_assert_eq!(validate_certificate(&g, cert, a.mode), Ok(true));
        report.witness = Some(serde_json::to_value(cert).expect("certificate serializes"));
    }
    Ok(Done {
        code: search_code(r.outcome),
        report,
    })
}

fn embed_cmd(a: EmbedArgs, command: Vec<String>) -> Result<Done, CliError> {
    let pattern = read_graph(&a.pattern)?;
    let host = read_graph(&a.host)?;
    let r = embed(&pattern, &host, a.budget.get());
    let mut report = Report::new(
        command,
        json!({ "pattern": a.pattern, "host": a.host, "budget": a.budget.get() }),
        r.outcome.to_string(),
    );
    report.fingerprint = Some(hex_fingerprint(host.fingerprint()));
    report.counters = Counters {
        nodes_expanded: r.nodes_expanded,
        elapsed_ms: r.elapsed_ms,
    };
    if let Some(map) = &r.witness {
        debug_assert!(validate_embedding(&pattern, &host, map));
        report.witness = Some(json!(map));
    }
    report.details = json!({ "pattern_fingerprint": hex_fingerprint(pattern.fingerprint()) });
    Ok(Done {
        code: search_code(r.outcome),
        report,
    })
}

fn scan(a: ScanArgs, command: Vec<String>) -> Result<Done, CliError> {
    let start = Instant::now();
    let params = json!({ "task": format!("{:?}", a.task).to_lowercase(), "k": a.k, "n": a.n });
    let (outcome, code, witness, details) = match a.task {
        ScanTask::Ramsey => {
            let r = ramsey_scan(a.k, a.n)?;
            let details = serde_json::to_value(&r).expect("scan serializes");
            match r {
                RamseyScan::Determined { .. } => ("DETERMINED", 0, None, details),
                RamseyScan::NotDetermined { witness, .. } => (
                    "NOT_DETERMINED",
                    2,
                    Some(json!(serialize_graph_string(&witness))),
                    details,
                ),
            }
        }
        ScanTask::Tiling => {
            let r = tiling_scan(a.k, a.n)?;
            let details = serde_json::to_value(&r).expect("scan serializes");
            match r {
                TilingScan::AllTile { .. } => ("ALL_TILE", 0, None, details),
                TilingScan::Counterexample { tournament, .. } => (
                    "COUNTEREXAMPLE",
                    0,
                    Some(json!(serialize_graph_string(&tournament))),
                    details,
                ),
            }
        }
    };
    let mut report = Report::new(command, params, outcome);
    report.witness = witness;
    report.details = details;
    report.counters.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Done { report, code })
}

fn connect(a: ConnectArgs, command: Vec<String>) -> Result<Done, CliError> {
    let start = Instant::now();
    let g = read_graph(&a.host)?;
    let mut avoid = VertexSet::new(g.n());
    if let Some(path) = &a.avoid {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
            path: path.clone(),
            source: e.into(),
        })?;
        let list = parse_vertex_list(&text).map_err(|source| CliError::Input {
            path: path.clone(),
            source,
        })?;
        for v in list {
            if v >= g.n() {
                return Err(CliError::Usage(format!("avoid vertex {v} out of range")));
            }
            avoid.insert(v);
        }
    }
    let max_internal = a.max_internal.unwrap_or(6 * a.k);
    let r = connect_ktuples(&g, &a.from, &a.to, &avoid, a.k, max_internal, a.max_nodes)?;
    let (outcome, code) = match &r {
        Connection::Found(_) => ("FOUND", 0),
        Connection::NotFound => ("NOT_FOUND", 0),
        Connection::BudgetExceeded => ("BUDGET", 2),
    };
    let mut report = Report::new(
        command,
        json!({
            "k": a.k, "from": a.from, "to": a.to, "avoid": avoid.to_vec(),
            "max_internal": max_internal, "max_nodes": a.max_nodes, "host": a.host,
        }),
        outcome,
    );
    report.fingerprint = Some(hex_fingerprint(g.fingerprint()));
    report.witness = r.path().map(|p| json!(p));
    report.counters.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Done { report, code })
}

fn absorb(a: AbsorbArgs, command: Vec<String>) -> Result<Done, CliError> {
    let start = Instant::now();
    let g = read_graph(&a.host)?;
    if a.vertex >= g.n() {
        return Err(CliError::Usage(format!("vertex {} out of range", a.vertex)));
    }
    let s = sample_absorbers(&g, a.vertex, a.k, a.kind, a.trials, a.seed)?;
    let mut report = Report::new(
        command,
        json!({ "k": a.k, "vertex": a.vertex, "kind": a.kind, "trials": a.trials, "host": a.host }),
        if s.hits > 0 { "FOUND" } else { "NONE" },
    );
    report.fingerprint = Some(hex_fingerprint(g.fingerprint()));
    report.seeds = vec![a.seed];
    report.witness = s.absorbers.first().map(|p| json!(p));
    report.counters.elapsed_ms = start.elapsed().as_millis() as u64;
    report.details = serde_json::to_value(&s).expect("sample serializes");
    Ok(Done { report, code: 0 })
}

fn parse_seed_range(s: &str) -> Result<std::ops::RangeInclusive<u64>, CliError> {
    let bad = || CliError::Usage(format!("--seeds expects S1..S2, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn heuristic(a: HeuristicArgs, command: Vec<String>) -> Result<Done, CliError> {
    let start = Instant::now();
    let g = read_graph(&a.host)?;
    let mut params = HeuristicParams::for_k(a.k).with_seed(a.seed);
    if let Some(f) = a.reservoir {
        params.reservoir_fraction = f;
    }
    if let Some(r) = a.max_retries {
        params.max_retries = r;
    }
    params.absorber_slots = a.absorber_slots;
    params.validate().map_err(CliError::Usage)?;
    if a.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let seeds = match &a.seeds {
        Some(s) => parse_seed_range(s)?,
        None => a.seed..=a.seed,
    };
    let transcripts: Vec<Transcript> = heuristic_multi_seed(&g, a.k, &params, seeds.clone());
    let winner = transcripts.iter().find(|t| t.certificate.is_some());
    let mut report = Report::new(
        command,
        serde_json::to_value(&params).expect("params serialize"),
        if winner.is_some() { "FOUND" } else { "FAILURE" },
    );
    report.fingerprint = Some(hex_fingerprint(g.fingerprint()));
    report.seeds = seeds.collect();
    report.counters.elapsed_ms = start.elapsed().as_millis() as u64;
    if let Some(t) = winner {
        let cert = t.certificate.as_ref().expect("winner has a certificate");
        assert_eq!(validate_certificate(&g, cert, Mode::Cycle), Ok(true));
        report.witness = Some(serde_json::to_value(cert).expect("certificate serializes"));
    }
    let failures: Vec<Value> = transcripts
        .iter()
        .filter_map(|t| match &t.outcome {
            HeuristicOutcome::Failure { stage } => Some(json!({ "seed": t.params.seed, "stage": stage })),
            HeuristicOutcome::Found => None,
        })
        .collect();
    report.details = json!({
        "winning_seed": winner.map(|t| t.params.seed),
        "failures": failures,
        "transcripts": transcripts,
    });
    Ok(Done {
        code: if winner.is_some() { 0 } else { 2 },
        report,
    })
}

fn check(a: CheckArgs, command: Vec<String>) -> Result<Done, CliError> {
    let start = Instant::now();
    let infos = if a.properties.iter().any(|p| p == "all") {
        CHECKS.to_vec()
    } else {
        a.properties
            .iter()
            .map(|p| {
                find_check(p).ok_or_else(|| {
                    let names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
                    CliError::Usage(format!("unknown property `{p}`; known: {}", names.join(", ")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let outcomes: Vec<_> = infos.into_iter().map(run_check).collect();
    let all = outcomes.iter().all(|o| o.passed);
    for o in &outcomes {
        eprintln!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let mut report = Report::new(command, json!({ "properties": a.properties }), if all { "PASS" } else { "FAIL" });
    report.counters.elapsed_ms = start.elapsed().as_millis() as u64;
    report.details = json!(outcomes);
    Ok(Done {
        code: if all { 0 } else { 1 },
        report,
    })
}
