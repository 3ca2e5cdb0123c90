//! The `ufgraph` command line. Exit codes: 0 success, 1 a verification
//! failed, 2 invalid input, 3 internal invariant breach.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ufgraph_core::abrams::{is_sufficiently_subdivided, sufficient_subdivision, CubicalComplex};
use ufgraph_core::cograph::{cograph_of, cotree_of, is_cograph};
use ufgraph_core::generation::{
    generation_check_with, stage_in, Ambient, GenerationOptions, GeneratorList, StageFilter, DEFAULT_MAX_LEVEL,
};
use ufgraph_core::graph::{betti1, complement, disjoint_union, family, subdivide_uniform, Family};
use ufgraph_core::homology::Homology;
use ufgraph_core::morphism::{enumerate_tm, gtm_k_member, EmbeddingKind};
use ufgraph_core::swiatkowski::{enumerate_cells, support_vertices, verify_support_bound};
use ufgraph_core::{Error, SimpleGraph, VertexId};

use crate::formats::{
    cells_to_csv, complex_to_json, counts_table, cotree_from_json, cotree_to_json, generation_table,
    generation_to_json, graph_to_json, matrix_to_text, morphism_to_json, stage_table, stage_to_json,
    summary_to_json, support_report_to_json,
};
use crate::verify::{run_criterion, Suite};
use crate::{graph6, io};

#[derive(Parser, Debug)]
#[command(name = "ufgraph", version, about = "Configuration spaces of graphs, topological minors and cographs")]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphOut {
    G6,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build, convert and combine graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Cell counts and homology of the discretized configuration space.
    Homology(HomologyArgs),
    /// Topological minor queries.
    Minor(MinorArgs),
    /// Cograph recognition, cotrees and the support report.
    #[command(subcommand)]
    Cograph(CographCmd),
    /// Export the cells A_{i,n}(G) as CSV.
    Cells(CellsArgs),
    /// Generation by subgraph types, or a Betti or Robertson stage.
    Generate(GenerateArgs),
    /// Run acceptance suites: all, abrams, swiatkowski, cograph, morphisms,
    /// filtrations.
    Verify { suite: String },
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Graph from an edge list such as `0-1,1-2`.
    Make {
        #[arg(long, allow_hyphen_values = true)]
        edges: String,
        /// Extra vertex ids, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        vertices: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        to: GraphOut,
    },
    /// Named family, e.g. `robertson_chain 2` or `theta 1 2 2`.
    Family {
        name: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        to: GraphOut,
    },
    Complement {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        to: GraphOut,
    },
    Union {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        to: GraphOut,
    },
    /// Split every edge into `--pieces` edges, or subdivide sufficiently for
    /// `--sufficient n` particles.
    Subdivide {
        file: PathBuf,
        #[arg(long)]
        pieces: Option<usize>,
        #[arg(long)]
        sufficient: Option<usize>,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        to: GraphOut,
    },
    Betti1 { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(short)]
    pub n: usize,
    #[arg(long, conflicts_with = "unordered")]
    pub ordered: bool,
    #[arg(long)]
    pub unordered: bool,
    /// Subdivide sufficiently for `n` before building.
    #[arg(long)]
    pub subdivide: bool,
    /// Halve every edge this many more times after sufficient subdivision.
    #[arg(long)]
    pub extra_subdivision: Option<usize>,
    /// Write the complex (cells and boundary triplets) as JSON.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Write each boundary matrix as coordinate text into this directory.
    #[arg(long)]
    pub matrices: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MinorArgs {
    #[arg(long, requires = "host")]
    pub pattern: Option<PathBuf>,
    #[arg(long)]
    pub host: Option<PathBuf>,
    /// tm, simplicial, full or subdivision.
    #[arg(long, default_value = "tm")]
    pub kind: String,
    #[arg(long, default_value_t = 10_000)]
    pub limit: usize,
    /// Decide membership in gtm_k instead.
    #[arg(long, requires = "graph", conflicts_with = "pattern")]
    pub gtm_k: Option<usize>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CographCmd {
    Recognize { file: PathBuf },
    Cotree { file: PathBuf },
    /// Cograph of a cotree given as JSON.
    Reconstruct {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        to: GraphOut,
    },
    /// Support bound over `i = 0..=n` (or one `-i`).
    SupportReport {
        file: PathBuf,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        i: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct CellsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(short)]
    pub i: usize,
    #[arg(short)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub i: usize,
    /// Generator types: graph6 lines or a JSON array of graphs.
    #[arg(long, conflicts_with = "stage", required_unless_present = "stage")]
    pub gens: Option<PathBuf>,
    /// `betti:G` or `robertson:K`.
    #[arg(long)]
    pub stage: Option<String>,
    /// First extra subdivision level.
    #[arg(long, default_value_t = 0)]
    pub extra_subdivision: usize,
    /// Highest level the generator check escalates to.
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    pub max_level: usize,
    #[arg(long)]
    pub unordered: bool,
    /// Evaluate every generator even after the group is reached.
    #[arg(long)]
    pub all_generators: bool,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, kind: "invalid_input", message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError { code: 3, kind: "internal", message: message.into() }
    }

    fn to_json(&self) -> Value {
        json!({ "error": self.kind, "message": self.message, "exit_code": self.code })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::NotACograph => "not_a_cograph",
            Error::InvalidGenerators(_) => "invalid_generators",
            Error::InvalidCotree(_) => "invalid_cotree",
            Error::NotAComplex(_) | Error::NotChainMap(_) => return CliError::internal(e.to_string()),
            _ => "invalid_input",
        };
        CliError { code: 2, kind, message: e.to_string() }
    }
}

/// Successful output and the exit code to finish with.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

type Res = Result<Output, CliError>;

/// Entry point of the binary.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parse, execute and write results; returns the exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{}", e);
            } else {
                let _ = writeln!(err, "{}", CliError::input(e.to_string()).to_json());
            }
            return code;
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build();
    let mut notes = Vec::new();
    let result = panic::catch_unwind(AssertUnwindSafe(|| match &pool {
        Ok(p) => p.install(|| execute(&cli, &mut notes)),
        Err(_) => execute(&cli, &mut notes),
    }));
    let _ = err.write_all(&notes);
    let result = result.unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(CliError::internal(msg))
    });
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.code
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn emit_graph(g: &SimpleGraph, to: GraphOut) -> String {
    match to {
        GraphOut::G6 => format!("{}\n", graph6::encode(g)),
        GraphOut::Json => pretty(&graph_to_json(g)),
    }
}

fn load(path: &Path) -> Result<SimpleGraph, CliError> {
    io::read_graph(path).map_err(CliError::input)
}

fn execute(cli: &Cli, err: &mut Vec<u8>) -> Res {
    match &cli.command {
        Command::Graph(cmd) => graph_cmd(cmd),
        Command::Homology(a) => homology_cmd(a, cli.format, err),
        Command::Minor(a) => minor_cmd(a, cli.format),
        Command::Cograph(cmd) => cograph_cmd(cmd, cli.format),
        Command::Cells(a) => cells_cmd(a, cli.format),
        Command::Generate(a) => generate_cmd(a, cli.format, err),
        Command::Verify { suite } => verify_cmd(suite, cli.format, err),
    }
}

fn parse_ids(list: &str) -> Result<Vec<VertexId>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<VertexId>().map_err(|_| CliError::input(format!("bad vertex id {:?}", s))))
        .collect()
}

fn graph_cmd(cmd: &GraphCmd) -> Res {
    match cmd {
        GraphCmd::Make { edges, vertices, to } => {
            let mut pairs = Vec::new();
            let mut ids: Vec<VertexId> = match vertices {
                Some(v) => parse_ids(v)?,
                None => Vec::new(),
            };
            for token in edges.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (a, b) = token
                    .split_once('-')
                    .ok_or_else(|| CliError::input(format!("edge {:?} is not of the form a-b", token)))?;
                let ab = parse_ids(&format!("{},{}", a, b))?;
                pairs.push((ab[0], ab[1]));
                if vertices.is_none() {
                    ids.extend(&ab);
                }
            }
            if vertices.is_none() {
                ids.sort_unstable();
                ids.dedup();
            }
            Ok(Output::ok(emit_graph(&SimpleGraph::new(&ids, &pairs)?, *to)))
        }
        GraphCmd::Family { name, params, to } => {
            Ok(Output::ok(emit_graph(&family(&Family::parse(name, params)?)?, *to)))
        }
        GraphCmd::Complement { file, to } => Ok(Output::ok(emit_graph(&complement(&load(file)?), *to))),
        GraphCmd::Union { first, second, to } => {
            Ok(Output::ok(emit_graph(&disjoint_union(&load(first)?, &load(second)?).0, *to)))
        }
        GraphCmd::Subdivide { file, pieces, sufficient, to } => {
            let g = load(file)?;
            let record = match (pieces, sufficient) {
                (Some(p), None) if *p >= 1 => subdivide_uniform(&g, *p),
                (None, Some(n)) if *n >= 1 => sufficient_subdivision(&g, *n),
                _ => return Err(CliError::input("give exactly one of --pieces k or --sufficient n, both at least 1")),
            };
            Ok(Output::ok(emit_graph(&record.subdivided, *to)))
        }
        GraphCmd::Betti1 { file } => Ok(Output::ok(format!("{}\n", betti1(&load(file)?)))),
    }
}

fn homology_cmd(a: &HomologyArgs, format: Format, err: &mut dyn Write) -> Res {
    if a.n == 0 {
        return Err(CliError::input("n must be at least 1"));
    }
    let ordered = !a.unordered;
    let original = load(&a.graph)?;
    let level = match (a.subdivide, a.extra_subdivision) {
        (_, Some(r)) => Some(r),
        (true, None) => Some(0),
        (false, None) => None,
    };
    let graph = match level {
        Some(r) => {
            let mut record = sufficient_subdivision(&original, a.n);
            for _ in 0..r {
                record = record.then(&subdivide_uniform(&record.subdivided, 2));
            }
            record.subdivided
        }
        None => original.clone(),
    };
    let sufficient = is_sufficiently_subdivided(&graph, a.n);
    let _ = match level {
        Some(r) => writeln!(err, "subdivision: sufficient for n = {} plus {} halvings", a.n, r),
        None => writeln!(err, "subdivision: none (sufficiently subdivided: {})", sufficient),
    };
    let cx = CubicalComplex::build(&graph, a.n, ordered);
    let chain = cx.chain_complex();
    for d in 1..chain.top() {
        let dd = chain.boundary(d).mul(chain.boundary(d + 1)).ok_or_else(|| CliError::internal("overflow"))?;
        if !dd.is_zero() {
            return Err(CliError::internal(format!("boundary squares to nonzero in degree {}", d + 1)));
        }
    }
    if let Some(path) = &a.dump {
        fs::write(path, pretty(&complex_to_json(&cx))).map_err(|e| CliError::input(e.to_string()))?;
    }
    if let Some(dir) = &a.matrices {
        fs::create_dir_all(dir).map_err(|e| CliError::input(e.to_string()))?;
        for d in 1..=chain.top() {
            fs::write(dir.join(format!("boundary_{}.txt", d)), matrix_to_text(chain.boundary(d)))
                .map_err(|e| CliError::input(e.to_string()))?;
        }
    }
    let summary = Homology::compute(chain.clone()).summary();
    let chi_betti: i64 =
        summary.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    let chi = cx.euler_characteristic();
    if chi != chi_betti {
        return Err(CliError::internal(format!("Euler characteristic {} but alternating Betti sum {}", chi, chi_betti)));
    }
    let text = match format {
        Format::Json => pretty(&json!({
            "graph": graph_to_json(&original),
            "n": a.n,
            "ordered": ordered,
            "subdivision": level.map(|r| json!({ "extra": r, "vertices": graph.order(), "edges": graph.size() })),
            "sufficiently_subdivided": sufficient,
            "cells": cx.cell_counts(),
            "euler_characteristic": chi,
            "homology": summary_to_json(&summary),
        })),
        Format::Table => format!("{}chi {}\n", counts_table(&cx.cell_counts(), &summary), chi),
        Format::Csv => {
            let mut s = String::from("degree,cells,betti,torsion\n");
            for (d, c) in cx.cell_counts().iter().enumerate() {
                let t: Vec<String> = summary.torsion[d].iter().map(ToString::to_string).collect();
                s.push_str(&format!("{},{},{},{}\n", d, c, summary.betti[d], t.join(" ")));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn minor_cmd(a: &MinorArgs, format: Format) -> Res {
    if let Some(k) = a.gtm_k {
        let g = load(a.graph.as_ref().expect("clap requires --graph"))?;
        let member = gtm_k_member(&g, k)?;
        return Ok(Output::ok(match format {
            Format::Json => pretty(&json!({ "k": k, "member": member })),
            _ => format!("{}\n", if member { "member" } else { "not a member" }),
        }));
    }
    let (Some(p), Some(h)) = (&a.pattern, &a.host) else {
        return Err(CliError::input("give --pattern and --host, or --gtm-k and --graph"));
    };
    let kind = EmbeddingKind::parse(&a.kind).ok_or_else(|| CliError::input(format!("unknown kind {:?}", a.kind)))?;
    let (pattern, host) = (Arc::new(load(p)?), Arc::new(load(h)?));
    let found = enumerate_tm(&pattern, &host, kind, Some(a.limit.max(1)));
    let exists = !found.morphisms.is_empty();
    Ok(Output::ok(match format {
        Format::Json => pretty(&json!({
            "kind": a.kind,
            "exists": exists,
            "count": found.morphisms.len(),
            "limit_reached": found.limit_reached,
            "witness": found.morphisms.first().map(morphism_to_json),
        })),
        _ => format!(
            "{}\ncount {}{}\n",
            if exists { "exists" } else { "none" },
            found.morphisms.len(),
            if found.limit_reached { " (limit reached)" } else { "" }
        ),
    }))
}

fn cograph_cmd(cmd: &CographCmd, format: Format) -> Res {
    match cmd {
        CographCmd::Recognize { file } => {
            let yes = is_cograph(&load(file)?);
            Ok(Output::ok(match format {
                Format::Json => pretty(&json!({ "cograph": yes })),
                _ => format!("{}\n", yes),
            }))
        }
        CographCmd::Cotree { file } => {
            let t = cotree_of(&load(file)?)?;
            Ok(Output::ok(match format {
                Format::Json => pretty(&cotree_to_json(&t)),
                _ => format!("{}\n", t.canonical_code()),
            }))
        }
        CographCmd::Reconstruct { file, to } => {
            let text = fs::read_to_string(file).map_err(|e| CliError::input(format!("{}: {}", file.display(), e)))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::input(e.to_string()))?;
            let t = cotree_from_json(&v).map_err(CliError::input)?;
            Ok(Output::ok(emit_graph(&cograph_of(&t)?, *to)))
        }
        CographCmd::SupportReport { file, n, i } => {
            if *n == 0 {
                return Err(CliError::input("n must be at least 1"));
            }
            let g = load(file)?;
            let degrees: Vec<usize> = match i {
                Some(i) if i <= n => vec![*i],
                Some(i) => return Err(CliError::input(format!("i = {} exceeds n = {}", i, n))),
                None => (0..=*n).collect(),
            };
            let reports: Vec<_> = degrees.iter().map(|&i| verify_support_bound(&g, i, *n)).collect();
            let passed = reports.iter().all(|r| r.passed());
            let text = match format {
                Format::Json => pretty(&Value::Array(reports.iter().map(support_report_to_json).collect())),
                _ => reports
                    .iter()
                    .map(|r| {
                        format!(
                            "i={} n={}: {} cells, max support {} <= {}, {} violations\n",
                            r.i,
                            r.n,
                            r.cells,
                            r.max_support,
                            r.bound,
                            r.violations.len()
                        )
                    })
                    .collect(),
            };
            Ok(Output { text, code: if passed { 0 } else { 1 } })
        }
    }
}

fn cells_cmd(a: &CellsArgs, format: Format) -> Res {
    let g = load(&a.graph)?;
    let cells = enumerate_cells(&g, a.i, a.n);
    Ok(Output::ok(match format {
        Format::Json => pretty(&Value::Array(
            cells.iter().map(|c| json!({ "cell": c.key(&g), "support": support_vertices(&g, c).len() })).collect(),
        )),
        _ => cells_to_csv(&g, &cells),
    }))
}

fn generate_cmd(a: &GenerateArgs, format: Format, err: &mut dyn Write) -> Res {
    if a.n == 0 {
        return Err(CliError::input("n must be at least 1"));
    }
    let g = load(&a.graph)?;
    if let Some(token) = &a.stage {
        let filter = StageFilter::parse(token)?;
        let mut amb = Ambient::new(&g, a.i, a.n, !a.unordered, a.extra_subdivision)?;
        let report = stage_in(&mut amb, filter)?;
        let _ = writeln!(err, "subdivision: sufficient for n = {} plus {} halvings", a.n, report.level);
        return Ok(Output::ok(match format {
            Format::Json => pretty(&stage_to_json(&report, amb.graph())),
            _ => stage_table(&report),
        }));
    }
    let path = a.gens.as_ref().expect("clap requires --gens or --stage");
    let graphs = io::read_graphs(path).map_err(|m| CliError { code: 2, kind: "invalid_generators", message: m })?;
    let gens = GeneratorList::new(graphs)?;
    let opts = GenerationOptions {
        ordered: !a.unordered,
        max_level: a.max_level,
        stop_when_generated: !a.all_generators,
    };
    let report = generation_check_with(&g, a.i, a.n, &gens, a.extra_subdivision, &opts)?;
    let _ = writeln!(err, "subdivision: sufficient for n = {} plus {} halvings", a.n, report.level);
    Ok(Output::ok(match format {
        Format::Json => pretty(&generation_to_json(&report)),
        _ => generation_table(&report),
    }))
}

fn verify_cmd(suite: &str, format: Format, err: &mut dyn Write) -> Res {
    let s = Suite::parse(suite).ok_or_else(|| CliError::input(format!("unknown suite {:?}", suite)))?;
    let mut outcomes = Vec::new();
    for &id in s.criteria() {
        let o = run_criterion(id);
        let _ = writeln!(err, "{}", o);
        outcomes.push(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    let text = match format {
        Format::Json => pretty(&json!({
            "suite": suite,
            "passed": failed.is_empty(),
            "failed": failed,
            "criteria": outcomes.iter().map(|o| json!({
                "id": o.id,
                "title": o.title,
                "passed": o.passed(),
                "correct": o.correct,
                "seconds": o.elapsed.as_secs_f64(),
                "budget_seconds": o.budget.as_secs(),
                "detail": o.detail,
            })).collect::<Vec<_>>(),
        })),
        _ => outcomes.iter().map(|o| format!("{}\n", o)).collect(),
    };
    Ok(Output { text, code: if failed.is_empty() { 0 } else { 1 } })
}
