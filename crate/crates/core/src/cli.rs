//! Command-line front end. [`run`] parses arguments, runs one command and
//! returns the process exit code: 0 success, 2 usage or parse error, 3 input
//! violating a precondition (cycles, size limits), 4 cross-check divergence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rayon::prelude::*;

use crate::clique::{
    build_h, build_h_bounded, decide_4clique_bounded, decide_4clique_unbounded, flow_solver,
    FourPartiteGraph, NcSolver,
};
use crate::codes::{decode_witness, encode_family, BoxCodeword, Codeword, SuperimposedCode};
use crate::cuts::{earliest_cuts_upto_k, latest_cuts_upto_k, ArcSet, CutFamily};
use crate::error::{Error, Result};
use crate::flow::{find_4clique_bruteforce, min_cut_value, vertex_connectivity_bounded};
use crate::gen;
use crate::graph::{split_vertices, MultiDigraph, SplitGraph, Vertex};
use crate::iterative::{all_pairs_earliest_cuts, all_pairs_latest_cuts, verify_witnesses};
use crate::netcoding::{
    kapmc_arcs_with, kapmvc_with, kstmvc_with, ConnectivityReport, NetcodingConfig,
};
use crate::recursive::{all_pairs_extremal_cuts_recursive, RecursiveConfig};
use crate::table::{ApmcTable, CutValue, ValueMatrix};
use crate::witness::{solve_ws_bruteforce, solve_ws_pruning, WsInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "apmc",
    version,
    about = "Bounded all-pairs minimum cuts on directed multigraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the k-capped all-pairs min-cut matrix.
    Values(ValuesArgs),
    /// Print latest (or earliest) <=k-cuts of every pair as JSON.
    Witnesses(WitnessArgs),
    /// Shorthand for `values -a iterative`, or `witnesses` with `--witnesses`.
    Iterative(SolverArgs),
    /// Shorthand for `values -a recursive`, or `witnesses` with `--witnesses`.
    Recursive(SolverArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Cross-check every solver against the oracles.
    Verify(VerifyArgs),
    /// k-bounded vertex connectivity between vertex sets by network coding.
    Netcoding(NetcodingArgs),
    /// Build the layered graph of the 4-clique reduction.
    ReduceClique(ReduceArgs),
    /// Decide whether a 4-partite graph has a 4-clique via the reduction.
    DecideClique(DecideArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Oracle,
    Iterative,
    Recursive,
    Netcoding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input file; `-` or absent reads standard input.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, short, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Worker threads for per-pair work; 1 runs sequentially.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ValuesArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, short, value_enum, default_value_t = Algorithm::Iterative)]
    pub algorithm: Algorithm,
    /// Unit vertex capacities instead of unit arc capacities.
    #[arg(long)]
    pub vertex_capacities: bool,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Largest family a tensor codeword may encode (recursive algorithm).
    #[arg(long = "max-K")]
    pub max_k_dim: Option<usize>,
    /// Seed for network coding.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Latest,
    Earliest,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, short, value_enum, default_value_t = Algorithm::Iterative)]
    pub algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = Kind::Latest)]
    pub kind: Kind,
    #[arg(long = "max-K")]
    pub max_k_dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub vertex_capacities: bool,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    #[arg(long = "max-K")]
    pub max_k_dim: Option<usize>,
    /// Print cut families (JSON) instead of values.
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long, value_enum, default_value_t = Kind::Latest)]
    pub kind: Kind,
}

fn cmd_solver(a: SolverArgs, algorithm: Algorithm, out: &mut dyn Write) -> CmdResult {
    let SolverArgs {
        common,
        vertex_capacities,
        format,
        max_k_dim,
        witnesses,
        kind,
    } = a;
    if witnesses {
        if vertex_capacities {
            return Err(
                Error::InvalidArgument("witness output is arc-capacity only".into()).into(),
            );
        }
        cmd_witnesses(
            &WitnessArgs {
                common,
                algorithm,
                kind,
                max_k_dim,
            },
            out,
        )
    } else {
        cmd_values(
            &ValuesArgs {
                common,
                algorithm,
                vertex_capacities,
                format,
                max_k_dim,
                seed: 1,
            },
            out,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Tree,
    RandomDag,
    RandomDigraph,
    Clique4,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long, default_value_t = 1)]
    pub mult: usize,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 16)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub max_mult: usize,
    /// Edge probability for `clique4`.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check this graph instead of the seeded random corpus.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    /// Largest k to check.
    #[arg(long, short, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long = "max-K")]
    pub max_k_dim: Option<usize>,
    /// Run the iterative solver with k+1 to check that the harness notices.
    #[arg(long)]
    pub inject_fault: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct NetcodingArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Comma-separated source vertices; all vertices when absent.
    #[arg(long, value_delimiter = ',')]
    pub sources: Vec<Vertex>,
    #[arg(long, value_delimiter = ',')]
    pub sinks: Vec<Vertex>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Unbounded,
    Bounded,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Unbounded)]
    pub mode: Mode,
    #[arg(long, short, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Block `i,j` of the bounded construction.
    #[arg(long, value_parser = parse_block, default_value = "0,0")]
    pub block: (usize, usize),
}

fn parse_block(text: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("expected `i,j`, got `{text}`");
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Flow,
    Netcoding,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Unbounded)]
    pub mode: Mode,
    #[arg(long, short, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = Solver::Flow)]
    pub solver: Solver,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

enum Failure {
    Lib(Error),
    Io(std::io::Error),
    Diverged(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidGraph(_) | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(path: &Option<PathBuf>) -> std::result::Result<MultiDigraph, Failure> {
    Ok(MultiDigraph::parse(&read_input(path)?)?)
}

fn pool(jobs: Option<usize>) -> std::result::Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Lib(Error::InvalidArgument(e.to_string())))
}

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .collect()
}

fn matrix_from(n: usize, k: usize, vals: Vec<((Vertex, Vertex), CutValue)>) -> ValueMatrix {
    let mut vm = ValueMatrix::new(n, k);
    for ((s, t), v) in vals {
        vm.set(s, t, v);
    }
    vm
}

fn report_matrix(r: &ConnectivityReport, n: usize, k: usize) -> ValueMatrix {
    let vals = pairs(n)
        .into_iter()
        .map(|(s, t)| ((s, t), CutValue::capped(r.get(s, t).unwrap_or(0), k)))
        .collect();
    matrix_from(n, k, vals)
}

/// Value matrix of one algorithm; `>k` marks pairs above the cap.
pub fn compute_values(
    g: &MultiDigraph,
    k: usize,
    algorithm: Algorithm,
    vertex_capacities: bool,
    max_k_dim: Option<usize>,
    seed: u64,
    jobs: Option<usize>,
) -> Result<ValueMatrix> {
    let n = g.n();
    let cfg = RecursiveConfig {
        max_family: max_k_dim,
    };
    let from_split = |table: ApmcTable| {
        let vals = pairs(n)
            .into_iter()
            .map(|(s, t)| {
                (
                    (s, t),
                    table
                        .value(SplitGraph::v_out(s), SplitGraph::v_in(t))
                        .expect("pair present"),
                )
            })
            .collect();
        matrix_from(n, k, vals)
    };
    match (algorithm, vertex_capacities) {
        (Algorithm::Oracle, vc) => {
            let run = || {
                pairs(n)
                    .into_par_iter()
                    .map(|(s, t)| {
                        let v = if vc {
                            CutValue::capped(vertex_connectivity_bounded(g, s, t, k + 1)?, k)
                        } else {
                            min_cut_value(g, s, t, k)?
                        };
                        Ok(((s, t), v))
                    })
                    .collect::<Result<Vec<_>>>()
            };
            let vals = pool(jobs)
                .map_err(|_| Error::InvalidArgument("bad --jobs".into()))?
                .install(run)?;
            Ok(matrix_from(n, k, vals))
        }
        (Algorithm::Iterative, false) => Ok(all_pairs_latest_cuts(g, k)?.values()),
        (Algorithm::Iterative, true) => Ok(from_split(all_pairs_latest_cuts(
            &split_vertices(g).graph,
            k,
        )?)),
        (Algorithm::Recursive, false) => {
            Ok(all_pairs_extremal_cuts_recursive(g, k, &cfg)?.0.values())
        }
        (Algorithm::Recursive, true) => Ok(from_split(
            all_pairs_extremal_cuts_recursive(&split_vertices(g).graph, k, &cfg)?.0,
        )),
        (Algorithm::Netcoding, vc) => {
            if n == 0 {
                return Ok(ValueMatrix::new(0, k));
            }
            let ncfg = NetcodingConfig::default();
            let r = if vc {
                kapmvc_with(g, k + 1, seed, &ncfg)?
            } else {
                kapmc_arcs_with(g, k + 1, seed, &ncfg)?
            };
            Ok(report_matrix(&r, n, k))
        }
    }
}

/// Witness JSON: `"s->t"` keys mapping to lists of arc-id lists.
pub fn witnesses_json(
    n: usize,
    family: impl Fn(Vertex, Vertex) -> Option<CutFamily>,
) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (s, t) in pairs(n) {
        if let Some(f) = family(s, t) {
            map.insert(format!("{s}->{t}"), serde_json::json!(f.cuts()));
        }
    }
    serde_json::Value::Object(map)
}

/// Inverse of [`witnesses_json`].
pub fn parse_witnesses(text: &str) -> Result<BTreeMap<(Vertex, Vertex), Vec<ArcSet>>> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let raw: BTreeMap<String, Vec<ArcSet>> =
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    raw.into_iter()
        .map(|(key, cuts)| {
            let (s, t) = key
                .split_once("->")
                .ok_or_else(|| bad(format!("bad pair key `{key}`")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad pair key `{key}`")))
            };
            Ok(((num(s)?, num(t)?), cuts))
        })
        .collect()
}

fn cmd_values(a: &ValuesArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.common.input)?;
    let k = a.common.k as usize;
    let vm = compute_values(
        &g,
        k,
        a.algorithm,
        a.vertex_capacities,
        a.max_k_dim,
        a.seed,
        a.common.jobs,
    )?;
    match a.format {
        Format::Tsv => write!(out, "{}", vm.to_tsv())?,
        Format::Json => writeln!(out, "{}", vm.to_json())?,
    }
    Ok(())
}

fn cmd_witnesses(a: &WitnessArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.common.input)?;
    let k = a.common.k as usize;
    let cfg = RecursiveConfig {
        max_family: a.max_k_dim,
    };
    let json = match a.algorithm {
        Algorithm::Oracle => {
            let fams = pool(a.common.jobs)?.install(|| {
                pairs(g.n())
                    .into_par_iter()
                    .map(|(s, t)| {
                        let f = match a.kind {
                            Kind::Latest => latest_cuts_upto_k(&g, s, t, k)?,
                            Kind::Earliest => earliest_cuts_upto_k(&g, s, t, k)?,
                        };
                        Ok(((s, t), f))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()
            })?;
            witnesses_json(g.n(), |s, t| fams.get(&(s, t)).cloned())
        }
        Algorithm::Iterative | Algorithm::Recursive => {
            let table = match (a.algorithm, a.kind) {
                (Algorithm::Iterative, Kind::Latest) => all_pairs_latest_cuts(&g, k)?,
                (Algorithm::Iterative, Kind::Earliest) => all_pairs_earliest_cuts(&g, k)?,
                (_, Kind::Latest) => all_pairs_extremal_cuts_recursive(&g, k, &cfg)?.0,
                (_, Kind::Earliest) => all_pairs_extremal_cuts_recursive(&g, k, &cfg)?.1,
            };
            witnesses_json(g.n(), |s, t| table.family(s, t).cloned())
        }
        Algorithm::Netcoding => {
            return Err(Error::InvalidArgument(
                "network coding reports values only, not cuts".into(),
            )
            .into())
        }
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&json).expect("json")
    )?;
    Ok(())
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let invalid = |m: &str| Failure::Lib(Error::InvalidArgument(m.to_string()));
    let text = match a.family {
        Family::Tree => {
            if a.depth > 16 || a.mult == 0 {
                return Err(invalid("tree needs depth <= 16 and mult >= 1"));
            }
            gen::binary_tree(a.depth, a.mult).to_text()
        }
        Family::RandomDag | Family::RandomDigraph => {
            if a.n == 0 || a.max_mult == 0 {
                return Err(invalid("random graphs need n >= 1 and max-mult >= 1"));
            }
            let g = if a.family == Family::RandomDag {
                gen::random_dag(a.n, a.m, a.max_mult, a.seed)
            } else {
                gen::random_digraph(a.n, a.m, a.max_mult, a.seed)
            };
            g.to_text()
        }
        Family::Clique4 => {
            if !(0.0..=1.0).contains(&a.p) {
                return Err(invalid("p must lie in [0, 1]"));
            }
            gen::random_four_partite(a.n, a.p, a.seed).to_text()
        }
    };
    match &a.output {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_netcoding(a: &NetcodingArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.common.input)?;
    let k = a.common.k as usize;
    let all: Vec<Vertex> = (0..g.n()).collect();
    let sources = if a.sources.is_empty() {
        all.clone()
    } else {
        a.sources.clone()
    };
    let sinks = if a.sinks.is_empty() {
        all
    } else {
        a.sinks.clone()
    };
    let r = kstmvc_with(&g, &sources, &sinks, k, a.seed, &NetcodingConfig::default())?;
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&r).expect("json"))?,
        Format::Tsv => {
            writeln!(out, "c seed {} retries {}", r.seed, r.retries)?;
            for (i, &s) in r.sources.iter().enumerate() {
                for (j, &t) in r.sinks.iter().enumerate() {
                    if let Some(v) = r.values[i][j] {
                        let shown = if v >= k {
                            format!(">={k}")
                        } else {
                            v.to_string()
                        };
                        writeln!(out, "{s}\t{t}\t{shown}")?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn read_four_partite(path: &Option<PathBuf>) -> std::result::Result<FourPartiteGraph, Failure> {
    Ok(FourPartiteGraph::parse(&read_input(path)?)?)
}

fn cmd_reduce(a: &ReduceArgs, out: &mut dyn Write) -> CmdResult {
    let g4 = read_four_partite(&a.input)?;
    let h = match a.mode {
        Mode::Unbounded => build_h(&g4),
        Mode::Bounded => build_h_bounded(&g4, a.k as usize, a.block.0, a.block.1)?,
    };
    write!(out, "{}", h.to_text())?;
    Ok(())
}

fn cmd_decide(a: &DecideArgs, out: &mut dyn Write) -> CmdResult {
    let g4 = read_four_partite(&a.input)?;
    let seed = a.seed;
    let net = move |h: &MultiDigraph, s: Vertex, t: Vertex| -> Result<usize> {
        let cap = 2 * h.n() + 1;
        let r = kstmvc_with(h, &[s], &[t], cap, seed, &NetcodingConfig::default())?;
        Ok(r.get(s, t).unwrap_or(0))
    };
    let solver: &NcSolver<'_> = match a.solver {
        Solver::Flow => &flow_solver,
        Solver::Netcoding => &net,
    };
    let yes = match a.mode {
        Mode::Unbounded => decide_4clique_unbounded(&g4, solver)?,
        Mode::Bounded => decide_4clique_bounded(&g4, a.k as usize, solver)?,
    };
    writeln!(out, "{}", if yes { "yes" } else { "no" })?;
    Ok(())
}

struct Harness<'o> {
    out: &'o mut dyn Write,
    checks: usize,
}

impl Harness<'_> {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> CmdResult {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(Failure::Diverged(what()))
        }
    }

    fn dag_suite(
        &mut self,
        g: &MultiDigraph,
        kmax: usize,
        max_k_dim: Option<usize>,
        fault: bool,
        label: &str,
    ) -> CmdResult {
        let cfg = RecursiveConfig {
            max_family: max_k_dim,
        };
        for k in 1..=kmax {
            let oracle = compute_values(g, k, Algorithm::Oracle, false, None, 0, Some(1))?;
            let it = all_pairs_latest_cuts(g, k + fault as usize)?;
            let (rec, rec_e) = all_pairs_extremal_cuts_recursive(g, k, &cfg)?;
            let it_vals = matrix_from(
                g.n(),
                k,
                pairs(g.n())
                    .into_iter()
                    .map(|(s, t)| ((s, t), it.value(s, t).expect("pair")))
                    .collect(),
            );
            self.check(it_vals.first_difference(&oracle).is_none(), || {
                format!(
                    "{label} k={k}: iterative vs oracle differ at {:?}",
                    it_vals.first_difference(&oracle)
                )
            })?;
            self.check(rec.values().first_difference(&oracle).is_none(), || {
                format!(
                    "{label} k={k}: recursive vs oracle differ at {:?}",
                    rec.values().first_difference(&oracle)
                )
            })?;
            for (s, t) in pairs(g.n()) {
                let same = it.family(s, t).map(|f| f.cuts()) == rec.family(s, t).map(|f| f.cuts());
                self.check(same, || {
                    format!("{label} k={k}: latest families differ at ({s},{t})")
                })?;
            }
            let it_e = all_pairs_earliest_cuts(g, k)?;
            self.check(it_e == rec_e, || {
                format!("{label} k={k}: earliest families differ")
            })?;
            let wit = verify_witnesses(g, &it).and_then(|_| verify_witnesses(g, &rec));
            self.check(wit.is_ok(), || {
                format!("{label} k={k}: {}", wit.clone().unwrap_err())
            })?;
        }
        writeln!(
            self.out,
            "ok dag {label}: oracle = iterative = recursive for k <= {kmax}"
        )?;
        Ok(())
    }

    fn netcoding_suite(
        &mut self,
        g: &MultiDigraph,
        kmax: usize,
        seed: u64,
        label: &str,
    ) -> CmdResult {
        if g.n() == 0 {
            return Ok(());
        }
        for k in 1..=kmax {
            let oracle = compute_values(g, k, Algorithm::Oracle, true, None, 0, Some(1))?;
            let mut agreed = false;
            for attempt in 0..2u64 {
                let r = kapmvc_with(
                    g,
                    k + 1,
                    seed.wrapping_add(attempt),
                    &NetcodingConfig::default(),
                )?;
                if report_matrix(&r, g.n(), k)
                    .first_difference(&oracle)
                    .is_none()
                {
                    agreed = true;
                    break;
                }
            }
            self.check(agreed, || {
                format!("{label} k={k}: network coding disagrees after a reseed")
            })?;
        }
        writeln!(
            self.out,
            "ok netcoding {label}: matches vertex connectivity for k <= {kmax}"
        )?;
        Ok(())
    }

    fn ws_suite(&mut self, seed: u64) -> CmdResult {
        let mut r = gen::rng(seed);
        for i in 0..20 {
            let k = r.gen_range(1..=3);
            let fams: Vec<Vec<Vec<usize>>> = (0..r.gen_range(1..=4))
                .map(|_| {
                    (0..r.gen_range(1..=3))
                        .map(|_| {
                            (0..r.gen_range(0..=k))
                                .map(|_| r.gen_range(0..10))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let inst = WsInstance::new(fams, k)?;
            let code = SuperimposedCode::fast(k, 10)?;
            let big_k = inst.max_family();
            let mut s = BoxCodeword::empty(code.len(), big_k)?;
            for f in inst.families() {
                s = s.union(&encode_family(&code, big_k, f)?);
            }
            let a = solve_ws_pruning(&inst);
            let b = solve_ws_bruteforce(&inst)?;
            let c = decode_witness(&s, &code, k)?;
            self.check(a == b && b == c, || {
                format!("witness superset seed {seed} #{i}: {a:?} / {b:?} / {c:?}")
            })?;
        }
        writeln!(
            self.out,
            "ok witness-superset seed {seed}: pruning = brute force = decoding"
        )?;
        Ok(())
    }

    fn clique_suite(&mut self, seed: u64) -> CmdResult {
        let g4 = gen::random_four_partite(4, [0.5, 0.3][seed as usize % 2], seed);
        let truth = find_4clique_bruteforce(&g4).is_some();
        let u = decide_4clique_unbounded(&g4, &flow_solver)?;
        let b = decide_4clique_bounded(&g4, 2, &flow_solver)?;
        self.check(u == truth && b == truth, || {
            format!("clique seed {seed}: brute {truth}, unbounded {u}, bounded {b}")
        })?;
        writeln!(
            self.out,
            "ok clique seed {seed}: reductions agree with brute force ({truth})"
        )?;
        Ok(())
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let kmax = a.k as usize;
    let mut h = Harness { out, checks: 0 };
    if let Some(path) = &a.input {
        let g = read_graph(&Some(path.clone()))?;
        if g.is_acyclic() {
            h.dag_suite(&g, kmax, a.max_k_dim, a.inject_fault, "input")?;
        } else if a.inject_fault {
            return Err(Failure::Diverged(
                "fault injection needs an acyclic input".into(),
            ));
        }
        h.netcoding_suite(&g, kmax, 1, "input")?;
    } else {
        for seed in 0..a.seeds {
            let dag = gen::random_dag(8, 16, 3, seed);
            h.dag_suite(
                &dag,
                kmax,
                a.max_k_dim,
                a.inject_fault,
                &format!("seed {seed}"),
            )?;
            h.netcoding_suite(
                &gen::random_digraph(7, 18, 2, seed),
                kmax,
                seed,
                &format!("seed {seed}"),
            )?;
            h.ws_suite(seed)?;
            h.clique_suite(seed)?;
        }
    }
    writeln!(h.out, "all {} checks passed", h.checks)?;
    Ok(())
}

/// Runs the CLI on `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let res = match cli.command {
        Command::Iterative(a) => cmd_solver(a, Algorithm::Iterative, out),
        Command::Recursive(a) => cmd_solver(a, Algorithm::Recursive, out),
        Command::Values(ref a) => cmd_values(a, out),
        Command::Witnesses(ref a) => cmd_witnesses(a, out),
        Command::Gen(ref a) => cmd_gen(a, out),
        Command::Verify(ref a) => cmd_verify(a, out),
        Command::Netcoding(ref a) => cmd_netcoding(a, out),
        Command::ReduceClique(ref a) => cmd_reduce(a, out),
        Command::DecideClique(ref a) => cmd_decide(a, out),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Diverged(msg)) => {
            let _ = writeln!(err, "divergence: {msg}");
            EXIT_DIVERGENCE
        }
    }
}
