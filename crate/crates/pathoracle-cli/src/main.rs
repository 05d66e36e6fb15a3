//! Benchmark harness for the path-reporting oracle library.
//!
//! Subcommands:
//! - `gen`: write a generated graph in the TSV exchange format.
//! - `bench`: build an oracle, run a verified query workload, emit a CSV of
//!   per-query rows and a JSON summary. Exits nonzero on any bound
//!   violation.
//! - `audit`: multi-level structure audit (level sizes, pair and branching
//!   counts, confinement check). Exits nonzero on violations.
//!
//! Identical configurations produce byte-identical CSV output. The env var
//! `PATHORACLE_THREADS` caps verification parallelism.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pathoracle::basic::{self, BasicOracle};
use pathoracle::dppro::{self, Dppro, PairSet};
use pathoracle::graph::{generate_graph, GraphModel, VertexId, WeightMode};
use pathoracle::multilevel::{self, MultiLevelOracle, Variant};
use pathoracle::paths::{dijkstra_canonical, CanonicalPathSystem};
use pathoracle::spanner::{self, ComposedOracle};
use pathoracle::{OracleAnswer, WeightedGraph64};

const SAVE_MAGIC: &[u8] = b"PORACLE1\n";

/// Decorrelates the workload RNG stream from the build seed.
const WORKLOAD_SEED_TAG: u64 = 0x000f_5eed_00c0_ffee;

#[derive(Parser)]
#[command(name = "pathoracle", about = "Path-reporting distance oracle benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as TSV
    Gen(GenArgs),
    /// Build an oracle and run a verified query workload
    Bench(BenchArgs),
    /// Audit multi-level structure sizes and branching confinement
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Gnm,
    Grid,
    Path,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Unit,
    Uniform,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    /// edge count (gnm only)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "unit")]
    weights: WeightArg,
    #[arg(long, default_value_t = 1)]
    w_lo: u64,
    #[arg(long, default_value_t = 100)]
    w_hi: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Dppro,
    Basic,
    Multilevel,
    Tilde,
    Composed,
    ExactBaseline,
}

#[derive(Args)]
struct BenchArgs {
    /// graph TSV input; alternatively give --model/--n/--m to generate
    #[arg(long = "in")]
    in_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "unit")]
    weights: WeightArg,
    #[arg(long, default_value_t = 1)]
    w_lo: u64,
    #[arg(long, default_value_t = 100)]
    w_hi: u64,

    #[arg(long, value_enum, default_value = "basic")]
    oracle: OracleArg,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    h: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// number of random queries
    #[arg(long, default_value_t = 100)]
    queries: usize,
    /// query (and dppro build) pairs from a file of `u v` lines
    #[arg(long)]
    pairs_file: Option<PathBuf>,
    /// externally built spanner (composed oracle only)
    #[arg(long)]
    spanner_file: Option<PathBuf>,
    /// fraction of queries verified by exact Dijkstra; default 1.0 when
    /// n <= 4096, else 0.1
    #[arg(long)]
    verify: Option<f64>,

    /// CSV output (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary output
    #[arg(long)]
    json: Option<PathBuf>,
    /// serialize the built oracle (with its host graph) to a file
    #[arg(long)]
    save: Option<PathBuf>,
    /// load a previously saved oracle instead of building
    #[arg(long)]
    load: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long = "in")]
    in_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "unit")]
    weights: WeightArg,
    #[arg(long, default_value_t = 1)]
    w_lo: u64,
    #[arg(long, default_value_t = 100)]
    w_hi: u64,
    /// multilevel or tilde
    #[arg(long, value_enum, default_value = "multilevel")]
    oracle: OracleArg,
    #[arg(long, default_value_t = 2)]
    h: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Every buildable oracle kind, serialized together with its host graph for
/// save/load round trips.
#[derive(Serialize, Deserialize)]
enum AnyOracle {
    Dppro(Dppro<f64>),
    Basic(BasicOracle<f64>),
    Multi(MultiLevelOracle<f64>),
    Composed(ComposedOracle<f64>),
    Exact,
}

impl AnyOracle {
    fn declared_bound(&self) -> f64 {
        match self {
            AnyOracle::Dppro(_) | AnyOracle::Exact => 1.0,
            AnyOracle::Basic(o) => o.stretch_bound(),
            AnyOracle::Multi(o) => o.stretch_bound(),
            AnyOracle::Composed(o) => o.stretch_bound(),
        }
    }

    /// Sharpened per-answer bound where the oracle reports a meet level.
    fn bound_at(&self, meet_level: usize) -> f64 {
        match self {
            AnyOracle::Dppro(_) | AnyOracle::Exact => 1.0,
            AnyOracle::Basic(o) => o.stretch_bound(),
            AnyOracle::Multi(_) => MultiLevelOracle::<f64>::stretch_bound_at(meet_level),
            AnyOracle::Composed(o) => o.stretch_bound_at(meet_level),
        }
    }

    fn query(&self, g: &WeightedGraph64, u: VertexId, v: VertexId) -> pathoracle::Result<OracleAnswer<f64>> {
        match self {
            AnyOracle::Dppro(o) => {
                let (walk, probes) = o.query_counted(u, v)?;
                Ok(OracleAnswer {
                    walk,
                    meet_level: 1,
                    probes,
                    ball_explored: 0,
                })
            }
            AnyOracle::Basic(o) => o.query(u, v),
            AnyOracle::Multi(o) => o.query(u, v),
            AnyOracle::Composed(o) => o.query(u, v),
            AnyOracle::Exact => {
                let mut sys = CanonicalPathSystem::new();
                sys.add_full_tree(u, dijkstra_canonical(g, u));
                let walk = sys.extract_path(g, u, v)?;
                Ok(OracleAnswer {
                    walk,
                    meet_level: 1,
                    probes: 0,
                    ball_explored: 0,
                })
            }
        }
    }

    fn space_json(&self) -> serde_json::Value {
        match self {
            AnyOracle::Dppro(o) => serde_json::to_value(o.space_report()).unwrap(),
            AnyOracle::Basic(o) => serde_json::to_value(o.space()).unwrap(),
            AnyOracle::Multi(o) => serde_json::to_value(o.space()).unwrap(),
            AnyOracle::Composed(o) => serde_json::json!({
                "spanner_edges": o.spanner.len(),
                "inner": o.inner.space(),
            }),
            AnyOracle::Exact => serde_json::json!({}),
        }
    }
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("PATHORACLE_THREADS") {
        if let Ok(t) = t.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Audit(a) => cmd_audit(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn weight_mode(w: WeightArg, lo: u64, hi: u64) -> WeightMode {
    match w {
        WeightArg::Unit => WeightMode::Unit,
        WeightArg::Uniform => WeightMode::UniformInt { lo, hi },
    }
}

fn model(m: ModelArg, edges: Option<usize>) -> Result<GraphModel, String> {
    Ok(match m {
        ModelArg::Gnm => GraphModel::Gnm {
            m: edges.ok_or("gnm requires --m")?,
        },
        ModelArg::Grid => GraphModel::Grid,
        ModelArg::Path => GraphModel::Path,
        ModelArg::Cycle => GraphModel::Cycle,
    })
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let g: WeightedGraph64 = generate_graph(
        model(a.model, a.m)?,
        a.n,
        weight_mode(a.weights, a.w_lo, a.w_hi),
        a.seed,
    )?;
    match &a.out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            g.write_tsv(&mut f)?;
        }
        None => g.write_tsv(&mut std::io::stdout().lock())?,
    }
    eprintln!("n = {}, m = {}, lambda = {}", g.n(), g.m(), g.density_lambda());
    Ok(ExitCode::SUCCESS)
}

fn load_graph(
    in_file: &Option<PathBuf>,
    m: Option<ModelArg>,
    n: Option<usize>,
    edges: Option<usize>,
    w: WeightArg,
    lo: u64,
    hi: u64,
    seed: u64,
) -> Result<WeightedGraph64, Box<dyn std::error::Error>> {
    if let Some(p) = in_file {
        let mut f = BufReader::new(File::open(p)?);
        return Ok(WeightedGraph64::read_tsv(&mut f)?);
    }
    let m = m.ok_or("give --in or --model")?;
    let n = n.ok_or("generator requires --n")?;
    Ok(generate_graph(model(m, edges)?, n, weight_mode(w, lo, hi), seed)?)
}

#[derive(Serialize)]
struct Summary {
    oracle: String,
    n: usize,
    m: usize,
    params: serde_json::Value,
    declared_bound: f64,
    queries: usize,
    verified: usize,
    max_stretch: Option<f64>,
    mean_stretch: Option<f64>,
    p99_stretch: Option<f64>,
    probe_histogram: BTreeMap<usize, usize>,
    mean_ball_explored: f64,
    build_ms: f64,
    query_ms: f64,
    space: serde_json::Value,
    violations: usize,
}

struct Row {
    u: VertexId,
    v: VertexId,
    reported: f64,
    exact: Option<f64>,
    hops: usize,
    meet_level: usize,
    probes: usize,
    ball_explored: usize,
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v}")).unwrap_or_default()
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let build_start = Instant::now();
    let (g, oracle, build_ms) = if let Some(p) = &a.load {
        let (g, oracle) = load_oracle(p)?;
        (g, oracle, 0.0)
    } else {
        let g = load_graph(
            &a.in_file, a.model, a.n, a.m, a.weights, a.w_lo, a.w_hi, a.seed,
        )?;
        let oracle = build_oracle(&a, &g)?;
        let ms = build_start.elapsed().as_secs_f64() * 1e3;
        (g, oracle, ms)
    };
    if let Some(p) = &a.save {
        save_oracle(p, &g, &oracle)?;
    }

    // workload: pair file or seeded random pairs (dppro samples its stored
    // pairs so every query is answerable)
    let mut rng = ChaCha12Rng::seed_from_u64(a.seed ^ WORKLOAD_SEED_TAG);
    let workload: Vec<(VertexId, VertexId)> = if let Some(p) = &a.pairs_file {
        let mut f = BufReader::new(File::open(p)?);
        PairSet::read(&mut f)?.pairs().to_vec()
    } else if let AnyOracle::Dppro(o) = &oracle {
        let stored = o.pair_set().pairs();
        (0..a.queries)
            .map(|_| stored[rng.gen_range(0..stored.len())])
            .collect()
    } else {
        (0..a.queries)
            .map(|_| {
                let u = rng.gen_range(0..g.n() as VertexId);
                let mut v = rng.gen_range(0..g.n() as VertexId);
                while v == u {
                    v = rng.gen_range(0..g.n() as VertexId);
                }
                (u, v)
            })
            .collect()
    };

    let verify_frac = a
        .verify
        .unwrap_or(if g.n() <= 4096 { 1.0 } else { 0.1 })
        .clamp(0.0, 1.0);
    let verify_flags: Vec<bool> = {
        let mut vr = ChaCha12Rng::seed_from_u64(a.seed ^ 0x7e51_f7a6);
        workload.iter().map(|_| vr.gen::<f64>() < verify_frac).collect()
    };

    let query_start = Instant::now();
    let answers: Vec<OracleAnswer<f64>> = workload
        .iter()
        .map(|&(u, v)| oracle.query(&g, u, v))
        .collect::<pathoracle::Result<_>>()?;
    let query_ms = query_start.elapsed().as_secs_f64() * 1e3;

    // exact verification, parallel per distinct source, merged by index
    let mut rows: Vec<Row> = Vec::with_capacity(workload.len());
    let exact: Vec<Option<f64>> = {
        let sources: Vec<VertexId> = {
            let mut s: Vec<VertexId> = workload
                .iter()
                .zip(&verify_flags)
                .filter(|(_, &f)| f)
                .map(|(&(u, _), _)| u)
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let trees: BTreeMap<VertexId, _> = sources
            .par_iter()
            .map(|&s| (s, dijkstra_canonical(&g, s)))
            .collect();
        workload
            .iter()
            .zip(&verify_flags)
            .map(|(&(u, v), &f)| f.then(|| trees[&u].dist(v)))
            .collect()
    };
    let mut violations = 0usize;
    for (i, (&(u, v), answer)) in workload.iter().zip(&answers).enumerate() {
        // every reported walk re-validates against the host graph
        g.validate_walk(&answer.walk.vertices, answer.walk.length)?;
        if answer.walk.start() != u || answer.walk.end() != v {
            return Err(format!("answer endpoints differ for query ({u}, {v})").into());
        }
        if let Some(exact) = exact[i] {
            let bound = oracle
                .bound_at(answer.meet_level)
                .min(oracle.declared_bound().max(1.0));
            if answer.walk.length > bound * exact + 1e-9 {
                violations += 1;
                eprintln!(
                    "bound violation: query ({u}, {v}) reported {} exact {} bound {}",
                    answer.walk.length, exact, bound
                );
            }
        }
        rows.push(Row {
            u,
            v,
            reported: answer.walk.length,
            exact: exact[i],
            hops: answer.walk.hop_count,
            meet_level: answer.meet_level,
            probes: answer.probes,
            ball_explored: answer.ball_explored,
        });
    }

    // CSV
    let mut csv = String::new();
    csv.push_str("schema=1\n");
    csv.push_str("u,v,reported,exact,stretch,hops,meet_level,probes,ball_explored\n");
    for r in &rows {
        let stretch = r.exact.map(|e| if e == 0.0 { 1.0 } else { r.reported / e });
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.u,
            r.v,
            r.reported,
            fmt_opt(r.exact),
            fmt_opt(stretch),
            r.hops,
            r.meet_level,
            r.probes,
            r.ball_explored
        ));
    }
    match &a.out {
        Some(p) => File::create(p)?.write_all(csv.as_bytes())?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }

    // JSON summary
    let mut stretches: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.exact.map(|e| if e == 0.0 { 1.0 } else { r.reported / e }))
        .collect();
    stretches.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut probe_histogram = BTreeMap::new();
    for r in &rows {
        *probe_histogram.entry(r.probes).or_insert(0usize) += 1;
    }
    let summary = Summary {
        oracle: oracle_name(&oracle).to_string(),
        n: g.n(),
        m: g.m(),
        params: serde_json::json!({"k": a.k, "h": a.h, "r": a.r, "seed": a.seed}),
        declared_bound: oracle.declared_bound(),
        queries: rows.len(),
        verified: stretches.len(),
        max_stretch: stretches.last().copied(),
        mean_stretch: (!stretches.is_empty())
            .then(|| stretches.iter().sum::<f64>() / stretches.len() as f64),
        p99_stretch: (!stretches.is_empty())
            .then(|| stretches[((stretches.len() - 1) as f64 * 0.99) as usize]),
        probe_histogram,
        mean_ball_explored: rows.iter().map(|r| r.ball_explored as f64).sum::<f64>()
            / rows.len().max(1) as f64,
        build_ms,
        query_ms,
        space: oracle.space_json(),
        violations,
    };
    if let Some(p) = &a.json {
        serde_json::to_writer_pretty(File::create(p)?, &summary)?;
    }
    eprintln!(
        "{} queries, {} verified, max stretch {:?}, {} violations",
        summary.queries, summary.verified, summary.max_stretch, violations
    );
    Ok(if violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn oracle_name(o: &AnyOracle) -> &'static str {
    match o {
        AnyOracle::Dppro(_) => "dppro",
        AnyOracle::Basic(_) => "basic",
        AnyOracle::Multi(m) => {
            if m.holds_graph() {
                "multilevel"
            } else {
                "tilde"
            }
        }
        AnyOracle::Composed(_) => "composed",
        AnyOracle::Exact => "exact-baseline",
    }
}

fn build_oracle(a: &BenchArgs, g: &WeightedGraph64) -> Result<AnyOracle, Box<dyn std::error::Error>> {
    Ok(match a.oracle {
        OracleArg::Dppro => {
            let p = a
                .pairs_file
                .as_ref()
                .ok_or("dppro oracle requires --pairs-file")?;
            let mut f = BufReader::new(File::open(p)?);
            let pairs = PairSet::read(&mut f)?;
            let mut sys = CanonicalPathSystem::new();
            for &(u, _) in pairs.pairs() {
                sys.add_full_source(g, u);
            }
            AnyOracle::Dppro(dppro::build_dppro(g, pairs, &sys)?)
        }
        OracleArg::Basic => AnyOracle::Basic(basic::build_basic(g, a.k, a.seed)?),
        OracleArg::Multilevel => {
            AnyOracle::Multi(multilevel::build_multilevel(g, a.h, Variant::Standard, a.seed)?)
        }
        OracleArg::Tilde => AnyOracle::Multi(multilevel::build_lambda_tilde(g, a.seed)?),
        OracleArg::Composed => {
            if let Some(p) = &a.spanner_file {
                let mut f = BufReader::new(File::open(p)?);
                let sp = spanner::load_external_spanner(g, a.r, &mut f)?;
                AnyOracle::Composed(spanner::build_composed_from(sp, a.h, a.seed)?)
            } else {
                AnyOracle::Composed(spanner::build_composed(g, a.r, a.h, a.seed)?)
            }
        }
        OracleArg::ExactBaseline => AnyOracle::Exact,
    })
}

fn save_oracle(p: &Path, g: &WeightedGraph64, o: &AnyOracle) -> Result<(), Box<dyn std::error::Error>> {
    let mut f = BufWriter::new(File::create(p)?);
    f.write_all(SAVE_MAGIC)?;
    bincode::serialize_into(&mut f, &(g, o))?;
    Ok(())
}

fn load_oracle(p: &Path) -> Result<(WeightedGraph64, AnyOracle), Box<dyn std::error::Error>> {
    let mut f = BufReader::new(File::open(p)?);
    let mut magic = vec![0u8; SAVE_MAGIC.len()];
    f.read_exact(&mut magic)?;
    if magic != SAVE_MAGIC {
        return Err("not a pathoracle save file (bad magic)".into());
    }
    Ok(bincode::deserialize_from(&mut f)?)
}

#[derive(Serialize)]
struct LevelAudit {
    level: usize,
    landmarks: usize,
    rho: f64,
    pairs: usize,
    branch_events: usize,
    /// analytic reference for the pair count
    rho_sq_over_next: f64,
    /// analytic reference for the branching count
    rho4_over_next3: f64,
    confinement_violations: usize,
}

fn cmd_audit(a: AuditArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let g = load_graph(
        &a.in_file, a.model, a.n, a.m, a.weights, a.w_lo, a.w_hi, a.seed,
    )?;
    let o = match a.oracle {
        OracleArg::Tilde => multilevel::build_lambda_tilde(&g, a.seed)?,
        _ => multilevel::build_multilevel(&g, a.h, Variant::Standard, a.seed)?,
    };
    let mut levels = Vec::new();
    let mut total_violations = 0usize;
    for i in 1..=o.h {
        let rho = o.hierarchy.exponents[i - 1].1;
        let next = if i < o.h {
            o.hierarchy.exponents[i].1
        } else {
            f64::NAN
        };
        let violations = if i < o.h {
            o.audit_branch_confinement(i)
        } else {
            0
        };
        total_violations += violations;
        levels.push(LevelAudit {
            level: i,
            landmarks: o.hierarchy.levels[i - 1].len(),
            rho,
            pairs: o.structures.pair_count(i),
            branch_events: o.structures.branch_count(i),
            rho_sq_over_next: rho * rho / next,
            rho4_over_next3: rho.powi(4) / next.powi(3),
            confinement_violations: violations,
        });
    }
    let record = serde_json::json!({
        "n": g.n(),
        "m": g.m(),
        "h": o.h,
        "variant": if o.holds_graph() { "multilevel" } else { "tilde" },
        "space": o.space(),
        "levels": levels,
        "total_violations": total_violations,
    });
    let text = serde_json::to_string_pretty(&record)?;
    match &a.json {
        Some(p) => File::create(p)?.write_all(text.as_bytes())?,
        None => println!("{text}"),
    }
    Ok(if total_violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
