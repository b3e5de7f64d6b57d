//! critlab: constructions, exact coloring, criticality certificates, witness
//! extraction, inequality checks, bound tables and exhaustive enumeration.
//!
//! Every command writes one line of JSON to stdout (or DOT / CSV where
//! selected). Exit codes: 0 success, 1 domain error or failed verdict,
//! 2 usage error, 3 solver budget exhausted (with a partial report).

use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use critlab::coloring::{self, Budget, SolveError};
use critlab::criticality::{self, CriticalityError};
use critlab::extremal::{self, BoundRow};
use critlab::search::{self, SearchError, WorkUnit};
use critlab::witness::{self, WitnessError, WitnessOptions};
use critlab::{constructions, Graph};

#[derive(Parser)]
#[command(name = "critlab", version, about = "exact laboratory for k-critical graphs")]
struct Cli {
    /// node budget for the exact solvers; 0 means unlimited
    #[arg(long, global = true, env = "CRITLAB_BUDGET", default_value_t = 0)]
    budget: u64,

    /// worker threads for parallel phases; 0 uses all cores
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// seed echoed into every report so runs can be correlated
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family member and print it as graph6
    Construct {
        #[command(subcommand)]
        family: Family,
        /// emit DOT instead of JSON
        #[arg(long, global = true)]
        dot: bool,
    },
    /// Exact coloring: chromatic number, or a k-colorability decision
    Color {
        /// decide k-colorability instead of computing the chromatic number
        #[arg(short, long)]
        k: Option<usize>,
        /// read the graph6 line from this file instead of stdin
        #[arg(short, long)]
        file: Option<PathBuf>,
        /// emit DOT (colored when a coloring was found) instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Verify k-criticality with one coloring certificate per deleted edge
    VerifyCritical {
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        file: Option<PathBuf>,
    },
    /// Extract recoloring witnesses from a k-critical graph
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Structural inequality checks on a single graph
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Closed-form bound table for f_k(n)
    Bounds {
        #[arg(short, long)]
        k: usize,
        /// comma-separated n values, e.g. --n 100,1000
        #[arg(short, long = "n", value_delimiter = ',', num_args = 1.., required = true)]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate all k-critical graphs on n vertices up to isomorphism
    Enumerate {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        /// write one graph6 file per extremal witness into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// resumable work-unit state; created if absent, updated per unit
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Exact f_k(n) for n = k..=nmax with witnesses
    Ftable {
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Family {
    /// dense 4-critical graph on 4m vertices (odd m ≥ 3)
    Toft { m: usize },
    /// join of two m-cycles: 6-critical, K6-free for odd m ≥ 5
    Dirac { m: usize },
    /// Turán graph: complete multipartite, near-equal parts
    Turan { n: usize, parts: usize },
    /// cycle on m vertices (odd m gives the 3-critical family)
    Cycle { m: usize },
    /// m-cycle plus a dominating hub (odd m gives 4-critical wheels)
    Wheel { m: usize },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// forced-matching witness for a clique, a vertex u and a fan W
    Matching {
        #[arg(short, long)]
        k: usize,
        /// comma-separated (k−3)-clique; omit for k = 3
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        clique: Option<Vec<usize>>,
        /// the vertex whose deleted edges drive the recoloring
        #[arg(short, long)]
        u: usize,
        /// comma-separated fan W ⊆ N(u) ∩ N(clique)
        #[arg(short, long, value_delimiter = ',', num_args = 1..)]
        w: Vec<usize>,
        /// re-verify k-criticality of the input first
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        file: Option<PathBuf>,
    },
    /// paired witnesses through a 4-cycle with the X''/Y'' exclusion counts
    Xy {
        /// the 4-cycle as v1,v2,v3,v4 in cyclic order
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        cycle: Vec<usize>,
        /// override V1 (default: the full neighborhood of v1)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        v1: Option<Vec<usize>>,
        /// override V2 (default: the full neighborhood of v2)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        v2: Option<Vec<usize>>,
        /// override V3 (default: the full neighborhood of v3)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        v3: Option<Vec<usize>>,
        /// override V4 (default: the full neighborhood of v4)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        v4: Option<Vec<usize>>,
        /// re-verify 4-criticality of the input first
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// heaviest 2-path value d(x)+d(y)+d(z)−3t(x)−3t(z) against n+1
    #[command(name = "2path")]
    TwoPath {
        #[arg(short, long)]
        file: Option<PathBuf>,
    },
    /// (k−1)-clique count against the caps n and n−k+3
    Cliques {
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        file: Option<PathBuf>,
    },
    /// edge quantities of an explicit or heuristic vertex partition
    Partition {
        /// explicit parts, semicolon-separated: "0,1,2;3,4"
        #[arg(long)]
        parts: Option<String>,
        /// build an r-part stability partition by local search instead
        #[arg(long, value_name = "R")]
        stability: Option<usize>,
        #[arg(short, long)]
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Work already done and still pending for one enumeration run.
#[derive(Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    k: usize,
    pending: Vec<WorkUnit>,
    done: Vec<WorkUnit>,
    found: Vec<String>,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    extra: serde_json::Map<String, Value>,
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, kind: "domain", message: e.to_string(), extra: Default::default() }
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure { code: 2, kind: "usage", message: msg.to_string(), extra: Default::default() }
}

fn budget_failure(e: SolveError) -> Failure {
    let mut extra = serde_json::Map::new();
    let SolveError::BudgetExceeded { explored } = e;
    extra.insert("explored".into(), explored.into());
    Failure { code: 3, kind: "budget", message: e.to_string(), extra }
}

fn from_criticality(e: CriticalityError) -> Failure {
    match e {
        CriticalityError::Solve(s) => budget_failure(s),
        other => domain(other),
    }
}

fn from_witness(e: WitnessError) -> Failure {
    match e {
        WitnessError::Solve(s) => budget_failure(s),
        other => domain(other),
    }
}

fn from_search(e: SearchError) -> Failure {
    match e {
        SearchError::Solve(s) => budget_failure(s),
        other => domain(other),
    }
}

enum Output {
    /// JSON payload plus the process exit code (verdict-style commands
    /// succeed with code 1 when the checked property fails)
    Json(Value, i32),
    /// raw non-JSON output (DOT, CSV)
    Text(String),
}

fn ok(payload: Value) -> Result<Output, Failure> {
    Ok(Output::Json(payload, 0))
}

fn main() {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    let budget = if cli.budget == 0 { Budget::unlimited() } else { Budget::limited(cli.budget) };
    let name = command_name(&cli.command);
    let code = match run(cli.command, &budget) {
        Ok(Output::Text(s)) => {
            print!("{s}");
            0
        }
        Ok(Output::Json(payload, code)) => {
            emit(name, cli.seed, payload);
            code
        }
        Err(f) => {
            let mut payload = serde_json::Map::new();
            payload.insert("error".into(), f.message.clone().into());
            payload.insert("kind".into(), f.kind.into());
            payload.extend(f.extra);
            emit(name, cli.seed, Value::Object(payload));
            eprintln!("critlab: {}", f.message);
            f.code
        }
    };
    std::process::exit(code);
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct { .. } => "construct",
        Command::Color { .. } => "color",
        Command::VerifyCritical { .. } => "verify-critical",
        Command::Witness { kind: WitnessKind::Matching { .. } } => "witness matching",
        Command::Witness { kind: WitnessKind::Xy { .. } } => "witness xy",
        Command::Check { kind: CheckKind::TwoPath { .. } } => "check 2path",
        Command::Check { kind: CheckKind::Cliques { .. } } => "check cliques",
        Command::Check { kind: CheckKind::Partition { .. } } => "check partition",
        Command::Bounds { .. } => "bounds",
        Command::Enumerate { .. } => "enumerate",
        Command::Ftable { .. } => "ftable",
    }
}

/// Single-line JSON envelope; keys are sorted, so identical inputs produce
/// byte-identical output.
fn emit(command: &str, seed: Option<u64>, payload: Value) {
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), command.into());
    obj.insert("seed".into(), seed.map_or(Value::Null, Into::into));
    match payload {
        Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("result".into(), other);
        }
    }
    println!("{}", Value::Object(obj));
}

fn read_graph(file: Option<&Path>) -> Result<Graph, Failure> {
    let text = match file {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| domain(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| domain(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| domain("empty input: expected one graph6 line"))?;
    Graph::from_graph6(line).map_err(domain)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(command: Command, budget: &Budget) -> Result<Output, Failure> {
    match command {
        Command::Construct { family, dot } => construct(family, dot),
        Command::Color { k, file, dot } => color(k, file.as_deref(), dot, budget),
        Command::VerifyCritical { k, file } => verify_critical(k, file.as_deref(), budget),
        Command::Witness { kind } => witness_cmd(kind, budget),
        Command::Check { kind } => check_cmd(kind),
        Command::Bounds { k, n, format } => bounds(k, &n, format),
        Command::Enumerate { n, k, out_dir, checkpoint } => {
            enumerate(n, k, out_dir.as_deref(), checkpoint.as_deref(), budget)
        }
        Command::Ftable { k, nmax, format } => ftable(k, nmax, format, budget),
    }
}

fn construct(family: Family, dot: bool) -> Result<Output, Failure> {
    let (name, params, g) = match family {
        Family::Toft { m } => ("toft", vec![m], constructions::toft(m).map_err(domain)?),
        Family::Dirac { m } => ("dirac", vec![m], constructions::dirac(m).map_err(domain)?),
        Family::Turan { n, parts } => {
            ("turan", vec![n, parts], constructions::turan(n, parts).map_err(domain)?)
        }
        Family::Cycle { m } => ("cycle", vec![m], constructions::cycle(m).map_err(domain)?),
        Family::Wheel { m } => ("wheel", vec![m], constructions::wheel(m).map_err(domain)?),
    };
    if dot {
        return Ok(Output::Text(g.to_dot()));
    }
    ok(json!({
        "family": name,
        "params": params,
        "n": g.n(),
        "edges": g.edge_count(),
        "graph6": g.to_graph6(),
    }))
}

fn color(
    k: Option<usize>,
    file: Option<&Path>,
    dot: bool,
    budget: &Budget,
) -> Result<Output, Failure> {
    let g = read_graph(file)?;
    let (payload, coloring) = match k {
        Some(k) => {
            let found = coloring::is_k_colorable(&g, k, budget).map_err(budget_failure)?;
            let payload = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "k": k,
                "colorable": found.is_some(),
                "coloring": found.as_ref().map(to_value),
            });
            (payload, found)
        }
        None => {
            let (chi, c) = coloring::chromatic_number(&g, budget).map_err(budget_failure)?;
            let payload = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "chi": chi,
                "coloring": to_value(&c),
            });
            (payload, Some(c))
        }
    };
    if dot {
        return Ok(Output::Text(match &coloring {
            Some(c) => c.to_dot(&g),
            None => g.to_dot(),
        }));
    }
    ok(payload)
}

fn verify_critical(k: usize, file: Option<&Path>, budget: &Budget) -> Result<Output, Failure> {
    let g = read_graph(file)?;
    let report = criticality::is_k_critical(&g, k, budget).map_err(from_criticality)?;
    let code = if report.verdict { 0 } else { 1 };
    let mut payload = serde_json::Map::new();
    payload.insert("n".into(), g.n().into());
    payload.insert("edges".into(), g.edge_count().into());
    payload.insert("graph6".into(), g.to_graph6().into());
    if let Value::Object(m) = to_value(&report) {
        payload.extend(m);
    }
    Ok(Output::Json(Value::Object(payload), code))
}

fn witness_cmd(kind: WitnessKind, budget: &Budget) -> Result<Output, Failure> {
    match kind {
        WitnessKind::Matching { k, clique, u, w, verify, file } => {
            let g = read_graph(file.as_deref())?;
            let clique = clique.unwrap_or_default();
            let opts = WitnessOptions { verify_critical: verify };
            let wit = witness::extract_matching_witness(&g, k, &clique, u, &w, opts, budget)
                .map_err(from_witness)?;
            ok(to_value(&wit))
        }
        WitnessKind::Xy { cycle, v1, v2, v3, v4, verify, file } => {
            let g = read_graph(file.as_deref())?;
            let cycle: [usize; 4] = cycle
                .try_into()
                .map_err(|v: Vec<usize>| usage(format!("--cycle needs 4 vertices, got {}", v.len())))?;
            let nbrs = |v: usize| -> Result<Vec<usize>, Failure> {
                if v >= g.n() {
                    return Err(domain(format!("cycle vertex {v} out of range for n = {}", g.n())));
                }
                Ok(g.neighbors(v).collect())
            };
            let v1 = match v1 { Some(s) => s, None => nbrs(cycle[0])? };
            let v2 = match v2 { Some(s) => s, None => nbrs(cycle[1])? };
            let v3 = match v3 { Some(s) => s, None => nbrs(cycle[2])? };
            let v4 = match v4 { Some(s) => s, None => nbrs(cycle[3])? };
            let opts = WitnessOptions { verify_critical: verify };
            let wit = witness::extract_xy_witness(&g, cycle, [&v1, &v2, &v3, &v4], opts, budget)
                .map_err(from_witness)?;
            ok(to_value(&wit))
        }
    }
}

fn check_cmd(kind: CheckKind) -> Result<Output, Failure> {
    match kind {
        CheckKind::TwoPath { file } => {
            let g = read_graph(file.as_deref())?;
            let report = extremal::check_2path_bound(&g);
            let code = if report.verdict { 0 } else { 1 };
            let mut payload = serde_json::Map::new();
            payload.insert("n".into(), g.n().into());
            if let Value::Object(m) = to_value(&report) {
                payload.extend(m);
            }
            Ok(Output::Json(Value::Object(payload), code))
        }
        CheckKind::Cliques { k, file } => {
            let g = read_graph(file.as_deref())?;
            let report = extremal::check_clique_caps(&g, k).map_err(domain)?;
            let code = if report.cap_n_ok && report.cap_gao_ma_ok { 0 } else { 1 };
            Ok(Output::Json(to_value(&report), code))
        }
        CheckKind::Partition { parts, stability, file } => {
            let g = read_graph(file.as_deref())?;
            let (source, parts) = match (parts, stability) {
                (Some(spec_str), None) => ("explicit", parse_parts(&spec_str)?),
                (None, Some(r)) => {
                    ("stability", extremal::stability_partition(&g, r).map_err(domain)?)
                }
                _ => return Err(usage("give exactly one of --parts and --stability")),
            };
            let eval = extremal::evaluate_partition(&g, &parts).map_err(domain)?;
            let mut payload = serde_json::Map::new();
            payload.insert("n".into(), g.n().into());
            payload.insert("source".into(), source.into());
            if let Value::Object(m) = to_value(&eval) {
                payload.extend(m);
            }
            ok(Value::Object(payload))
        }
    }
}

fn parse_parts(s: &str) -> Result<Vec<Vec<usize>>, Failure> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("bad vertex '{}' in --parts", tok.trim())))
                })
                .collect()
        })
        .collect()
}

fn bounds(k: usize, n: &[usize], format: Format) -> Result<Output, Failure> {
    let rows = extremal::bound_table(k, n).map_err(domain)?;
    match format {
        Format::Json => ok(json!({
            "k": k,
            "note": extremal::ASYMPTOTIC_NOTE,
            "rows": rows.iter().map(to_value).collect::<Vec<_>>(),
        })),
        Format::Csv => Ok(Output::Text(bounds_csv(&rows))),
    }
}

fn opt_str<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn bounds_csv(rows: &[BoundRow]) -> String {
    let mut out =
        String::from("n,k,stiebitz,thm1,gao_ma,thm2_4crit,weak_4crit,toft_lower,dirac_lower\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.k,
            r.stiebitz,
            r.thm1,
            r.gao_ma,
            opt_str(&r.thm2_4crit),
            opt_str(&r.weak_4crit),
            r.toft_lower,
            opt_str(&r.dirac_lower),
        ));
    }
    out
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), Failure> {
    let body = serde_json::to_string(cp).expect("checkpoint serializes");
    std::fs::write(path, body + "\n")
        .map_err(|e| domain(format!("cannot write {}: {e}", path.display())))
}

fn enumerate(
    n: usize,
    k: usize,
    out_dir: Option<&Path>,
    checkpoint: Option<&Path>,
    budget: &Budget,
) -> Result<Output, Failure> {
    let (result, units_run) = match checkpoint {
        None => (search::enumerate_k_critical(n, k, budget).map_err(from_search)?, None),
        Some(path) => {
            let mut cp = if path.exists() {
                let body = std::fs::read_to_string(path)
                    .map_err(|e| domain(format!("cannot read {}: {e}", path.display())))?;
                let cp: Checkpoint = serde_json::from_str(&body)
                    .map_err(|e| domain(format!("bad checkpoint {}: {e}", path.display())))?;
                if cp.n != n || cp.k != k {
                    return Err(domain(format!(
                        "checkpoint {} is for n = {}, k = {}, not n = {n}, k = {k}",
                        path.display(),
                        cp.n,
                        cp.k
                    )));
                }
                cp
            } else {
                let pending = search::plan_work_units(n, k, budget).map_err(from_search)?;
                let cp = Checkpoint { n, k, pending, done: Vec::new(), found: Vec::new() };
                write_checkpoint(path, &cp)?;
                cp
            };
            while let Some(unit) = cp.pending.first().cloned() {
                let got = run_unit_resumable(n, k, &unit, budget, path, &cp)?;
                cp.found.extend(got);
                cp.pending.remove(0);
                cp.done.push(unit);
                write_checkpoint(path, &cp)?;
            }
            let total = cp.done.len();
            (search::merge_unit_results(n, k, cp.found), Some(total))
        }
    };
    let witness_files = match out_dir {
        None => Vec::new(),
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| domain(format!("cannot create {}: {e}", dir.display())))?;
            let mut files = Vec::new();
            for (i, w) in result.witnesses.iter().enumerate() {
                let path = dir.join(format!("{k}critical_n{n}_witness{i}.g6"));
                std::fs::write(&path, format!("{w}\n"))
                    .map_err(|e| domain(format!("cannot write {}: {e}", path.display())))?;
                files.push(path.display().to_string());
            }
            files
        }
    };
    let mut payload = serde_json::Map::new();
    if let Value::Object(m) = to_value(&result) {
        payload.extend(m);
    }
    payload.insert("count".into(), result.graphs.len().into());
    if let Some(total) = units_run {
        payload.insert("work_units".into(), total.into());
    }
    if out_dir.is_some() {
        payload.insert("witness_files".into(), witness_files.into());
    }
    ok(Value::Object(payload))
}

/// Run one work unit; on budget exhaustion the failure names the checkpoint
/// so the caller knows the run can be resumed with a larger budget.
fn run_unit_resumable(
    n: usize,
    k: usize,
    unit: &WorkUnit,
    budget: &Budget,
    path: &Path,
    cp: &Checkpoint,
) -> Result<Vec<String>, Failure> {
    search::run_work_unit(n, k, unit, budget).map_err(|e| {
        let mut f = from_search(e);
        if f.code == 3 {
            f.extra.insert("checkpoint".into(), path.display().to_string().into());
            f.extra.insert("completed_units".into(), cp.done.len().into());
            f.extra.insert("pending_units".into(), cp.pending.len().into());
        }
        f
    })
}

fn ftable(k: usize, nmax: usize, format: Format, budget: &Budget) -> Result<Output, Failure> {
    let rows = search::f_table(k, nmax, budget).map_err(from_search)?;
    match format {
        Format::Json => ok(json!({
            "k": k,
            "rows": rows.iter().map(to_value).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("n,k,count,f_value,witnesses,gao_ma_cap\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n,
                    r.k,
                    r.count,
                    opt_str(&r.f_value),
                    r.witnesses.join(";"),
                    opt_str(&r.gao_ma_cap),
                ));
            }
            Ok(Output::Text(out))
        }
    }
}
