use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use pmcut::branch::SolverOptions;
use pmcut::oracle::OracleLimits;
use pmcut::sat::{reduce_basic, reduce_girth, verify_reduction, CnfFormula, ReductionMap, Variant};
use pmcut::{classify_cut, generate, solve_with, Algorithm, Cut, CutClass, Graph, SolveError, SolveResult};

#[derive(Parser, Debug)]
#[command(name = "pmcut", version, about = "Perfect matching cut solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph has a perfect matching cut
    Solve(SolveArgs),
    /// Classify a cut of a graph
    Check(CheckArgs),
    /// Write a graph (edge-list) or formula (DIMACS) to stdout
    Generate(GenerateArgs),
    /// Build a reduced instance and check its structural claims
    VerifyReduction(VerifyArgs),
    /// Time solvers on random graphs, CSV to stdout
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
struct SolverFlags {
    #[arg(long, default_value = "auto", value_parser = parse_algo)]
    algo: Algorithm,
    /// Largest graph the brute-force oracle accepts
    #[arg(long, default_value_t = 24)]
    oracle_limit: usize,
    /// Seed edges searched in parallel by the branch solver
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Enable reduction rule R10 in the branch solver
    #[arg(long)]
    r10: bool,
    /// Leave out wall-clock times so output is byte-identical across runs
    #[arg(long)]
    deterministic: bool,
}

impl SolverFlags {
    fn options(&self) -> SolverOptions {
        SolverOptions { enable_r10: self.r10, audit: false, threads: self.threads.max(1) }
    }

    fn limits(&self) -> OracleLimits {
        OracleLimits { max_vertices_pmc: self.oracle_limit, max_variables_nae: self.oracle_limit }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Edge-list file; stdin when absent or "-"
    input: Option<PathBuf>,
    #[command(flatten)]
    flags: SolverFlags,
    /// Also run every other applicable algorithm and compare answers
    #[arg(long)]
    cross_check: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    graph: PathBuf,
    /// JSON with "x" (and optionally "y") as 1-based vertex lists, or a
    /// `solve --json` output
    cut: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { leaves: usize },
    Cube,
    Petersen,
    /// The subdivided claw T
    Claw,
    /// Spine with the given number of leaves per spine vertex, e.g. 1,0,2
    Caterpillar {
        #[arg(value_delimiter = ',', required = true)]
        leaves: Vec<usize>,
    },
    /// Cycle whose consecutive vertices share a private common neighbour
    DecoratedCycle { k: usize },
    Tree { n: usize },
    /// Connected graph with n vertices and m edges
    Random { n: usize, m: usize },
    Gnp { n: usize, p: f64 },
    Chordal { n: usize },
    PseudoChordal { n: usize },
    /// Two random halves of k vertices joined by a perfect matching
    Planted { k: usize, p: f64 },
    /// Random monotone NAE-3SAT formula in DIMACS
    Formula {
        n: usize,
        m: usize,
        /// Emit the Fano plane instead
        #[arg(long)]
        fano: bool,
    },
    /// Reduce a DIMACS formula to a graph
    Reduction {
        formula: PathBuf,
        #[command(flatten)]
        red: ReductionFlags,
        /// Write the vertex map (1-based) as JSON here
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct ReductionFlags {
    #[arg(long, value_enum, default_value_t = VariantArg::Basic)]
    variant: VariantArg,
    /// Target girth (girth variant)
    #[arg(long, default_value_t = 3)]
    girth: usize,
    /// Force the subdivision parameter (girth variant)
    #[arg(long)]
    h: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Basic,
    Girth,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Basic => Variant::Basic,
            VariantArg::Girth => Variant::Girth,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// DIMACS file; stdin when absent or "-"
    formula: Option<PathBuf>,
    #[command(flatten)]
    red: ReductionFlags,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Vertex counts to sweep
    #[arg(long, value_delimiter = ',', default_values_t = vec![10, 20, 30, 40])]
    sizes: Vec<usize>,
    /// Edges per vertex
    #[arg(long, default_value_t = 2.0)]
    density: f64,
    /// Instances per size
    #[arg(long, default_value_t = 5)]
    count: usize,
    /// Algorithms to time
    #[arg(long, value_delimiter = ',', default_values_t = vec![Algorithm::Branch], value_parser = parse_algo)]
    algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances solved concurrently
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 24)]
    oracle_limit: usize,
    /// Leave the millis column empty
    #[arg(long)]
    deterministic: bool,
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&Path>) -> Result<Graph> {
    Ok(Graph::parse(&read_input(path)?)?)
}

fn read_formula(path: Option<&Path>) -> Result<CnfFormula> {
    Ok(CnfFormula::parse_dimacs(&read_input(path)?)?)
}

fn one_based(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    vs.into_iter().map(|v| v + 1).collect()
}

fn cut_json(cut: &Cut) -> Value {
    json!({ "x": one_based(cut.x()), "y": one_based(cut.y()) })
}

fn class_name(c: CutClass) -> &'static str {
    match c {
        CutClass::NotACut => "not_a_cut",
        CutClass::Cut => "cut",
        CutClass::MatchingCut => "matching_cut",
        CutClass::PerfectMatchingCut => "perfect_matching_cut",
    }
}

#[derive(Serialize)]
struct SolveOutput {
    algorithm: Algorithm,
    n: usize,
    m: usize,
    has_pmc: bool,
    certificate: Option<Value>,
    stats: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    millis: Option<f64>,
}

fn stats_json(r: &SolveResult) -> Value {
    let mut v = serde_json::to_value(&r.stats).expect("stats serialise");
    v["seed_edge"] = match r.stats.seed_edge {
        Some((a, b)) => json!([a + 1, b + 1]),
        None => Value::Null,
    };
    v
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let g = read_graph(args.input.as_deref())?;
    let f = &args.flags;
    let start = Instant::now();
    let (algo, r) = solve_with(f.algo, &g, &f.options(), &f.limits())?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    if let Some(c) = &r.certificate {
        // Solvers already verify; this is the last gate before output.
        if classify_cut(&g, c) != Ok(CutClass::PerfectMatchingCut) {
            bail!("internal error: {} returned an invalid certificate", algo.name());
        }
    }

    let cross_check = if args.cross_check {
        let mut rows = Vec::new();
        for other in Algorithm::CONCRETE {
            if other == algo || !other.applicable(&g, &f.limits()) {
                continue;
            }
            let (_, o) = solve_with(other, &g, &f.options(), &f.limits())?;
            rows.push(json!({ "algorithm": other, "has_pmc": o.has_pmc }));
            if o.has_pmc != r.has_pmc {
                bail!(CrossCheckMismatch { first: algo, second: other, answer: r.has_pmc });
            }
        }
        Some(rows)
    } else {
        None
    };

    let out = SolveOutput {
        algorithm: algo,
        n: g.n(),
        m: g.m(),
        has_pmc: r.has_pmc,
        certificate: r.certificate.as_ref().map(cut_json),
        stats: stats_json(&r),
        cross_check,
        millis: (!f.deterministic).then_some(millis),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("algorithm: {}", algo.name());
        println!("has_pmc: {}", r.has_pmc);
        if let Some(c) = &r.certificate {
            println!("X: {:?}", one_based(c.x()));
            println!("Y: {:?}", one_based(c.y()));
        }
        println!("nodes: {}", r.stats.nodes);
        if let Some(rows) = &out.cross_check {
            println!("cross-check: {} other algorithms agree", rows.len());
        }
        if let Some(ms) = out.millis {
            println!("time: {ms:.3} ms");
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug)]
struct CrossCheckMismatch {
    first: Algorithm,
    second: Algorithm,
    answer: bool,
}

impl std::error::Error for CrossCheckMismatch {}

impl std::fmt::Display for CrossCheckMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} says {} but {} disagrees", self.first.name(), self.answer, self.second.name())
    }
}

fn parse_cut(text: &str, n: usize) -> Result<Cut> {
    let v: Value = serde_json::from_str(text).context("cut file is not JSON")?;
    let obj = v.get("certificate").unwrap_or(&v);
    if obj.is_null() {
        bail!("no certificate in cut file");
    }
    let list = |key: &str| -> Result<Option<Vec<usize>>> {
        match obj.get(key) {
            None => Ok(None),
            Some(l) => {
                let ids: Vec<usize> = serde_json::from_value(l.clone()).with_context(|| format!("\"{key}\" is not a list of ids"))?;
                if let Some(bad) = ids.iter().find(|&&id| id == 0 || id > n) {
                    bail!("vertex {bad} out of range 1..={n}");
                }
                Ok(Some(ids.into_iter().map(|id| id - 1).collect()))
            }
        }
    };
    let x = list("x")?.context("cut file needs an \"x\" list")?;
    let cut = Cut::from_x_set(n, &x);
    if let Some(y) = list("y")? {
        let mut all: Vec<usize> = x.iter().chain(&y).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != n || x.len() + y.len() != n {
            bail!("\"x\" and \"y\" must partition the {n} vertices");
        }
    }
    Ok(cut)
}

fn check(args: CheckArgs) -> Result<ExitCode> {
    let g = read_graph(Some(&args.graph))?;
    let cut = parse_cut(&read_input(Some(&args.cut))?, g.n())?;
    let class = classify_cut(&g, &cut)?;
    let ok = class == CutClass::PerfectMatchingCut;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&json!({ "valid": ok, "class": class_name(class) }))?);
    } else {
        println!("{} {}", if ok { "PASS" } else { "FAIL" }, class_name(class));
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn random_formula(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<CnfFormula> {
    if n < 3 {
        bail!("a formula needs at least 3 variables");
    }
    let clauses = (0..m)
        .map(|_| {
            let mut vars: Vec<usize> = (1..=n).collect();
            for i in 0..3 {
                let j = rng.gen_range(i..n);
                vars.swap(i, j);
            }
            [vars[0], vars[1], vars[2]]
        })
        .collect();
    Ok(CnfFormula::new(n, clauses)?)
}

fn reduce(f: &CnfFormula, red: &ReductionFlags) -> Result<(Graph, ReductionMap)> {
    Ok(match red.variant {
        VariantArg::Basic => reduce_basic(f)?,
        VariantArg::Girth => reduce_girth(f, red.girth, red.h)?,
    })
}

/// The map with every vertex id shifted to the 1-based file convention.
fn map_json(map: &ReductionMap) -> Value {
    fn shift(v: &mut Value, is_id: bool) {
        match v {
            Value::Array(a) => a.iter_mut().for_each(|x| shift(x, is_id)),
            Value::Object(o) => {
                for (k, x) in o.iter_mut() {
                    let id = matches!(k.as_str(), "vertices" | "clause_vertices" | "variable_vertices" | "dummy");
                    shift(x, id);
                }
            }
            Value::Number(n) if is_id => *v = json!(n.as_u64().expect("vertex id") + 1),
            _ => {}
        }
    }
    let mut v = serde_json::to_value(map).expect("map serialises");
    shift(&mut v, false);
    v
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let rng = &mut ChaCha8Rng::seed_from_u64(args.seed);
    let g = match args.family {
        Family::Path { n } => generate::path(n),
        Family::Cycle { n } => {
            if n < 3 {
                bail!("a cycle needs at least 3 vertices");
            }
            generate::cycle(n)
        }
        Family::Complete { n } => generate::complete(n),
        Family::Star { leaves } => generate::star(leaves),
        Family::Cube => generate::cube(),
        Family::Petersen => generate::petersen(),
        Family::Claw => generate::subdivided_claw(),
        Family::Caterpillar { leaves } => generate::caterpillar(&leaves),
        Family::DecoratedCycle { k } => {
            if k < 3 {
                bail!("a decorated cycle needs k >= 3");
            }
            generate::decorated_cycle(k)
        }
        Family::Tree { n } => generate::random_tree(n, rng),
        Family::Random { n, m } => generate::random_connected(n, m, rng),
        Family::Gnp { n, p } => generate::random_gnp(n, p.clamp(0.0, 1.0), rng),
        Family::Chordal { n } => generate::random_chordal(n, rng),
        Family::PseudoChordal { n } => generate::random_pseudo_chordal(n, rng),
        Family::Planted { k, p } => generate::random_planted(k, p.clamp(0.0, 1.0), rng),
        Family::Formula { n, m, fano } => {
            let f = if fano { CnfFormula::fano() } else { random_formula(n, m, rng)? };
            print!("{}", f.to_dimacs());
            return Ok(ExitCode::SUCCESS);
        }
        Family::Reduction { formula, red, map } => {
            let f = read_formula(Some(&formula))?;
            let (g, rmap) = reduce(&f, &red)?;
            if let Some(p) = map {
                fs::write(&p, serde_json::to_string_pretty(&map_json(&rmap))?)
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            g
        }
    };
    print!("{}", g.to_edge_list());
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let f = read_formula(args.formula.as_deref())?;
    let g = matches!(args.red.variant, VariantArg::Girth).then_some(args.red.girth);
    let report = verify_reduction(&f, args.red.variant.into(), g, args.red.h)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{} vertices, {} edges", report.num_vertices, report.num_edges);
        for c in &report.claims {
            let status = serde_json::to_value(c.status)?;
            println!("{:8} {}: expected {}, measured {}", status.as_str().unwrap_or(""), c.name, c.expected, c.measured);
        }
    }
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut instances = Vec::new();
    for &n in &args.sizes {
        let m = (args.density * n as f64).round() as usize;
        for i in 0..args.count {
            instances.push((format!("rc-{n}-{i}"), generate::random_connected(n, m, &mut rng)));
        }
    }
    let jobs: Vec<(usize, Algorithm)> =
        (0..instances.len()).flat_map(|i| args.algos.iter().map(move |&a| (i, a))).collect();
    let limits = OracleLimits { max_vertices_pmc: args.oracle_limit, max_variables_nae: args.oracle_limit };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads.max(1)).build()?;
    let rows: Vec<Result<String>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, algo)| {
                let (name, g) = &instances[i];
                let start = Instant::now();
                let (ran, r) = solve_with(algo, g, &SolverOptions::default(), &limits)?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let millis = if args.deterministic { String::new() } else { format!("{ms:.3}") };
                Ok(format!("{name},{},{},{},{},{},{millis}", g.n(), g.m(), ran.name(), r.has_pmc, r.stats.nodes))
            })
            .collect()
    });
    println!("instance,n,m,algorithm,has_pmc,nodes,millis");
    for row in rows {
        println!("{}", row?);
    }
    Ok(ExitCode::SUCCESS)
}

fn error_json(e: &anyhow::Error) -> Value {
    let mut v = json!({ "error": error_kind(e), "message": format!("{e:#}") });
    if let Some(SolveError::NotTFree(w)) = e.downcast_ref::<SolveError>() {
        v["message"] = json!(format!(
            "input contains the subdivided claw as an induced subgraph: path {}-{}-{}-{}-{} with leaf {} at {}",
            w.far[0] + 1, w.near[0] + 1, w.center + 1, w.near[1] + 1, w.far[1] + 1, w.leaf + 1, w.center + 1
        ));
        v["witness"] = json!({
            "center": w.center + 1,
            "leaf": w.leaf + 1,
            "near": one_based(w.near),
            "far": one_based(w.far),
        });
    }
    v
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(s) = e.downcast_ref::<SolveError>() {
        return match s {
            SolveError::NotAnEdge(..) => "not_an_edge",
            SolveError::DegreeTooLarge(_) => "degree_too_large",
            SolveError::NotATree => "not_a_tree",
            SolveError::NotPseudoChordal(..) => "not_pseudo_chordal",
            SolveError::NotTFree(_) => "not_t_free",
            SolveError::Oracle(_) => "oracle_limit",
        };
    }
    if e.is::<pmcut::GraphError>() || e.is::<pmcut::sat::CnfError>() {
        return "parse";
    }
    if e.is::<pmcut::sat::ReductionError>() {
        return "reduction";
    }
    if e.is::<CrossCheckMismatch>() {
        return "cross_check_mismatch";
    }
    if e.is::<io::Error>() || e.chain().any(|c| c.is::<io::Error>()) {
        return "io";
    }
    "invalid_input"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Check(a) => check(a),
        Command::Generate(a) => generate(a),
        Command::VerifyReduction(a) => verify(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(2)
        }
    }
}
