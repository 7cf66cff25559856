//! Argument handling and dispatch for the `cospectral` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cospectral_core::coalescing::{
    coalesced_char_poly_formula, coalescing_cospectral, family, twostep_check, FamilyTable,
    ProbeConfig,
};
use cospectral_core::complement::{
    complement_family, extract_coefficients, solve_weights, verify_main_theorem,
};
use cospectral_core::exactmath::{format_rational, parse_rational};
use cospectral_core::graph::{coalesce, parse_edge_json, parse_graph6, to_edge_json, to_graph6};
use cospectral_core::search::{
    distance_fuzz, find_pairs, normalized_demo, render_text, Corpus, FuzzConfig, FuzzReport,
    SearchOptions, DEFAULT_ORDER_LIMIT,
};
use cospectral_core::spectral::{deleted_char_poly, lq_char_poly, matrix_char_poly, MatrixKind};
use cospectral_core::{CoalescentPair, Graph, Polynomial, Rational, RootedGraph, VertexSet};

pub const WORKERS_ENV: &str = "COSPECTRAL_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

impl From<cospectral_core::Error> for Failure {
    fn from(e: cospectral_core::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "cospectral",
    version,
    about = "Exact spectra of qD + A and coalescing cospectral pairs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Matrix {
    Lq,
    Distance,
    Normalized,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic polynomial of a graph matrix.
    Charpoly(CharpolyArgs),
    /// The family f_0..f_|B| of a coalescent pair.
    Families(FamiliesArgs),
    /// Glue a rooted graph onto every vertex of a set.
    Coalesce(CoalesceArgs),
    /// Decide whether two coalescent pairs are coalescing cospectral.
    CheckPair(CheckPairArgs),
    /// Family of the complementary set, from the family alone.
    Complement(ComplementArgs),
    /// Check a set plus a single vertex on each side, with random probes.
    Twostep(TwostepArgs),
    /// Find coalescing cospectral pairs in graph corpora.
    Search(SearchArgs),
    /// Random search under the distance matrix.
    FuzzDistance(FuzzArgs),
    /// Normalized adjacency example where gluing breaks cospectrality.
    DemoNormalized,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Inline graph6 string.
    #[arg(long, group = "input")]
    graph6: Option<String>,
    /// Inline edge-list JSON `{"n": .., "edges": [[u, v], ..]}`.
    #[arg(long, group = "input")]
    json: Option<String>,
    /// File holding one graph, as graph6 or edge-list JSON.
    #[arg(long, group = "input")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QArg {
    /// The q in qD + A, as an integer or fraction such as -2/3.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
}

#[derive(Args, Debug)]
struct CharpolyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum, default_value_t = Matrix::Lq)]
    matrix: Matrix,
    /// Required for, and only allowed with, `--matrix lq`.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Delete these rows and columns (lq only), keeping full-graph degrees.
    #[arg(long)]
    delete: Option<String>,
}

#[derive(Args, Debug)]
struct FamiliesArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    q: QArg,
    /// Comma-separated vertex ids; empty for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Args, Debug)]
struct CoalesceArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    q: QArg,
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Rooted graph to glue, as graph6.
    #[arg(long, default_value = "A_")]
    rooted: String,
    #[arg(long, default_value_t = 0)]
    root: usize,
}

#[derive(Args, Debug)]
struct CheckPairArgs {
    #[command(flatten)]
    q: QArg,
    /// First graph, graph6 or edge-list JSON.
    #[arg(long)]
    g1: String,
    #[arg(long, allow_hyphen_values = true)]
    set1: String,
    #[arg(long)]
    g2: String,
    #[arg(long, allow_hyphen_values = true)]
    set2: String,
}

#[derive(Args, Debug)]
struct ComplementArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    q: QArg,
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Also print the solved weights ω.
    #[arg(long)]
    dump_weights: bool,
}

#[derive(Args, Debug)]
struct TwostepArgs {
    #[command(flatten)]
    q: QArg,
    #[arg(long)]
    g1: String,
    #[arg(long, allow_hyphen_values = true)]
    set1: String,
    #[arg(long)]
    v1: usize,
    #[arg(long)]
    g2: String,
    #[arg(long, allow_hyphen_values = true)]
    set2: String,
    #[arg(long)]
    v2: usize,
    #[arg(long, default_value_t = 20)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest order of a random probe graph.
    #[arg(long, default_value_t = 5)]
    max_order: usize,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    q: QArg,
    /// graph6 files (one graph per line) or JSON arrays of edge lists.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Worker threads; defaults to the environment variable, then 1.
    #[arg(long)]
    workers: Option<usize>,
    /// Largest accepted graph order.
    #[arg(long, default_value_t = DEFAULT_ORDER_LIMIT)]
    limit: usize,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 4)]
    min_order: usize,
    #[arg(long, default_value_t = 7)]
    max_order: usize,
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_q(text: &str) -> CliResult<Rational> {
    parse_rational(text).map_err(|e| Failure::Usage(format!("--q: {e}")))
}

fn parse_set(text: &str, g: &Graph) -> CliResult<VertexSet> {
    let set =
        VertexSet::parse(text).map_err(|e| Failure::Usage(format!("vertex set {text:?}: {e}")))?;
    if let Some(v) = set.iter().find(|&v| v >= g.order()) {
        return Err(Failure::Data(format!(
            "vertex {v} out of range for a graph on {} vertices",
            g.order()
        )));
    }
    Ok(set)
}

/// graph6, or edge-list JSON when the text starts with `{`.
fn parse_graph_text(text: &str) -> CliResult<Graph> {
    let t = text.trim();
    if t.starts_with('{') {
        Ok(parse_edge_json(t)?)
    } else {
        let first = t.lines().next().unwrap_or("");
        Ok(parse_graph6(first.trim())?)
    }
}

fn read_graph(input: &GraphInput) -> CliResult<Graph> {
    match (&input.graph6, &input.json, &input.file) {
        (Some(s), _, _) => Ok(parse_graph6(s)?),
        (_, Some(s), _) => Ok(parse_edge_json(s)?),
        (_, _, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
            parse_graph_text(&text)
        }
        _ => Err(Failure::Usage(
            "one of --graph6, --json or --file is required".into(),
        )),
    }
}

fn workers(flag: Option<usize>) -> CliResult<usize> {
    if let Some(w) = flag {
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{WORKERS_ENV} must be a non-negative integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(1),
    }
}

fn family_text(t: &FamilyTable) -> String {
    t.polys
        .iter()
        .enumerate()
        .map(|(k, p)| format!("f_{k} = {p}\n"))
        .collect()
}

fn family_json(t: &FamilyTable) -> Value {
    serde_json::to_value(t).expect("family serializes")
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.as_slice())
}

struct Output {
    text: String,
    json: Value,
    status: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            status: EXIT_OK,
        }
    }
}

fn charpoly(args: &CharpolyArgs) -> CliResult<Output> {
    let g = read_graph(&args.input)?;
    let kind = match (args.matrix, &args.q) {
        (Matrix::Lq, Some(q)) => MatrixKind::Lq(parse_q(q)?),
        (Matrix::Lq, None) => {
            return Err(Failure::Usage("--q is required with --matrix lq".into()))
        }
        (_, Some(_)) => {
            return Err(Failure::Usage(
                "--q is only allowed with --matrix lq".into(),
            ))
        }
        (Matrix::Distance, None) => MatrixKind::Distance,
        (Matrix::Normalized, None) => MatrixKind::NormalizedAdjacency,
    };
    let poly = match (&args.delete, &kind) {
        (None, _) => matrix_char_poly(&g, &kind)?,
        (Some(text), MatrixKind::Lq(q)) => deleted_char_poly(&g, q, &parse_set(text, &g)?)?,
        (Some(_), _) => return Err(Failure::Usage("--delete needs --matrix lq".into())),
    };
    let matrix = match args.matrix {
        Matrix::Lq => "lq",
        Matrix::Distance => "distance",
        Matrix::Normalized => "normalized",
    };
    let q = match &kind {
        MatrixKind::Lq(q) => json!(format_rational(q)),
        _ => Value::Null,
    };
    Ok(Output::ok(
        format!("{poly}\n"),
        json!({"graph": to_graph6(&g), "matrix": matrix, "q": q, "poly": poly.to_string(), "coefficients": poly}),
    ))
}

fn families(args: &FamiliesArgs) -> CliResult<Output> {
    let g = read_graph(&args.input)?;
    let q = parse_q(&args.q.q)?;
    let b = parse_set(&args.set, &g)?;
    let t = family(&g, &b, &q)?;
    Ok(Output::ok(
        family_text(&t),
        json!({"graph": to_graph6(&g), "set": set_json(&b), "family": family_json(&t)}),
    ))
}

fn coalesce_cmd(args: &CoalesceArgs) -> CliResult<Output> {
    let g = read_graph(&args.input)?;
    let q = parse_q(&args.q.q)?;
    let b = parse_set(&args.set, &g)?;
    let rooted = RootedGraph::new(parse_graph_text(&args.rooted)?, args.root)?;
    let pair = CoalescentPair::new(g, b)?;
    let glued = coalesce(&pair, &rooted).graph;
    let direct = lq_char_poly(&glued, &q);
    let formula = coalesced_char_poly_formula(&pair, &rooted, &q, &VertexSet::empty())?;
    let agree = direct == formula;
    Ok(Output::ok(
        format!(
            "graph6: {}\nedges: {}\ncharpoly: {direct}\nformula agrees: {}\n",
            to_graph6(&glued),
            to_edge_json(&glued),
            if agree { "yes" } else { "no" }
        ),
        json!({
            "graph6": to_graph6(&glued),
            "graph": serde_json::from_str::<Value>(&to_edge_json(&glued)).expect("valid json"),
            "q": format_rational(&q),
            "charpoly": direct,
            "formula": formula,
            "formula_agrees": agree,
        }),
    ))
}

fn check_pair(args: &CheckPairArgs) -> CliResult<Output> {
    let q = parse_q(&args.q.q)?;
    let (g1, g2) = (parse_graph_text(&args.g1)?, parse_graph_text(&args.g2)?);
    let (b1, b2) = (parse_set(&args.set1, &g1)?, parse_set(&args.set2, &g2)?);
    let (f1, f2) = (family(&g1, &b1, &q)?, family(&g2, &b2, &q)?);
    let verdict = coalescing_cospectral(&f1, &f2)?;
    let main = verify_main_theorem(
        &CoalescentPair::new(g1.clone(), b1.clone())?,
        &CoalescentPair::new(g2.clone(), b2.clone())?,
        &q,
    )?;
    let mut text = format!(
        "coalescing cospectral: {}\ncomplements coalescing cospectral: {}\n",
        if verdict { "yes" } else { "no" },
        if main.complements_match { "yes" } else { "no" }
    );
    for (k, (p1, p2)) in f1.polys.iter().zip(&f2.polys).enumerate() {
        let mark = if p1 == p2 { "=" } else { "≠" };
        text.push_str(&format!("f_{k}: {p1}  {mark}  {p2}\n"));
    }
    Ok(Output::ok(
        text,
        json!({
            "q": format_rational(&q),
            "coalescing_cospectral": verdict,
            "family1": family_json(&f1),
            "family2": family_json(&f2),
            "main_theorem": main,
        }),
    ))
}

fn complement_cmd(args: &ComplementArgs) -> CliResult<Output> {
    let g = read_graph(&args.input)?;
    let q = parse_q(&args.q.q)?;
    let b = parse_set(&args.set, &g)?;
    let t = family(&g, &b, &q)?;
    let c = complement_family(&t)?;
    let comp = b.complement(g.order());
    let mut text = format!("complement set {comp}\n{}", family_text(&c));
    let mut out =
        json!({"set": set_json(&b), "complement_set": set_json(&comp), "family": family_json(&c)});
    if args.dump_weights {
        let w = solve_weights(&extract_coefficients(&t))?;
        text.push_str("weights:\n");
        for (i, row) in w.omega.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            text.push_str(&format!("  i={i}: {}\n", cells.join(" ")));
        }
        out["weights"] = serde_json::to_value(&w).expect("weights serialize");
    }
    Ok(Output::ok(text, out))
}

fn twostep(args: &TwostepArgs) -> CliResult<Output> {
    let q = parse_q(&args.q.q)?;
    let (g1, g2) = (parse_graph_text(&args.g1)?, parse_graph_text(&args.g2)?);
    let (b1, b2) = (parse_set(&args.set1, &g1)?, parse_set(&args.set2, &g2)?);
    let config = ProbeConfig {
        count: args.probes,
        seed: args.seed,
        max_order: args.max_order,
    };
    let r = twostep_check(&g1, &b1, args.v1, &g2, &b2, args.v2, &q, &config)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "sets: {}\nvertices: {}\nunions: {}\ntwo-set tables: {}\n",
        yes(r.sets_match),
        yes(r.vertices_match),
        yes(r.unions_match),
        yes(r.two_set_tables_match)
    );
    if r.hypotheses_hold() {
        let good = r.probes.iter().filter(|p| p.cospectral).count();
        text.push_str(&format!("probes cospectral: {good}/{}\n", r.probes.len()));
    } else {
        text.push_str("hypotheses not met; no probes run\n");
    }
    Ok(Output::ok(
        text,
        serde_json::to_value(&r).expect("report serializes"),
    ))
}

fn search(args: &SearchArgs) -> CliResult<Output> {
    let q = parse_q(&args.q.q)?;
    let mut corpus = Corpus::default();
    for path in &args.files {
        corpus
            .add_file(path, args.limit)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))??;
    }
    let options = SearchOptions {
        workers: workers(args.workers)?,
        verify_complements: true,
    };
    let report = find_pairs(&corpus, &q, &options)?;
    Ok(Output::ok(
        render_text(&report),
        serde_json::to_value(&report).expect("report serializes"),
    ))
}

fn fuzz(args: &FuzzArgs) -> CliResult<Output> {
    if args.min_order == 0
        || args.min_order > args.max_order
        || args.max_order > DEFAULT_ORDER_LIMIT
    {
        return Err(Failure::Usage(format!(
            "need 1 <= --min-order <= --max-order <= {DEFAULT_ORDER_LIMIT}"
        )));
    }
    let config = FuzzConfig {
        seed: args.seed,
        count: args.count,
        min_order: args.min_order,
        max_order: args.max_order,
        workers: workers(args.workers)?,
    };
    let report = distance_fuzz(&config)?;
    let mut text = format!(
        "seed {} count {} orders {}..={}\ndistinct graphs: {}\noracle mismatches: {}\ndistance-cospectral groups: {}\n\
         set pairs that passed the battery: {}\n",
        report.seed,
        report.count,
        report.min_order,
        report.max_order,
        report.distinct_graphs,
        report.oracle_mismatches.len(),
        report.cospectral_groups.len(),
        report.passed_battery.len()
    );
    for group in &report.cospectral_groups {
        text.push_str(&format!("  {}: {}\n", group.graphs.join(" "), group.poly));
    }
    for g in &report.oracle_mismatches {
        text.push_str(&format!("ORACLE MISMATCH: {g}\n"));
    }
    for c in &report.counterexample_candidates {
        text.push_str(&format!(
            "COUNTEREXAMPLE CANDIDATE: {} {} sets {} passed the battery, complements {} fail on {}\n",
            c.g1, c.g2, c.sets.notation, c.complement.notation, c.failing_probe
        ));
    }
    let status = fuzz_exit_status(&report);
    Ok(Output {
        text,
        json: serde_json::to_value(&report).expect("report serializes"),
        status,
    })
}

/// `2` when the fuzzer found a counterexample candidate, `0` otherwise.
pub fn fuzz_exit_status(report: &FuzzReport) -> i32 {
    if report.has_counterexample() {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    }
}

fn demo() -> CliResult<Output> {
    let d = normalized_demo()?;
    let line = |label: &str, p: &[Polynomial; 2]| format!("{label}:\n  {}\n  {}\n", p[0], p[1]);
    let text = format!(
        "graphs {} and {}, pendant edge glued at every vertex\n{}{}{}normalized cospectral before: {}, after: {}\n",
        d.graphs[0],
        d.graphs[1],
        line("normalized before", &d.before),
        line("normalized after", &d.after),
        line("adjacency after", &d.adjacency_after),
        d.cospectral_before(),
        d.cospectral_after()
    );
    let mut value = serde_json::to_value(&d).expect("demo serializes");
    value["cospectral_before"] = json!(d.cospectral_before());
    value["cospectral_after"] = json!(d.cospectral_after());
    value["adjacency_cospectral_after"] = json!(d.adjacency_cospectral_after());
    Ok(Output::ok(text, value))
}

/// Runs one invocation and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Charpoly(a) => charpoly(a),
        Command::Families(a) => families(a),
        Command::Coalesce(a) => coalesce_cmd(a),
        Command::CheckPair(a) => check_pair(a),
        Command::Complement(a) => complement_cmd(a),
        Command::Twostep(a) => twostep(a),
        Command::Search(a) => search(a),
        Command::FuzzDistance(a) => fuzz(a),
        Command::DemoNormalized => demo(),
    };
    match result {
        Ok(output) => {
            let written = match cli.format {
                Format::Text => write!(out, "{}", output.text),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&output.json).expect("json output")
                ),
            };
            if written.is_err() {
                return EXIT_DATA;
            }
            output.status
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}
