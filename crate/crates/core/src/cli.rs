//! Command-line front end. Every family mirrors a library module; output is
//! deterministic for fixed flags and seed.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bounds::{self, BoundsRow};
use crate::budget::Budget;
use crate::coloring::{self, Coloring, SearchOptions, Verdict, VerifyMode};
use crate::error::{Error, Result};
use crate::gf_tower::{is_prime, prime_factors, FieldTower, FiniteField, FqN};
use crate::matrix_graph::GraphParams;
use crate::rank_codes::{self, LinearRankCode};
use crate::rank_linalg::{self, MatFq};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "matgraph", version, about = "Matrix graphs, rank-metric codes and distance colorings")]
struct Cli {
    /// Maximum number of items any exhaustive routine may enumerate.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker thread cap.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the primary artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Args)]
struct FieldArgs {
    /// Base field size, a prime power.
    #[arg(long)]
    q: u64,
    /// Degree of F_q over its prime field; must agree with --q.
    #[arg(long)]
    m: Option<usize>,
    /// Extension degree (matrix row count).
    #[arg(long = "N")]
    big_n: usize,
}

#[derive(Debug, Clone, Args)]
struct GraphArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Matrix column count.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Field(FieldCmd),
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Code(CodeCmd),
    #[command(subcommand)]
    Color(ColorCmd),
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Debug, Subcommand)]
enum FieldCmd {
    /// Build F_q ⊂ F_{q^N} and print its description.
    Build(FieldArgs),
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    Stats {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also run the BFS eccentricity and bipartiteness checks.
        #[arg(long)]
        check: bool,
    },
    /// Export the explicit graph as DOT or a CSV edge list.
    Export(GraphArgs),
}

#[derive(Debug, Subcommand)]
enum CodeCmd {
    Gabidulin {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: u64,
        /// Comma-separated element indices of F_{q^N}.
        #[arg(long, value_delimiter = ',')]
        h: Option<Vec<u64>>,
    },
    Spectrum {
        file: PathBuf,
    },
    Builtin {
        #[arg(value_parser = ["C1", "C2", "C3"])]
        name: String,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ColorCmd {
    /// At-most-d coloring from Gabidulin cosets.
    Dist {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        pairwise: bool,
    },
    /// Exactly-d coloring from a searched forbidden-distance code.
    Exact {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long, default_value_t = 256)]
        restarts: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        pairwise: bool,
    },
    Verify {
        file: PathBuf,
        #[arg(long)]
        pairwise: bool,
    },
    /// Print the color index of one vertex.
    Assign {
        file: PathBuf,
        /// Row-major base-q digit string.
        #[arg(long)]
        vertex: String,
    },
}

#[derive(Debug, Subcommand)]
enum BoundsCmd {
    Row {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    Table1,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = std::panic::catch_unwind(|| match cli.threads {
        Some(0) => Err(Error::InvalidParameter("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    });
    match result {
        Ok(Ok(r)) => match emit(&cli, &r) {
            Ok(()) => r.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(_) => EXIT_INTERNAL,
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::SearchFailed { .. } => EXIT_VIOLATION,
        Error::InverseOfZero => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// What a command produced: a report for stdout and, optionally, an artifact
/// that goes to `--out` (or replaces the report on stdout).
struct Run {
    report: Report,
    artifact: Option<Artifact>,
    code: i32,
}

struct Artifact {
    body: String,
    /// Print on stdout when there is no `--out`.
    print_without_out: bool,
}

#[derive(Default)]
struct Report(Vec<(String, Value)>);

impl Report {
    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.0.push((key.to_string(), v.into()));
    }

    fn render(&self, format: Format) -> String {
        if format == Format::Json {
            let map: Map<String, Value> = self.0.iter().cloned().collect();
            return serde_json::to_string_pretty(&Value::Object(map)).expect("json") + "\n";
        }
        let mut s = String::new();
        for (k, v) in &self.0 {
            let shown = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
        s
    }
}

fn ok(report: Report) -> Run {
    Run { report, artifact: None, code: EXIT_OK }
}

fn emit(cli: &Cli, r: &Run) -> std::io::Result<()> {
    let format = cli.format.unwrap_or(Format::Text);
    let report = if r.report.0.is_empty() { String::new() } else { r.report.render(format) };
    match (&r.artifact, &cli.out) {
        (Some(a), Some(path)) => {
            fs::write(path, &a.body)?;
            print!("{report}");
        }
        (Some(a), None) if a.print_without_out => print!("{}", a.body),
        (_, Some(path)) => fs::write(path, report)?,
        _ => print!("{report}"),
    }
    Ok(())
}

fn budget(cli: &Cli, default: Budget) -> Result<Budget> {
    cli.budget.map_or(Ok(default), Budget::new)
}

/// Splits a prime power `q` into `(p, m)`, checking a given `m`.
fn split_q(q: u64, m: Option<usize>) -> Result<(u64, usize)> {
    let ps = prime_factors(q);
    if q < 2 || ps.len() != 1 {
        return Err(Error::InvalidParameter(format!("--q {q} is not a prime power")));
    }
    let p = ps[0];
    debug_assert!(is_prime(p));
    let (mut rest, mut deg) = (q, 0);
    while rest > 1 {
        rest /= p;
        deg += 1;
    }
    match m {
        Some(m) if m != deg => Err(Error::InvalidParameter(format!("--m {m} disagrees with --q {q} = {p}^{deg}"))),
        _ => Ok((p, deg)),
    }
}

fn tower_of(f: &FieldArgs) -> Result<Arc<FieldTower>> {
    let (p, m) = split_q(f.q, f.m)?;
    Ok(Arc::new(FieldTower::build(p, m, f.big_n)?))
}

fn params_of(g: &GraphArgs) -> Result<GraphParams> {
    if g.n > g.field.big_n {
        return Err(Error::InvalidParameter(format!("need n <= N, got n = {} and N = {}", g.n, g.field.big_n)));
    }
    GraphParams::with_tower(tower_of(&g.field)?, g.n)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn run(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Field(FieldCmd::Build(f)) => field_build(f),
        Command::Graph(GraphCmd::Stats { graph, check }) => graph_stats(cli, graph, *check),
        Command::Graph(GraphCmd::Export(graph)) => graph_export(cli, graph),
        Command::Code(cmd) => code(cli, cmd),
        Command::Color(cmd) => color(cli, cmd),
        Command::Bounds(cmd) => bounds_cmd(cli, cmd),
    }
}

fn field_build(f: &FieldArgs) -> Result<Run> {
    let t = tower_of(f)?;
    let mut r = Report::default();
    r.put("tower", serde_json::to_value(t.desc()).expect("json"));
    r.put("q", t.q());
    r.put("order", t.ext_order());
    r.put("primitive_element", json!(t.fqn_to_json(t.primitive_element())));
    Ok(Run {
        artifact: Some(Artifact { body: pretty(&serde_json::to_value(t.desc()).expect("json")), print_without_out: false }),
        ..ok(r)
    })
}

fn graph_stats(cli: &Cli, g: &GraphArgs, check: bool) -> Result<Run> {
    let p = params_of(g)?;
    let mut r = Report::default();
    r.put("N", p.rows());
    r.put("n", p.cols());
    r.put("q", p.q());
    r.put("order", p.order().to_string());
    r.put("degree", p.degree().to_string());
    r.put("diameter", p.diameter());
    let counts: Vec<Value> = (0..=p.cols())
        .map(|k| rank_linalg::count_rank_k(p.rows(), p.cols(), p.q(), k).map(|c| Value::String(c.to_string())))
        .collect::<Result<_>>()?;
    r.put("rank_counts", counts);
    if check {
        let b = budget(cli, Budget::DEFAULT)?;
        r.put("eccentricity_of_zero", p.eccentricity(&p.vertex(0), b)?);
        r.put("bipartite", p.is_bipartite(b)?);
    }
    Ok(ok(r))
}

fn graph_export(cli: &Cli, g: &GraphArgs) -> Result<Run> {
    let p = params_of(g)?;
    let b = budget(cli, Budget::EXPORT)?;
    let body = match cli.format.unwrap_or(Format::Dot) {
        Format::Dot => p.export_dot(b)?,
        Format::Csv => p.export_edgelist_csv(b)?,
        other => return Err(Error::InvalidParameter(format!("graph export supports dot or csv, not {other:?}"))),
    };
    let mut r = Report::default();
    r.put("vertices", p.vertex_count(b)?);
    r.put("edges", p.edges(b)?.len());
    Ok(Run { artifact: Some(Artifact { body, print_without_out: true }), ..ok(r) })
}

fn code(cli: &Cli, cmd: &CodeCmd) -> Result<Run> {
    let b = budget(cli, Budget::DEFAULT)?;
    match cmd {
        CodeCmd::Gabidulin { graph, k, s, h } => {
            if graph.n > graph.field.big_n {
                return Err(Error::InvalidParameter("need n <= N".into()));
            }
            let t = tower_of(&graph.field)?;
            let h = match h {
                Some(idx) => Some(idx.iter().map(|&i| t.ext().element(i)).collect::<Result<Vec<FqN>>>()?),
                None => None,
            };
            let code = LinearRankCode::gabidulin(t, graph.n, *k, *s, h)?;
            let mut r = Report::default();
            r.put("n", code.len());
            r.put("k", code.dimension());
            r.put("s", *s);
            r.put("size", code.size().to_string());
            r.put("designed_distance", code.designed_distance());
            let body = pretty(&code.to_json());
            if cli.format == Some(Format::Json) && cli.out.is_none() {
                r.put("code", code.to_json());
            }
            Ok(Run { artifact: Some(Artifact { body, print_without_out: false }), ..ok(r) })
        }
        CodeCmd::Spectrum { file } => {
            let code = LinearRankCode::from_json(&read_json(file)?)?;
            let spectrum = rank_codes::rank_spectrum(&code, b)?;
            let mut r = Report::default();
            r.put("n", code.len());
            r.put("k", code.dimension());
            r.put("size", code.size().to_string());
            let map: Map<String, Value> = spectrum.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            r.put("spectrum", Value::Object(map));
            let d = spectrum.keys().copied().find(|&k| k > 0);
            r.put("min_rank_distance", d);
            r.put("mrd", d == Some(code.len() - code.dimension() + 1));
            Ok(ok(r))
        }
        CodeCmd::Builtin { name, verify } => {
            let c = rank_codes::builtin_code(name)?;
            let t = &c.tower;
            let mut r = Report::default();
            r.put("name", c.name.clone());
            r.put("N", t.degree());
            r.put("n", c.n);
            r.put("size", c.size());
            r.put("declared_distance", c.declared_distance);
            let labels: Vec<Value> = c.as_matrices().iter().map(|m| Value::String(m.label(t.q()))).collect();
            r.put("words", labels);
            let mut code_out = EXIT_OK;
            if *verify {
                let measured = c.measured_distance()?;
                let equi = measured == Some(c.declared_distance);
                r.put("measured_distance", measured);
                r.put("verdict", if equi { format!("equidistant d = {}", c.declared_distance) } else { "not equidistant at the declared distance".into() });
                if !equi {
                    code_out = EXIT_VIOLATION;
                }
            }
            Ok(Run { code: code_out, ..ok(r) })
        }
    }
}

fn verdict_into(r: &mut Report, c: &Coloring, v: &Verdict) -> i32 {
    let q = c.params().q();
    match v {
        Verdict::Proper => {
            r.put("verdict", "proper");
            EXIT_OK
        }
        Verdict::Violation { a, b, distance } => {
            r.put("verdict", "violation");
            r.put("violation", json!({"a": a.label(q), "b": b.label(q), "distance": distance}));
            EXIT_VIOLATION
        }
    }
}

fn mode_of(pairwise: bool) -> VerifyMode {
    if pairwise {
        VerifyMode::Pairwise
    } else {
        VerifyMode::KernelScan
    }
}

fn coloring_run(cli: &Cli, c: &Coloring, mut r: Report, verify: bool, pairwise: bool) -> Result<Run> {
    let mut code_out = EXIT_OK;
    if verify {
        let v = coloring::verify_coloring(c, mode_of(pairwise), budget(cli, Budget::DEFAULT)?)?;
        code_out = verdict_into(&mut r, c, &v);
    }
    let body = pretty(&c.to_json());
    if cli.format == Some(Format::Json) && cli.out.is_none() {
        r.put("coloring", c.to_json());
    }
    Ok(Run { report: r, artifact: Some(Artifact { body, print_without_out: false }), code: code_out })
}

fn color(cli: &Cli, cmd: &ColorCmd) -> Result<Run> {
    match cmd {
        ColorCmd::Dist { graph, d, verify, pairwise } => {
            let p = params_of(graph)?;
            let c = coloring::d_distance_coloring(&p, *d)?;
            let mut r = Report::default();
            r.put("mode", c.mode().as_str());
            r.put("d", *d);
            r.put("colors", c.num_colors().to_string());
            r.put("lower_bound", bounds::chi_lower_singleton(p.rows(), p.cols(), p.q(), *d).to_string());
            r.put("provenance", c.provenance());
            coloring_run(cli, &c, r, *verify, *pairwise)
        }
        ColorCmd::Exact { graph, d, rows, restarts, verify, pairwise } => {
            let p = params_of(graph)?;
            let opts = SearchOptions { restarts: *restarts, budget: budget(cli, Budget::DEFAULT)?, ..SearchOptions::default() };
            let c = coloring::exact_d_coloring(&p, *d, cli.seed, *rows, opts)?;
            let mut r = Report::default();
            r.put("mode", c.mode().as_str());
            r.put("d", *d);
            r.put("seed", cli.seed);
            if *d <= p.cols() {
                let plan = coloring::exact_d_plan(&p, *d)?;
                r.put("bound", format!("{}^{}", p.q(), plan.exponent));
                r.put("planned_rows", plan.rows);
            }
            r.put("rows", c.parity().rows());
            r.put("colors", c.num_colors().to_string());
            r.put("provenance", c.provenance());
            coloring_run(cli, &c, r, *verify, *pairwise)
        }
        ColorCmd::Verify { file, pairwise } => {
            let c = Coloring::from_json(&read_json(file)?)?;
            let v = coloring::verify_coloring(&c, mode_of(*pairwise), budget(cli, Budget::DEFAULT)?)?;
            let mut r = Report::default();
            r.put("mode", c.mode().as_str());
            r.put("d", c.d());
            r.put("colors", c.num_colors().to_string());
            r.put("method", if *pairwise { "pairwise" } else { "kernel-scan" });
            let code_out = verdict_into(&mut r, &c, &v);
            Ok(Run { code: code_out, ..ok(r) })
        }
        ColorCmd::Assign { file, vertex } => {
            let c = Coloring::from_json(&read_json(file)?)?;
            let p = c.params();
            let m = MatFq::from_label(vertex, p.rows(), p.cols(), p.q())?;
            let mut r = Report::default();
            r.put("vertex", m.label(p.q()));
            r.put("color", c.color_of_matrix(&m)?.to_string());
            Ok(ok(r))
        }
    }
}

fn bounds_cmd(cli: &Cli, cmd: &BoundsCmd) -> Result<Run> {
    match cmd {
        BoundsCmd::Row { big_n, n, d, q, json, csv } => {
            if *n == 0 || *d == 0 || *q < 2 || *n > *big_n {
                return Err(Error::InvalidParameter("need 1 <= n <= N, d >= 1 and q >= 2".into()));
            }
            let row = BoundsRow::compute(*big_n, *n, *d, *q);
            let format = if *json {
                Format::Json
            } else if *csv {
                Format::Csv
            } else {
                cli.format.unwrap_or(Format::Text)
            };
            let body = match format {
                Format::Json => pretty(&row.to_json()),
                Format::Csv => format!("{}\n{}\n", bounds::CSV_HEADER, bounds::row_csv(&row, row.note.as_deref().unwrap_or(""))),
                _ => {
                    let Value::Object(map) = row.to_json() else { unreachable!() };
                    let mut r = Report::default();
                    for (k, v) in map {
                        r.put(&k, v);
                    }
                    r.render(Format::Text)
                }
            };
            Ok(Run { report: Report::default(), artifact: Some(Artifact { body, print_without_out: true }), code: EXIT_OK })
        }
        BoundsCmd::Table1 => {
            Ok(Run { report: Report::default(), artifact: Some(Artifact { body: bounds::table1(), print_without_out: true }), code: EXIT_OK })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_q_factors_prime_powers() {
        assert_eq!(split_q(2, Some(1)).unwrap(), (2, 1));
        assert_eq!(split_q(9, None).unwrap(), (3, 2));
        assert!(split_q(4, Some(1)).is_err());
        assert!(split_q(6, None).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["matgraph", "bounds", "table1"]), EXIT_OK);
        assert_eq!(main_with_args(["matgraph", "bounds", "nope"]), EXIT_USAGE);
        assert_eq!(main_with_args(["matgraph", "--budget", "10", "color", "dist", "--q", "2", "--N", "2", "--n", "2", "--d", "1", "--verify"]), EXIT_BUDGET);
        assert_eq!(main_with_args(["matgraph", "color", "dist", "--q", "2", "--m", "1", "--N", "2", "--n", "2", "--d", "1", "--verify"]), EXIT_OK);
        assert_eq!(main_with_args(["matgraph", "code", "builtin", "C3", "--verify"]), EXIT_OK);
    }
}
