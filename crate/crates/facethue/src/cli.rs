//! The `facethue` command line.
//!
//! Exit codes: 0 success (and verified, where a colouring is produced),
//! 1 usage or parse error, 2 run exhausted its step budget, 3 an internal
//! invariant failed (verification or replay mismatch).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use facethue_core::analysis::{
    a_bruteforce, a_sequence, cardano_roots, catalan_check, growth_constant, threshold_steps,
    AnalysisError, RecurrenceForm, BRUTEFORCE_MAX_N,
};
use facethue_core::replay::invert_log;
use facethue_core::{
    run_deterministic, run_randomized, verify_coloring, ListAssignment, PlaneGraph, Status,
    VerifyReport,
};
use rayon::prelude::*;

use crate::document;
use crate::report::{GraphSummary, RunReport, Verification};
use crate::sources::{GraphSource, ListSource};
use crate::trace::{replay_trace, traced_run, Trace};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_EXHAUSTED: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "facethue",
    version,
    about = "Facial nonrepetitive list edge colouring of plane graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the graph document of a family member or file
    Generate(GenerateArgs),
    /// Run the randomized colouring and verify the result
    Color(ColorArgs),
    /// Check the final colouring of a trace
    Verify(TraceArgs),
    /// Recover the input vector behind a trace
    Replay(TraceArgs),
    /// Run seeded trials and check that every log inverts to its input
    ReplayCheck(ReplayCheckArgs),
    /// Counting tables, characteristic roots and step thresholds
    Analyze(AnalyzeArgs),
    /// Failure fractions over a step grid
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Family shorthand (path:N, cycle:N, wheel:N, grid:RxC) or graph document path
    #[arg(long)]
    pub graph: String,
    /// uniform:K, random:K:SEED[:PALETTE], file:PATH or doc (default: doc if the
    /// document has lists, else uniform:<k>)
    #[arg(long)]
    pub lists: Option<String>,
    /// List size for the default uniform lists
    #[arg(long, default_value_t = 12)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Also write the lists into the document
    #[arg(long)]
    pub with_lists: bool,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step budget (default: run until every edge is coloured)
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Write the step trace to this file
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Directory for graph.json, trace.txt and report.json
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub trace: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReplayCheckArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Seed of the first trial; trial i uses seed + i
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Step budget per trial (default 1000 m)
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Replay this trace file instead of running trials
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    /// Largest n for the brute-force column
    #[arg(long, default_value_t = 18)]
    pub brute_max: usize,
    /// Print the a_n table
    #[arg(long)]
    pub table: bool,
    /// Print the characteristic roots
    #[arg(long)]
    pub roots: bool,
    /// Print the growth constant estimate
    #[arg(long)]
    pub growth: bool,
    /// Print threshold_steps(m, k)
    #[arg(long)]
    pub threshold: bool,
    /// Print the Catalan table
    #[arg(long)]
    pub catalan: bool,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 12)]
    pub k: usize,
    #[arg(long, default_value_t = 40)]
    pub t_max: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated graph sources
    #[arg(long, value_delimiter = ',', required = true)]
    pub graphs: Vec<String>,
    /// Comma-separated list sizes (uniform lists)
    #[arg(long, value_delimiter = ',', default_value = "12")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    /// Comma-separated step budgets: integers or multiples of m such as m-1, 2m, 8m+5
    #[arg(long, value_delimiter = ',', default_value = "m-1,m,2m,4m,8m")]
    pub steps: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also write the table to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: e.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Color(a) => cmd_color(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Replay(a) => cmd_replay(a),
        Command::ReplayCheck(a) => cmd_replay_check(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

struct Loaded {
    source: GraphSource,
    list_source: ListSource,
    graph: PlaneGraph,
    lists: ListAssignment,
}

fn load(a: &GraphArgs) -> anyhow::Result<Loaded> {
    let source = GraphSource::parse(&a.graph)?;
    let (graph, stored) = source.load()?;
    let list_source = match &a.lists {
        Some(s) => ListSource::parse(s)?,
        None if stored.is_some() => ListSource::Document,
        None => ListSource::Uniform(a.k),
    };
    let lists = list_source.load(graph.edge_count(), stored.as_deref())?;
    Ok(Loaded {
        source,
        list_source,
        graph,
        lists,
    })
}

fn summary(g: &PlaneGraph) -> GraphSummary {
    GraphSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces: g.face_count(),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_file(path: &PathBuf, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let l = load(&a.graph)?;
    let text = document::serialize(l.graph.rotation_system(), a.with_lists.then_some(&l.lists));
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn verification(report: &VerifyReport) -> Verification {
    Verification {
        valid: report.is_valid(),
        uncoloured: report.uncoloured.len(),
        list_violations: report.list_violations.len(),
        repetitions: report.repetitions.len(),
    }
}

fn cmd_color(a: ColorArgs) -> CmdResult {
    let l = load(&a.graph)?;
    let g = &l.graph;
    let header = vec![
        "facethue trace".to_string(),
        format!("graph {}", l.source),
        format!("lists {}", l.list_source),
        format!("seed {}", a.seed),
    ];
    let started = Instant::now();
    let run = traced_run(g, &l.lists, a.seed, a.max_steps, header)?;
    let wall = started.elapsed();
    let out = &run.outcome;

    let verified = (out.status == Status::Completed)
        .then(|| verification(&verify_coloring(g, &l.lists, &out.coloring)));
    let report = RunReport {
        graph: l.source.to_string(),
        summary: summary(g),
        lists: l.list_source.to_string(),
        k: l.lists.k(),
        seed: a.seed,
        max_steps: a.max_steps,
        status: out.status.into(),
        steps_used: out.steps_used,
        repetitions: out.record.repetition_count(),
        verification: verified.clone(),
        wall_time_ms: wall.as_secs_f64() * 1e3,
    };

    print!("{}", report.human());
    if out.status == Status::Completed {
        println!("colouring   {}", join(out.coloring.as_slice()));
    }
    let trace_text = run.trace.render();
    if let Some(p) = &a.trace {
        write_file(p, &trace_text)?;
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_file(
            &dir.join("graph.json"),
            &document::serialize(g.rotation_system(), Some(&l.lists)),
        )?;
        write_file(&dir.join("trace.txt"), &trace_text)?;
        write_file(
            &dir.join("report.json"),
            &(serde_json::to_string_pretty(&report)? + "\n"),
        )?;
    }

    match verified {
        None => Ok(EXIT_EXHAUSTED),
        Some(v) if v.valid => Ok(EXIT_OK),
        Some(_) => Err(Failure {
            code: EXIT_INVARIANT,
            error: anyhow!("completed colouring failed verification"),
        }),
    }
}

fn read_trace(p: &PathBuf) -> anyhow::Result<Trace> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Trace::parse(&text).with_context(|| format!("in {}", p.display()))
}

fn cmd_verify(a: TraceArgs) -> CmdResult {
    let l = load(&a.graph)?;
    let trace = read_trace(&a.trace)?;
    if trace.final_coloring.len() != l.graph.edge_count() {
        return Err(anyhow!(
            "final colouring has {} entries for {} edges",
            trace.final_coloring.len(),
            l.graph.edge_count()
        )
        .into());
    }
    let report = verify_coloring(&l.graph, &l.lists, &trace.final_coloring);
    let v = verification(&report);
    println!("uncoloured       {}", v.uncoloured);
    println!("list violations  {}", v.list_violations);
    println!("repetitions      {}", v.repetitions);
    for p in report.repetitions.iter().take(5) {
        println!("  repetitive path {}", join(&p.edges));
    }
    println!("valid            {}", if v.valid { "yes" } else { "no" });
    Ok(if v.valid {
        EXIT_OK
    } else if v.list_violations == 0 && v.repetitions == 0 {
        EXIT_EXHAUSTED
    } else {
        EXIT_INVARIANT
    })
}

fn cmd_replay(a: TraceArgs) -> CmdResult {
    let l = load(&a.graph)?;
    let trace = read_trace(&a.trace)?;
    let input = replay_trace(&l.graph, &l.lists, &trace)?;
    println!("steps  {}", input.len());
    println!("input  {}", join(input.entries()));
    println!("replay ok");
    Ok(EXIT_OK)
}

fn cmd_replay_check(a: ReplayCheckArgs) -> CmdResult {
    if let Some(trace) = a.trace {
        return cmd_replay(TraceArgs {
            graph: a.graph,
            trace,
        });
    }
    if a.trials == 0 {
        return Err(anyhow!("--trials must be at least 1").into());
    }
    let l = load(&a.graph)?;
    let g = &l.graph;
    let budget = a.max_steps.unwrap_or(1000 * g.edge_count());
    println!(
        "# replay-check graph {} lists {} seed {}",
        l.source, l.list_source, a.seed
    );
    let mut failed = Vec::new();
    for i in 0..a.trials {
        let seed = a.seed + i as u64;
        let (out, input) = run_randomized(g, &l.lists, seed, Some(budget))?;
        let ok = match invert_log(g, &l.lists, &out.coloring, &out.record, out.steps_used) {
            Ok(back) => back == input && run_deterministic(g, &l.lists, &back)? == out,
            Err(_) => false,
        };
        if !ok {
            eprintln!("mismatch at seed {seed}");
            failed.push(seed);
        }
    }
    println!("trials passed {}/{}", a.trials - failed.len(), a.trials);
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_INVARIANT,
            error: anyhow!("replay mismatch at seeds {}", join(&failed)),
        })
    }
}

fn tsv(out: &mut String, row: &[String]) {
    let _ = writeln!(out, "{}", row.join("\t"));
}

fn cmd_analyze(a: AnalyzeArgs) -> CmdResult {
    let all = !(a.table || a.roots || a.growth || a.threshold || a.catalan);
    if a.n_max == 0 || a.n_max > 50 {
        return Err(anyhow!("--n-max must be between 1 and 50").into());
    }
    if a.brute_max > BRUTEFORCE_MAX_N {
        return Err(anyhow!("--brute-max is limited to {BRUTEFORCE_MAX_N}").into());
    }
    let mut out = String::new();
    let roots = cardano_roots();

    if all || a.table {
        let compact = a_sequence(a.n_max, RecurrenceForm::Compact);
        let conv = a_sequence(a.n_max, RecurrenceForm::Convolution);
        let growth = growth_constant(a.n_max);
        let c = growth
            .estimates
            .iter()
            .map(|&(_, e)| e)
            .fold(0.0f64, f64::max);
        let _ = writeln!(
            out,
            "# a_n; bound = C lambda0^n with C = {c:.6} (max of a_n / lambda0^n over the table)"
        );
        tsv(
            &mut out,
            &["n", "a_n", "convolution", "bruteforce", "ratio", "bound"].map(String::from),
        );
        for n in 1..=a.n_max {
            let an = &compact[n - 1];
            let brute = if n <= a.brute_max {
                a_bruteforce(n)?.to_string()
            } else {
                "-".into()
            };
            let ratio = if n == 1 {
                "-".into()
            } else {
                format!("{:.9}", to_f64(an) / to_f64(&compact[n - 2]))
            };
            tsv(
                &mut out,
                &[
                    n.to_string(),
                    an.to_string(),
                    conv[n - 1].to_string(),
                    brute,
                    ratio,
                    format!("{:.6e}", c * roots.lambda0.powi(n as i32)),
                ],
            );
        }
        out.push('\n');
    }
    if all || a.roots {
        let _ = writeln!(out, "# roots of x^3 - 3x^2 - x - 1");
        tsv(
            &mut out,
            &["root", "re", "im", "abs", "residual"].map(String::from),
        );
        let rows = [
            ("lambda0", roots.lambda0, 0.0),
            ("lambda1", roots.lambda1.re, roots.lambda1.im),
            ("lambda2", roots.lambda2.re, roots.lambda2.im),
        ];
        for (i, (name, re, im)) in rows.into_iter().enumerate() {
            tsv(
                &mut out,
                &[
                    name.into(),
                    format!("{re:.12}"),
                    format!("{im:.12}"),
                    format!("{:.12}", re.hypot(im)),
                    format!("{:.3e}", roots.residuals[i]),
                ],
            );
        }
        out.push('\n');
    }
    if all || a.growth {
        let g = growth_constant(a.n_max);
        let n = a.n_max;
        let _ = writeln!(out, "# growth");
        let _ = writeln!(out, "c0\t{:.9}", g.c0);
        let _ = writeln!(out, "relative_change\t{:.3e}", g.last_delta);
        let an = to_f64(&a_sequence(n, RecurrenceForm::Compact)[n - 1]);
        let _ = writeln!(out, "nth_root_a_{n}\t{:.9}", an.powf(1.0 / n as f64));
        out.push('\n');
    }
    if all || a.threshold {
        let t = threshold_steps(a.m, a.k).map_err(|e| match e {
            AnalysisError::KTooSmall(_) => anyhow!("KTooSmall: {e}"),
            other => other.into(),
        })?;
        let _ = writeln!(out, "# threshold: least t with (k+1)^m a_2t < k^t");
        let _ = writeln!(out, "m\t{}\nk\t{}\nthreshold_steps\t{t}", a.m, a.k);
        out.push('\n');
    }
    if all || a.catalan {
        let _ = writeln!(out, "# Catalan numbers against 4^t / (sqrt(pi) t^1.5)");
        tsv(
            &mut out,
            &["t", "catalan", "bound", "ratio", "holds"].map(String::from),
        );
        for t in 1..=a.t_max {
            let c = catalan_check(t);
            tsv(
                &mut out,
                &[
                    t.to_string(),
                    c.catalan.to_string(),
                    format!("{:.6e}", c.bound),
                    format!("{:.6}", to_f64(&c.catalan) / c.bound),
                    c.holds.to_string(),
                ],
            );
        }
    }
    print!("{}", out.trim_end_matches('\n'));
    println!();
    Ok(EXIT_OK)
}

fn to_f64(x: &num_bigint::BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY)
}

/// A step budget relative to the edge count: `c m + d`, or a plain integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepSpec {
    pub per_edge: i64,
    pub offset: i64,
}

impl StepSpec {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        let s = s.trim();
        let bad = || anyhow!("bad step budget `{s}` (examples: 500, m, 2m, m-1, 4m+10)");
        let Some((coef, rest)) = s.split_once('m') else {
            return Ok(StepSpec {
                per_edge: 0,
                offset: s.parse().map_err(|_| bad())?,
            });
        };
        let per_edge = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| bad())?
        };
        let offset = match rest.chars().next() {
            None => 0,
            Some('+') => rest[1..].parse().map_err(|_| bad())?,
            Some('-') => -rest[1..].parse::<i64>().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
        };
        Ok(StepSpec { per_edge, offset })
    }

    pub fn resolve(&self, m: usize) -> usize {
        (self.per_edge * m as i64 + self.offset).max(0) as usize
    }
}

/// One cell of the bench table.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub graph: String,
    pub m: usize,
    pub k: usize,
    pub steps: usize,
    pub trials: usize,
    pub failures: usize,
}

impl BenchCell {
    pub fn fraction(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }
}

/// Runs `trials` seeds on each graph and list size once, up to the largest
/// budget, and counts the runs not finished within each budget.
pub fn bench_cells(
    graphs: &[(String, PlaneGraph)],
    ks: &[usize],
    trials: usize,
    steps: &[StepSpec],
    seed: u64,
) -> anyhow::Result<Vec<BenchCell>> {
    let mut cells = Vec::new();
    for (name, g) in graphs {
        let m = g.edge_count();
        let budgets: Vec<usize> = steps.iter().map(|s| s.resolve(m)).collect();
        let cap = budgets.iter().copied().max().unwrap_or(0).max(1);
        for &k in ks {
            let lists = ListAssignment::uniform(m, k)?;
            let finished: Vec<Option<usize>> = (0..trials as u64)
                .into_par_iter()
                .map(|i| {
                    let (out, _) = run_randomized(g, &lists, seed + i, Some(cap))?;
                    Ok((out.status == Status::Completed).then_some(out.steps_used))
                })
                .collect::<anyhow::Result<_>>()?;
            for &t in &budgets {
                let failures = finished
                    .iter()
                    .filter(|f| !matches!(f, Some(s) if *s <= t))
                    .count();
                cells.push(BenchCell {
                    graph: name.clone(),
                    m,
                    k,
                    steps: t,
                    trials,
                    failures,
                });
            }
        }
    }
    Ok(cells)
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    if a.trials < 30 {
        return Err(anyhow!("--trials must be at least 30").into());
    }
    let steps = a
        .steps
        .iter()
        .map(|s| StepSpec::parse(s))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut graphs = Vec::new();
    for s in &a.graphs {
        let src = GraphSource::parse(s)?;
        graphs.push((src.to_string(), src.load()?.0));
    }
    let cells = bench_cells(&graphs, &a.k, a.trials, &steps, a.seed)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# bench seed {} trials {} (uniform lists)",
        a.seed, a.trials
    );
    tsv(
        &mut out,
        &["graph", "m", "k", "steps", "trials", "failures", "fraction"].map(String::from),
    );
    for c in &cells {
        tsv(
            &mut out,
            &[
                c.graph.clone(),
                c.m.to_string(),
                c.k.to_string(),
                c.steps.to_string(),
                c.trials.to_string(),
                c.failures.to_string(),
                format!("{:.4}", c.fraction()),
            ],
        );
    }
    print!("{out}");
    if let Some(p) = &a.out {
        write_file(p, &out)?;
    }
    Ok(EXIT_OK)
}
