use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use monarchy_sssp::bench::{self, BenchRecord};
use monarchy_sssp::generators::{
    gen_grid, gen_random_connected_graph, gen_random_graph, shape_sweep_specs, GridSpec,
};
use monarchy_sssp::io::{self, Instance};
use monarchy_sssp::oracle::{
    bfs_levels, check_distances, check_fixpoint, check_reachability, check_tree, dijkstra_oracle,
    minhop_dp_oracle, Consistency, Failure, VerificationReport,
};
use monarchy_sssp::pipeline::{run_pipeline, InvariantProbe};
use monarchy_sssp::{Algorithm, Cost, Graph, MinPlus, NoProbe, SchedulerKind, SolverState};

/// Shortest paths by partition and relaxation contests.
#[derive(Parser)]
#[command(name = "monarchy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Partition, optimise, and export per-node results.
    Solve(SolveArgs),
    /// Check a result export against an instance.
    Verify(VerifyArgs),
    /// Run every optimiser on one shared partition and compare.
    Compare(CompareArgs),
    /// Shape sweep over grids with a fixed node count, as CSV.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Rows x cols lattice, optionally with a planted zero-weight serpentine.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1)]
        wmin: u32,
        #[arg(long, default_value_t = 10)]
        wmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        hzp: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform random arcs.
    Random {
        #[arg(long)]
        nodes: usize,
        /// Total arc count.
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        wmin: u32,
        #[arg(long, default_value_t = 10)]
        wmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        directed: bool,
        /// Start from a random spanning arborescence rooted at node 1.
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Optimal,
    Minhop,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// hda, eom, eom2, hrp, fr, ht, or multi.
    #[arg(long, default_value = "ht")]
    algo: String,
    /// Scheduler used by `--algo multi`.
    #[arg(long, default_value = "ht")]
    scheduler: String,
    /// Repeatable. Defaults to the instance's recorded source, else 1.
    #[arg(long = "source")]
    sources: Vec<u32>,
    /// Audit the tree and reachability after every big loop.
    #[arg(long)]
    debug_invariants: bool,
    /// Per-node results; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Metrics record; stderr when absent.
    #[arg(long)]
    metrics: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    results: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Optimal)]
    mode: Mode,
}

#[derive(Args)]
struct CompareArgs {
    instance: PathBuf,
    #[arg(long)]
    source: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10_000)]
    n_total: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "10,20,50,100,200,500,1000"
    )]
    cols: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "eom,eom2,hrp,fr,ht")]
    algos: Vec<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random weights everywhere instead of a planted zero path.
    #[arg(long)]
    plain: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(g) => cmd_gen(g),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    }
}

fn load(path: &Path) -> Result<Instance> {
    io::read_instance(path).with_context(|| format!("reading {}", path.display()))
}

fn default_source(inst: &Instance) -> u32 {
    inst.comment_value("source")
        .and_then(|s| s.parse().ok())
        .unwrap_or(1)
}

fn cmd_gen(cmd: GenCommand) -> Result<Status> {
    match cmd {
        GenCommand::Grid {
            rows,
            cols,
            wmin,
            wmax,
            seed,
            hzp,
            out,
        } => {
            let spec = GridSpec::new(rows, cols)
                .weights(wmin, wmax)
                .seed(seed)
                .hzp(hzp);
            let inst = gen_grid(&spec)?;
            emit(
                out.as_deref(),
                &io::write_instance(&inst.graph, &io::grid_comments(&inst)),
            )?;
        }
        GenCommand::Random {
            nodes,
            arcs,
            wmin,
            wmax,
            seed,
            directed,
            connected,
            out,
        } => {
            let g = if connected {
                let extra = arcs.checked_sub(nodes.saturating_sub(1)).with_context(|| {
                    format!(
                        "a connected graph on {nodes} nodes needs at least {} arcs",
                        nodes - 1
                    )
                })?;
                gen_random_connected_graph(nodes, extra, (wmin, wmax), seed, directed, 1)?
            } else {
                gen_random_graph(nodes, arcs, (wmin, wmax), seed, directed)?
            };
            let comment = format!(
                "random nodes={nodes} arcs={arcs} wmin={wmin} wmax={wmax} seed={seed} connected={} source=1",
                connected as u8
            );
            emit(out.as_deref(), &io::write_instance(&g, &[comment]))?;
        }
    }
    Ok(Status::Ok)
}

fn cmd_solve(args: SolveArgs) -> Result<Status> {
    let inst = load(&args.instance)?;
    let g = &inst.graph;
    let (algorithm, multi) = if args.algo.eq_ignore_ascii_case("multi") {
        let kind: SchedulerKind = args.scheduler.parse()?;
        (Algorithm::Scheduler(kind), true)
    } else {
        (args.algo.parse::<Algorithm>()?, false)
    };
    let sources = if args.sources.is_empty() {
        vec![default_source(&inst)]
    } else {
        args.sources.clone()
    };
    let tagged = multi || sources.len() > 1;

    let mut audit = VerificationReport::default();
    let run = if args.debug_invariants {
        let regions = monarchy_sssp::partition::hda_multi(g, &sources, &MinPlus, tagged)?.0;
        let mut probe = InvariantProbe::new(g, &regions, &MinPlus);
        let run = run_pipeline(g, &sources, algorithm, &MinPlus, tagged, &mut probe)?;
        audit = probe.report;
        audit.merge(check_tree(g, &run.state, &MinPlus, Consistency::Exact));
        audit.merge(check_reachability(&run.state, &run.regions));
        eprintln!(
            "invariants checked at {} big loop(s)",
            probe.big_loops_checked
        );
        run
    } else {
        run_pipeline(g, &sources, algorithm, &MinPlus, tagged, &mut NoProbe)?
    };

    emit(
        args.out.as_deref(),
        &io::write_results(&run.regions, &run.state),
    )?;
    let name = args.instance.display().to_string();
    let record = BenchRecord::from_run(&name, &name, g, &run);
    let text = match args.format {
        Format::Csv => bench::to_csv(&[record])?,
        Format::Text => record.to_text() + "\n",
    };
    match &args.metrics {
        Some(p) => emit(Some(p), &text)?,
        None => eprint!("{text}"),
    }
    if !audit.ok() {
        eprintln!("invariant violations:\n{audit}");
        return Ok(Status::Failed);
    }
    Ok(Status::Ok)
}

fn fail(
    report: &mut VerificationReport,
    check: &'static str,
    location: String,
    expected: String,
    got: String,
) {
    report.failures.push(Failure {
        check,
        location,
        expected,
        got,
    });
}

/// Elementwise minimum of single-source distances.
fn multi_source_distances(g: &Graph, sources: &[u32]) -> Vec<Option<Cost>> {
    let mut best: Vec<Option<Cost>> = vec![None; g.node_count() + 1];
    for &s in sources {
        let d = dijkstra_oracle(g, s, &MinPlus).dist;
        for (b, x) in best.iter_mut().zip(d) {
            *b = match (*b, x) {
                (Some(a), Some(c)) => Some(a.min(c)),
                (a, c) => a.or(c),
            };
        }
    }
    best
}

fn check_tags(state: &SolverState<Cost>, g: &Graph, report: &mut VerificationReport) {
    let Some(tags) = &state.tags else { return };
    let mut cache = std::collections::HashMap::new();
    for v in 1..=g.node_count() as u32 {
        let Some(c) = state.cost_of(v) else { continue };
        let t = tags[v as usize];
        if !state.is_source(t) {
            fail(
                report,
                "tags",
                format!("node {v}"),
                "a source".into(),
                t.to_string(),
            );
            continue;
        }
        let d = cache
            .entry(t)
            .or_insert_with(|| dijkstra_oracle(g, t, &MinPlus).dist);
        if d[v as usize] != Some(c) {
            fail(
                report,
                "tags",
                format!("node {v}"),
                format!("source achieving {c}"),
                t.to_string(),
            );
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<Status> {
    let inst = load(&args.instance)?;
    let g = &inst.graph;
    let text = fs::read_to_string(&args.results)
        .with_context(|| format!("reading {}", args.results.display()))?;
    let rows = io::parse_results(&text)?;
    let (regions, state) = io::results_to_state(g, &rows, &MinPlus)?;
    if state.sources.is_empty() {
        bail!("results name no source (no node in region 1)");
    }

    let mut report = VerificationReport::default();
    let levels = bfs_levels(g, &state.sources);
    for v in 1..=g.node_count() as u32 {
        let want = levels[v as usize].map_or(0, |l| l + 1);
        let got = regions.region[v as usize] as usize;
        if want != got {
            fail(
                &mut report,
                "regions",
                format!("node {v}"),
                want.to_string(),
                got.to_string(),
            );
        }
    }
    report.merge(check_reachability(&state, &regions));
    match args.mode {
        Mode::Optimal => {
            report.merge(check_tree(g, &state, &MinPlus, Consistency::Exact));
            report.merge(check_fixpoint(g, &state, &MinPlus));
            report.merge(check_distances(
                &state,
                &multi_source_distances(g, &state.sources),
            ));
            check_tags(&state, g, &mut report);
        }
        Mode::Minhop => {
            let [source] = state.sources[..] else {
                bail!("minhop mode takes a single-source export");
            };
            report.merge(check_tree(g, &state, &MinPlus, Consistency::Exact));
            report.merge(check_distances(
                &state,
                &minhop_dp_oracle(g, source, &MinPlus).dist,
            ));
        }
    }
    if report.ok() {
        println!("ok: {} nodes verified", g.node_count());
        Ok(Status::Ok)
    } else {
        println!("{report}");
        Ok(Status::Failed)
    }
}

fn cmd_compare(args: CompareArgs) -> Result<Status> {
    let inst = load(&args.instance)?;
    let g = &inst.graph;
    let source = args.source.unwrap_or_else(|| default_source(&inst));
    let cmp = bench::compare(g, source, &Algorithm::OPTIMISERS)?;
    if let Some((a, b, v)) = cmp.disagreement() {
        println!("MISMATCH: {a} and {b} disagree at node {v}");
        return Ok(Status::Failed);
    }
    let want = dijkstra_oracle(g, source, &MinPlus).dist;
    if let Some(row) = cmp.rows.first() {
        if row.costs[..] != want[1..] {
            println!("MISMATCH: optimisers agree with each other but not with the reference");
            return Ok(Status::Failed);
        }
    }
    match args.format {
        Format::Text => {
            println!("all agree ({} nodes, E={})", g.node_count(), g.arc_count());
            print!("{}", cmp.table(g));
        }
        Format::Csv => {
            let name = args.instance.display().to_string();
            print!("{}", bench::to_csv(&cmp.records(&name, &name, g))?);
        }
    }
    Ok(Status::Ok)
}

fn cmd_bench(args: BenchArgs) -> Result<Status> {
    let algos = args
        .algos
        .iter()
        .map(|a| a.parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()?;
    let specs: Vec<GridSpec> = shape_sweep_specs(args.n_total, &args.cols, args.seed)?
        .into_iter()
        .map(|s| s.hzp(!args.plain))
        .collect();
    let cells = specs
        .par_iter()
        .map(|spec| bench::bench_grid(spec, &algos))
        .collect::<Result<Vec<_>, _>>()?;
    let records: Vec<BenchRecord> = cells.into_iter().flatten().collect();
    emit(args.out.as_deref(), &bench::to_csv(&records)?)?;
    Ok(Status::Ok)
}
