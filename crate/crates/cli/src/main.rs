use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use eqcol::graph::{gen_gnp, write_dimacs};
use eqcol::solver::{solve, SolverConfig, Variant};
use eqcol_cli::bench::{aggregate, aggregate_csv, data_csv, parse_data_csv, run_bench, BenchSpec};
use eqcol_cli::instances::{display_name, load_instance};
use eqcol_cli::report::{coloring_lines, solve_report, verify_graph, verify_line, VerifyOutcome};

/// Exact equitable graph coloring.
#[derive(Parser)]
#[command(name = "eqcol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance (DIMACS file or family name) to optimality.
    Solve(SolveArgs),
    /// Run a random G(n, p) campaign and write data and aggregate CSVs.
    Bench(BenchArgs),
    /// Recompute the aggregate CSV from a data CSV.
    Aggregate(AggregateArgs),
    /// Compare all variants against brute force on small instances.
    Verify(VerifyArgs),
    /// Write a G(n, p) graph or a named family graph in DIMACS format.
    Gen(GenArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Pruning engine.
    #[arg(long = "algo", default_value = "flow", value_parser = parse_variant)]
    variant: Variant,
    /// Time limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Recompute the clique decomposition every this many nodes.
    #[arg(long, default_value_t = 1)]
    cd_stride: usize,
    /// Restarts for the root clique decomposition.
    #[arg(long, default_value_t = 5)]
    cd_tries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    instance: String,
    #[command(flatten)]
    search: SearchArgs,
    /// Write the coloring (`vertex color` lines, 1-based) to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Vertex counts, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Edge densities, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    /// Instances per (n, p) cell.
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Variants to run, comma-separated.
    #[arg(long = "algo", value_delimiter = ',', default_value = "std,flow,comb", value_parser = parse_variant)]
    variants: Vec<Variant>,
    /// Time limit per solve in seconds.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 1)]
    cd_stride: usize,
    /// Data CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Aggregate CSV path; defaults to the data path with `_aggregate` appended to the stem.
    #[arg(long)]
    aggregate_out: Option<PathBuf>,
    /// Write zero times so that reruns give byte-identical files.
    #[arg(long)]
    no_times: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct AggregateArgs {
    data: PathBuf,
    /// Time limit the campaign ran with, in seconds.
    #[arg(long)]
    time_limit: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// DIMACS files or family names.
    instances: Vec<String>,
    /// Also check this many random G(n, p) instances.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenArgs {
    /// Family name such as `myciel5` or `queen6_6`; G(n, p) when absent.
    #[arg(long, conflicts_with_all = ["n", "p"])]
    family: Option<String>,
    #[arg(long, required_unless_present = "family")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "family")]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s)
        .ok()
        .filter(|d| !d.is_zero())
        .with_context(|| format!("invalid time limit {s}"))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Aggregate(args) => cmd_aggregate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let g = load_instance(&args.instance)?;
    let s = &args.search;
    let cfg = SolverConfig {
        variant: s.variant,
        time_limit: s.time_limit.map(seconds).transpose()?,
        cd_stride: s.cd_stride.max(1),
        cd_tries: s.cd_tries.max(1),
        seed: s.seed,
    };
    let (sol, stats) = solve(&g, &cfg);
    print!(
        "{}",
        solve_report(&display_name(&args.instance), &g, s.variant, &sol, &stats)
    );
    if let Some(path) = &args.out {
        fs::write(path, coloring_lines(&sol.coloring))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if sol.optimal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn default_aggregate_path(data: &std::path::Path) -> PathBuf {
    let stem = data
        .file_stem()
        .map_or_else(|| "bench".into(), |s| s.to_string_lossy().into_owned());
    data.with_file_name(format!("{stem}_aggregate.csv"))
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let spec = BenchSpec {
        n_list: args.n,
        p_list: args.p,
        count: args.count,
        seed: args.seed,
        variants: args.variants,
        time_limit: seconds(args.time_limit)?,
        cd_stride: args.cd_stride,
        record_times: !args.no_times,
    };
    if let Err(e) = spec.validate() {
        bail!(e);
    }
    let agg_path = args
        .aggregate_out
        .unwrap_or_else(|| default_aggregate_path(&args.out));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()?;
    let rows = pool.install(|| run_bench(&spec));
    fs::write(&args.out, data_csv(&rows))
        .with_context(|| format!("writing {}", args.out.display()))?;
    let agg = aggregate(&rows, spec.time_limit);
    fs::write(&agg_path, aggregate_csv(&agg))
        .with_context(|| format!("writing {}", agg_path.display()))?;
    println!(
        "{} rows written to {}; aggregate in {}",
        rows.len(),
        args.out.display(),
        agg_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_aggregate(args: AggregateArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.data)
        .with_context(|| format!("reading {}", args.data.display()))?;
    let rows = parse_data_csv(&text).map_err(anyhow::Error::msg)?;
    let csv = aggregate_csv(&aggregate(&rows, seconds(args.time_limit)?));
    match args.out {
        Some(path) => {
            fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.instances.is_empty() && args.random == 0 {
        bail!("nothing to verify: give instances or --random");
    }
    let mut mismatches = 0;
    let mut check = |name: &str, outcome: VerifyOutcome| {
        if matches!(outcome, VerifyOutcome::Mismatch { .. }) {
            mismatches += 1;
        }
        println!("{}", verify_line(name, &outcome));
    };
    for arg in &args.instances {
        let g = load_instance(arg)?;
        check(&display_name(arg), verify_graph(&g));
    }
    for i in 0..args.random {
        let seed = eqcol_cli::bench::instance_seed(args.seed, args.n, args.p, i);
        let g = gen_gnp(args.n, args.p, seed);
        check(
            &format!("gnp(n={}, p={}, seed={seed})", args.n, args.p),
            verify_graph(&g),
        );
    }
    if mismatches > 0 {
        eprintln!("{mismatches} mismatches");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let (g, comment) = match &args.family {
        Some(name) => (load_instance(name)?, name.clone()),
        None => {
            let (n, p) = (args.n.unwrap_or(0), args.p.unwrap_or(0.0));
            if !(0.0..=1.0).contains(&p) {
                bail!("density {p} outside [0, 1]");
            }
            (
                gen_gnp(n, p, args.seed),
                format!("G(n={n}, p={p}) seed {}", args.seed),
            )
        }
    };
    let text = write_dimacs(&g, Some(&comment));
    match args.out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
