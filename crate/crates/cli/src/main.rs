use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mahavier::catalog::{catalog, fixture, parse_reading};
use mahavier::config::load_relation;
use mahavier::output;
use mahavier::parse::parse_scalar;
use mahavier::suite::{render, run_suite};
use mahavier::threads::Threaded;
use mahavier::CliError;
use mahavier_core::counting::{count_series_with, CountOptions, CountSeries, DEFAULT_BUDGET};
use mahavier_core::dynamics::{analyze_graph, orbit_stream, OrbitPolicy};
use mahavier_core::entropy::{box_dimension, entropy_limit, entropy_transfer, Method};
use mahavier_core::graph::TransitionGraph;
use mahavier_core::grid::{GridMode, GridSpec};
use mahavier_core::mahavier::star_power;
use mahavier_core::Relation;

const EXIT_CONFIG: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const MIN_BUDGET: usize = 1000;

#[derive(Parser)]
#[command(name = "mahavier", version, about = "Entropy of closed relations by box counting on Mahavier products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Built-in fixture name (see list-fixtures)
    #[arg(long, conflicts_with = "relation")]
    fixture: Option<String>,
    /// TOML relation file
    #[arg(long)]
    relation: Option<PathBuf>,
    /// Spacing used by g-a fixtures
    #[arg(long, default_value = "figure")]
    ga_reading: String,
}

#[derive(Args, Clone)]
struct Grid {
    /// Number of cells per axis
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Partition)]
    mode: ModeArg,
    /// Overlap of neighbouring cells, as a rational literal
    #[arg(long)]
    eps: Option<String>,
    /// Smallest grid is 2^dyadic-min cells
    #[arg(long)]
    dyadic_min: Option<u32>,
    /// Largest grid is 2^dyadic-max cells
    #[arg(long)]
    dyadic_max: Option<u32>,
    /// Maximum number of chain states kept per coordinate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Partition,
    Overlap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Transfer,
    Fekete,
    Slope,
}

#[derive(Subcommand)]
enum Command {
    /// Box counts for depths 1..=depth as CSV
    Count {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy estimate as JSON
    Entropy {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 24)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box-counting dimension of the depth-m product as JSON
    Dimension {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shift dynamics of a finite relation as JSON, with an optional edge list
    Dynamics {
        #[command(flatten)]
        source: Source,
        /// Largest period counted
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Seed for a random orbit sample; lexicographic when absent
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 16)]
        orbit_length: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the transition graph as "p -> q" lines
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Tuples of the k-th Mahavier power of a finite relation as CSV
    Product {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every built-in fixture against its expected values
    PaperSuite {
        #[arg(long, default_value = "figure")]
        ga_reading: String,
    },
    /// Built-in fixtures with their expected entropy
    ListFixtures,
}

/// What a command produced, for the exit status.
enum Outcome {
    Done,
    Budget,
    Mismatch,
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn load(source: &Source) -> Result<(Relation, String), CliError> {
    let reading = parse_reading(&source.ga_reading)?;
    match (&source.fixture, &source.relation) {
        (Some(name), None) => Ok((fixture(name, reading)?.0, name.clone())),
        (None, Some(path)) => load_relation(path),
        _ => Err(config("give exactly one of --fixture or --relation")),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_depth(depth: usize) -> Result<(), CliError> {
    if depth < 1 {
        return Err(config("--depth must be at least 1"));
    }
    Ok(())
}

fn check_budget(grid: &Grid) -> Result<(), CliError> {
    if grid.budget < MIN_BUDGET {
        return Err(config(format!("--budget must be at least {MIN_BUDGET}")));
    }
    Ok(())
}

fn grid_spec(grid: &Grid, n: usize) -> Result<GridSpec, CliError> {
    if n < 2 {
        return Err(config("grids need at least 2 cells"));
    }
    let spec = match (grid.mode, &grid.eps) {
        (ModeArg::Partition, None) => GridSpec::partition(n)?,
        (ModeArg::Partition, Some(_)) => return Err(config("--eps only applies to --mode overlap")),
        (ModeArg::Overlap, None) => GridSpec::overlap_default(n)?,
        (ModeArg::Overlap, Some(e)) => GridSpec::new(n, GridMode::Overlap, parse_scalar(e)?)?,
    };
    Ok(spec)
}

/// Grid sizes from `--cells` or the dyadic range.
fn grid_sizes(grid: &Grid, default_min: u32, default_max: u32) -> Result<Vec<usize>, CliError> {
    if let Some(n) = grid.cells {
        if grid.dyadic_min.is_some() || grid.dyadic_max.is_some() {
            return Err(config("--cells conflicts with --dyadic-min/--dyadic-max"));
        }
        return Ok(vec![n]);
    }
    let lo = grid.dyadic_min.unwrap_or(default_min);
    let hi = grid.dyadic_max.unwrap_or(default_max.max(lo));
    if lo < 1 || lo > hi || hi > 20 {
        return Err(config("dyadic range must satisfy 1 <= min <= max <= 20"));
    }
    Ok((lo..=hi).map(|e| 1usize << e).collect())
}

fn family(g: &Relation, grid: &Grid, sizes: &[usize], depth: usize) -> Result<Vec<CountSeries>, CliError> {
    let exec = Threaded::from_env();
    let opts = CountOptions::with_budget(grid.budget);
    sizes
        .iter()
        .map(|&n| Ok(count_series_with(g, &grid_spec(grid, n)?, depth, &opts, &exec)?))
        .collect()
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Count { source, grid, depth, out } => {
            check_depth(depth)?;
            check_budget(&grid)?;
            let (g, _) = load(&source)?;
            let n = grid.cells.unwrap_or(4);
            let s = family(&g, &grid, &[n], depth)?.remove(0);
            emit(&out, &output::count_csv(&s))?;
            Ok(if s.any_budget() { Outcome::Budget } else { Outcome::Done })
        }
        Command::Entropy { source, grid, depth, method, out } => {
            check_depth(depth)?;
            check_budget(&grid)?;
            let (g, name) = load(&source)?;
            let finite = g.as_points().is_some();
            let est = match method {
                MethodArg::Transfer | MethodArg::Auto if finite => entropy_transfer(&g)?,
                MethodArg::Transfer => return Err(config("transfer method needs a finite point set")),
                _ => {
                    let sizes = grid_sizes(&grid, 1, 3)?;
                    let fam = family(&g, &grid, &sizes, depth)?;
                    let m = if method == MethodArg::Fekete { Method::FeketeInf } else { Method::Slope };
                    entropy_limit(&fam, m)?
                }
            };
            emit(&out, &output::pretty(&output::entropy_json(&name, &est)))?;
            Ok(if est.budget_flags() { Outcome::Budget } else { Outcome::Done })
        }
        Command::Dimension { source, grid, depth, out } => {
            check_depth(depth)?;
            check_budget(&grid)?;
            if !matches!(grid.mode, ModeArg::Partition) {
                return Err(config("dimension uses partition grids"));
            }
            let (g, name) = load(&source)?;
            let sizes = grid_sizes(&grid, 1, 6)?;
            let d = box_dimension(&g, depth, &sizes, grid.budget)?;
            emit(&out, &output::pretty(&output::dimension_json(&name, &d)))?;
            Ok(Outcome::Done)
        }
        Command::Dynamics { source, depth, seed, orbit_length, out, edges } => {
            let (g, name) = load(&source)?;
            let graph = TransitionGraph::from_relation(&g)?;
            let report = analyze_graph(&graph, depth);
            let start = graph.kernel_nodes().first().copied().or(if graph.is_empty() { None } else { Some(0) });
            let policy = seed.map_or(OrbitPolicy::Lexicographic, OrbitPolicy::RandomSeeded);
            let orbit = match start {
                Some(v) => Some(orbit_stream(&g, graph.node(v), policy, orbit_length)?),
                None => None,
            };
            let json = output::dynamics_json(&name, &report, orbit.as_ref().map(|o| (o.coords.as_slice(), o.dead_end)));
            emit(&out, &output::pretty(&json))?;
            if let Some(path) = edges {
                std::fs::write(path, output::edge_list(&graph))?;
            }
            Ok(Outcome::Done)
        }
        Command::Product { source, k, out } => {
            check_depth(k)?;
            let (g, _) = load(&source)?;
            let p = star_power(&g, k)?;
            emit(&out, &output::product_csv(&p))?;
            Ok(Outcome::Done)
        }
        Command::PaperSuite { ga_reading } => {
            let rows = run_suite(parse_reading(&ga_reading)?)?;
            print!("{}", render(&rows));
            Ok(if rows.iter().all(|r| r.pass) { Outcome::Done } else { Outcome::Mismatch })
        }
        Command::ListFixtures => {
            let entries = catalog();
            let w = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
            for e in entries {
                println!("{:w$}  {:8}  {}", e.name, e.kind, e.expected);
            }
            Ok(Outcome::Done)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Budget) => {
            eprintln!("state budget exceeded; counts are brackets");
            ExitCode::from(EXIT_BUDGET)
        }
        Ok(Outcome::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
