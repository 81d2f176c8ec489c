use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use tmp_solver::bench::{BenchConfig, BenchMethod, run, to_csv, to_table};
use tmp_solver::generator::{GenSpec, emit_instance, file_name, generate};
use tmp_solver::oracle::{DEFAULT_MAX_T, oracle_min};
use tmp_solver::preprocess::{ShrinkReport, shrink};
use tmp_solver::{BlockId, Method, parse_instance, simulate_order, solve, solve_bottom_up};

#[derive(Parser)]
#[command(name = "tmp-solver", version, about = "Exact train marshalling solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Memoized,
    Bottomup,
    Oracle,
}

impl From<MethodArg> for BenchMethod {
    fn from(m: MethodArg) -> BenchMethod {
        match m {
            MethodArg::Memoized => BenchMethod::Memoized,
            MethodArg::Bottomup => BenchMethod::BottomUp,
            MethodArg::Oracle => BenchMethod::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the optimum.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Memoized)]
        method: MethodArg,
        /// Skip the run-collapsing preprocessing step.
        #[arg(long)]
        no_shrink: bool,
        /// Print the per-railcar track assignment (original numbering).
        #[arg(long)]
        print_assignment: bool,
        /// Disable row skipping and interval sharing in the bottom-up solver.
        #[arg(long)]
        no_lemmas: bool,
    },
    /// Exhaustively score every block order of an instance file.
    Oracle {
        file: PathBuf,
        /// Refuse instances with more destinations than this.
        #[arg(long, default_value_t = DEFAULT_MAX_T)]
        max_t: u32,
    },
    /// Generate a seeded corpus of random instances.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u32,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the solvers over an (n, t) grid of generated instances.
    Bench {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n_list: Vec<u32>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        t_list: Vec<u32>,
        /// Instances per grid cell.
        #[arg(long, default_value_t = 10)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Memoized])]
        methods: Vec<MethodArg>,
        /// Per-instance time limit in seconds; cells over it report TLE.
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Run this many grid cells concurrently (timings stay serialized
        /// within a cell, but a loaded machine skews wall clocks).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

type CliResult = Result<(), Box<dyn std::error::Error>>;

fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve {
            file,
            method,
            no_shrink,
            print_assignment,
            no_lemmas,
        } => cmd_solve(&file, method, no_shrink, print_assignment, no_lemmas),
        Command::Oracle { file, max_t } => cmd_oracle(&file, max_t),
        Command::Gen {
            n,
            t,
            seed,
            count,
            out,
        } => cmd_gen(n, t, seed, count, &out),
        Command::Bench {
            n_list,
            t_list,
            count,
            seed,
            methods,
            time_limit,
            format,
            jobs,
        } => {
            let cfg = BenchConfig {
                n_list,
                t_list,
                count,
                seed,
                methods: methods.into_iter().map(BenchMethod::from).collect(),
                time_limit: Duration::from_secs_f64(time_limit),
                jobs,
            };
            let rows = run(&cfg);
            match format {
                FormatArg::Csv => print!("{}", to_csv(&rows)),
                FormatArg::Text => print!("{}", to_table(&rows)),
            }
            Ok(())
        }
    }
}

fn read_instance(file: &PathBuf) -> Result<tmp_solver::Instance, Box<dyn std::error::Error>> {
    let text =
        fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    Ok(parse_instance(&text)?)
}

fn cmd_solve(
    file: &PathBuf,
    method: MethodArg,
    no_shrink: bool,
    print_assignment: bool,
    no_lemmas: bool,
) -> CliResult {
    let original = read_instance(file)?;
    let (inst, report): (_, Option<ShrinkReport>) = if no_shrink {
        (original, None)
    } else {
        let (reduced, report) = shrink(&original);
        (reduced, Some(report))
    };
    let (k_opt, order, tracks) = match method {
        MethodArg::Memoized => {
            let (result, _) = solve(&inst, Method::Memoized);
            (result.k_opt, result.order, result.track_of)
        }
        MethodArg::Bottomup => {
            let (result, _) = solve_bottom_up(&inst, !no_lemmas);
            (result.k_opt, result.order, result.track_of)
        }
        MethodArg::Oracle => {
            let result = oracle_min(&inst, DEFAULT_MAX_T)?;
            let order = result.best_orders[0].clone();
            let sim = simulate_order(&inst, &order).expect("oracle orders are permutations");
            (result.k_opt, order, sim.track_of)
        }
    };
    println!("k_opt = {k_opt}");
    println!("order = {}", format_order(&order));
    if print_assignment {
        let tracks = match &report {
            Some(report) => report.map_tracks(&tracks),
            None => tracks,
        };
        for track in 1..=k_opt {
            let cars: Vec<String> = tracks
                .iter()
                .enumerate()
                .filter(|&(_, &tr)| tr == track)
                .map(|(idx, _)| (idx + 1).to_string())
                .collect();
            println!("track {track}: {}", cars.join(" "));
        }
    }
    Ok(())
}

fn cmd_oracle(file: &PathBuf, max_t: u32) -> CliResult {
    let inst = read_instance(file)?;
    let result = oracle_min(&inst, max_t)?;
    println!("k_opt = {}", result.k_opt);
    println!("evaluated = {}", result.evaluated);
    println!("optimal orders = {}", result.best_orders.len());
    println!("order = {}", format_order(&result.best_orders[0]));
    Ok(())
}

fn cmd_gen(n: u32, t: u32, seed: u64, count: u32, out: &PathBuf) -> CliResult {
    let instances = generate(&GenSpec { n, t, seed, count })?;
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    for (idx, inst) in instances.iter().enumerate() {
        let path = out.join(file_name(n, t, seed, idx as u32));
        fs::write(&path, emit_instance(inst))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}

/// Formats a block order as destination ids (canonical labels).
fn format_order(order: &[BlockId]) -> String {
    order
        .iter()
        .map(|&id| (u32::from(id) + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
