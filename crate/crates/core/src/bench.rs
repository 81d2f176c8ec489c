//! Benchmark harness: seeded corpora, per-cell timing, CSV/text tables.
//!
//! A benchmark runs a grid of `(n, t)` cells. Each cell generates `count`
//! instances from the shared seed, shrinks them, and times the selected
//! methods on the reduced instances under a per-instance time limit. Rows
//! whose cell exceeds the limit report `TLE` instead of timings; that is
//! data, not a failure. Timing covers the solve call only (post-parse,
//! post-shrink), with one warm-up run per cell and method discarded.

use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use crate::generator::{GenSpec, generate};
use crate::model::Instance;
use crate::oracle::{DEFAULT_MAX_T, oracle_min};
use crate::preprocess::shrink;
use crate::solver::{Method, solve};

/// A solver selection for the harness; the oracle joins the two dynamic
/// programs here as a cross-check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BenchMethod {
    BottomUp,
    Memoized,
    Oracle,
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchMethod::BottomUp => "bottomup",
            BenchMethod::Memoized => "memoized",
            BenchMethod::Oracle => "oracle",
        })
    }
}

impl FromStr for BenchMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<BenchMethod, String> {
        match s {
            "bottomup" => Ok(BenchMethod::BottomUp),
            "memoized" => Ok(BenchMethod::Memoized),
            "oracle" => Ok(BenchMethod::Oracle),
            other => Err(format!(
                "unknown method {other:?}: expected bottomup, memoized, or oracle"
            )),
        }
    }
}

/// Grid and run parameters of one benchmark.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_list: Vec<u32>,
    pub t_list: Vec<u32>,
    /// Instances per cell.
    pub count: u32,
    pub seed: u64,
    pub methods: Vec<BenchMethod>,
    /// Per-instance limit; an instance over the limit marks its cell TLE.
    pub time_limit: Duration,
    /// Cells run on up to this many threads. Timing runs within a cell stay
    /// serialized regardless, but a loaded machine still skews wall clocks,
    /// so keep `jobs = 1` when the numbers matter.
    pub jobs: usize,
}

/// Timing outcome of one `(n, t, method)` cell.
#[derive(Clone, Copy, Debug)]
pub enum CellOutcome {
    Completed {
        mean_time: Duration,
        max_time: Duration,
        mean_entries_computed: f64,
    },
    TimedOut,
}

/// One output row of the benchmark table.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: u32,
    pub t: u32,
    pub method: BenchMethod,
    pub instances: u32,
    pub outcome: CellOutcome,
    /// Whether every method that completed an instance of this cell returned
    /// the same optimum on it.
    pub all_optima_agree: bool,
}

/// Runs the whole grid and returns the rows in grid order (`n` outer, `t`
/// inner, methods in configuration order).
pub fn run(cfg: &BenchConfig) -> Vec<BenchRow> {
    let cells: Vec<(u32, u32)> = cfg
        .n_list
        .iter()
        .flat_map(|&n| cfg.t_list.iter().map(move |&t| (n, t)))
        .collect();
    if cells.is_empty() || cfg.count == 0 {
        return Vec::new();
    }
    let jobs = cfg.jobs.max(1);
    let mut per_cell: Vec<Option<Vec<BenchRow>>> = vec![None; cells.len()];
    if jobs == 1 {
        for (slot, &(n, t)) in per_cell.iter_mut().zip(&cells) {
            *slot = Some(run_cell(n, t, cfg));
        }
    } else {
        thread::scope(|scope| {
            for (worker, chunk) in per_cell.chunks_mut(cells.len().div_ceil(jobs)).enumerate() {
                let cells = &cells;
                let base = worker * cells.len().div_ceil(jobs);
                scope.spawn(move || {
                    for (offset, slot) in chunk.iter_mut().enumerate() {
                        let (n, t) = cells[base + offset];
                        *slot = Some(run_cell(n, t, cfg));
                    }
                });
            }
        });
    }
    per_cell.into_iter().flatten().flatten().collect()
}

fn run_cell(n: u32, t: u32, cfg: &BenchConfig) -> Vec<BenchRow> {
    if t > n {
        return Vec::new(); // unsatisfiable cell
    }
    let spec = GenSpec {
        n,
        t,
        seed: cfg.seed,
        count: cfg.count,
    };
    let reduced: Vec<Instance> = generate(&spec)
        .expect("cell shape was checked")
        .iter()
        .map(|inst| shrink(inst).0)
        .collect();

    // optima[m][i] = k_opt of instance i under method m, when it completed.
    let mut optima: Vec<Vec<Option<u32>>> = Vec::new();
    let mut rows = Vec::new();
    for &method in &cfg.methods {
        if method == BenchMethod::Oracle && t > DEFAULT_MAX_T {
            optima.push(vec![None; reduced.len()]);
            continue; // the oracle refuses past its cap; no row for it
        }
        let mut kopts = vec![None; reduced.len()];
        let mut times = Vec::with_capacity(reduced.len());
        let mut entries = Vec::with_capacity(reduced.len());
        // Warm-up, discarded.
        let warm = reduced
            .first()
            .and_then(|inst| solve_with_limit(method, inst, cfg.time_limit));
        let mut timed_out = reduced.is_empty() || warm.is_none();
        if !timed_out {
            for (idx, inst) in reduced.iter().enumerate() {
                match solve_with_limit(method, inst, cfg.time_limit) {
                    Some(run) => {
                        kopts[idx] = Some(run.k_opt);
                        times.push(run.elapsed);
                        entries.push(run.entries);
                    }
                    None => {
                        timed_out = true;
                        break;
                    }
                }
            }
        }
        let outcome = if timed_out {
            CellOutcome::TimedOut
        } else {
            let total: Duration = times.iter().sum();
            CellOutcome::Completed {
                mean_time: total / times.len() as u32,
                max_time: times.iter().copied().max().unwrap(),
                mean_entries_computed: entries.iter().sum::<f64>() / entries.len() as f64,
            }
        };
        optima.push(kopts);
        rows.push(BenchRow {
            n,
            t,
            method,
            instances: cfg.count,
            outcome,
            all_optima_agree: true, // filled in below
        });
    }

    let agree = (0..reduced.len()).all(|idx| {
        let mut seen: Option<u32> = None;
        optima.iter().filter_map(|m| m[idx]).all(|k| match seen {
            Some(prev) => prev == k,
            None => {
                seen = Some(k);
                true
            }
        })
    });
    for row in &mut rows {
        row.all_optima_agree = agree;
    }
    rows
}

struct TimedSolve {
    k_opt: u32,
    entries: f64,
    elapsed: Duration,
}

/// Runs one solve on its own thread and waits at most `limit` for the
/// result. On a timeout the worker is abandoned; it ends on its own and its
/// late result is dropped.
fn solve_with_limit(method: BenchMethod, inst: &Instance, limit: Duration) -> Option<TimedSolve> {
    let inst = inst.clone();
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let started = Instant::now();
        let (k_opt, entries) = match method {
            BenchMethod::BottomUp => {
                let (result, _) = solve(&inst, Method::BottomUp);
                (result.k_opt, result.stats.entries_computed as f64)
            }
            BenchMethod::Memoized => {
                let (result, _) = solve(&inst, Method::Memoized);
                (result.k_opt, result.stats.entries_computed as f64)
            }
            BenchMethod::Oracle => {
                let result = oracle_min(&inst, DEFAULT_MAX_T).expect("cap checked by caller");
                (result.k_opt, result.evaluated as f64)
            }
        };
        let _ = tx.send(TimedSolve {
            k_opt,
            entries,
            elapsed: started.elapsed(),
        });
    });
    rx.recv_timeout(limit).ok()
}

fn seconds(d: Duration) -> String {
    format!("{:.6}", d.as_secs_f64())
}

/// Renders rows as CSV, one line per row plus a header.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "n,t,method,instances,mean_time,max_time,mean_entries_computed,all_optima_agree\n",
    );
    for row in rows {
        let (mean, max, entries) = match row.outcome {
            CellOutcome::Completed {
                mean_time,
                max_time,
                mean_entries_computed,
            } => (
                seconds(mean_time),
                seconds(max_time),
                format!("{mean_entries_computed:.1}"),
            ),
            CellOutcome::TimedOut => ("TLE".to_string(), "TLE".to_string(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n, row.t, row.method, row.instances, mean, max, entries, row.all_optima_agree
        ));
    }
    out
}

/// Renders rows as an aligned text table.
pub fn to_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>6} {:>4} {:>9} {:>5} {:>12} {:>12} {:>16} {:>6}\n",
        "n", "t", "method", "inst", "mean_time", "max_time", "mean_entries", "agree"
    );
    for row in rows {
        let (mean, max, entries) = match row.outcome {
            CellOutcome::Completed {
                mean_time,
                max_time,
                mean_entries_computed,
            } => (
                seconds(mean_time),
                seconds(max_time),
                format!("{mean_entries_computed:.1}"),
            ),
            CellOutcome::TimedOut => ("TLE".to_string(), "TLE".to_string(), "-".to_string()),
        };
        out.push_str(&format!(
            "{:>6} {:>4} {:>9} {:>5} {:>12} {:>12} {:>16} {:>6}\n",
            row.n,
            row.t,
            row.method.to_string(),
            row.instances,
            mean,
            max,
            entries,
            row.all_optima_agree
        ));
    }
    out
}
