//! Exact solver for the train marshalling problem.
//!
//! Given an inbound train of `n` railcars bound for `t` destinations, the
//! solver computes the minimum number of classification tracks needed to
//! regroup the railcars by destination, together with an optimal block order
//! and a per-railcar track assignment. Two exact dynamic programs are
//! provided, a bottom-up sweep over destination subsets and a memoized
//! top-down variant that shares values across provably equal table rows,
//! plus a brute-force permutation oracle, optimum-preserving preprocessing,
//! a reproducible instance generator, and a benchmark harness.

pub mod bench;
pub mod generator;
pub mod model;
pub mod oracle;
pub mod preprocess;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use model::{
    Block, BlockId, BlockSet, Instance, InstanceError, OrderError, PlacementStep, Position,
    Simulation, mod_add, parse_instance, place_block, simulate_order,
};
pub use oracle::{OracleError, OracleResult, oracle_min};
pub use preprocess::{ShrinkReport, shrink, upper_bound};
pub use solver::{
    DpTables, Method, ReconstructError, SolveResult, SolverStats, SortedUnion, argmin_choice,
    reconstruct_order, solve, solve_bottom_up, solve_memoized,
};
