//! Brute-force optimum by exhaustive search over all block orders.
//!
//! Every permutation of the `t` block ids is scored with
//! [`simulate_order`]; the minimum is ground truth for the dynamic
//! programs. With `t!` simulations per call this is only viable for small
//! `t`, so the search refuses to run past a caller-supplied cap.

use std::fmt;

use crate::model::{BlockId, Instance, simulate_order};

/// Default cap on the number of blocks (8! = 40320 simulations).
pub const DEFAULT_MAX_T: u32 = 8;

/// How many optimal orders [`oracle_min`] retains as witnesses.
pub const WITNESS_CAP: usize = 100;

/// Result of an exhaustive search.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Minimum number of segments over all block orders.
    pub k_opt: u32,
    /// Orders achieving `k_opt`, in lexicographic order, capped at
    /// [`WITNESS_CAP`] entries.
    pub best_orders: Vec<Vec<BlockId>>,
    /// Number of permutations scored (`t!`).
    pub evaluated: u64,
}

/// The instance has too many blocks for exhaustive search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OracleError {
    pub t: u32,
    pub max_t: u32,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instance has {} blocks, exhaustive search is capped at {}",
            self.t, self.max_t
        )
    }
}

impl std::error::Error for OracleError {}

/// Advances `a` to the lexicographically next permutation; returns `false`
/// once `a` is the last (descending) one.
fn next_permutation(a: &mut [BlockId]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Scores every permutation of the block ids and returns the minimum
/// segment count together with the optimal orders found.
///
/// Refuses instances with `t > max_t` rather than running forever.
pub fn oracle_min(inst: &Instance, max_t: u32) -> Result<OracleResult, OracleError> {
    let t = inst.t();
    if t > max_t {
        return Err(OracleError { t, max_t });
    }
    let mut order: Vec<BlockId> = (0..t as BlockId).collect();
    let mut k_opt = u32::MAX;
    let mut best_orders: Vec<Vec<BlockId>> = Vec::new();
    let mut evaluated = 0u64;
    loop {
        let segments = simulate_order(inst, &order)
            .expect("enumerated orders are permutations")
            .segments;
        evaluated += 1;
        if segments < k_opt {
            k_opt = segments;
            best_orders.clear();
        }
        if segments == k_opt && best_orders.len() < WITNESS_CAP {
            best_orders.push(order.clone());
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    Ok(OracleResult {
        k_opt,
        best_orders,
        evaluated,
    })
}
