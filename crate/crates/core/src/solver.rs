//! The two exact dynamic programs and optimal-solution reconstruction.
//!
//! Both solvers fill a value table `K` indexed by (position, block subset):
//! `K[i, S]` is the minimum number of segments needed to place the blocks of
//! `S` when the first element may not appear before slot `i`. The recurrence
//! minimizes, over the block placed first, the wrap indicator of its
//! placement plus the subproblem that starts right after it:
//!
//! ```text
//! K[i, S] = min over B in S of  delta(i, B) + K[omega(i, B) (+n) 1, S \ {B}]
//! ```
//!
//! with `K[1, {}] = 0` and `K[i, {}] = 1` for `i != 1`. A parallel choice
//! table `T` records an argmin witness per cell so an optimal block order can
//! be reconstructed.
//!
//! The bottom-up solver sweeps subsets by ascending size. The memoized solver
//! recurses top-down and exploits two structural facts: rows just after an
//! element of the subset's own union are never queried (so they are never
//! computed), and `K[., S]` is constant between consecutive elements of that
//! union (so one computation fills a whole row interval of the column).

use std::fmt;
use std::time::{Duration, Instant};

use crate::model::{
    BlockId, BlockSet, Instance, Position, mod_add, place_block, simulate_order,
};

/// Sentinel for cells that have not been written.
const UNSET: u8 = u8::MAX;

/// Solver selection for [`solve`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Bottom-up sweep (with row-interval sharing enabled).
    BottomUp,
    /// Top-down memoized recursion.
    Memoized,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BottomUp => "bottomup",
            Method::Memoized => "memoized",
        })
    }
}

/// The dense value table `K` and choice table `T`, one byte per cell,
/// column-major by subset index.
pub struct DpTables {
    n: u32,
    t: u32,
    values: Vec<u8>,
    choices: Vec<u8>,
}

impl DpTables {
    fn new(n: u32, t: u32) -> DpTables {
        assert!(
            t <= 30,
            "dense DP tables need n * 2^t cells; t = {t} is out of range"
        );
        let size = (n as usize)
            .checked_mul(1usize << t)
            .expect("table size overflows usize");
        let mut tables = DpTables {
            n,
            t,
            values: vec![UNSET; size],
            choices: vec![UNSET; size],
        };
        // Initial conditions: placing nothing from slot 1 uses no segment,
        // from any later slot the partially used segment counts.
        for row in 1..=n {
            let cell = tables.cell(row, BlockSet::EMPTY);
            tables.values[cell] = u8::from(row != 1);
        }
        tables
    }

    #[inline]
    fn cell(&self, row: u32, set: BlockSet) -> usize {
        debug_assert!(row >= 1 && row <= self.n);
        set.index() * self.n as usize + (row as usize - 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `K[row, set]`, or `None` if the cell was never written.
    pub fn value(&self, row: Position, set: BlockSet) -> Option<u32> {
        let v = self.values[self.cell(row.get(), set)];
        (v != UNSET).then_some(u32::from(v))
    }

    /// `T[row, set]`, or `None` if no witness was recorded.
    pub fn choice(&self, row: Position, set: BlockSet) -> Option<BlockId> {
        let c = self.choices[self.cell(row.get(), set)];
        (c != UNSET).then_some(c)
    }
}

/// Instrumentation counters of one solve.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct SolverStats {
    /// Candidate evaluations `delta + K[child]` performed inside the mins.
    pub min_evaluations: u64,
    /// Cells computed through the recurrence.
    pub entries_computed: u64,
    /// Extra cells written by row-interval sharing (beyond the computed one).
    pub entries_filled_by_lemma: u64,
    /// Wall-clock duration of the solve.
    pub wall_time: Duration,
}

/// Optimal value, witness order, track assignment, and counters.
#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Minimum number of classification tracks.
    pub k_opt: u32,
    /// An optimal block order (canonical block ids).
    pub order: Vec<BlockId>,
    /// 1-based track of each railcar under `order`; exactly `k_opt`
    /// distinct tracks are used.
    pub track_of: Vec<u32>,
    pub stats: SolverStats,
}

/// The sorted union of the elements of a block subset, with the row
/// intervals on which the subset's table column is provably constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SortedUnion {
    elems: Vec<u32>,
}

impl SortedUnion {
    pub fn new(inst: &Instance, set: BlockSet) -> SortedUnion {
        let mut elems = Vec::with_capacity(
            set.iter().map(|id| inst.block(id).len()).sum(),
        );
        for id in set.iter() {
            elems.extend_from_slice(inst.block(id).elements());
        }
        elems.sort_unstable();
        SortedUnion { elems }
    }

    /// The strictly increasing element sequence.
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The maximal row intervals `(lo, hi)` (inclusive, nonempty) on which a
    /// column with this union is constant: `[1, e_1]`, every `[e_k + 2,
    /// e_(k+1)]` that is nonempty, and `[e_last + 2, n]`. Rows `e_k + 1` fall
    /// in no interval; they are never queried by the recurrence.
    pub fn intervals(&self, n: u32) -> Vec<(u32, u32)> {
        assert!(!self.elems.is_empty(), "empty subsets have no intervals");
        let mut out = Vec::with_capacity(self.elems.len() + 1);
        out.push((1, self.elems[0]));
        for w in self.elems.windows(2) {
            if w[0] + 2 <= w[1] {
                out.push((w[0] + 2, w[1]));
            }
        }
        let last = *self.elems.last().unwrap();
        if last + 2 <= n {
            out.push((last + 2, n));
        }
        out
    }

    /// The constancy interval containing `row`, as a fill range. Rows of the
    /// form `e_k + 1` belong to no interval and fill only themselves; the
    /// solvers never query such rows.
    fn fill_range(&self, row: u32, n: u32) -> (u32, u32) {
        let e = &self.elems;
        if row <= e[0] {
            return (1, e[0]);
        }
        let before = e.partition_point(|&x| x < row);
        let prev = e[before - 1];
        if row == prev + 1 {
            return (row, row);
        }
        if before == e.len() {
            (prev + 2, n)
        } else {
            (prev + 2, e[before])
        }
    }
}

/// Inconsistent or incomplete tables: no choice recorded where the
/// reconstruction walk needed one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReconstructError {
    pub row: u32,
    pub set_bits: u32,
}

impl fmt::Display for ReconstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no choice recorded at row {} of column {:#b}",
            self.row, self.set_bits
        )
    }
}

impl std::error::Error for ReconstructError {}

/// Returns the candidate with the minimum value; ties break toward the
/// lowest block id. `None` on an empty candidate list.
pub fn argmin_choice<I>(candidates: I) -> Option<BlockId>
where
    I: IntoIterator<Item = (BlockId, u32)>,
{
    let mut best: Option<(BlockId, u32)> = None;
    for (id, value) in candidates {
        best = match best {
            Some((bid, bval)) if (bval, bid) <= (value, id) => best,
            _ => Some((id, value)),
        };
    }
    best.map(|(id, _)| id)
}

/// Walks the choice table from `(1, all blocks)`, emitting the recorded
/// first block and advancing past its placement until no block remains.
pub fn reconstruct_order(
    inst: &Instance,
    tables: &DpTables,
) -> Result<Vec<BlockId>, ReconstructError> {
    let n = inst.n();
    let mut set = inst.all_blocks();
    let mut row = Position::FIRST;
    let mut order = Vec::with_capacity(inst.t() as usize);
    while !set.is_empty() {
        let id = tables.choice(row, set).ok_or(ReconstructError {
            row: row.get(),
            set_bits: set.bits(),
        })?;
        order.push(id);
        let step = place_block(row, inst.block(id), n);
        row = mod_add(step.omega, 1, n);
        set = set.without(id);
    }
    Ok(order)
}

/// Shared per-solve state.
struct Solver<'a> {
    inst: &'a Instance,
    n: u32,
    tables: DpTables,
    min_evaluations: u64,
    entries_computed: u64,
    entries_filled_by_lemma: u64,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a Instance) -> Solver<'a> {
        Solver {
            inst,
            n: inst.n(),
            tables: DpTables::new(inst.n(), inst.t()),
            min_evaluations: 0,
            entries_computed: 0,
            entries_filled_by_lemma: 0,
        }
    }

    /// Evaluates the recurrence at `(row, set)` against already-filled child
    /// cells. Returns the minimum and its lowest-id witness.
    fn compute_cell(&mut self, row: u32, set: BlockSet) -> (u8, u8) {
        let mut best = UNSET;
        let mut witness = UNSET;
        for id in set.iter() {
            let step = place_block(Position::new_unchecked(row), self.inst.block(id), self.n);
            let child_row = mod_add(step.omega, 1, self.n).get();
            let child = self.tables.values[self.tables.cell(child_row, set.without(id))];
            debug_assert_ne!(child, UNSET, "child cell must be filled first");
            let value = step.delta + child;
            self.min_evaluations += 1;
            if value < best {
                best = value;
                witness = id;
            }
        }
        self.entries_computed += 1;
        (best, witness)
    }

    fn write(&mut self, row: u32, set: BlockSet, value: u8, witness: u8) {
        let cell = self.tables.cell(row, set);
        self.tables.values[cell] = value;
        self.tables.choices[cell] = witness;
    }

    fn finish(self, started: Instant) -> (SolveResult, DpTables) {
        let stats = SolverStats {
            min_evaluations: self.min_evaluations,
            entries_computed: self.entries_computed,
            entries_filled_by_lemma: self.entries_filled_by_lemma,
            wall_time: started.elapsed(),
        };
        let tables = self.tables;
        let order = reconstruct_order(self.inst, &tables)
            .expect("a completed solve records a witness along the optimal walk");
        let sim = simulate_order(self.inst, &order).expect("reconstruction yields a permutation");
        let k_opt =
            u32::from(tables.values[tables.cell(1, BlockSet::full(tables.t))]);
        debug_assert_eq!(sim.segments, k_opt, "witness order must cost k_opt");
        (
            SolveResult {
                k_opt,
                order,
                track_of: sim.track_of,
                stats,
            },
            tables,
        )
    }
}

/// Enumerates the `t`-bit masks of population `size` in increasing numeric
/// order (Gosper's hack).
fn for_each_subset_of_size(t: u32, size: u32, mut f: impl FnMut(BlockSet)) {
    debug_assert!(size >= 1 && size < t);
    let limit = 1u32 << t;
    let mut mask = (1u32 << size) - 1;
    while mask < limit {
        f(BlockSet::from_bits(mask));
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
}

/// Bottom-up solve: fills every column of subset size `1..t` row by row in
/// ascending subset-size order, then computes the single needed cell of the
/// full column.
///
/// With `use_lemmas` the sweep skips never-queried rows and computes one
/// representative per constancy interval, copying it across the interval;
/// the result is unchanged. Keep it disabled to observe the textbook
/// evaluation count `n * t * (2^(t-1) - 1) + t`.
pub fn solve_bottom_up(inst: &Instance, use_lemmas: bool) -> (SolveResult, DpTables) {
    let started = Instant::now();
    let mut solver = Solver::new(inst);
    let (n, t) = (inst.n(), inst.t());
    for size in 1..t {
        for_each_subset_of_size(t, size, |set| {
            if use_lemmas {
                let union = SortedUnion::new(inst, set);
                for (lo, hi) in union.intervals(n) {
                    let (value, witness) = solver.compute_cell(lo, set);
                    for row in lo..=hi {
                        solver.write(row, set, value, witness);
                    }
                    solver.entries_filled_by_lemma += u64::from(hi - lo);
                }
            } else {
                for row in 1..=n {
                    let (value, witness) = solver.compute_cell(row, set);
                    solver.write(row, set, value, witness);
                }
            }
        });
    }
    let full = inst.all_blocks();
    let (value, witness) = solver.compute_cell(1, full);
    solver.write(1, full, value, witness);
    solver.finish(started)
}

/// Memoized top-down solve. Cells are computed on demand; each computed
/// value is written across its whole constancy interval, so later queries in
/// the interval are cache hits.
pub fn solve_memoized(inst: &Instance) -> (SolveResult, DpTables) {
    let started = Instant::now();
    let mut solver = Solver::new(inst);
    let mut unions: Vec<Option<SortedUnion>> = vec![None; 1usize << inst.t()];
    let root = BlockSet::full(inst.t());
    lookup(&mut solver, &mut unions, 1, root);
    solver.finish(started)
}

fn lookup(
    solver: &mut Solver<'_>,
    unions: &mut Vec<Option<SortedUnion>>,
    row: u32,
    set: BlockSet,
) -> u8 {
    let cached = solver.tables.values[solver.tables.cell(row, set)];
    if cached != UNSET {
        return cached;
    }
    let mut best = UNSET;
    let mut witness = UNSET;
    for id in set.iter() {
        let step = place_block(Position::new_unchecked(row), solver.inst.block(id), solver.n);
        let child_row = mod_add(step.omega, 1, solver.n).get();
        let child = lookup(solver, unions, child_row, set.without(id));
        let value = step.delta + child;
        solver.min_evaluations += 1;
        if value < best {
            best = value;
            witness = id;
        }
    }
    solver.entries_computed += 1;
    let union = unions[set.index()]
        .get_or_insert_with(|| SortedUnion::new(solver.inst, set));
    let (lo, hi) = union.fill_range(row, solver.n);
    debug_assert!(lo <= row && row <= hi, "queried row must lie in its interval");
    for r in lo..=hi {
        solver.write(r, set, best, witness);
    }
    solver.entries_filled_by_lemma += u64::from(hi - lo);
    best
}

/// Dispatches on [`Method`]; the bottom-up path runs with interval sharing
/// enabled.
pub fn solve(inst: &Instance, method: Method) -> (SolveResult, DpTables) {
    match method {
        Method::BottomUp => solve_bottom_up(inst, true),
        Method::Memoized => solve_memoized(inst),
    }
}
