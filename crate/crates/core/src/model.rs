//! Instance model and placement primitives.
//!
//! A marshalling instance is an inbound train of `n` railcars, each bound for
//! one of `t` destinations. The railcars sharing a destination form a *block*:
//! the increasing sequence of their positions in the inbound train. Sorting
//! the train with classification tracks is equivalent to placing the blocks
//! one after another into consecutive copies ("segments") of the slot sequence
//! `<1, 2, ..., n>`; each segment corresponds to one track, and the goal is to
//! use as few segments as possible.
//!
//! The infinite slot sequence is never materialized: positions are always
//! reduced to `1..=n` with [`mod_add`], and segment boundaries are tracked by
//! the wrap indicator of each [`PlacementStep`].

use std::fmt;

/// Identifier of a block, `0..t`. Blocks are numbered in increasing order of
/// their smallest railcar, so ids are stable across re-parses.
pub type BlockId = u8;

/// A slot index within one segment, always in `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Position(u32);

impl Position {
    /// The first slot of a segment.
    pub const FIRST: Position = Position(1);

    /// Creates a position, checking `1 <= value <= n`.
    pub fn new(value: u32, n: u32) -> Option<Position> {
        (1..=n).contains(&value).then_some(Position(value))
    }

    pub(crate) const fn new_unchecked(value: u32) -> Position {
        Position(value)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Modulo-`n` addition on `1..=n`: a result of `0` is replaced by `n`.
///
/// This is the cyclic successor arithmetic of the segment model, e.g.
/// `mod_add(16, 1, 17) == 17` and `mod_add(17, 1, 17) == 1`.
pub fn mod_add(i: Position, k: u32, n: u32) -> Position {
    debug_assert!(i.get() >= 1 && i.get() <= n);
    let shifted = (u64::from(i.get()) - 1 + u64::from(k)) % u64::from(n);
    Position(shifted as u32 + 1)
}

/// The increasing sequence of all railcars sharing one destination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    elems: Vec<u32>,
}

impl Block {
    /// Creates a block from a nonempty, strictly increasing sequence of
    /// positive railcar indices. Returns `None` if the sequence is malformed.
    pub fn new(elems: Vec<u32>) -> Option<Block> {
        if elems.is_empty() || elems[0] == 0 {
            return None;
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(Block { elems })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    /// Smallest railcar of the block (`i_1`).
    pub fn first(&self) -> u32 {
        self.elems[0]
    }

    /// Largest railcar of the block (`i_l`).
    pub fn last(&self) -> u32 {
        *self.elems.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false: blocks are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// A subset of block ids, encoded as a width-`t` bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BlockSet(u32);

impl BlockSet {
    pub const EMPTY: BlockSet = BlockSet(0);

    /// The set of all `t` blocks. Requires `t <= 32`.
    pub fn full(t: u32) -> BlockSet {
        assert!(t <= 32, "block sets are limited to 32 blocks");
        if t == 32 {
            BlockSet(u32::MAX)
        } else {
            BlockSet((1u32 << t) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> BlockSet {
        BlockSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Table-index form of the set.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, id: BlockId) -> bool {
        self.0 >> id & 1 == 1
    }

    #[must_use]
    pub fn with(self, id: BlockId) -> BlockSet {
        BlockSet(self.0 | 1 << id)
    }

    #[must_use]
    pub fn without(self, id: BlockId) -> BlockSet {
        BlockSet(self.0 & !(1 << id))
    }

    /// Cardinality of the set.
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Iterates over the member ids in ascending order.
    pub fn iter(self) -> impl Iterator<Item = BlockId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let id = bits.trailing_zeros() as BlockId;
            bits &= bits - 1;
            Some(id)
        })
    }
}

/// A validated marshalling instance: `n` railcars, `t` destinations, and the
/// block partition of `1..=n` derived from the destination of each railcar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    n: u32,
    blocks: Vec<Block>,
    destination_of: Vec<BlockId>,
}

impl Instance {
    /// Builds an instance from the per-railcar destination labels
    /// (`labels[i]` is the destination of railcar `i + 1`, in `1..=t`).
    ///
    /// Blocks are derived by grouping railcars per label and are re-numbered
    /// canonically: block id `0` holds the railcar that arrives first, and so
    /// on in increasing order of each block's smallest element.
    pub fn from_destinations(t: u32, labels: &[u32]) -> Result<Instance, InstanceError> {
        let n = labels.len() as u32;
        if n == 0 || t == 0 || t > n || t > BlockId::MAX as u32 {
            return Err(InstanceError::BadShape { n, t });
        }
        let mut by_label: Vec<Vec<u32>> = vec![Vec::new(); t as usize];
        for (idx, &label) in labels.iter().enumerate() {
            if label < 1 || label > t {
                return Err(InstanceError::LabelOutOfRange {
                    railcar: idx + 1,
                    label: i64::from(label),
                    t,
                });
            }
            by_label[label as usize - 1].push(idx as u32 + 1);
        }
        if let Some(unused) = by_label.iter().position(Vec::is_empty) {
            return Err(InstanceError::UnusedLabel {
                label: unused as u32 + 1,
            });
        }
        // Canonical ids: sort labels by first occurrence.
        let mut order: Vec<usize> = (0..t as usize).collect();
        order.sort_by_key(|&l| by_label[l][0]);
        let mut destination_of = vec![0 as BlockId; n as usize];
        let mut blocks = Vec::with_capacity(t as usize);
        for (id, &label) in order.iter().enumerate() {
            let elems = std::mem::take(&mut by_label[label]);
            for &car in &elems {
                destination_of[car as usize - 1] = id as BlockId;
            }
            blocks.push(Block { elems });
        }
        Ok(Instance {
            n,
            blocks,
            destination_of,
        })
    }

    /// Number of railcars.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of destinations (= number of blocks).
    pub fn t(&self) -> u32 {
        self.blocks.len() as u32
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> &Block {
        &self.blocks[id as usize]
    }

    /// Block id of a railcar (railcars are 1-based).
    pub fn destination_of(&self, railcar: u32) -> BlockId {
        self.destination_of[railcar as usize - 1]
    }

    /// Destination label of a railcar in the canonical numbering (`id + 1`).
    pub fn destination_label(&self, railcar: u32) -> u32 {
        u32::from(self.destination_of(railcar)) + 1
    }

    /// All blocks as a set.
    pub fn all_blocks(&self) -> BlockSet {
        BlockSet::full(self.t())
    }
}

/// Validation or parse failure for an instance description.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InstanceError {
    /// The input ended before a `"<n> <t>"` header line was found.
    MissingHeader,
    /// The first significant line is not two base-10 integers.
    MalformedHeader { line: String },
    /// The counts violate `1 <= t <= n` (or exceed the supported block count).
    BadShape { n: u32, t: u32 },
    /// A destination token is not an integer.
    BadToken { railcar: usize, token: String },
    /// A destination label lies outside `1..=t`.
    LabelOutOfRange { railcar: usize, label: i64, t: u32 },
    /// The destination stream does not hold exactly `n` tokens.
    WrongTokenCount { expected: u32, found: usize },
    /// Some destination in `1..=t` is never used.
    UnusedLabel { label: u32 },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::MissingHeader => {
                write!(f, "missing \"<n> <t>\" header line")
            }
            InstanceError::MalformedHeader { line } => {
                write!(f, "malformed header line {line:?}: expected \"<n> <t>\"")
            }
            InstanceError::BadShape { n, t } => {
                write!(f, "invalid shape n={n}, t={t}: need 1 <= t <= n and t <= 255")
            }
            InstanceError::BadToken { railcar, token } => {
                write!(f, "railcar {railcar}: destination token {token:?} is not an integer")
            }
            InstanceError::LabelOutOfRange { railcar, label, t } => {
                write!(f, "railcar {railcar}: destination {label} out of range 1..={t}")
            }
            InstanceError::WrongTokenCount { expected, found } => {
                write!(f, "expected {expected} destination tokens, found {found}")
            }
            InstanceError::UnusedLabel { label } => {
                write!(f, "destination {label} is never used")
            }
        }
    }
}

impl std::error::Error for InstanceError {}

/// Parses the plain-text instance format.
///
/// Lines beginning with `#` are comments and may appear anywhere. The first
/// significant line is `"<n> <t>"`; the following significant lines hold
/// exactly `n` whitespace-separated destination labels in `1..=t`, one per
/// railcar in arrival order.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(InstanceError::MissingHeader)?;
    let mut head_tokens = header.split_whitespace();
    let (n, t) = match (head_tokens.next(), head_tokens.next(), head_tokens.next()) {
        (Some(a), Some(b), None) => match (a.parse::<u32>(), b.parse::<u32>()) {
            (Ok(n), Ok(t)) => (n, t),
            _ => {
                return Err(InstanceError::MalformedHeader {
                    line: header.to_string(),
                });
            }
        },
        _ => {
            return Err(InstanceError::MalformedHeader {
                line: header.to_string(),
            });
        }
    };
    if n == 0 || t == 0 || t > n || t > BlockId::MAX as u32 {
        return Err(InstanceError::BadShape { n, t });
    }
    let mut labels = Vec::with_capacity(n as usize);
    for token in lines.flat_map(str::split_whitespace) {
        let railcar = labels.len() + 1;
        let label: i64 = token.parse().map_err(|_| InstanceError::BadToken {
            railcar,
            token: token.to_string(),
        })?;
        if label < 1 || label > i64::from(t) {
            return Err(InstanceError::LabelOutOfRange { railcar, label, t });
        }
        labels.push(label as u32);
    }
    if labels.len() != n as usize {
        return Err(InstanceError::WrongTokenCount {
            expected: n,
            found: labels.len(),
        });
    }
    Instance::from_destinations(t, &labels)
}

/// The outcome of placing one block when its first element may not appear
/// before a given position.
///
/// `alpha` is the slot of the first element placed, `omega` the slot of the
/// last. `delta` is `1` when the placement exhausts the current segment
/// (ends at slot `n` or wraps into the next segment) and `0` otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PlacementStep {
    pub alpha: Position,
    pub omega: Position,
    pub delta: u8,
}

/// Places `block` with its first element no earlier than slot `start` of the
/// current segment.
///
/// With `block = <i_1, ..., i_l>` and `start = i` there are two cases: if
/// `i <= i_1` or `i_l < i` the elements appear in block order, so
/// `alpha = i_1` and `omega = i_l` (in the latter case entirely within the
/// next segment); otherwise some `i_k < i <= i_(k+1)` splits the block, the
/// tail `i_(k+1)..i_l` fills the current segment and the head wraps, so
/// `alpha = i_(k+1)` and `omega = i_k`.
pub fn place_block(start: Position, block: &Block, n: u32) -> PlacementStep {
    let i = start.get();
    debug_assert!(i >= 1 && i <= n);
    debug_assert!(block.last() <= n);
    let elems = block.elements();
    let split = elems.partition_point(|&e| e < i);
    let (alpha, omega) = if split == 0 || split == elems.len() {
        (block.first(), block.last())
    } else {
        (elems[split], elems[split - 1])
    };
    let delta = u8::from(!(split == 0 && block.last() < n));
    PlacementStep {
        alpha: Position(alpha),
        omega: Position(omega),
        delta,
    }
}

/// A scored placement of all blocks in a fixed order.
#[derive(Clone, Debug)]
pub struct Simulation {
    /// Number of segments (= classification tracks) the order uses.
    pub segments: u32,
    /// The placement step of each block, in placement order.
    pub trace: Vec<PlacementStep>,
    /// 1-based track of each railcar; `track_of[i]` is the track of
    /// railcar `i + 1`.
    pub track_of: Vec<u32>,
}

/// `order` is not a permutation of the instance's block ids.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderError {
    WrongLength { expected: u32, found: usize },
    DuplicateBlock { id: BlockId },
    UnknownBlock { id: BlockId },
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::WrongLength { expected, found } => {
                write!(f, "order lists {found} blocks, instance has {expected}")
            }
            OrderError::DuplicateBlock { id } => write!(f, "block {id} appears twice"),
            OrderError::UnknownBlock { id } => write!(f, "block {id} does not exist"),
        }
    }
}

impl std::error::Error for OrderError {}

/// Places the blocks in the given order and counts the segments used.
///
/// The cursor starts at slot 1 of the first segment. Each block is placed
/// with [`place_block`]; its railcars are assigned the running segment index
/// (railcars that wrap land one segment later). After the last block a
/// partially used segment still counts as used.
pub fn simulate_order(inst: &Instance, order: &[BlockId]) -> Result<Simulation, OrderError> {
    let t = inst.t();
    if order.len() != t as usize {
        return Err(OrderError::WrongLength {
            expected: t,
            found: order.len(),
        });
    }
    let mut seen = vec![false; t as usize];
    for &id in order {
        if u32::from(id) >= t {
            return Err(OrderError::UnknownBlock { id });
        }
        if std::mem::replace(&mut seen[id as usize], true) {
            return Err(OrderError::DuplicateBlock { id });
        }
    }

    let n = inst.n();
    let mut cursor = Position::FIRST;
    let mut done: u32 = 0; // segments fully counted so far
    let mut trace = Vec::with_capacity(order.len());
    let mut track_of = vec![0u32; n as usize];
    for &id in order {
        let block = inst.block(id);
        let step = place_block(cursor, block, n);
        // alpha < cursor iff the whole block lands in the next segment.
        let block_wraps = step.alpha.get() < cursor.get();
        for &car in block.elements() {
            let wrapped = block_wraps || car < step.alpha.get();
            track_of[car as usize - 1] = done + 1 + u32::from(wrapped);
        }
        done += u32::from(step.delta);
        cursor = mod_add(step.omega, 1, n);
        trace.push(step);
    }
    let segments = done + u32::from(cursor != Position::FIRST);
    Ok(Simulation {
        segments,
        trace,
        track_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{example1, example17};
    use proptest::prelude::*;

    fn pos(v: u32) -> Position {
        Position::new_unchecked(v)
    }

    #[test]
    fn mod_add_basics() {
        assert_eq!(mod_add(pos(16), 1, 17).get(), 17);
        assert_eq!(mod_add(pos(17), 1, 17).get(), 1);
        assert_eq!(mod_add(pos(5), 0, 9).get(), 5);
    }

    #[test]
    fn parse_example1() {
        let inst = example1();
        assert_eq!(inst.n(), 9);
        assert_eq!(inst.t(), 3);
        let blocks: Vec<&[u32]> = inst.blocks().iter().map(Block::elements).collect();
        assert_eq!(blocks, vec![&[1, 3, 5][..], &[2, 6, 8], &[4, 7, 9]]);
        assert_eq!(inst.destination_of(6), 1);
        assert_eq!(inst.destination_label(6), 2);
    }

    #[test]
    fn parse_smallest() {
        let inst = parse_instance("1 1\n1\n").unwrap();
        assert_eq!((inst.n(), inst.t()), (1, 1));
        assert_eq!(inst.block(0).elements(), &[1]);
    }

    #[test]
    fn parse_comments_and_crlf() {
        let inst = parse_instance("# corpus file\r\n9 3\r\n# body\r\n1 2 1 3 1\r\n2 3 2 3\r\n");
        assert_eq!(inst.unwrap(), example1());
    }

    #[test]
    fn parse_rejects_unused_destination() {
        assert_eq!(
            parse_instance("3 2\n1 1 1\n"),
            Err(InstanceError::UnusedLabel { label: 2 })
        );
    }

    #[test]
    fn parse_rejects_bad_inputs() {
        assert!(matches!(
            parse_instance(""),
            Err(InstanceError::MissingHeader)
        ));
        assert!(matches!(
            parse_instance("9\n1 2 3\n"),
            Err(InstanceError::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_instance("2 3\n1 2\n"),
            Err(InstanceError::BadShape { .. })
        ));
        assert_eq!(
            parse_instance("3 2\n1 2 7\n"),
            Err(InstanceError::LabelOutOfRange {
                railcar: 3,
                label: 7,
                t: 2
            })
        );
        assert_eq!(
            parse_instance("3 2\n1 x 2\n"),
            Err(InstanceError::BadToken {
                railcar: 2,
                token: "x".to_string()
            })
        );
        assert_eq!(
            parse_instance("4 2\n1 2 1\n"),
            Err(InstanceError::WrongTokenCount {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn canonical_ids_follow_first_arrival() {
        // Label 2 arrives first, so it becomes block 0.
        let inst = parse_instance("3 2\n2 1 2\n").unwrap();
        assert_eq!(inst.block(0).elements(), &[1, 3]);
        assert_eq!(inst.block(1).elements(), &[2]);
    }

    #[test]
    fn place_block_cases() {
        let b = Block::new(vec![2, 3, 8, 9]).unwrap();
        let step = place_block(pos(1), &b, 17);
        assert_eq!((step.alpha.get(), step.omega.get(), step.delta), (2, 9, 0));

        let b = Block::new(vec![5, 12, 14]).unwrap();
        let step = place_block(pos(11), &b, 17);
        assert_eq!((step.alpha.get(), step.omega.get(), step.delta), (12, 5, 1));

        let b = Block::new(vec![11, 13, 17]).unwrap();
        let step = place_block(pos(10), &b, 17);
        assert_eq!((step.alpha.get(), step.omega.get(), step.delta), (11, 17, 1));

        // Block entirely before the cursor: everything wraps.
        let b = Block::new(vec![2, 4]).unwrap();
        let step = place_block(pos(7), &b, 9);
        assert_eq!((step.alpha.get(), step.omega.get(), step.delta), (2, 4, 1));
    }

    #[test]
    fn block_rejects_malformed() {
        assert!(Block::new(vec![]).is_none());
        assert!(Block::new(vec![0, 1]).is_none());
        assert!(Block::new(vec![3, 3]).is_none());
        assert!(Block::new(vec![4, 2]).is_none());
    }

    #[test]
    fn simulate_known_witness_order() {
        // Blocks <2,3,8,9>, <11,13,17>, <1,4,10>, <5,12,14>, <6,7,15,16>
        // in canonical ids: 1, 4, 0, 2, 3.
        let inst = example17();
        let sim = simulate_order(&inst, &[1, 4, 0, 2, 3]).unwrap();
        assert_eq!(sim.segments, 3);
    }

    #[test]
    fn simulate_example1_tracks() {
        let inst = example1();
        let sim = simulate_order(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(sim.segments, 2);
        let track1: Vec<u32> = (1..=9).filter(|&c| sim.track_of[c as usize - 1] == 1).collect();
        let track2: Vec<u32> = (1..=9).filter(|&c| sim.track_of[c as usize - 1] == 2).collect();
        assert_eq!(track1, vec![1, 3, 5, 6, 8]);
        assert_eq!(track2, vec![2, 4, 7, 9]);
    }

    #[test]
    fn simulate_single_block() {
        let inst = parse_instance("4 1\n1 1 1 1\n").unwrap();
        assert_eq!(simulate_order(&inst, &[0]).unwrap().segments, 1);
    }

    #[test]
    fn simulate_rejects_non_permutations() {
        let inst = example1();
        assert!(matches!(
            simulate_order(&inst, &[0, 1]),
            Err(OrderError::WrongLength { .. })
        ));
        assert!(matches!(
            simulate_order(&inst, &[0, 1, 1]),
            Err(OrderError::DuplicateBlock { id: 1 })
        ));
        assert!(matches!(
            simulate_order(&inst, &[0, 1, 3]),
            Err(OrderError::UnknownBlock { id: 3 })
        ));
    }

    #[test]
    fn blockset_ops() {
        let s = BlockSet::EMPTY.with(0).with(2).with(4);
        assert_eq!(s.len(), 3);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(s.without(2).bits(), 0b10001);
        assert_eq!(BlockSet::full(5).bits(), 0b11111);
    }

    /// `(n, start, block)` with `start <= n` and block elements in `1..=n`.
    fn arb_placement() -> impl Strategy<Value = (u32, u32, Block)> {
        (1u32..=30).prop_flat_map(|n| {
            (
                Just(n),
                1..=n,
                proptest::collection::btree_set(1..=n, 1..=n as usize)
                    .prop_map(|set| Block::new(set.into_iter().collect()).unwrap()),
            )
        })
    }

    fn arb_instance(max_n: u32, max_t: u32) -> impl Strategy<Value = Instance> {
        (1..=max_t)
            .prop_flat_map(move |t| {
                (
                    Just(t),
                    proptest::collection::vec(1..=t, t as usize..=max_n as usize),
                )
            })
            .prop_map(|(t, mut labels)| {
                // Force every label to appear so the instance is valid.
                for l in 1..=t {
                    labels[l as usize - 1] = l;
                }
                Instance::from_destinations(t, &labels).unwrap()
            })
    }

    proptest! {
        #[test]
        fn mod_add_stays_in_range(i in 1u32..=50, k in 0u32..200, n in 1u32..=50) {
            prop_assume!(i <= n);
            let r = mod_add(pos(i), k, n);
            prop_assert!(r.get() >= 1 && r.get() <= n);
            prop_assert_eq!(mod_add(pos(i), n, n), pos(i));
        }

        #[test]
        fn delta_zero_pairing((n, start, b) in arb_placement()) {
            let step = place_block(pos(start), &b, n);
            prop_assert!(step.delta <= 1);
            if step.delta == 0 {
                prop_assert_eq!(step.omega.get(), b.last());
                prop_assert!(start <= b.first());
                prop_assert!(b.last() < n);
            } else {
                prop_assert!(start > b.first() || b.last() == n);
            }
        }

        #[test]
        fn place_block_splits_elements((n, start, b) in arb_placement()) {
            let step = place_block(pos(start), &b, n);
            // alpha and omega are elements, and every element is on exactly
            // one side of the wrap.
            prop_assert!(b.elements().contains(&step.alpha.get()));
            prop_assert!(b.elements().contains(&step.omega.get()));
            let wrapped_all = step.alpha.get() < start;
            let (head, tail): (Vec<u32>, Vec<u32>) = b
                .elements()
                .iter()
                .partition(|&&e| wrapped_all || e < step.alpha.get());
            prop_assert_eq!(head.len() + tail.len(), b.len());
            if !wrapped_all {
                prop_assert!(tail.iter().all(|&e| e >= start));
                prop_assert_eq!(tail.first().copied(), Some(step.alpha.get()));
            }
        }

        #[test]
        fn parse_never_panics(text in "[0-9a-z# \n\r-]{0,60}") {
            let _ = parse_instance(&text);
        }

        #[test]
        fn simulate_segment_count_rule(inst in arb_instance(24, 6), seed in 0u64..1000) {
            // Random permutation of the block ids.
            let t = inst.t() as usize;
            let mut order: Vec<BlockId> = (0..t as u8).collect();
            let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            for i in (1..t).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (state >> 33) as usize % (i + 1));
            }
            let sim = simulate_order(&inst, &order).unwrap();
            prop_assert!(sim.segments >= 1);
            let delta_sum: u32 = sim.trace.iter().map(|s| u32::from(s.delta)).sum();
            let final_cursor = mod_add(sim.trace.last().unwrap().omega, 1, inst.n());
            let expected = delta_sum + u32::from(final_cursor != Position::FIRST);
            prop_assert_eq!(sim.segments, expected);
            prop_assert_eq!(
                sim.segments == 1,
                (delta_sum == 0 && final_cursor != Position::FIRST)
                    || (delta_sum == 1 && final_cursor == Position::FIRST)
            );
            // Every railcar is assigned a track within range.
            prop_assert!(sim.track_of.iter().all(|&s| s >= 1 && s <= sim.segments));
        }
    }
}
