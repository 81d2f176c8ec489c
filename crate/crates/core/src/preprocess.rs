//! Optimum-preserving instance shrinking and the a-priori upper bound.
//!
//! Consecutive railcars that share a destination can ride on the same track
//! no matter what, so every maximal run of them can be collapsed to its
//! first railcar without changing the optimal track count. [`shrink`]
//! performs this reduction and records how to map a solution of the reduced
//! instance back onto the original railcars.

use crate::model::{Instance, InstanceError};

/// Record of a [`shrink`] reduction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShrinkReport {
    pub original_n: u32,
    pub reduced_n: u32,
    /// Original ids of the removed railcars, ascending.
    pub removed: Vec<u32>,
    /// `car_map[r - 1]` lists the original railcars collapsed into reduced
    /// railcar `r`; the lists partition `1..=original_n`.
    pub car_map: Vec<Vec<u32>>,
}

impl ShrinkReport {
    /// Expands a per-railcar assignment of the reduced instance back to the
    /// original railcar numbering.
    pub fn map_tracks(&self, reduced_tracks: &[u32]) -> Vec<u32> {
        debug_assert_eq!(reduced_tracks.len(), self.reduced_n as usize);
        let mut tracks = vec![0u32; self.original_n as usize];
        for (reduced_idx, originals) in self.car_map.iter().enumerate() {
            for &car in originals {
                tracks[car as usize - 1] = reduced_tracks[reduced_idx];
            }
        }
        tracks
    }
}

/// Collapses every maximal run of >= 2 consecutive same-destination railcars
/// to its first railcar. The returned instance is run-free; runs are detected
/// on the linear inbound order only (railcars `n` and `1` are not adjacent).
pub fn shrink(inst: &Instance) -> (Instance, ShrinkReport) {
    let n = inst.n();
    let mut labels = Vec::new();
    let mut removed = Vec::new();
    let mut car_map: Vec<Vec<u32>> = Vec::new();
    for car in 1..=n {
        if car > 1 && inst.destination_of(car) == inst.destination_of(car - 1) {
            removed.push(car);
            car_map.last_mut().unwrap().push(car);
        } else {
            labels.push(inst.destination_label(car));
            car_map.push(vec![car]);
        }
    }
    let reduced = Instance::from_destinations(inst.t(), &labels)
        .expect("collapsing runs keeps every destination in use");
    let report = ShrinkReport {
        original_n: n,
        reduced_n: reduced.n(),
        removed,
        car_map,
    };
    (reduced, report)
}

/// Parses, validates, and shrinks in one step.
pub fn parse_and_shrink(text: &str) -> Result<(Instance, ShrinkReport), InstanceError> {
    crate::model::parse_instance(text).map(|inst| shrink(&inst))
}

/// Upper bound `min(t, ceil(n/4 + 1/2))` on the optimal track count.
pub fn upper_bound(inst: &Instance) -> u32 {
    upper_bound_for(inst.n(), inst.t())
}

/// [`upper_bound`] on raw counts. `ceil(n/4 + 1/2) = ceil((n + 2) / 4)`,
/// computed as `(n + 5) / 4` in integer arithmetic.
pub fn upper_bound_for(n: u32, t: u32) -> u32 {
    t.min((n + 5) / 4)
}
