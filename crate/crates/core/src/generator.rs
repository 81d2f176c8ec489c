//! Seeded random instance generation and instance serialization.
//!
//! Corpora must be reproducible bit-for-bit across platforms and across
//! independent implementations, so the generator pins down every detail:
//! the PRNG is xoshiro256** seeded through SplitMix64 (constants below),
//! instance `i` of a batch uses stream seed `seed + i`, destinations are
//! drawn uniformly from `1..=t` by the 128-bit multiply-shift reduction,
//! and missing destinations are patched in deterministically.

use crate::model::{Instance, InstanceError};

/// Parameters for one batch of random instances.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenSpec {
    pub n: u32,
    pub t: u32,
    pub seed: u64,
    pub count: u32,
}

/// xoshiro256** with SplitMix64 seeding.
struct Xoshiro256 {
    s: [u64; 4],
}

impl Xoshiro256 {
    fn seeded(seed: u64) -> Xoshiro256 {
        // SplitMix64: state += 0x9e3779b97f4a7c15; mix with the
        // 0xbf58476d1ce4e5b9 / 0x94d049bb133111eb finalizer.
        let mut x = seed;
        let mut split = move || {
            x = x.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = x;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        let mut s = [split(), split(), split(), split()];
        if s == [0; 4] {
            s[0] = 0x9e3779b97f4a7c15;
        }
        Xoshiro256 { s }
    }

    fn next_u64(&mut self) -> u64 {
        // xoshiro256**: output rotl(s1 * 5, 7) * 9, then xor-shift the state
        // with shifts 17 and 45.
        let out = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        out
    }

    /// Uniform draw from `0..bound` (multiply-shift reduction).
    fn next_below(&mut self, bound: u32) -> u32 {
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u32
    }
}

/// Generates `spec.count` instances; instance `i` is produced from stream
/// seed `spec.seed + i`. Fails if the shape is unsatisfiable (`n < t`).
pub fn generate(spec: &GenSpec) -> Result<Vec<Instance>, InstanceError> {
    if spec.t == 0 || spec.n < spec.t {
        return Err(InstanceError::BadShape {
            n: spec.n,
            t: spec.t,
        });
    }
    Ok((0..spec.count)
        .map(|idx| generate_one(spec.n, spec.t, spec.seed.wrapping_add(u64::from(idx))))
        .collect())
}

/// Generates a single instance from one PRNG stream.
///
/// Each destination is drawn uniformly from `1..=t`. If some destination
/// never occurs, the missing labels are patched in ascending order, each
/// overwriting the lowest-indexed railcar whose destination still occurs
/// more than once.
pub fn generate_one(n: u32, t: u32, stream_seed: u64) -> Instance {
    assert!(t >= 1 && n >= t, "need n >= t >= 1");
    let mut rng = Xoshiro256::seeded(stream_seed);
    let mut labels: Vec<u32> = (0..n).map(|_| rng.next_below(t) + 1).collect();

    let mut counts = vec![0u32; t as usize + 1];
    for &l in &labels {
        counts[l as usize] += 1;
    }
    for missing in 1..=t {
        if counts[missing as usize] > 0 {
            continue;
        }
        let idx = labels
            .iter()
            .position(|&l| counts[l as usize] > 1)
            .expect("n >= t guarantees a duplicated destination");
        counts[labels[idx] as usize] -= 1;
        labels[idx] = missing;
        counts[missing as usize] = 1;
    }

    Instance::from_destinations(t, &labels).expect("patched draw satisfies every invariant")
}

/// Serializes an instance in the canonical file format:
/// `"<n> <t>\n<label> <label> ...\n"` with canonical destination labels.
pub fn emit_instance(inst: &Instance) -> String {
    let mut out = format!("{} {}\n", inst.n(), inst.t());
    for car in 1..=inst.n() {
        if car > 1 {
            out.push(' ');
        }
        out.push_str(&inst.destination_label(car).to_string());
    }
    out.push('\n');
    out
}

/// Canonical corpus file name for instance `idx` of a batch.
pub fn file_name(n: u32, t: u32, seed: u64, idx: u32) -> String {
    format!("tmp_n{n}_t{t}_s{seed}_{idx}.txt")
}
