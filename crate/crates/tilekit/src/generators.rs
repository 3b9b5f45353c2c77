//! Seeded instance generators for tests and benchmarks.
//!
//! All randomness comes from SplitMix64 (Steele, Lea & Flood's mix64
//! finalizer over a 0x9E3779B97F4A7C15-stepped counter), so any instance is
//! reproducible from its parameters and seed alone. Ranges are reduced by
//! modulo; child generators fork by drawing a fresh seed. Scenario draws
//! follow a fixed protocol — size first (`1 + below(max_size)`), then the
//! members by partial Fisher-Yates over the id pool — so the exact output is
//! pinned by this module, not just statistically.

use thiserror::Error;

use crate::exact::{partition_to_tileset, Partition};
use crate::model::{Instance, SymbolId, SymbolSet, Tileset};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("scenario size bound {max_size} must satisfy 1 <= max_size < n = {n}")]
    InvalidSizeBound { n: usize, max_size: usize },
    #[error("part sizes sum to {sum} but the universe has {n} symbols")]
    SizeMismatch { n: usize, sum: usize },
    #[error("part of size {0} is below the minimum of 2")]
    PartTooSmall(usize),
}

/// SplitMix64: a counter stepped by the golden gamma, finalized by two
/// xor-multiply rounds. State advances identically on every platform.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw below `n` by modulo reduction (`n > 0`).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// An independent child stream seeded from this one.
    pub fn fork(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// `k` distinct values from `0..n`, ascending.
    pub fn distinct(&mut self, n: usize, k: usize) -> Vec<u32> {
        let mut pool: Vec<u32> = (0..n as u32).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut chosen = pool[..k].to_vec();
        chosen.sort_unstable();
        chosen
    }
}

/// Zero-padded symbol names so that name order equals id order.
fn symbol_names(n: usize) -> Vec<String> {
    let width = (n.max(2) - 1).to_string().len();
    (0..n).map(|i| format!("s{i:0width$}")).collect()
}

/// A normalized random instance: `m` scenarios drawn uniformly among
/// non-empty subsets of size at most `max_size`, deduplicated, with singleton
/// scenarios appended for any symbol left uncovered. Deterministic in `seed`.
pub fn random_instance(
    n: usize,
    m: usize,
    max_size: usize,
    seed: u64,
) -> Result<Instance, GeneratorError> {
    if n < 2 || max_size < 1 || max_size >= n {
        return Err(GeneratorError::InvalidSizeBound { n, max_size });
    }
    let mut rng = SplitMix64::new(seed);
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(m);
    for _ in 0..m {
        let size = 1 + rng.below(max_size as u64) as usize;
        sets.push(rng.distinct(n, size));
    }
    sets.sort();
    sets.dedup();

    let mut covered = vec![false; n];
    for set in &sets {
        for &s in set {
            covered[s as usize] = true;
        }
    }
    for s in 0..n as u32 {
        if !covered[s as usize] {
            sets.push(vec![s]);
        }
    }
    sets.sort();
    sets.dedup();

    let instance = Instance::new(
        symbol_names(n),
        sets.into_iter()
            .map(|ids| SymbolSet::from_ids(n, ids))
            .collect(),
        None,
    )
    .expect("generated scenarios are valid");
    Ok(instance.normalize().0)
}

/// A planted instance: symbols are split into parts of the given sizes, and
/// scenarios are chosen so the planted partition stays admissible while
/// every refinement of a part is blocked. Returns the instance, the planted
/// star tileset, and its size `n - #parts` — an upper bound on the optimum
/// (equality is not guaranteed).
pub fn planted_partition(
    n: usize,
    part_sizes: &[usize],
    seed: u64,
) -> Result<(Instance, Tileset, u64), GeneratorError> {
    let sum: usize = part_sizes.iter().sum();
    if sum != n {
        return Err(GeneratorError::SizeMismatch { n, sum });
    }
    if let Some(&small) = part_sizes.iter().find(|&&p| p < 2) {
        return Err(GeneratorError::PartTooSmall(small));
    }

    let mut rng = SplitMix64::new(seed);
    let mut ids: Vec<SymbolId> = (0..n as SymbolId).collect();
    rng.shuffle(&mut ids);
    let mut parts: Vec<Vec<SymbolId>> = Vec::with_capacity(part_sizes.len());
    let mut offset = 0;
    for &size in part_sizes {
        let mut part = ids[offset..offset + size].to_vec();
        part.sort_unstable();
        parts.push(part);
        offset += size;
    }

    // Blocking scenarios: every (p-1)-subset of each part, so no part can be
    // split further without hitting a scenario.
    let mut sets: Vec<Vec<SymbolId>> = Vec::new();
    for part in &parts {
        for skip in 0..part.len() {
            sets.push(
                part.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &s)| s)
                    .collect(),
            );
        }
    }

    // Extra cross-part noise; candidates containing a whole part (or all of
    // F) are discarded to keep the planted partition admissible.
    let part_sets: Vec<SymbolSet> = parts
        .iter()
        .map(|p| SymbolSet::from_ids(n, p.iter().copied()))
        .collect();
    let extras = n;
    for _ in 0..extras {
        let size = 2 + rng.below((n as u64 - 1).max(1)) as usize;
        if size >= n {
            continue;
        }
        let candidate = rng.distinct(n, size);
        let candidate_set = SymbolSet::from_ids(n, candidate.iter().copied());
        if part_sets.iter().all(|p| !p.is_subset_of(&candidate_set)) {
            sets.push(candidate);
        }
    }
    sets.sort();
    sets.dedup();

    let instance = Instance::new(
        symbol_names(n),
        sets.into_iter()
            .map(|ids| SymbolSet::from_ids(n, ids))
            .collect(),
        None,
    )
    .expect("planted scenarios are valid");
    let (instance, _) = instance.normalize();

    let partition = Partition::new(parts);
    let tileset = partition_to_tileset(&partition).expect("parts have size >= 2");
    let opt_upper = (n - part_sizes.len()) as u64;
    Ok((instance, tileset, opt_upper))
}
