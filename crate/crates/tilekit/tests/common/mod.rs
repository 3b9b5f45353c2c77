//! Brute-force oracles shared by the integration suites. Everything here is
//! deliberately independent of the library's solver paths: orientations are
//! enumerated exhaustively, covers are searched directly, and tilesets are
//! enumerated as multisets.
#![allow(dead_code)] // each test target uses a different subset

use std::collections::BTreeMap;

use tilekit::feasibility::is_feasible_demands;
use tilekit::generators::SplitMix64;
use tilekit::model::{Instance, SymbolId, SymbolSet, Tile, Tileset};

/// Feasibility of a tileset for one scenario by brute force over all
/// `2^edges` orientations: feasible iff some orientation gives every
/// scenario symbol indegree at least one.
pub fn orientation_oracle(ts: &Tileset, scenario: &SymbolSet, n: usize) -> bool {
    let occurrences: Vec<Tile> = ts.occurrences().map(|(t, _)| t).collect();
    let m = occurrences.len();
    assert!(m <= 20, "orientation oracle is exponential in the edges");
    (0u64..1 << m).any(|choice| {
        let mut indegree = vec![0u32; n];
        for (i, t) in occurrences.iter().enumerate() {
            let toward = if choice >> i & 1 == 0 { t.a() } else { t.b() };
            indegree[toward as usize] += 1;
        }
        scenario.iter().all(|s| indegree[s as usize] >= 1)
    })
}

/// Exact-cover decision by depth-first search over the set family.
pub fn exhaustive_cover(n_elements: usize, sets: &[Vec<usize>]) -> bool {
    fn go(covered: u64, full: u64, sets: &[Vec<usize>]) -> bool {
        if covered == full {
            return true;
        }
        let first_free = (0..64).find(|b| full >> b & 1 == 1 && covered >> b & 1 == 0).unwrap();
        sets.iter().any(|set| {
            let mask: u64 = set.iter().map(|&e| 1u64 << e).sum();
            set.contains(&first_free) && mask & covered == 0 && go(covered | mask, full, sets)
        })
    }
    let full = if n_elements == 64 {
        u64::MAX
    } else {
        (1u64 << n_elements) - 1
    };
    go(0, full, sets)
}

/// Is any tileset of at most `budget` tiles feasible for all the demand
/// maps? Enumerates every multiset of tile types (combinations with
/// repetition) and checks each with the multiset-aware matcher.
pub fn exhaustive_tileset_search(
    n: usize,
    demands: &[BTreeMap<SymbolId, u32>],
    budget: u64,
) -> bool {
    let types: Vec<Tile> = (0..n as SymbolId)
        .flat_map(|a| (a + 1..n as SymbolId).map(move |b| Tile::new(a, b).unwrap()))
        .collect();
    fn go(
        types: &[Tile],
        index: usize,
        remaining: u64,
        current: &mut Tileset,
        demands: &[BTreeMap<SymbolId, u32>],
    ) -> bool {
        if demands
            .iter()
            .all(|d| is_feasible_demands(current, d).is_some())
        {
            return true;
        }
        if index == types.len() || remaining == 0 {
            return false;
        }
        for count in 0..=remaining {
            if count > 0 {
                current.add(types[index], 1);
            }
            if go(types, index + 1, remaining - count, current, demands) {
                return true;
            }
        }
        for _ in 0..remaining {
            if !current.remove_one(types[index]) {
                break;
            }
        }
        false
    }
    let mut current = Tileset::new();
    go(&types, 0, budget, &mut current, demands)
}

/// A random tileset over `n` symbols: `tiles` draws with replacement, so
/// multiplicities and cycles occur.
pub fn random_tileset(n: usize, tiles: usize, rng: &mut SplitMix64) -> Tileset {
    let mut ts = Tileset::new();
    for _ in 0..tiles {
        let a = rng.below(n as u64) as SymbolId;
        let mut b = rng.below(n as u64) as SymbolId;
        while b == a {
            b = rng.below(n as u64) as SymbolId;
        }
        ts.add(Tile::new(a, b).unwrap(), 1);
    }
    ts
}

/// A random spanning-tree tileset for each part of a random partition, so
/// the graph is a forest with component sizes at least two.
pub fn random_forest_tileset(inst: &Instance, rng: &mut SplitMix64) -> Tileset {
    let n = inst.symbol_count();
    let mut ids: Vec<SymbolId> = (0..n as SymbolId).collect();
    rng.shuffle(&mut ids);
    let mut ts = Tileset::new();
    let mut index = 0;
    while index < n {
        let remaining = n - index;
        let mut size = if remaining < 4 {
            remaining
        } else {
            2 + rng.below((remaining - 2).min(4) as u64) as usize
        };
        if remaining - size == 1 {
            size += 1;
        }
        let part = &ids[index..index + size];
        for w in 1..part.len() {
            // Random tree: attach each vertex to a random earlier one.
            let parent = part[rng.below(w as u64) as usize];
            ts.add(Tile::new(parent, part[w]).unwrap(), 1);
        }
        index += size;
    }
    ts
}
