//! Exact optimum solvers.
//!
//! The main solver is a dynamic program over all `2^|F|` symbol subsets: for
//! a subset `D` not contained in any scenario, `M(D)` is the maximum number
//! of parts in a partition of `D` with no part inside a scenario, computed by
//! splitting `D` into two halves of size at least two each. The optimum
//! tileset size is then `|F| - M(F)`, and a witness tileset is recovered by
//! spanning each part with a star. Total split work is bounded by `3^|F|`.
//!
//! A Bell-number enumeration over all set partitions serves as an
//! independent oracle for small universes.

use thiserror::Error;

use crate::feasibility::is_feasible;
use crate::model::{Instance, SymbolId, SymbolSet, Tile, Tileset, tileset_graph};

/// Default cap on `|F|` for [`solve_dp`]; keeps the tables under ~128 MiB.
pub const DEFAULT_DP_CAP: usize = 24;

/// Cap on `|F|` for [`solve_bruteforce`].
pub const BRUTE_FORCE_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("universe of {size} symbols exceeds the {solver} cap of {cap}")]
    UniverseTooLarge {
        size: usize,
        cap: usize,
        solver: &'static str,
    },
    #[error("symbol {0} occurs in no scenario; normalize the instance first")]
    UncoveredSymbol(SymbolId),
    #[error("exact solvers handle the simple scenario family only")]
    GeneralizedNotSupported,
    #[error("partition contains a singleton part")]
    SingletonPart,
    #[error("tileset graph contains a cycle or parallel edges; not a forest")]
    NotAForest,
}

/// Disjoint non-empty symbol sets covering the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<SymbolId>>,
}

impl Partition {
    /// Parts are sorted internally and ordered by smallest member.
    pub fn new(mut parts: Vec<Vec<SymbolId>>) -> Partition {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort();
        Partition { parts }
    }

    pub fn parts(&self) -> &[Vec<SymbolId>] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// True when the parts are disjoint, non-empty, and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for p in &self.parts {
            if p.is_empty() {
                return false;
            }
            for &s in p {
                if s as usize >= n || seen[s as usize] {
                    return false;
                }
                seen[s as usize] = true;
            }
        }
        seen.iter().all(|&s| s)
    }

    /// A partition is admissible when no part is contained in any scenario.
    pub fn is_admissible(&self, inst: &Instance) -> bool {
        let n = inst.symbol_count();
        self.parts.iter().all(|p| {
            !inst.contained_in_scenario(&SymbolSet::from_ids(n, p.iter().copied()))
        })
    }
}

/// Spans each part with a star rooted at its lowest id. The resulting
/// tileset has `|F| - #parts` tiles. Errors on singleton parts.
pub fn partition_to_tileset(p: &Partition) -> Result<Tileset, ExactError> {
    let mut ts = Tileset::new();
    for part in p.parts() {
        if part.len() < 2 {
            return Err(ExactError::SingletonPart);
        }
        let root = part[0];
        for &s in &part[1..] {
            ts.add(Tile::new(root, s).unwrap(), 1);
        }
    }
    Ok(ts)
}

/// The partition induced by the connected components of a forest tileset
/// over the universe `0..n`. Errors when the graph contains a cycle.
pub fn tileset_to_partition(ts: &Tileset, n: usize) -> Result<Partition, ExactError> {
    let graph = tileset_graph(ts, n);
    if !graph.is_forest() {
        return Err(ExactError::NotAForest);
    }
    Ok(Partition::new(graph.components()))
}

/// Counters from a dynamic-program run.
#[derive(Debug, Clone, Copy, Default)]
pub struct DpStats {
    /// Subset splits examined while filling the table; bounded by `3^|F|`.
    pub split_evaluations: u64,
}

/// Result of the subset dynamic program.
#[derive(Debug, Clone)]
pub struct DpSolution {
    /// Minimum number of tiles feasible for the instance.
    pub opt_tiles: u64,
    /// Maximum number of parts over admissible partitions, `|F| - opt_tiles`.
    pub max_parts: usize,
    pub partition: Partition,
    pub tileset: Tileset,
    pub stats: DpStats,
}

fn check_simple_covered(inst: &Instance) -> Result<(), ExactError> {
    if inst.generalized().is_some() {
        return Err(ExactError::GeneralizedNotSupported);
    }
    let n = inst.symbol_count();
    let mut covered = vec![false; n];
    for s in inst.scenarios() {
        for id in s.members().iter() {
            covered[id as usize] = true;
        }
    }
    match covered.iter().position(|&c| !c) {
        Some(id) => Err(ExactError::UncoveredSymbol(id as SymbolId)),
        None => Ok(()),
    }
}

/// Bit table over all `2^n` subsets: bit `d` is set iff subset `d` is
/// contained in some scenario. Built by marking the maximal scenarios and
/// running a word-parallel superset sum, so the containment test inside the
/// dynamic program is O(1).
struct ContainmentTable {
    words: Vec<u64>,
}

impl ContainmentTable {
    fn build(inst: &Instance, n: usize) -> ContainmentTable {
        let size = 1usize << n;
        let mut words = vec![0u64; size.div_ceil(64)];
        for s in inst.maximal_scenarios() {
            let mask = s.members().as_mask32() as usize;
            words[mask / 64] |= 1u64 << (mask % 64);
        }
        // In-word passes: bit b of the subset index lives inside a word.
        const IN_WORD_MASKS: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        for (b, mask) in IN_WORD_MASKS.iter().enumerate().take(n.min(6)) {
            let shift = 1u32 << b;
            for w in words.iter_mut() {
                *w |= (*w >> shift) & mask;
            }
        }
        // Cross-word passes: bit b selects between word pairs.
        for b in 6..n {
            let stride = 1usize << (b - 6);
            let mut base = 0;
            while base < words.len() {
                for i in base..base + stride {
                    words[i] |= words[i + stride];
                }
                base += 2 * stride;
            }
        }
        ContainmentTable { words }
    }

    #[inline]
    fn contains(&self, d: u32) -> bool {
        self.words[d as usize / 64] >> (d % 64) & 1 == 1
    }
}

/// Solves the instance exactly with the default universe cap.
pub fn solve_dp(inst: &Instance) -> Result<DpSolution, ExactError> {
    solve_dp_with_cap(inst, DEFAULT_DP_CAP)
}

/// Solves the instance exactly by dynamic programming over symbol subsets.
///
/// Requires every symbol to occur in a scenario. Table entries are filled in
/// increasing subset-size order; for each subset the split enumeration walks
/// the submasks avoiding the lowest set bit, which visits every unordered
/// split exactly once. Ties between equally good splits go to the lowest
/// submask, so witnesses are reproducible.
pub fn solve_dp_with_cap(inst: &Instance, cap: usize) -> Result<DpSolution, ExactError> {
    let n = inst.symbol_count();
    if n > cap || n > 31 {
        return Err(ExactError::UniverseTooLarge {
            size: n,
            cap: cap.min(31),
            solver: "subset-dp",
        });
    }
    check_simple_covered(inst)?;

    let size = 1usize << n;
    let full = (size - 1) as u32;
    let containment = ContainmentTable::build(inst, n);

    const NEG_INF: i8 = -1;
    let mut table = vec![0i8; size];
    let mut split = vec![0u32; size];
    let mut stats = DpStats::default();

    for subset_size in 1..=n as u32 {
        // Gosper's hack walks all masks of the given popcount ascending.
        let mut d: u32 = (1u32 << subset_size) - 1;
        loop {
            if containment.contains(d) {
                table[d as usize] = NEG_INF;
            } else if subset_size < 4 {
                // No split has two symbols on both sides.
                table[d as usize] = 1;
            } else {
                let low = d & d.wrapping_neg();
                let rest = d ^ low;
                let mut best: i8 = 1;
                let mut best_split: u32 = 0;
                let mut evals: u64 = 0;
                // Enumerate one side of each unordered split: the side that
                // does not contain the lowest bit of d.
                let mut sub = rest;
                while sub != 0 {
                    evals += 1;
                    let sub_size = sub.count_ones();
                    if sub_size >= 2 && sub_size + 2 <= subset_size {
                        let other = d ^ sub;
                        let va = table[sub as usize];
                        let vb = table[other as usize];
                        if va != NEG_INF && vb != NEG_INF {
                            let value = va + vb;
                            // Tie-break on the smaller-cardinality side
                            // (lowest mask when sizes are equal).
                            let other_size = subset_size - sub_size;
                            let candidate = if sub_size < other_size {
                                sub
                            } else if sub_size > other_size {
                                other
                            } else {
                                sub.min(other)
                            };
                            if value > best
                                || (value == best && best_split != 0 && candidate < best_split)
                            {
                                best = value;
                                best_split = candidate;
                            }
                        }
                    }
                    sub = (sub - 1) & rest;
                }
                stats.split_evaluations += evals;
                table[d as usize] = best;
                split[d as usize] = best_split;
            }
            if d == full || subset_size == n as u32 {
                break;
            }
            // Next mask with the same popcount.
            let c = d & d.wrapping_neg();
            let r = d + c;
            d = (((r ^ d) >> 2) / c) | r;
            if d > full {
                break;
            }
        }
    }

    // F itself is never a scenario, so the one-part partition always scores.
    let max_parts = table[full as usize];
    assert!(
        max_parts >= 1,
        "the full universe cannot be contained in a scenario"
    );

    let mut part_masks = Vec::new();
    let mut stack = vec![full];
    while let Some(d) = stack.pop() {
        let s = split[d as usize];
        if s == 0 {
            part_masks.push(d);
        } else {
            stack.push(s);
            stack.push(d ^ s);
        }
    }
    let parts: Vec<Vec<SymbolId>> = part_masks
        .iter()
        .map(|&m| (0..n as SymbolId).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    let partition = Partition::new(parts);
    debug_assert_eq!(partition.part_count(), max_parts as usize);
    debug_assert!(partition.is_admissible(inst));

    let tileset = partition_to_tileset(&partition)?;
    debug_assert!(is_feasible(&tileset, inst).is_feasible());

    Ok(DpSolution {
        opt_tiles: (n - max_parts as usize) as u64,
        max_parts: max_parts as usize,
        partition,
        tileset,
        stats,
    })
}

/// Result of the brute-force partition search.
#[derive(Debug, Clone)]
pub struct BruteSolution {
    pub opt_tiles: u64,
    pub max_parts: usize,
    pub partition: Partition,
}

/// Enumerates every set partition of the universe (via restricted growth
/// strings), keeps the admissible ones — all parts of size at least two and
/// none inside a scenario — and returns one maximizing the part count.
///
/// Intended as an independent oracle; capped at `|F| <= 8`.
pub fn solve_bruteforce(inst: &Instance) -> Result<BruteSolution, ExactError> {
    let n = inst.symbol_count();
    if n > BRUTE_FORCE_CAP {
        return Err(ExactError::UniverseTooLarge {
            size: n,
            cap: BRUTE_FORCE_CAP,
            solver: "brute-force",
        });
    }
    check_simple_covered(inst)?;

    let scenario_masks: Vec<u32> = inst
        .maximal_scenarios()
        .map(|s| s.members().as_mask32())
        .collect();

    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut assignment = vec![0usize; n];

    fn recurse(
        i: usize,
        blocks: usize,
        assignment: &mut Vec<usize>,
        n: usize,
        scenario_masks: &[u32],
        best: &mut Option<(usize, Vec<u32>)>,
    ) {
        if i == n {
            let mut masks = vec![0u32; blocks];
            for (elem, &b) in assignment.iter().enumerate() {
                masks[b] |= 1 << elem;
            }
            let admissible = masks.iter().all(|&m| {
                m.count_ones() >= 2 && !scenario_masks.iter().any(|&s| m & !s == 0)
            });
            if admissible && best.as_ref().is_none_or(|(count, _)| blocks > *count) {
                *best = Some((blocks, masks));
            }
            return;
        }
        for b in 0..=blocks {
            assignment[i] = b;
            recurse(
                i + 1,
                blocks.max(b + 1),
                assignment,
                n,
                scenario_masks,
                best,
            );
        }
    }
    recurse(0, 0, &mut assignment, n, &scenario_masks, &mut best);

    let (max_parts, masks) = best.expect("the one-part partition is always admissible");
    let parts: Vec<Vec<SymbolId>> = masks
        .iter()
        .map(|&m| (0..n as SymbolId).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    Ok(BruteSolution {
        opt_tiles: (n - max_parts) as u64,
        max_parts,
        partition: Partition::new(parts),
    })
}
