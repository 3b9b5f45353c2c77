//! 4/3-approximation for the minimum feasible tileset.
//!
//! Build as many two-symbol components as possible via a maximum matching
//! over admissible pairs, then greedily pack admissible triples from the
//! leftover symbols, and finally attach every remaining symbol to a root by
//! an individual tile. Every component of the result avoids containment in a
//! scenario, so the output is always feasible; its size is at most 4/3 times
//! the optimum.

use crate::matching::maximum_matching;
use crate::model::{Instance, SymbolId, SymbolSet, Tile, Tileset};

/// Symbol sets of a fixed size, none contained in any scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleFamily {
    pub order: usize,
    pub sets: Vec<Vec<SymbolId>>,
}

/// All 2-subsets of `over` not contained in any scenario, ascending.
pub fn admissible_pairs(inst: &Instance, over: &SymbolSet) -> AdmissibleFamily {
    let n = inst.symbol_count();
    let ids = over.to_vec();
    let mut sets = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if !inst.contained_in_scenario(&SymbolSet::from_ids(n, [a, b])) {
                sets.push(vec![a, b]);
            }
        }
    }
    AdmissibleFamily { order: 2, sets }
}

/// A maximum matching among the pairs of an order-2 admissible family,
/// returned as disjoint `(a, b)` pairs with `a < b`, ascending.
pub fn max_matching_pairs(fam: &AdmissibleFamily) -> Vec<(SymbolId, SymbolId)> {
    debug_assert_eq!(fam.order, 2);
    let n = fam
        .sets
        .iter()
        .flatten()
        .map(|&s| s as usize + 1)
        .max()
        .unwrap_or(0);
    let edges: Vec<(usize, usize)> = fam
        .sets
        .iter()
        .map(|p| (p[0] as usize, p[1] as usize))
        .collect();
    maximum_matching(n, &edges)
        .into_iter()
        .map(|(a, b)| (a as SymbolId, b as SymbolId))
        .collect()
}

/// Greedy maximal packing of admissible triples from `leftover`: repeatedly
/// take the lexicographically smallest 3-subset of the remaining symbols not
/// contained in any scenario, until none is left.
pub fn greedy_triple_packing(inst: &Instance, leftover: &SymbolSet) -> Vec<[SymbolId; 3]> {
    let n = inst.symbol_count();
    // Symbols whose pair co-occurs in no scenario always form admissible
    // triples; the precomputed co-occurrence sets give a cheap accept.
    let mut co_occurs: Vec<SymbolSet> = vec![SymbolSet::empty(n); n];
    for s in inst.scenarios() {
        let ids = s.members().to_vec();
        for &a in &ids {
            for &b in &ids {
                if a != b {
                    co_occurs[a as usize].insert(b);
                }
            }
        }
    }
    let admissible = |a: SymbolId, b: SymbolId, c: SymbolId| {
        let pairwise_free = !co_occurs[a as usize].contains(b)
            && !co_occurs[a as usize].contains(c)
            && !co_occurs[b as usize].contains(c);
        pairwise_free || !inst.contained_in_scenario(&SymbolSet::from_ids(n, [a, b, c]))
    };

    let mut remaining = leftover.clone();
    let mut packing = Vec::new();
    'outer: loop {
        let ids = remaining.to_vec();
        for (i, &a) in ids.iter().enumerate() {
            for (j, &b) in ids.iter().enumerate().skip(i + 1) {
                for &c in &ids[j + 1..] {
                    if admissible(a, b, c) {
                        packing.push([a, b, c]);
                        remaining.remove(a);
                        remaining.remove(b);
                        remaining.remove(c);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    packing
}

/// Computes a feasible tileset of at most 4/3 times the optimum size.
///
/// The tileset is the union of the matched pairs, two tiles
/// `{f1,f2},{f2,f3}` per packed triple, and one tile per uncovered symbol
/// pairing it with a fixed root. Its graph is a forest. Assumes every symbol
/// occurs in some scenario (the normalized form).
pub fn approximate(inst: &Instance) -> Tileset {
    let n = inst.symbol_count();
    let everything = SymbolSet::full(n);

    let pairs = admissible_pairs(inst, &everything);
    let matched = max_matching_pairs(&pairs);

    let mut leftover = everything;
    for &(a, b) in &matched {
        leftover.remove(a);
        leftover.remove(b);
    }
    let triples = greedy_triple_packing(inst, &leftover);

    let mut tiles: Vec<Tile> = Vec::new();
    let mut covered = SymbolSet::empty(n);
    for &(a, b) in &matched {
        tiles.push(Tile::new(a, b).unwrap());
        covered.insert(a);
        covered.insert(b);
    }
    for &[f1, f2, f3] in &triples {
        tiles.push(Tile::new(f1, f2).unwrap());
        tiles.push(Tile::new(f2, f3).unwrap());
        covered.insert(f1);
        covered.insert(f2);
        covered.insert(f3);
    }

    let root = covered.iter().next().unwrap_or(0);
    for f in 0..n as SymbolId {
        if !covered.contains(f) && f != root {
            tiles.push(Tile::new(f, root).unwrap());
        }
    }
    Tileset::from_tiles(tiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_dp;
    use crate::feasibility::is_feasible;
    use crate::model::tileset_graph;

    fn inst(n: usize, scenarios: &[&[SymbolId]]) -> Instance {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let sets = scenarios
            .iter()
            .map(|ids| SymbolSet::from_ids(n, ids.iter().copied()))
            .collect();
        Instance::new(names, sets, None).unwrap()
    }

    #[test]
    fn pairs_exclude_scenario_contained_sets() {
        let i = inst(4, &[&[0, 1], &[2, 3]]);
        let fam = admissible_pairs(&i, &SymbolSet::full(4));
        assert_eq!(
            fam.sets,
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
        );

        let blocked = inst(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(admissible_pairs(&blocked, &SymbolSet::full(3)).sets.is_empty());

        let single = inst(2, &[&[0], &[1]]);
        assert_eq!(
            admissible_pairs(&single, &SymbolSet::full(2)).sets,
            vec![vec![0, 1]]
        );
    }

    #[test]
    fn matching_over_admissible_pairs() {
        let fam = AdmissibleFamily {
            order: 2,
            sets: vec![vec![0, 2], vec![1, 3]],
        };
        assert_eq!(max_matching_pairs(&fam), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn packing_takes_lexicographically_smallest_first() {
        // {0,1,2} is inside a scenario, everything else is free.
        let i = inst(6, &[&[0, 1, 2], &[3], &[4], &[5]]);
        let packed = greedy_triple_packing(&i, &SymbolSet::full(6));
        assert_eq!(packed, vec![[0, 1, 3], [2, 4, 5]]);

        let blocked = inst(4, &[&[0, 1, 2], &[3]]);
        let leftover = SymbolSet::from_ids(4, [0, 1, 2]);
        assert!(greedy_triple_packing(&blocked, &leftover).is_empty());

        let free = inst(3, &[&[0], &[1], &[2]]);
        assert_eq!(
            greedy_triple_packing(&free, &SymbolSet::full(3)),
            vec![[0, 1, 2]]
        );
    }

    #[test]
    fn packing_is_maximal() {
        let i = inst(7, &[&[0, 1], &[2], &[3], &[4], &[5], &[6]]);
        let packed = greedy_triple_packing(&i, &SymbolSet::full(7));
        let mut remaining = SymbolSet::full(7);
        for t in &packed {
            for &s in t {
                remaining.remove(s);
            }
        }
        let ids = remaining.to_vec();
        for (x, &a) in ids.iter().enumerate() {
            for (y, &b) in ids.iter().enumerate().skip(x + 1) {
                for &c in &ids[y + 1..] {
                    assert!(
                        i.contained_in_scenario(&SymbolSet::from_ids(7, [a, b, c])),
                        "triple {a},{b},{c} was left packable"
                    );
                }
            }
        }
    }

    #[test]
    fn two_singletons_cost_one_tile() {
        let i = inst(2, &[&[0], &[1]]);
        let ts = approximate(&i);
        assert_eq!(ts.size(), 1);
        assert!(is_feasible(&ts, &i).is_feasible());
    }

    #[test]
    fn matched_pairs_hit_the_optimum() {
        let i = inst(4, &[&[0, 1], &[2, 3]]);
        let ts = approximate(&i);
        assert_eq!(ts.size(), 2);
        assert_eq!(solve_dp(&i).unwrap().opt_tiles, 2);
        assert!(is_feasible(&ts, &i).is_feasible());
    }

    #[test]
    fn triple_packing_hits_the_planted_optimum() {
        // All pairs blocked, all triples blocked except {0,1,2},{3,4,5}.
        let mut scenarios: Vec<Vec<SymbolId>> = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                scenarios.push(vec![a, b]);
            }
        }
        for a in 0..6u32 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let t = vec![a, b, c];
                    if t != [0, 1, 2] && t != [3, 4, 5] {
                        scenarios.push(t);
                    }
                }
            }
        }
        let refs: Vec<&[SymbolId]> = scenarios.iter().map(|s| s.as_slice()).collect();
        let i = inst(6, &refs);
        let ts = approximate(&i);
        assert_eq!(ts.size(), 4);
        assert_eq!(solve_dp(&i).unwrap().opt_tiles, 4);
        assert!(is_feasible(&ts, &i).is_feasible());
    }

    #[test]
    fn output_is_always_a_forest() {
        let i = inst(5, &[&[0, 1, 2, 3], &[4]]);
        let ts = approximate(&i);
        let g = tileset_graph(&ts, 5);
        assert!(g.is_forest());
        assert!(is_feasible(&ts, &i).is_feasible());
    }

    #[test]
    fn universes_beyond_one_word_work_end_to_end() {
        // 80 symbols exercises the multi-word set representation in the
        // containment tests, the matcher, and the packing.
        let n = 80;
        let scenarios: Vec<Vec<SymbolId>> =
            (0..n as SymbolId).map(|s| vec![s]).collect();
        let refs: Vec<&[SymbolId]> = scenarios.iter().map(|s| s.as_slice()).collect();
        let i = inst(n, &refs);
        let ts = approximate(&i);
        // Singleton scenarios admit a perfect pairing.
        assert_eq!(ts.size(), (n / 2) as u64);
        assert!(is_feasible(&ts, &i).is_feasible());
        assert!(tileset_graph(&ts, n).is_forest());
    }
}
