//! The 4/3-approximation next to the exact optimum.
//!
//! Run with: cargo run --example approximation

use tilekit::approx::{admissible_pairs, approximate, greedy_triple_packing, max_matching_pairs};
use tilekit::exact::solve_dp;
use tilekit::feasibility::is_feasible;
use tilekit::generators::random_instance;
use tilekit::model::SymbolSet;

fn main() {
    let instance = random_instance(12, 14, 4, 42).unwrap();
    let n = instance.symbol_count();

    // Phase 1: pair up symbols whose 2-set fits in no scenario.
    let pairs = admissible_pairs(&instance, &SymbolSet::full(n));
    let matching = max_matching_pairs(&pairs);
    println!(
        "{} admissible pairs, maximum matching of size {}",
        pairs.sets.len(),
        matching.len()
    );

    // Phase 2: pack triples from what remains.
    let mut leftover = SymbolSet::full(n);
    for &(a, b) in &matching {
        leftover.remove(a);
        leftover.remove(b);
    }
    let triples = greedy_triple_packing(&instance, &leftover);
    println!("{} greedy triples over {} leftover symbols", triples.len(), leftover.len());

    // Phase 3 happens inside approximate(): leftovers attach to a root.
    let approx = approximate(&instance);
    assert!(is_feasible(&approx, &instance).is_feasible());

    let opt = solve_dp(&instance).unwrap().opt_tiles;
    println!("approximation: {} tiles, optimum: {opt} tiles", approx.size());
    assert!(3 * approx.size() <= 4 * opt);
    println!("ratio within 4/3: 3*{} <= 4*{opt}", approx.size());
}
