//! Decide exact cover by 3-sets through the tileset reduction.
//!
//! Run with: cargo run --example hardness_reduction

use tilekit::exact::solve_dp;
use tilekit::reductions::{x3c_to_mft, X3cInstance};

fn decide(universe: &[&str], family: &[[&str; 3]]) -> bool {
    let x3c = X3cInstance::new(
        universe.iter().map(|s| s.to_string()).collect(),
        family
            .iter()
            .map(|t| t.iter().map(|s| s.to_string()).collect())
            .collect(),
    )
    .unwrap();
    let reduction = x3c_to_mft(&x3c).unwrap();
    println!(
        "reduced to {} symbols, {} scenarios, budget {}",
        reduction.instance.symbol_count(),
        reduction.instance.scenarios().len(),
        reduction.instance.budget().unwrap()
    );
    let dp = solve_dp(&reduction.instance).unwrap();
    dp.opt_tiles <= reduction.instance.budget().unwrap()
}

fn main() {
    let universe = ["u", "v", "w", "x", "y", "z"];

    // Two disjoint triples cover all six elements.
    let coverable = [["u", "v", "w"], ["x", "y", "z"]];
    println!("disjoint family coverable: {}\n", decide(&universe, &coverable));

    // Overlapping triples cannot: every pair of them shares "u".
    let overlapping = [["u", "v", "w"], ["u", "x", "y"], ["u", "y", "z"]];
    println!(
        "overlapping family coverable: {}",
        decide(&universe, &overlapping)
    );
}
