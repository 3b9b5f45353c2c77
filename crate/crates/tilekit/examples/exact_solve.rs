//! Solve an instance exactly, two ways, and compare the witnesses.
//!
//! Run with: cargo run --example exact_solve

use tilekit::exact::{solve_bruteforce, solve_dp};
use tilekit::feasibility::is_feasible;
use tilekit::model::parse_instance;

fn main() {
    let (instance, _) = parse_instance(
        r#"{
            "symbols": ["a", "b", "c", "d", "e", "f"],
            "scenarios": [
                ["a", "b"], ["c", "d"], ["e", "f"],
                ["a", "c", "e"], ["b", "d", "f"]
            ]
        }"#,
    )
    .unwrap();

    let dp = solve_dp(&instance).unwrap();
    println!("subset dp:       {} tiles", dp.opt_tiles);
    println!("max parts:       {}", dp.max_parts);
    for part in dp.partition.parts() {
        let names: Vec<&str> = part.iter().map(|&s| instance.symbol_name(s)).collect();
        println!("  part {:?}", names);
    }
    println!("witness tiles:");
    for (tile, _) in dp.tileset.iter() {
        println!(
            "  {} | {}",
            instance.symbol_name(tile.a()),
            instance.symbol_name(tile.b())
        );
    }
    assert!(is_feasible(&dp.tileset, &instance).is_feasible());

    // The brute-force enumeration over all set partitions agrees.
    let brute = solve_bruteforce(&instance).unwrap();
    println!("brute force:     {} tiles", brute.opt_tiles);
    assert_eq!(dp.opt_tiles, brute.opt_tiles);

    println!(
        "split evaluations: {} (bounded by 3^{})",
        dp.stats.split_evaluations,
        instance.symbol_count()
    );
}
