//! Verify a tileset against scenarios and inspect the certificate.
//!
//! Run with: cargo run --example feasibility_check

use tilekit::feasibility::{is_feasible, orientation_for, Feasibility};
use tilekit::model::{parse_instance, parse_tileset};

fn main() {
    let (instance, _) = parse_instance(
        r#"{
            "symbols": ["water", "fire", "earth", "air"],
            "scenarios": [["water", "fire"], ["earth", "air"], ["water", "air"]]
        }"#,
    )
    .unwrap();

    // Two tiles: {water|earth} and {fire|air}. Each tile shows one side at a
    // time, and every scenario must be formable simultaneously.
    let tileset = parse_tileset(
        r#"{"tiles": [["water", "earth"], ["fire", "air"]]}"#,
        &instance,
    )
    .unwrap();

    match is_feasible(&tileset, &instance) {
        Feasibility::Feasible(cert) => {
            println!("feasible; one assignment per scenario:");
            for (i, fragment) in cert.scenarios.iter().enumerate() {
                println!("{}", fragment.to_json(i, &instance));
            }
        }
        Feasibility::Infeasible { scenario } => {
            println!("infeasible at scenario {scenario}");
        }
    }

    // The same answer, viewed as orienting each tile toward the symbol it
    // provides: feasible iff every scenario symbol has indegree >= 1.
    let scenario = instance.scenarios()[0].members();
    let orientation = orientation_for(&tileset, scenario).unwrap();
    println!("orientation for the first scenario:");
    for (tile, copy, toward) in &orientation.edges {
        println!(
            "  {} copy {} -> {}",
            tile,
            copy,
            instance.symbol_name(*toward)
        );
    }
}
