//! Build both integer feasibility models, solve them at desk scale, and
//! export LP text for an external solver.
//!
//! Run with: cargo run --example ilp_models

use tilekit::ilp::{build_hall_ilp, build_pattern_ilp, export_lp, solve_small};
use tilekit::model::parse_instance;

fn main() {
    // Pattern model: indexed by how symbols split their scenario sets
    // across tiles. Practical when the scenario count is tiny.
    let (instance, _) = parse_instance(
        r#"{
            "symbols": ["a", "b", "c", "d"],
            "scenarios": [["a", "b"], ["c", "d"], ["a", "c"]],
            "budget": 2
        }"#,
    )
    .unwrap();
    let pattern = build_pattern_ilp(&instance).unwrap();
    println!(
        "pattern model: {} y-variables, {} x-variables, {} constraints",
        pattern.y_count,
        pattern.x_count,
        pattern.model.constraints.len()
    );
    match solve_small(&pattern.model, 1_000_000).unwrap() {
        Some(assignment) => {
            let used: Vec<String> = assignment
                .iter()
                .filter(|(_, &v)| v > 0)
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            println!("feasible at budget 2: {}", used.join(", "));
        }
        None => println!("infeasible at budget 2"),
    }

    // Hall model: one variable per tile type, one covering row per subset
    // of each scenario's demanded symbols. Handles multiset demands.
    let (generalized, _) = parse_instance(
        r#"{
            "symbols": ["a", "b", "c"],
            "scenarios": [],
            "budget": 2,
            "generalized": [{"symbol": "a", "count": 2}]
        }"#,
    )
    .unwrap();
    let hall = build_hall_ilp(&generalized).unwrap();
    println!(
        "hall model: {} variables, {} constraints",
        hall.model.variables.len(),
        hall.model.constraints.len()
    );
    println!("{}", export_lp(&hall.model));
}
