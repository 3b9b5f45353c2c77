//! Generate random and planted instances.
//!
//! Run with: cargo run --example instance_generation

use tilekit::exact::solve_dp;
use tilekit::feasibility::is_feasible;
use tilekit::generators::{planted_partition, random_instance};
use tilekit::model::serialize_instance;

fn main() {
    // Random scenarios; the same seed always yields the same instance.
    let random = random_instance(6, 8, 3, 7).unwrap();
    println!("{}", serialize_instance(&random));
    assert_eq!(random, random_instance(6, 8, 3, 7).unwrap());

    // A planted instance carries a known-feasible tileset whose size upper
    // bounds the optimum.
    let (instance, tileset, opt_upper) = planted_partition(7, &[3, 2, 2], 99).unwrap();
    assert!(is_feasible(&tileset, &instance).is_feasible());
    let opt = solve_dp(&instance).unwrap().opt_tiles;
    println!(
        "planted {} tiles (upper bound {opt_upper}), exact optimum {opt}",
        tileset.size()
    );
    assert!(opt <= opt_upper);
}
