//! Measure the approximation ratio over a batch of random instances.
//!
//! Run with: cargo run --release --example ratio_benchmark

use tilekit::approx::approximate;
use tilekit::exact::solve_dp;
use tilekit::generators::random_instance;

fn main() {
    let mut worst: (u64, u64) = (1, 1);
    let mut exact_hits = 0;
    let runs = 200;
    for seed in 0..runs {
        // Dense overlapping scenarios make pair components scarce, which is
        // where the heuristic actually pays its approximation factor.
        let instance = random_instance(10, 20, 7, seed).unwrap();
        let opt = solve_dp(&instance).unwrap().opt_tiles;
        let approx = approximate(&instance).size();
        assert!(3 * approx <= 4 * opt, "ratio bound violated at seed {seed}");
        if approx == opt {
            exact_hits += 1;
        }
        if approx as u128 * worst.1 as u128 > worst.0 as u128 * opt as u128 {
            worst = (approx, opt);
        }
    }
    println!("{runs} instances, {exact_hits} solved exactly by the heuristic");
    println!(
        "worst ratio observed: {}/{} = {:.4}",
        worst.0,
        worst.1,
        worst.0 as f64 / worst.1 as f64
    );
}
