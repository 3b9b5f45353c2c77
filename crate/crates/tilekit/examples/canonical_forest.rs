//! Rewrite a cyclic tileset into a forest of the same or smaller size.
//!
//! Run with: cargo run --example canonical_forest

use tilekit::canonical::canonicalize;
use tilekit::feasibility::is_feasible;
use tilekit::model::{parse_instance, parse_tileset, tileset_graph};

fn main() {
    let (instance, _) = parse_instance(
        r#"{
            "symbols": ["p", "q", "r", "s", "t"],
            "scenarios": [["p", "q", "r"], ["s"], ["t"]]
        }"#,
    )
    .unwrap();

    // A triangle on {p,q,r} plus one separate tile: feasible, but wasteful —
    // the cycle spends three tiles where a tree needs two.
    let cyclic = parse_tileset(
        r#"{"tiles": [["p","q"], ["q","r"], ["p","r"], ["s","t"]]}"#,
        &instance,
    )
    .unwrap();
    let n = instance.symbol_count();
    assert!(!tileset_graph(&cyclic, n).is_forest());

    let forest = canonicalize(&cyclic, &instance).unwrap();
    println!("{} tiles in, {} tiles out", cyclic.size(), forest.size());
    assert!(tileset_graph(&forest, n).is_forest());
    assert!(is_feasible(&forest, &instance).is_feasible());

    for (tile, _) in forest.iter() {
        println!(
            "  {} | {}",
            instance.symbol_name(tile.a()),
            instance.symbol_name(tile.b())
        );
    }
    let components = tileset_graph(&forest, n).components();
    println!("components: {components:?}");
}
