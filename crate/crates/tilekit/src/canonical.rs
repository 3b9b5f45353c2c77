//! Rewrites any feasible tileset into one of no larger cardinality whose
//! graph is a forest, preserving feasibility.
//!
//! The transformation collects the vertices of all components that contain a
//! cycle (parallel edges count as cycles), replaces their edges by a single
//! cycle over the collected vertices, and then breaks that cycle: either by
//! deleting one edge when the cycle is the only component, or by swapping one
//! cycle edge for an edge into a tree component. Arbitrary choices are fixed
//! to lowest ids so results are reproducible.

use thiserror::Error;

use crate::feasibility::{is_feasible, Feasibility};
use crate::model::{Instance, SymbolId, Tile, Tileset, tileset_graph};

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("input tileset is infeasible (scenario {scenario})")]
    InfeasibleInput { scenario: usize },
    #[error("canonicalization is defined for the simple scenario family only")]
    GeneralizedNotSupported,
}

/// Returns a feasible tileset no larger than `ts` whose graph is a forest.
/// Forest inputs come back unchanged.
pub fn canonicalize(ts: &Tileset, inst: &Instance) -> Result<Tileset, CanonicalError> {
    if inst.generalized().is_some() {
        return Err(CanonicalError::GeneralizedNotSupported);
    }
    if let Feasibility::Infeasible { scenario } = is_feasible(ts, inst) {
        return Err(CanonicalError::InfeasibleInput { scenario });
    }

    let n = inst.symbol_count();
    let graph = tileset_graph(ts, n);
    let components = graph.components();
    let edge_counts = graph.component_edge_counts();

    // A component contains a cycle iff it has at least as many edges as
    // vertices.
    let cyclic: Vec<bool> = components
        .iter()
        .zip(&edge_counts)
        .map(|(c, &e)| e >= c.len())
        .collect();
    if !cyclic.iter().any(|&c| c) {
        return Ok(ts.clone());
    }

    let mut collected: Vec<SymbolId> = components
        .iter()
        .zip(&cyclic)
        .filter(|(_, &cy)| cy)
        .flat_map(|(c, _)| c.iter().copied())
        .collect();
    collected.sort_unstable();

    // Keep the tree components, replace everything else by one cycle.
    let mut out = Tileset::new();
    for (tile, mult) in ts.iter() {
        if !cyclic[graph.component_of(tile.a())] {
            out.add(tile, mult);
        }
    }
    if collected.len() == 2 {
        out.add(Tile::new(collected[0], collected[1]).unwrap(), 2);
    } else {
        for w in collected.windows(2) {
            out.add(Tile::new(w[0], w[1]).unwrap(), 1);
        }
        out.add(
            Tile::new(collected[0], *collected.last().unwrap()).unwrap(),
            1,
        );
    }

    // Lowest edge of the cycle in tile order.
    let cycle_edge = Tile::new(collected[0], collected[1]).unwrap();
    let only_component = cyclic.iter().all(|&c| c);
    out.remove_one(cycle_edge);
    if !only_component {
        // Reattach the opened cycle to the lowest vertex of a tree component.
        let anchor = (0..n as SymbolId)
            .find(|&v| !cyclic[graph.component_of(v)])
            .expect("a tree component exists");
        out.add(Tile::new(cycle_edge.a(), anchor).unwrap(), 1);
    }

    debug_assert!(tileset_graph(&out, n).is_forest());
    debug_assert!(is_feasible(&out, inst).is_feasible());
    Ok(out)
}
