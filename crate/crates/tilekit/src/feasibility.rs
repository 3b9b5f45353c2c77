//! Feasibility of a tileset for scenarios: matching-based checks with
//! certificates, edge orientations, and the component-containment test for
//! forest tilesets.
//!
//! A tileset is feasible for a scenario when a matching saturating the
//! scenario exists in the bipartite graph (scenario symbols) x (tile
//! occurrences) with an edge whenever the symbol is an endpoint of the tile.
//! The matching runs on tile occurrences, so multiset tilesets and multiset
//! (generalized) demands verify with the same code path.
//!
//! Everything here is a pure function over immutable inputs; callers may
//! check scenarios from multiple threads and merge results by index.

use std::collections::BTreeMap;

use serde_json::json;
use thiserror::Error;

use crate::model::{Instance, SymbolId, SymbolSet, Tile, Tileset, tileset_graph};

#[derive(Debug, Error)]
pub enum FeasibilityError {
    #[error("tileset graph contains a cycle or parallel edges; not a forest")]
    NotAForest,
}

/// One symbol assigned to one specific copy of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assignment {
    pub symbol: SymbolId,
    pub tile: Tile,
    /// Which copy of the tile provides the symbol (0-based).
    pub copy: u32,
}

/// An injective assignment of a scenario's symbols to tile occurrences,
/// witnessing feasibility for that scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFragment {
    pub assignments: Vec<Assignment>,
}

impl CertificateFragment {
    /// Re-validates the fragment: occurrences pairwise distinct, each symbol
    /// an endpoint of its tile, and every demanded copy assigned.
    pub fn validate(&self, ts: &Tileset, demands: &BTreeMap<SymbolId, u32>) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for a in &self.assignments {
            if !a.tile.contains(a.symbol) || a.copy >= ts.multiplicity(a.tile) {
                return false;
            }
            if !seen.insert((a.tile, a.copy)) {
                return false;
            }
        }
        let mut provided: BTreeMap<SymbolId, u32> = BTreeMap::new();
        for a in &self.assignments {
            *provided.entry(a.symbol).or_insert(0) += 1;
        }
        demands
            .iter()
            .all(|(s, &c)| provided.get(s).copied().unwrap_or(0) >= c)
    }

    pub fn to_json(&self, scenario_index: usize, inst: &Instance) -> serde_json::Value {
        json!({
            "scenario": scenario_index,
            "assignment": self
                .assignments
                .iter()
                .map(|a| {
                    json!({
                        "symbol": inst.symbol_name(a.symbol),
                        "tile": [inst.symbol_name(a.tile.a()), inst.symbol_name(a.tile.b())],
                        "copy": a.copy,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Per-scenario certificates for a whole instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityCertificate {
    /// One fragment per simple scenario, in instance order.
    pub scenarios: Vec<CertificateFragment>,
    /// Fragment for the generalized scenario, when the instance has one.
    pub generalized: Option<CertificateFragment>,
}

/// Outcome of checking a tileset against every scenario of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(FeasibilityCertificate),
    /// Index of the first failing scenario; `usize::MAX` marks the
    /// generalized scenario.
    Infeasible { scenario: usize },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Deterministic maximum bipartite matching from demand units to tile
/// occurrences. Returns one assignment per demanded unit, or `None` when the
/// demands cannot be saturated. Symbols are processed in ascending id order
/// and occurrences tried in ascending canonical order, so certificates are
/// reproducible.
fn saturating_matching(
    ts: &Tileset,
    demands: &BTreeMap<SymbolId, u32>,
) -> Option<Vec<Assignment>> {
    let occurrences: Vec<(Tile, u32)> = ts.occurrences().collect();
    // owner[j] = index into `units` currently matched to occurrence j.
    let mut owner: Vec<Option<usize>> = vec![None; occurrences.len()];
    let units: Vec<SymbolId> = demands
        .iter()
        .flat_map(|(&s, &c)| std::iter::repeat_n(s, c as usize))
        .collect();
    let mut matched_occurrence: Vec<Option<usize>> = vec![None; units.len()];

    fn augment(
        unit: usize,
        symbol: SymbolId,
        occurrences: &[(Tile, u32)],
        units: &[SymbolId],
        owner: &mut [Option<usize>],
        matched: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for (j, &(tile, _)) in occurrences.iter().enumerate() {
            if visited[j] || !tile.contains(symbol) {
                continue;
            }
            visited[j] = true;
            let free = match owner[j] {
                None => true,
                Some(prev) => augment(
                    prev,
                    units[prev],
                    occurrences,
                    units,
                    owner,
                    matched,
                    visited,
                ),
            };
            if free {
                owner[j] = Some(unit);
                matched[unit] = Some(j);
                return true;
            }
        }
        false
    }

    for (unit, &symbol) in units.iter().enumerate() {
        let mut visited = vec![false; occurrences.len()];
        if !augment(
            unit,
            symbol,
            &occurrences,
            &units,
            &mut owner,
            &mut matched_occurrence,
            &mut visited,
        ) {
            return None;
        }
    }

    Some(
        units
            .iter()
            .zip(&matched_occurrence)
            .map(|(&symbol, j)| {
                let (tile, copy) = occurrences[j.expect("all units matched")];
                Assignment { symbol, tile, copy }
            })
            .collect(),
    )
}

/// Decides feasibility of a tileset for one scenario (given as its symbol
/// set) and returns the matching as a certificate fragment on success.
pub fn is_feasible_scenario(ts: &Tileset, scenario: &SymbolSet) -> Option<CertificateFragment> {
    let demands: BTreeMap<SymbolId, u32> = scenario.iter().map(|s| (s, 1)).collect();
    saturating_matching(ts, &demands).map(|assignments| CertificateFragment { assignments })
}

/// Multiset-aware variant: each symbol must be provided by as many distinct
/// tile occurrences as its demand.
pub fn is_feasible_demands(
    ts: &Tileset,
    demands: &BTreeMap<SymbolId, u32>,
) -> Option<CertificateFragment> {
    saturating_matching(ts, demands).map(|assignments| CertificateFragment { assignments })
}

/// Checks a tileset against every scenario of the instance, including the
/// generalized one when present. Stops at the first failing scenario.
pub fn is_feasible(ts: &Tileset, inst: &Instance) -> Feasibility {
    let mut fragments = Vec::with_capacity(inst.scenarios().len());
    for (i, s) in inst.scenarios().iter().enumerate() {
        match is_feasible_scenario(ts, s.members()) {
            Some(fragment) => fragments.push(fragment),
            None => return Feasibility::Infeasible { scenario: i },
        }
    }
    let generalized = match inst.generalized() {
        None => None,
        Some(g) => match is_feasible_demands(ts, g.demand()) {
            Some(fragment) => Some(fragment),
            None => {
                return Feasibility::Infeasible {
                    scenario: usize::MAX,
                }
            }
        },
    };
    Feasibility::Feasible(FeasibilityCertificate {
        scenarios: fragments,
        generalized,
    })
}

/// Component-containment feasibility test for forest tilesets: feasible iff
/// no connected component of the tileset graph lies inside a scenario.
///
/// Errors when the graph contains a cycle or parallel edges. Only the simple
/// scenario family participates; generalized demands have no forest
/// characterization.
pub fn forest_feasible(ts: &Tileset, inst: &Instance) -> Result<bool, FeasibilityError> {
    let n = inst.symbol_count();
    let graph = tileset_graph(ts, n);
    if !graph.is_forest() {
        return Err(FeasibilityError::NotAForest);
    }
    let components = graph.components();
    Ok(components.iter().all(|c| {
        let set = SymbolSet::from_ids(n, c.iter().copied());
        !inst.contained_in_scenario(&set)
    }))
}

/// A direction for every tile occurrence of a tileset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    /// `(tile, copy, toward)` per occurrence, canonical order.
    pub edges: Vec<(Tile, u32, SymbolId)>,
}

impl Orientation {
    /// Indegree of every vertex up to `n`.
    pub fn indegrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0usize; n];
        for &(_, _, toward) in &self.edges {
            deg[toward as usize] += 1;
        }
        deg
    }

    /// An orientation is feasible for a scenario iff every scenario symbol
    /// has indegree at least one.
    pub fn feasible_for(&self, scenario: &SymbolSet) -> bool {
        let n = self
            .edges
            .iter()
            .map(|&(t, _, _)| t.b() as usize + 1)
            .chain(scenario.iter().map(|s| s as usize + 1))
            .max()
            .unwrap_or(0);
        let deg = self.indegrees(n);
        scenario.iter().all(|s| deg[s as usize] >= 1)
    }
}

/// Derives a feasible orientation for a scenario from the matching
/// certificate: matched occurrences point at their symbol, all other
/// occurrences point at their smaller endpoint. Returns `None` iff the
/// tileset is infeasible for the scenario.
pub fn orientation_for(ts: &Tileset, scenario: &SymbolSet) -> Option<Orientation> {
    let fragment = is_feasible_scenario(ts, scenario)?;
    let mut toward: BTreeMap<(Tile, u32), SymbolId> = ts
        .occurrences()
        .map(|(t, k)| ((t, k), t.a()))
        .collect();
    for a in &fragment.assignments {
        toward.insert((a.tile, a.copy), a.symbol);
    }
    Some(Orientation {
        edges: toward.into_iter().map(|((t, k), s)| (t, k, s)).collect(),
    })
}
