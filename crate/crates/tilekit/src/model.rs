//! Domain types shared by every solver: symbols, scenarios, instances,
//! tiles, tilesets, and the tileset graph.
//!
//! Symbols are interned to dense integer ids so scenario operations run on
//! bitsets; display names are kept separately on the [`Instance`]. Scenario
//! sets use a single 64-bit word when the universe has at most 64 symbols and
//! a word array otherwise, with identical semantics on both paths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense 0-based index of a symbol within an instance universe.
pub type SymbolId = u32;

/// Errors from instance construction, parsing, and tileset parsing.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("document syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate symbol name {0:?}")]
    DuplicateSymbol(String),
    #[error("scenario {index} references unknown symbol {name:?}")]
    UnknownSymbol { index: usize, name: String },
    #[error("scenario {0} is empty")]
    EmptyScenario(usize),
    #[error("scenario {0} equals the full symbol universe")]
    ScenarioEqualsUniverse(usize),
    #[error("instance has no scenarios")]
    NoScenarios,
    #[error("generalized demand for {name:?} must be positive")]
    NonPositiveDemand { name: String },
    #[error("generalized demand lists symbol {name:?} twice")]
    DuplicateDemand { name: String },
    #[error("unknown symbol {name:?} in generalized demands")]
    UnknownDemandSymbol { name: String },
    #[error("tile {index} must contain exactly two symbols, found {len}")]
    UnitTile { index: usize, len: usize },
    #[error("tile {index} pairs symbol {name:?} with itself")]
    DegenerateTile { index: usize, name: String },
    #[error("tile {index} references unknown symbol {name:?}")]
    UnknownTileSymbol { index: usize, name: String },
    #[error("symbol id {id} out of range for universe of size {universe}")]
    SymbolOutOfRange { id: SymbolId, universe: usize },
}

// ---------------------------------------------------------------------------
// SymbolSet
// ---------------------------------------------------------------------------

/// A set of symbol ids backed by 64-bit words.
///
/// Universes of at most 64 symbols use a single inline word; larger universes
/// fall back to a boxed word array. All operations have identical semantics
/// on both representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolSet {
    Word(u64),
    Words(Box<[u64]>),
}

impl SymbolSet {
    /// Empty set sized for a universe of `n` symbols.
    pub fn empty(n: usize) -> Self {
        if n <= 64 {
            SymbolSet::Word(0)
        } else {
            SymbolSet::Words(vec![0u64; n.div_ceil(64)].into_boxed_slice())
        }
    }

    pub fn from_ids<I: IntoIterator<Item = SymbolId>>(n: usize, ids: I) -> Self {
        let mut set = SymbolSet::empty(n);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Set holding `0..n`.
    pub fn full(n: usize) -> Self {
        SymbolSet::from_ids(n, 0..n as SymbolId)
    }

    pub fn insert(&mut self, id: SymbolId) {
        match self {
            SymbolSet::Word(w) => {
                debug_assert!(id < 64);
                *w |= 1u64 << id;
            }
            SymbolSet::Words(ws) => ws[id as usize / 64] |= 1u64 << (id % 64),
        }
    }

    pub fn remove(&mut self, id: SymbolId) {
        match self {
            SymbolSet::Word(w) => *w &= !(1u64 << id),
            SymbolSet::Words(ws) => ws[id as usize / 64] &= !(1u64 << (id % 64)),
        }
    }

    pub fn contains(&self, id: SymbolId) -> bool {
        match self {
            SymbolSet::Word(w) => id < 64 && w >> id & 1 == 1,
            SymbolSet::Words(ws) => ws
                .get(id as usize / 64)
                .is_some_and(|w| w >> (id % 64) & 1 == 1),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SymbolSet::Word(w) => w.count_ones() as usize,
            SymbolSet::Words(ws) => ws.iter().map(|w| w.count_ones() as usize).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SymbolSet::Word(w) => *w == 0,
            SymbolSet::Words(ws) => ws.iter().all(|&w| w == 0),
        }
    }

    pub fn is_subset_of(&self, other: &SymbolSet) -> bool {
        self.zip_words(other, |a, b| a & !b == 0)
    }

    /// True for `self ⊆ other` with `self ≠ other`.
    pub fn is_strict_subset_of(&self, other: &SymbolSet) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn intersects(&self, other: &SymbolSet) -> bool {
        !self.zip_words(other, |a, b| a & b == 0)
    }

    fn zip_words(&self, other: &SymbolSet, all: impl Fn(u64, u64) -> bool) -> bool {
        let (a, b) = (self.words(), other.words());
        let longest = a.len().max(b.len());
        (0..longest).all(|i| {
            all(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
    }

    fn words(&self) -> &[u64] {
        match self {
            SymbolSet::Word(w) => std::slice::from_ref(w),
            SymbolSet::Words(ws) => ws,
        }
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.words().iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros();
                    rest &= rest - 1;
                    Some(wi as SymbolId * 64 + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<SymbolId> {
        self.iter().collect()
    }

    /// Low 32 bits as a mask; only valid for universes of at most 32 symbols.
    pub fn as_mask32(&self) -> u32 {
        debug_assert!(self.iter().all(|id| id < 32));
        self.words().first().copied().unwrap_or(0) as u32
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ---------------------------------------------------------------------------
// Scenario and Instance
// ---------------------------------------------------------------------------

/// A non-empty set of symbols that must be simultaneously producible.
/// Never equals the full universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scenario {
    members: SymbolSet,
}

impl Scenario {
    pub fn members(&self) -> &SymbolSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A scenario demanding multiple copies of symbols, for the generalized
/// problem where each scenario is a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedScenario {
    demand: BTreeMap<SymbolId, u32>,
}

impl GeneralizedScenario {
    /// Demands must be positive; at least one is required.
    pub fn new(demand: BTreeMap<SymbolId, u32>) -> Option<Self> {
        if demand.is_empty() || demand.values().any(|&c| c == 0) {
            None
        } else {
            Some(GeneralizedScenario { demand })
        }
    }

    pub fn demand(&self) -> &BTreeMap<SymbolId, u32> {
        &self.demand
    }

    /// Symbols with positive demand.
    pub fn support(&self, n: usize) -> SymbolSet {
        SymbolSet::from_ids(n, self.demand.keys().copied())
    }

    pub fn total_demand(&self) -> u64 {
        self.demand.values().map(|&c| c as u64).sum()
    }
}

/// What normalization changed, for reporting back to the caller.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizationReport {
    /// Names of symbols removed because they occur in no scenario.
    pub removed_symbols: Vec<String>,
    /// Number of duplicate scenarios dropped.
    pub deduplicated_scenarios: usize,
}

impl NormalizationReport {
    pub fn is_clean(&self) -> bool {
        self.removed_symbols.is_empty() && self.deduplicated_scenarios == 0
    }
}

/// A problem instance: a symbol universe, a scenario family, an optional
/// tile budget, and optionally a generalized (multiset) scenario.
///
/// Instances are immutable after construction and safe to share across
/// threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    symbols: Vec<String>,
    scenarios: Vec<Scenario>,
    budget: Option<u64>,
    generalized: Option<GeneralizedScenario>,
    /// Indices of scenarios not strictly contained in another scenario.
    maximal: Vec<usize>,
}

impl Instance {
    /// Builds an instance without normalizing. Validates that scenarios are
    /// non-empty, within range, and never equal to the full universe, and
    /// that at least one (possibly generalized) scenario exists.
    pub fn new(
        symbols: Vec<String>,
        scenario_sets: Vec<SymbolSet>,
        budget: Option<u64>,
    ) -> Result<Instance, ModelError> {
        Instance::with_generalized(symbols, scenario_sets, budget, None)
    }

    pub fn with_generalized(
        symbols: Vec<String>,
        scenario_sets: Vec<SymbolSet>,
        budget: Option<u64>,
        generalized: Option<GeneralizedScenario>,
    ) -> Result<Instance, ModelError> {
        let n = symbols.len();
        let mut seen = BTreeSet::new();
        for name in &symbols {
            if !seen.insert(name) {
                return Err(ModelError::DuplicateSymbol(name.clone()));
            }
        }
        if scenario_sets.is_empty() && generalized.is_none() {
            return Err(ModelError::NoScenarios);
        }
        let full = SymbolSet::full(n);
        let mut scenarios = Vec::with_capacity(scenario_sets.len());
        for (i, members) in scenario_sets.into_iter().enumerate() {
            if members.is_empty() {
                return Err(ModelError::EmptyScenario(i));
            }
            if let Some(id) = members.iter().find(|&id| id as usize >= n) {
                return Err(ModelError::SymbolOutOfRange { id, universe: n });
            }
            if members == full {
                return Err(ModelError::ScenarioEqualsUniverse(i));
            }
            scenarios.push(Scenario { members });
        }
        if let Some(g) = &generalized {
            if let Some((&id, _)) = g.demand.iter().find(|(&id, _)| id as usize >= n) {
                return Err(ModelError::SymbolOutOfRange { id, universe: n });
            }
        }
        let maximal = maximal_indices(&scenarios);
        Ok(Instance {
            symbols,
            scenarios,
            budget,
            generalized,
            maximal,
        })
    }

    /// Normal form: unused symbols removed (unless a generalized scenario is
    /// present, where any symbol can serve as a tile partner), symbols sorted
    /// by name, scenarios sorted lexicographically and deduplicated.
    ///
    /// Normalization is idempotent.
    pub fn normalize(&self) -> (Instance, NormalizationReport) {
        let mut report = NormalizationReport::default();
        let n = self.symbols.len();

        // With a generalized scenario present every symbol stays: symbols
        // outside all scenarios can still serve as tile partners there.
        let mut used = vec![self.generalized.is_some(); n];
        for s in &self.scenarios {
            for id in s.members.iter() {
                used[id as usize] = true;
            }
        }

        // Order surviving symbols by name; old id -> new id.
        let mut survivors: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        survivors.sort_by(|&a, &b| self.symbols[a].cmp(&self.symbols[b]));
        let mut remap = vec![None; n];
        for (new, &old) in survivors.iter().enumerate() {
            remap[old] = Some(new as SymbolId);
        }
        for (i, u) in used.iter().enumerate() {
            if !u {
                report.removed_symbols.push(self.symbols[i].clone());
            }
        }
        report.removed_symbols.sort();

        let new_n = survivors.len();
        let mut sets: Vec<Vec<SymbolId>> = self
            .scenarios
            .iter()
            .map(|s| {
                let mut ids: Vec<SymbolId> =
                    s.members.iter().map(|id| remap[id as usize].unwrap()).collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        sets.sort();
        let before = sets.len();
        sets.dedup();
        report.deduplicated_scenarios = before - sets.len();

        let generalized = self.generalized.as_ref().map(|g| GeneralizedScenario {
            demand: g
                .demand
                .iter()
                .map(|(&id, &c)| (remap[id as usize].unwrap(), c))
                .collect(),
        });

        let names: Vec<String> = survivors
            .iter()
            .map(|&old| self.symbols[old].clone())
            .collect();
        let instance = Instance::with_generalized(
            names,
            sets.into_iter()
                .map(|ids| SymbolSet::from_ids(new_n, ids))
                .collect(),
            self.budget,
            generalized,
        )
        .expect("normalizing a valid instance cannot fail");
        (instance, report)
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol_names(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_name(&self, id: SymbolId) -> &str {
        &self.symbols[id as usize]
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    /// The same instance with a different tile budget.
    pub fn with_budget(&self, budget: Option<u64>) -> Instance {
        let mut inst = self.clone();
        inst.budget = budget;
        inst
    }

    pub fn generalized(&self) -> Option<&GeneralizedScenario> {
        self.generalized.as_ref()
    }

    /// Scenarios not strictly contained in another scenario. A symbol set is
    /// contained in some scenario iff it is contained in some maximal one, so
    /// containment tests only consult this view.
    pub fn maximal_scenarios(&self) -> impl Iterator<Item = &Scenario> {
        self.maximal.iter().map(|&i| &self.scenarios[i])
    }

    /// True iff `set` is contained in some scenario.
    pub fn contained_in_scenario(&self, set: &SymbolSet) -> bool {
        self.maximal_scenarios()
            .any(|s| set.is_subset_of(&s.members))
    }

    /// True iff every symbol occurs in at least one scenario (or generalized
    /// demand). Holds for normalized instances without a generalized part.
    pub fn all_symbols_covered(&self) -> bool {
        let n = self.symbol_count();
        let mut covered = SymbolSet::empty(n);
        for s in &self.scenarios {
            for id in s.members.iter() {
                covered.insert(id);
            }
        }
        if let Some(g) = &self.generalized {
            for &id in g.demand.keys() {
                covered.insert(id);
            }
        }
        covered.len() == n
    }

    /// Symbol ids for a list of names, preserving order.
    pub fn ids_for<'a, I: IntoIterator<Item = &'a str>>(
        &self,
        names: I,
    ) -> Option<Vec<SymbolId>> {
        names
            .into_iter()
            .map(|name| {
                self.symbols
                    .iter()
                    .position(|s| s == name)
                    .map(|i| i as SymbolId)
            })
            .collect()
    }
}

fn maximal_indices(scenarios: &[Scenario]) -> Vec<usize> {
    (0..scenarios.len())
        .filter(|&i| {
            !scenarios.iter().enumerate().any(|(j, other)| {
                j != i
                    && scenarios[i].members.is_subset_of(&other.members)
                    && (scenarios[i].members != other.members || j < i)
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Tiles and tilesets
// ---------------------------------------------------------------------------

/// An unordered pair of distinct symbols, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    a: SymbolId,
    b: SymbolId,
}

impl Tile {
    /// Returns `None` when both endpoints coincide.
    pub fn new(x: SymbolId, y: SymbolId) -> Option<Tile> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Tile { a: x, b: y }),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(Tile { a: y, b: x }),
        }
    }

    pub fn a(&self) -> SymbolId {
        self.a
    }

    pub fn b(&self) -> SymbolId {
        self.b
    }

    pub fn contains(&self, id: SymbolId) -> bool {
        self.a == id || self.b == id
    }

    /// The endpoint that is not `id`.
    pub fn other(&self, id: SymbolId) -> SymbolId {
        if id == self.a {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// A multiset of tiles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tileset {
    counts: BTreeMap<Tile, u32>,
}

impl Tileset {
    pub fn new() -> Tileset {
        Tileset::default()
    }

    pub fn from_tiles<I: IntoIterator<Item = Tile>>(tiles: I) -> Tileset {
        let mut ts = Tileset::new();
        for t in tiles {
            ts.add(t, 1);
        }
        ts
    }

    pub fn add(&mut self, tile: Tile, multiplicity: u32) {
        if multiplicity > 0 {
            *self.counts.entry(tile).or_insert(0) += multiplicity;
        }
    }

    /// Total number of tiles, counting multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.values().map(|&c| c as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn multiplicity(&self, tile: Tile) -> u32 {
        self.counts.get(&tile).copied().unwrap_or(0)
    }

    /// Removes one copy of `tile`; returns false when none is present.
    pub fn remove_one(&mut self, tile: Tile) -> bool {
        match self.counts.get_mut(&tile) {
            None => false,
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.counts.remove(&tile);
                }
                true
            }
        }
    }

    /// Distinct tiles with their multiplicities, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (Tile, u32)> + '_ {
        self.counts.iter().map(|(&t, &c)| (t, c))
    }

    /// Every tile occurrence `(tile, copy)` in ascending order; copies of the
    /// same tile are numbered from 0. This is the canonical occurrence
    /// enumeration used by certificates and orientations.
    pub fn occurrences(&self) -> impl Iterator<Item = (Tile, u32)> + '_ {
        self.counts
            .iter()
            .flat_map(|(&t, &c)| (0..c).map(move |k| (t, k)))
    }

    /// Largest symbol id mentioned by any tile, if non-empty.
    pub fn max_symbol(&self) -> Option<SymbolId> {
        self.counts.keys().map(|t| t.b).max()
    }
}

impl FromIterator<Tile> for Tileset {
    fn from_iter<I: IntoIterator<Item = Tile>>(iter: I) -> Tileset {
        Tileset::from_tiles(iter)
    }
}

// ---------------------------------------------------------------------------
// Tileset graph
// ---------------------------------------------------------------------------

/// The undirected multigraph whose vertices are symbols and whose edges are
/// tile occurrences.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Tile>,
    component_of: Vec<usize>,
    component_count: usize,
}

/// Views a tileset as the edges of the undirected multigraph on vertex set
/// `0..n`, one edge per tile occurrence.
///
/// Panics in debug builds if a tile endpoint lies outside the vertex set.
pub fn tileset_graph(ts: &Tileset, n: usize) -> MultiGraph {
    let edges: Vec<Tile> = ts.occurrences().map(|(t, _)| t).collect();
    debug_assert!(edges.iter().all(|t| (t.b as usize) < n));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for t in &edges {
        let (ra, rb) = (find(&mut parent, t.a as usize), find(&mut parent, t.b as usize));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    // Dense component ids in order of first appearance (ascending roots).
    let mut component_of = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if component_of[r] == usize::MAX {
            component_of[r] = next;
            next += 1;
        }
        component_of[v] = component_of[r];
    }
    MultiGraph {
        n,
        edges,
        component_of,
        component_count: next,
    }
}

impl MultiGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Tile] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of(&self, v: SymbolId) -> usize {
        self.component_of[v as usize]
    }

    /// Vertex sets of the connected components, each sorted ascending,
    /// ordered by smallest member. Isolated vertices form their own
    /// components.
    pub fn components(&self) -> Vec<Vec<SymbolId>> {
        let mut comps = vec![Vec::new(); self.component_count];
        for v in 0..self.n {
            comps[self.component_of[v]].push(v as SymbolId);
        }
        comps
    }

    /// Edge counts per component, aligned with [`MultiGraph::components`].
    pub fn component_edge_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.component_count];
        for t in &self.edges {
            counts[self.component_of[t.a as usize]] += 1;
        }
        counts
    }

    /// A multigraph is a forest iff every component spans one more vertex
    /// than it has edges; parallel edges therefore disqualify it.
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_count == self.n
    }
}

// ---------------------------------------------------------------------------
// Instance documents
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    symbols: Vec<String>,
    scenarios: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generalized: Option<Vec<DemandDoc>>,
}

#[derive(Serialize, Deserialize)]
struct DemandDoc {
    symbol: String,
    count: u32,
}

/// Parses an instance document (JSON: `{"symbols": [...], "scenarios":
/// [[...]...], "budget"?, "generalized"?}`) and returns the normalized
/// instance together with a report of what normalization changed.
pub fn parse_instance(text: &str) -> Result<(Instance, NormalizationReport), ModelError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| ModelError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let index: BTreeMap<&str, SymbolId> = doc
        .symbols
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as SymbolId))
        .collect();
    if index.len() != doc.symbols.len() {
        let dup = doc
            .symbols
            .iter()
            .enumerate()
            .find(|(i, s)| doc.symbols[..*i].contains(s))
            .map(|(_, s)| s.clone())
            .unwrap_or_default();
        return Err(ModelError::DuplicateSymbol(dup));
    }

    let n = doc.symbols.len();
    let mut sets = Vec::with_capacity(doc.scenarios.len());
    for (i, names) in doc.scenarios.iter().enumerate() {
        let mut set = SymbolSet::empty(n);
        for name in names {
            let id = *index.get(name.as_str()).ok_or_else(|| ModelError::UnknownSymbol {
                index: i,
                name: name.clone(),
            })?;
            set.insert(id);
        }
        sets.push(set);
    }

    let generalized = match doc.generalized {
        None => None,
        Some(demands) => {
            let mut map = BTreeMap::new();
            for d in demands {
                let id = *index
                    .get(d.symbol.as_str())
                    .ok_or_else(|| ModelError::UnknownDemandSymbol {
                        name: d.symbol.clone(),
                    })?;
                if d.count == 0 {
                    return Err(ModelError::NonPositiveDemand { name: d.symbol });
                }
                if map.insert(id, d.count).is_some() {
                    return Err(ModelError::DuplicateDemand { name: d.symbol });
                }
            }
            GeneralizedScenario::new(map)
        }
    };

    let instance = Instance::with_generalized(doc.symbols, sets, doc.budget, generalized)?;
    Ok(instance.normalize())
}

/// Serializes a (normalized) instance to its canonical document form:
/// symbols sorted, each scenario's members sorted, scenarios sorted
/// lexicographically. Parsing the output of `serialize_instance` yields the
/// same instance back.
pub fn serialize_instance(inst: &Instance) -> String {
    let doc = InstanceDoc {
        symbols: inst.symbols.clone(),
        scenarios: inst
            .scenarios
            .iter()
            .map(|s| {
                s.members
                    .iter()
                    .map(|id| inst.symbols[id as usize].clone())
                    .collect()
            })
            .collect(),
        budget: inst.budget,
        generalized: inst.generalized.as_ref().map(|g| {
            g.demand
                .iter()
                .map(|(&id, &count)| DemandDoc {
                    symbol: inst.symbols[id as usize].clone(),
                    count,
                })
                .collect()
        }),
    };
    serde_json::to_string_pretty(&doc).expect("instance document serialization")
}

#[derive(Serialize, Deserialize)]
struct TilesetDoc {
    tiles: Vec<Vec<String>>,
}

/// Parses a tileset document (`{"tiles": [["a","b"], ...]}`) against an
/// instance's symbol table. Repeated pairs accumulate multiplicity. Tiles of
/// cardinality one are rejected: completion by an arbitrary second symbol
/// applies when constructing solutions, not when verifying input.
pub fn parse_tileset(text: &str, inst: &Instance) -> Result<Tileset, ModelError> {
    let doc: TilesetDoc = serde_json::from_str(text).map_err(|e| ModelError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let index: BTreeMap<&str, SymbolId> = inst
        .symbols
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as SymbolId))
        .collect();
    let mut ts = Tileset::new();
    for (i, pair) in doc.tiles.iter().enumerate() {
        if pair.len() != 2 {
            return Err(ModelError::UnitTile {
                index: i,
                len: pair.len(),
            });
        }
        let mut ids = [0 as SymbolId; 2];
        for (slot, name) in ids.iter_mut().zip(pair) {
            *slot = *index
                .get(name.as_str())
                .ok_or_else(|| ModelError::UnknownTileSymbol {
                    index: i,
                    name: name.clone(),
                })?;
        }
        let tile = Tile::new(ids[0], ids[1]).ok_or_else(|| ModelError::DegenerateTile {
            index: i,
            name: pair[0].clone(),
        })?;
        ts.add(tile, 1);
    }
    Ok(ts)
}

/// Serializes a tileset using the instance's symbol names, one entry per
/// occurrence, in canonical order.
pub fn serialize_tileset(ts: &Tileset, inst: &Instance) -> String {
    let doc = TilesetDoc {
        tiles: ts
            .occurrences()
            .map(|(t, _)| {
                vec![
                    inst.symbols[t.a as usize].clone(),
                    inst.symbols[t.b as usize].clone(),
                ]
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("tileset document serialization")
}

// ---------------------------------------------------------------------------
