//! Instance transformers from exact-cover problems.
//!
//! Exact cover by 3-sets maps to a tileset instance over the same universe:
//! scenarios exclude every 2-subset (so admissible parts have size at least
//! three) and every 3-subset outside the given family (so parts must come
//! from the family). An exact cover exists iff the instance is solvable with
//! `|X| - |X|/3` tiles. The same construction lifts to d-sets with
//! `(d-1)`-subsets as the size blockers.

use std::collections::BTreeSet;

use serde::Deserialize;
use thiserror::Error;

use crate::model::{Instance, ModelError, SymbolSet};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("set {index} must have exactly 3 distinct known elements")]
    MalformedTriple { index: usize },
    #[error("set {index} must have exactly {d} distinct known elements")]
    MalformedSet { index: usize, d: usize },
    #[error("set size {0} is below 3; the reduction needs d >= 3")]
    ArityTooSmall(usize),
    #[error("duplicate universe element {0:?}")]
    DuplicateElement(String),
    #[error("empty universe")]
    EmptyUniverse,
    #[error("document syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An exact-cover-by-3-sets instance: a universe and a family of 3-element
/// subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3cInstance {
    universe: Vec<String>,
    triples: Vec<Vec<String>>,
}

impl X3cInstance {
    pub fn new(universe: Vec<String>, triples: Vec<Vec<String>>) -> Result<Self, ReductionError> {
        validate_universe(&universe)?;
        for (index, t) in triples.iter().enumerate() {
            if !well_formed_set(t, 3, &universe) {
                return Err(ReductionError::MalformedTriple { index });
            }
        }
        Ok(X3cInstance { universe, triples })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn triples(&self) -> &[Vec<String>] {
        &self.triples
    }
}

fn validate_universe(universe: &[String]) -> Result<(), ReductionError> {
    if universe.is_empty() {
        return Err(ReductionError::EmptyUniverse);
    }
    let mut seen = BTreeSet::new();
    for e in universe {
        if !seen.insert(e) {
            return Err(ReductionError::DuplicateElement(e.clone()));
        }
    }
    Ok(())
}

fn well_formed_set(set: &[String], d: usize, universe: &[String]) -> bool {
    set.len() == d
        && set.iter().collect::<BTreeSet<_>>().len() == d
        && set.iter().all(|e| universe.contains(e))
}

#[derive(Deserialize)]
struct X3cDoc {
    universe: Vec<String>,
    sets: Vec<Vec<String>>,
}

/// Parses an exact-cover document: `{"universe": [...], "sets": [[...],...]}`.
pub fn parse_x3c(text: &str) -> Result<X3cInstance, ReductionError> {
    let doc: X3cDoc =
        serde_json::from_str(text).map_err(|e| ReductionError::Syntax(e.to_string()))?;
    X3cInstance::new(doc.universe, doc.sets)
}

/// Parses a d-set cover document; `d` is taken from the caller.
pub fn parse_cover(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), ReductionError> {
    let doc: X3cDoc =
        serde_json::from_str(text).map_err(|e| ReductionError::Syntax(e.to_string()))?;
    Ok((doc.universe, doc.sets))
}

/// A reduced instance together with its interpretation.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub instance: Instance,
    /// Set when the source is trivially uncoverable (element count not
    /// divisible by d, or no legal scenario family exists); the instance is
    /// then a fixed marker whose answer is NO.
    pub trivially_no: bool,
    pub note: Option<String>,
}

impl Reduction {
    fn no_marker(note: String) -> Reduction {
        // Two symbols, singleton scenarios, budget zero: one tile is needed
        // but none is allowed.
        let names = vec!["no0".to_string(), "no1".to_string()];
        let sets = vec![SymbolSet::from_ids(2, [0]), SymbolSet::from_ids(2, [1])];
        let instance = Instance::new(names, sets, Some(0)).expect("marker instance");
        Reduction {
            instance,
            trivially_no: true,
            note: Some(note),
        }
    }
}

/// Reduces exact cover by 3-sets to a tileset instance. The instance is
/// solvable within its budget iff the cover exists.
pub fn x3c_to_mft(x3c: &X3cInstance) -> Result<Reduction, ReductionError> {
    xdc_to_mft(&x3c.universe, &x3c.triples, 3)
}

/// Reduces exact cover by d-sets (`d >= 3`): scenarios are all
/// `(d-1)`-subsets of the universe plus all d-subsets outside the family,
/// and the budget is `|X| - |X|/d`. Universes not divisible by `d` yield the
/// NO-marker instance.
pub fn xdc_to_mft(
    universe: &[String],
    dsets: &[Vec<String>],
    d: usize,
) -> Result<Reduction, ReductionError> {
    if d < 3 {
        return Err(ReductionError::ArityTooSmall(d));
    }
    validate_universe(universe)?;
    for (index, set) in dsets.iter().enumerate() {
        if !well_formed_set(set, d, universe) {
            return Err(if d == 3 {
                ReductionError::MalformedTriple { index }
            } else {
                ReductionError::MalformedSet { index, d }
            });
        }
    }

    let n = universe.len();
    if !n.is_multiple_of(d) {
        return Ok(Reduction::no_marker(format!(
            "universe of {n} elements is not divisible by {d}; no exact cover exists"
        )));
    }

    // Work over name-sorted ids so the emitted files are reproducible.
    let mut names: Vec<String> = universe.to_vec();
    names.sort();
    let id_of = |name: &str| names.iter().position(|x| x == name).unwrap() as u32;
    let family: BTreeSet<Vec<u32>> = dsets
        .iter()
        .map(|set| {
            let mut ids: Vec<u32> = set.iter().map(|e| id_of(e)).collect();
            ids.sort_unstable();
            ids
        })
        .collect();

    if n == d && !family.contains(&(0..n as u32).collect::<Vec<_>>()) {
        // The whole-universe d-subset would have to be excluded as a
        // scenario, but a scenario never equals the universe; the answer is
        // NO regardless (the only candidate cover is the universe itself).
        return Ok(Reduction::no_marker(format!(
            "universe of {n} elements equals d and is not in the family"
        )));
    }

    let mut sets: Vec<SymbolSet> = Vec::new();
    for small in combinations(n, d - 1) {
        sets.push(SymbolSet::from_ids(n, small));
    }
    for big in combinations(n, d) {
        if !family.contains(&big) {
            sets.push(SymbolSet::from_ids(n, big));
        }
    }

    let budget = (n - n / d) as u64;
    let (instance, _) = Instance::new(names, sets, Some(budget))?.normalize();
    Ok(Reduction {
        instance,
        trivially_no: false,
        note: None,
    })
}

/// All k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (0..k as u32).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < (n - (k - i)) as u32 {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
