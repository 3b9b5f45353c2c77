//! Integer feasibility models for the tileset problem.
//!
//! Two formulations are built here. The scenario-pattern model, for a small
//! number `k` of scenarios, has one `y` variable per partition of each
//! non-empty scenario-index set (how a symbol's scenarios are split across
//! its providing tiles) and one `x` variable per unordered pair of disjoint
//! index sets (which scenarios each side of a tile serves). The demand
//! model, for generalized instances with few symbols, has one variable per
//! tile type and one Hall-style covering constraint per subset of each
//! scenario's demanded symbols.
//!
//! Models carry no objective: the question is feasibility at a given tile
//! budget. [`solve_small`] decides it by depth-first search with interval
//! propagation, standing in for a real integer-programming solver at desk
//! scale; [`export_lp`] writes models in LP format for external solvers.

use std::collections::BTreeMap;

use serde_json::json;
use thiserror::Error;

use crate::model::{Instance, SymbolId};

/// Default cap on the scenario count for the pattern model.
pub const DEFAULT_PATTERN_CAP: usize = 4;

/// Default cap on the universe size for the Hall model.
pub const DEFAULT_HALL_CAP: usize = 12;

/// Node budget for [`solve_small`]: the search aborts rather than explore
/// more assignments than this.
pub const SEARCH_SPACE_LIMIT: u64 = 100_000_000;

/// Static fast-fail threshold: models whose composition-count estimate
/// exceeds this are rejected without searching at all.
pub const SEARCH_ESTIMATE_LIMIT: f64 = 1e12;

#[derive(Debug, Error)]
pub enum IlpError {
    #[error("{count} scenarios exceed the pattern-model cap of {cap}")]
    TooManyScenarios { count: usize, cap: usize },
    #[error("universe of {size} symbols exceeds the Hall-model cap of {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("instance has no tile budget; feasibility models need one")]
    MissingBudget,
    #[error("instance has no simple scenarios to build patterns from")]
    NoScenarios,
    #[error("assignment names unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {0:?} has no assigned value")]
    UnassignedVariable(String),
    #[error("estimated search space of {estimate:.3e} assignments exceeds {limit:.0e}")]
    SearchSpaceTooLarge { estimate: f64, limit: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

/// A variable with implicit lower bound 0 and an optional upper bound.
#[derive(Debug, Clone)]
pub struct IlpVariable {
    pub name: String,
    pub upper: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct IlpConstraint {
    pub name: String,
    /// `(coefficient, variable index)` pairs; variables appear at most once.
    pub terms: Vec<(i64, usize)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// A feasibility model: variables, linear constraints, no objective.
#[derive(Debug, Clone, Default)]
pub struct IlpModel {
    pub variables: Vec<IlpVariable>,
    pub constraints: Vec<IlpConstraint>,
}

impl IlpModel {
    pub fn add_variable(&mut self, name: impl Into<String>, upper: Option<u64>) -> usize {
        self.variables.push(IlpVariable {
            name: name.into(),
            upper,
        });
        self.variables.len() - 1
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn variable_names(&self) -> impl Iterator<Item = &str> {
        self.variables.iter().map(|v| v.name.as_str())
    }
}

// ---------------------------------------------------------------------------
// Scenario patterns
// ---------------------------------------------------------------------------

/// Renders a scenario-index set as a variable-name fragment: 1-based indices
/// joined by dots, `0` for the empty set.
fn side_name(mask: u32) -> String {
    if mask == 0 {
        return "0".to_string();
    }
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect::<Vec<_>>()
        .join(".")
}

fn y_name(blocks: &[u32]) -> String {
    let mut s = String::from("y");
    for &b in blocks {
        s.push('_');
        s.push_str(&side_name(b));
    }
    s
}

fn x_name(i: u32, j: u32) -> String {
    format!("x_{}_{}", side_name(i.min(j)), side_name(i.max(j)))
}

/// All partitions of the set bits of `mask` into blocks, each block a mask.
/// Restricted-growth enumeration; blocks are ordered by smallest element and
/// the partitions from coarsest-first lexicographic growth order.
fn partitions_of_mask(mask: u32) -> Vec<Vec<u32>> {
    let elements: Vec<u32> = (0..32).filter(|b| mask >> b & 1 == 1).collect();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; elements.len()];
    fn recurse(i: usize, used: usize, assignment: &mut [usize], elements: &[u32], out: &mut Vec<Vec<u32>>) {
        if i == elements.len() {
            let mut blocks = vec![0u32; used];
            for (e, &b) in assignment.iter().enumerate() {
                blocks[b] |= 1 << elements[e];
            }
            out.push(blocks);
            return;
        }
        for b in 0..=used {
            assignment[i] = b;
            recurse(i + 1, used.max(b + 1), assignment, elements, out);
        }
    }
    if !elements.is_empty() {
        recurse(0, 0, &mut assignment, &elements, &mut out);
    }
    out
}

/// Pattern-model metadata kept alongside the generic [`IlpModel`].
#[derive(Debug, Clone)]
pub struct PatternModel {
    pub model: IlpModel,
    pub scenario_count: usize,
    /// `c[I]`: number of symbols occurring exactly in the scenario set `I`.
    pub cell_counts: Vec<u64>,
    pub y_count: usize,
    pub x_count: usize,
}

/// Builds the scenario-pattern feasibility model with the default cap.
pub fn build_pattern_ilp(inst: &Instance) -> Result<PatternModel, IlpError> {
    build_pattern_ilp_with_cap(inst, DEFAULT_PATTERN_CAP)
}

/// Builds the scenario-pattern feasibility model.
///
/// For every non-empty index set `I` the model carries one equality fixing
/// the pattern total to the symbol count of the cell, one equality linking
/// symbol patterns that use a block `I` to tile sides serving `I`, and a
/// final budget row over all tile variables. Symbols occurring in no
/// scenario need no tiles and are left out.
pub fn build_pattern_ilp_with_cap(inst: &Instance, cap: usize) -> Result<PatternModel, IlpError> {
    let k = inst.scenarios().len();
    if k == 0 {
        return Err(IlpError::NoScenarios);
    }
    if k > cap || k > 16 {
        return Err(IlpError::TooManyScenarios {
            count: k,
            cap: cap.min(16),
        });
    }
    let budget = inst.budget().ok_or(IlpError::MissingBudget)?;

    let cells = 1usize << k;
    let mut cell_counts = vec![0u64; cells];
    for s in 0..inst.symbol_count() as SymbolId {
        let mut mask = 0u32;
        for (i, scenario) in inst.scenarios().iter().enumerate() {
            if scenario.members().contains(s) {
                mask |= 1 << i;
            }
        }
        cell_counts[mask as usize] += 1;
    }
    cell_counts[0] = 0;

    let mut model = IlpModel::default();
    // y variables: (ground mask, blocks) per partition of each non-empty I.
    let mut y_vars: Vec<(u32, Vec<u32>)> = Vec::new();
    for mask in 1..cells as u32 {
        for blocks in partitions_of_mask(mask) {
            model.add_variable(y_name(&blocks), Some(cell_counts[mask as usize]));
            y_vars.push((mask, blocks));
        }
    }
    let y_count = y_vars.len();

    // x variables: canonical unordered pairs of disjoint index sets.
    let mut x_vars: Vec<(u32, u32)> = Vec::new();
    for i in 0..cells as u32 {
        for j in i + 1..cells as u32 {
            if i & j == 0 {
                model.add_variable(x_name(i, j), Some(budget));
                x_vars.push((i, j));
            }
        }
    }
    let x_count = x_vars.len();

    for mask in 1..cells as u32 {
        let terms: Vec<(i64, usize)> = y_vars
            .iter()
            .enumerate()
            .filter(|(_, (ground, _))| *ground == mask)
            .map(|(idx, _)| (1, idx))
            .collect();
        model.constraints.push(IlpConstraint {
            name: format!("cell_{}", side_name(mask)),
            terms,
            relation: Relation::Eq,
            rhs: cell_counts[mask as usize] as i64,
        });
    }
    for mask in 1..cells as u32 {
        let mut terms: Vec<(i64, usize)> = y_vars
            .iter()
            .enumerate()
            .filter(|(_, (_, blocks))| blocks.contains(&mask))
            .map(|(idx, _)| (1, idx))
            .collect();
        for (xi, &(a, b)) in x_vars.iter().enumerate() {
            if a == mask || b == mask {
                terms.push((-1, y_count + xi));
            }
        }
        model.constraints.push(IlpConstraint {
            name: format!("link_{}", side_name(mask)),
            terms,
            relation: Relation::Eq,
            rhs: 0,
        });
    }
    model.constraints.push(IlpConstraint {
        name: "budget".to_string(),
        terms: (0..x_count).map(|xi| (1, y_count + xi)).collect(),
        relation: Relation::Le,
        rhs: budget as i64,
    });

    Ok(PatternModel {
        model,
        scenario_count: k,
        cell_counts,
        y_count,
        x_count,
    })
}

// ---------------------------------------------------------------------------
// Hall-style demand model
// ---------------------------------------------------------------------------

/// Hall-model metadata kept alongside the generic [`IlpModel`].
#[derive(Debug, Clone)]
pub struct HallModel {
    pub model: IlpModel,
    /// One demand map per scenario (simple scenarios as unit demands, then
    /// the generalized scenario when present).
    pub demands: Vec<BTreeMap<SymbolId, u32>>,
}

/// Builds the generalized feasibility model with the default cap.
pub fn build_hall_ilp(inst: &Instance) -> Result<HallModel, IlpError> {
    build_hall_ilp_with_cap(inst, DEFAULT_HALL_CAP)
}

/// Builds the generalized feasibility model: one variable per tile type, a
/// budget row, and for every scenario one covering constraint per subset of
/// its demanded symbols — tiles touching the subset must number at least its
/// total demand. Subsets of undemanded symbols are dominated and skipped.
pub fn build_hall_ilp_with_cap(inst: &Instance, cap: usize) -> Result<HallModel, IlpError> {
    let n = inst.symbol_count();
    if n > cap {
        return Err(IlpError::UniverseTooLarge { size: n, cap });
    }
    let budget = inst.budget().ok_or(IlpError::MissingBudget)?;

    let mut demands: Vec<BTreeMap<SymbolId, u32>> = inst
        .scenarios()
        .iter()
        .map(|s| s.members().iter().map(|id| (id, 1)).collect())
        .collect();
    if let Some(g) = inst.generalized() {
        demands.push(g.demand().clone());
    }

    let mut model = IlpModel::default();
    let mut pair_vars: Vec<(SymbolId, SymbolId)> = Vec::new();
    for a in 0..n as SymbolId {
        for b in a + 1..n as SymbolId {
            model.add_variable(format!("x_{a}_{b}"), Some(budget));
            pair_vars.push((a, b));
        }
    }

    model.constraints.push(IlpConstraint {
        name: "budget".to_string(),
        terms: (0..pair_vars.len()).map(|i| (1, i)).collect(),
        relation: Relation::Le,
        rhs: budget as i64,
    });

    for (si, demand) in demands.iter().enumerate() {
        let support: Vec<SymbolId> = demand.keys().copied().collect();
        for imask in 0u32..1 << support.len() {
            let subset: Vec<SymbolId> = support
                .iter()
                .enumerate()
                .filter(|(b, _)| imask >> b & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let rhs: i64 = subset.iter().map(|s| demand[s] as i64).sum();
            let terms: Vec<(i64, usize)> = pair_vars
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| subset.contains(&a) || subset.contains(&b))
                .map(|(i, _)| (1, i))
                .collect();
            model.constraints.push(IlpConstraint {
                name: format!("hall_{si}_{imask}"),
                terms,
                relation: Relation::Ge,
                rhs,
            });
        }
    }

    Ok(HallModel { model, demands })
}

// ---------------------------------------------------------------------------
// Checking and solving
// ---------------------------------------------------------------------------

/// Verifies an assignment against every constraint in exact integer
/// arithmetic. The assignment must cover exactly the model's variables.
pub fn check_assignment(
    model: &IlpModel,
    values: &BTreeMap<String, u64>,
) -> Result<bool, IlpError> {
    for name in values.keys() {
        if model.variable_index(name).is_none() {
            return Err(IlpError::UnknownVariable(name.clone()));
        }
    }
    let mut by_index = vec![0u64; model.variables.len()];
    for (i, v) in model.variables.iter().enumerate() {
        match values.get(&v.name) {
            Some(&value) => by_index[i] = value,
            None => return Err(IlpError::UnassignedVariable(v.name.clone())),
        }
    }
    for (i, v) in model.variables.iter().enumerate() {
        if v.upper.is_some_and(|ub| by_index[i] > ub) {
            return Ok(false);
        }
    }
    Ok(model.constraints.iter().all(|c| {
        let lhs: i128 = c
            .terms
            .iter()
            .map(|&(coeff, var)| coeff as i128 * by_index[var] as i128)
            .sum();
        match c.relation {
            Relation::Le => lhs <= c.rhs as i128,
            Relation::Eq => lhs == c.rhs as i128,
            Relation::Ge => lhs >= c.rhs as i128,
        }
    }))
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil_i(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// `C(bound + g, g)` as a saturating float, the number of non-negative
/// integer vectors of length `g` summing to at most `bound`.
fn compositions_at_most(bound: u64, g: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 1..=g as u64 {
        acc *= (bound + i) as f64 / i as f64;
        if acc > 1e30 {
            return 1e30;
        }
    }
    acc
}

/// Decides feasibility by exhaustive depth-first search with interval
/// propagation.
///
/// Every variable is bounded by `var_cap`, its declared upper bound, and
/// bounds implied by single constraints (the budget row caps tile variables,
/// equality rows cap pattern variables). Models are refused when a static
/// composition-count estimate exceeds [`SEARCH_ESTIMATE_LIMIT`], or when the
/// search itself visits more than [`SEARCH_SPACE_LIMIT`] assignments; both
/// cases surface as [`IlpError::SearchSpaceTooLarge`]. The first feasible
/// assignment in lexicographic search order is returned, or `None` when the
/// model is infeasible.
pub fn solve_small(
    model: &IlpModel,
    var_cap: u64,
) -> Result<Option<BTreeMap<String, u64>>, IlpError> {
    let nvars = model.variables.len();
    for c in &model.constraints {
        let satisfiable_empty = match c.relation {
            Relation::Le => 0 <= c.rhs,
            Relation::Eq => 0 == c.rhs,
            Relation::Ge => 0 >= c.rhs,
        };
        if c.terms.is_empty() && !satisfiable_empty {
            return Ok(None);
        }
    }
    let mut upper: Vec<i128> = model
        .variables
        .iter()
        .map(|v| v.upper.unwrap_or(var_cap).min(var_cap) as i128)
        .collect();

    // Interval tightening to a fixpoint. With all lower bounds at zero, a
    // <= or = row caps its positive-coefficient variables, and a >= or = row
    // caps its negative-coefficient ones (the equality rows linking pattern
    // counts cap the tile variables this way).
    loop {
        let mut changed = false;
        for c in &model.constraints {
            for &(coeff, v) in &c.terms {
                let co = coeff as i128;
                let room = if coeff > 0 && c.relation != Relation::Ge {
                    let min_rest: i128 = c
                        .terms
                        .iter()
                        .filter(|&&(_, w)| w != v)
                        .map(|&(o, w)| if o < 0 { o as i128 * upper[w] } else { 0 })
                        .sum();
                    div_floor(c.rhs as i128 - min_rest, co)
                } else if coeff < 0 && c.relation != Relation::Le {
                    let max_rest: i128 = c
                        .terms
                        .iter()
                        .filter(|&&(_, w)| w != v)
                        .map(|&(o, w)| if o > 0 { o as i128 * upper[w] } else { 0 })
                        .sum();
                    div_floor(max_rest - c.rhs as i128, -co)
                } else {
                    continue;
                };
                if room < upper[v] {
                    upper[v] = room.max(-1);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if upper.iter().any(|&u| u < 0) {
        return Ok(None);
    }

    // Static search-space guard. Rows with unit coefficients tie their
    // variables jointly: the assignments of a group are compositions of the
    // row's right-hand side, far fewer than the product of individual
    // ranges.
    let mut grouped = vec![false; nvars];
    let mut estimate = 1.0f64;
    for c in &model.constraints {
        if c.relation == Relation::Ge || c.rhs < 0 {
            continue;
        }
        if !c.terms.iter().all(|&(coeff, _)| coeff == 1) {
            continue;
        }
        let fresh: Vec<usize> = c
            .terms
            .iter()
            .map(|&(_, v)| v)
            .filter(|&v| !grouped[v])
            .collect();
        if fresh.is_empty() {
            continue;
        }
        for &v in &fresh {
            grouped[v] = true;
        }
        estimate *= compositions_at_most(c.rhs as u64, fresh.len());
    }
    for v in 0..nvars {
        if !grouped[v] {
            estimate *= (upper[v] + 1) as f64;
        }
    }
    if estimate > SEARCH_ESTIMATE_LIMIT {
        return Err(IlpError::SearchSpaceTooLarge {
            estimate,
            limit: SEARCH_ESTIMATE_LIMIT,
        });
    }

    // Row state for propagation during the search.
    struct Row {
        relation: Relation,
        rhs: i128,
        assigned: i128,
        min_rest: i128,
        max_rest: i128,
    }
    let contrib = |coeff: i64, ub: i128| -> (i128, i128) {
        let c = coeff as i128;
        if c >= 0 {
            (0, c * ub)
        } else {
            (c * ub, 0)
        }
    };
    let mut rows: Vec<Row> = model
        .constraints
        .iter()
        .map(|c| {
            let (mut min_rest, mut max_rest) = (0i128, 0i128);
            for &(coeff, v) in &c.terms {
                let (lo, hi) = contrib(coeff, upper[v]);
                min_rest += lo;
                max_rest += hi;
            }
            Row {
                relation: c.relation,
                rhs: c.rhs as i128,
                assigned: 0,
                min_rest,
                max_rest,
            }
        })
        .collect();
    let mut rows_of: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nvars];
    for (ri, c) in model.constraints.iter().enumerate() {
        for &(coeff, v) in &c.terms {
            rows_of[v].push((ri, coeff));
        }
    }

    let mut values = vec![0i128; nvars];
    let mut nodes: u64 = 0;

    fn search(
        v: usize,
        upper: &[i128],
        rows: &mut [Row],
        rows_of: &[Vec<(usize, i64)>],
        values: &mut [i128],
        nodes: &mut u64,
    ) -> Result<bool, IlpError> {
        if v == values.len() {
            return Ok(true);
        }
        // Remove v from the rest intervals of its rows, then derive the
        // admissible value range for v across all of them.
        let (mut lo, mut hi) = (0i128, upper[v]);
        for &(ri, coeff) in &rows_of[v] {
            let c = coeff as i128;
            let (rest_lo, rest_hi) = if c >= 0 { (0, c * upper[v]) } else { (c * upper[v], 0) };
            let row = &mut rows[ri];
            row.min_rest -= rest_lo;
            row.max_rest -= rest_hi;
            let slack_hi = row.rhs - row.assigned - row.min_rest;
            let slack_lo = row.rhs - row.assigned - row.max_rest;
            match row.relation {
                Relation::Le => {
                    if c > 0 {
                        hi = hi.min(div_floor(slack_hi, c));
                    } else {
                        lo = lo.max(div_ceil_i(slack_hi, c));
                    }
                }
                Relation::Ge => {
                    if c > 0 {
                        lo = lo.max(div_ceil_i(slack_lo, c));
                    } else {
                        hi = hi.min(div_floor(slack_lo, c));
                    }
                }
                Relation::Eq => {
                    if c > 0 {
                        hi = hi.min(div_floor(slack_hi, c));
                        lo = lo.max(div_ceil_i(slack_lo, c));
                    } else {
                        lo = lo.max(div_ceil_i(slack_hi, c));
                        hi = hi.min(div_floor(slack_lo, c));
                    }
                }
            }
        }

        let mut found = false;
        let mut value = lo;
        while value <= hi && !found {
            *nodes += 1;
            if *nodes > SEARCH_SPACE_LIMIT {
                return Err(IlpError::SearchSpaceTooLarge {
                    estimate: *nodes as f64,
                    limit: SEARCH_SPACE_LIMIT as f64,
                });
            }
            values[v] = value;
            for &(ri, coeff) in &rows_of[v] {
                rows[ri].assigned += coeff as i128 * value;
            }
            found = search(v + 1, upper, rows, rows_of, values, nodes)?;
            if !found {
                for &(ri, coeff) in &rows_of[v] {
                    rows[ri].assigned -= coeff as i128 * value;
                }
            }
            value += 1;
        }
        if !found {
            // Restore the rest intervals for backtracking.
            for &(ri, coeff) in &rows_of[v] {
                let c = coeff as i128;
                let (rest_lo, rest_hi) =
                    if c >= 0 { (0, c * upper[v]) } else { (c * upper[v], 0) };
                rows[ri].min_rest += rest_lo;
                rows[ri].max_rest += rest_hi;
            }
        }
        Ok(found)
    }

    let found = search(0, &upper, &mut rows, &rows_of, &mut values, &mut nodes)?;
    if !found {
        return Ok(None);
    }
    let assignment: BTreeMap<String, u64> = model
        .variables
        .iter()
        .zip(&values)
        .map(|(var, &val)| (var.name.clone(), val as u64))
        .collect();
    debug_assert!(matches!(check_assignment(model, &assignment), Ok(true)));
    Ok(Some(assignment))
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// Writes the model in LP format with sections for constraints, bounds, and
/// integrality. Variable order follows the model; rows without terms are
/// serialized with an explicit zero coefficient so every row round-trips.
pub fn export_lp(model: &IlpModel) -> String {
    let mut out = String::new();
    out.push_str("Minimize\n obj:\n");
    out.push_str("Subject To\n");
    for c in &model.constraints {
        let mut line = format!(" {}:", c.name);
        if c.terms.is_empty() {
            match model.variables.first() {
                Some(v) => line.push_str(&format!(" 0 {}", v.name)),
                None => line.push_str(" 0"),
            }
        } else {
            for (i, &(coeff, var)) in c.terms.iter().enumerate() {
                let name = &model.variables[var].name;
                let magnitude = coeff.unsigned_abs();
                let sign = if coeff < 0 {
                    " - "
                } else if i == 0 {
                    " "
                } else {
                    " + "
                };
                line.push_str(sign);
                if magnitude != 1 {
                    line.push_str(&format!("{magnitude} "));
                }
                line.push_str(name);
            }
        }
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        };
        line.push_str(&format!(" {} {}\n", rel, c.rhs));
        out.push_str(&line);
    }
    out.push_str("Bounds\n");
    for v in &model.variables {
        match v.upper {
            Some(ub) => out.push_str(&format!(" 0 <= {} <= {}\n", v.name, ub)),
            None => out.push_str(&format!(" {} >= 0\n", v.name)),
        }
    }
    out.push_str("Generals\n");
    for v in &model.variables {
        out.push_str(&format!(" {}\n", v.name));
    }
    out.push_str("End\n");
    out
}

/// JSON dump of the model with exact integer coefficients.
pub fn export_json(model: &IlpModel) -> serde_json::Value {
    json!({
        "variables": model
            .variables
            .iter()
            .map(|v| json!({"name": v.name, "lower": 0, "upper": v.upper}))
            .collect::<Vec<_>>(),
        "constraints": model
            .constraints
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "terms": c
                        .terms
                        .iter()
                        .map(|&(coeff, var)| json!([coeff, model.variables[var].name]))
                        .collect::<Vec<_>>(),
                    "relation": c.relation,
                    "rhs": c.rhs,
                })
            })
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GeneralizedScenario, SymbolSet};

    fn inst_with_budget(n: usize, scenarios: &[&[SymbolId]], budget: u64) -> Instance {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let sets = scenarios
            .iter()
            .map(|ids| SymbolSet::from_ids(n, ids.iter().copied()))
            .collect();
        Instance::new(names, sets, Some(budget)).unwrap()
    }

    fn generalized_inst(n: usize, demand: &[(SymbolId, u32)], budget: u64) -> Instance {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let g = GeneralizedScenario::new(demand.iter().copied().collect()).unwrap();
        Instance::with_generalized(names, Vec::new(), Some(budget), Some(g)).unwrap()
    }

    #[test]
    fn single_scenario_pattern_model() {
        // One scenario of two symbols inside a universe of three.
        let i = inst_with_budget(3, &[&[0, 1]], 2);
        let pm = build_pattern_ilp(&i).unwrap();
        assert_eq!(pm.y_count, 1);
        assert_eq!(pm.x_count, 1);
        assert_eq!(pm.cell_counts[1], 2);
        assert_eq!(
            pm.model.variable_names().collect::<Vec<_>>(),
            vec!["y_1", "x_0_1"]
        );
        assert_eq!(pm.model.constraints.len(), 3);

        // y_{1} = c_{1} and x_{0,1} = y_{1} is feasible iff c_{1} <= budget.
        let values: BTreeMap<String, u64> =
            [("y_1".to_string(), 2), ("x_0_1".to_string(), 2)].into();
        assert!(check_assignment(&pm.model, &values).unwrap());
        assert!(solve_small(&pm.model, 8).unwrap().is_some());

        let tight = inst_with_budget(3, &[&[0, 1]], 1);
        let pm = build_pattern_ilp(&tight).unwrap();
        assert!(solve_small(&pm.model, 8).unwrap().is_none());
    }

    #[test]
    fn three_scenario_variable_counts_match_closed_forms() {
        let i = inst_with_budget(4, &[&[0, 1], &[1, 2], &[2, 3]], 3);
        let pm = build_pattern_ilp(&i).unwrap();
        // (3^3 - 1) / 2 tile-pattern variables.
        assert_eq!(pm.x_count, 13);
        // Partitions of {1,2,3} listed explicitly.
        for name in ["y_1.2.3", "y_1.2_3", "y_1.3_2", "y_1_2.3", "y_1_2_3"] {
            assert!(
                pm.model.variable_index(name).is_some(),
                "missing variable {name}"
            );
        }
        let ground_123: usize = pm
            .model
            .variable_names()
            .filter(|n| {
                n.starts_with('y') && {
                    let digits: Vec<char> =
                        n.chars().filter(|c| c.is_ascii_digit()).collect();
                    let mut sorted = digits.clone();
                    sorted.sort_unstable();
                    sorted == vec!['1', '2', '3']
                }
            })
            .count();
        assert_eq!(ground_123, 5);
        // Subpartitions of a 3-element set, empty ground set excluded,
        // within the k^k + 1 bound.
        assert_eq!(pm.y_count, 14);
        assert!(pm.y_count <= 3usize.pow(3) + 1);
    }

    #[test]
    fn all_zero_satisfies_a_lone_budget_row() {
        let mut model = IlpModel::default();
        let a = model.add_variable("x_a", None);
        let b = model.add_variable("x_b", None);
        model.constraints.push(IlpConstraint {
            name: "budget".into(),
            terms: vec![(1, a), (1, b)],
            relation: Relation::Le,
            rhs: 3,
        });
        let zeros: BTreeMap<String, u64> =
            [("x_a".to_string(), 0), ("x_b".to_string(), 0)].into();
        assert!(check_assignment(&model, &zeros).unwrap());
    }

    #[test]
    fn check_assignment_flags_bad_values() {
        let i = inst_with_budget(3, &[&[0, 1]], 2);
        let pm = build_pattern_ilp(&i).unwrap();
        let ok: BTreeMap<String, u64> =
            [("y_1".to_string(), 2), ("x_0_1".to_string(), 2)].into();
        assert!(check_assignment(&pm.model, &ok).unwrap());

        let off_by_one: BTreeMap<String, u64> =
            [("y_1".to_string(), 1), ("x_0_1".to_string(), 1)].into();
        assert!(!check_assignment(&pm.model, &off_by_one).unwrap());

        let unknown: BTreeMap<String, u64> = [("z".to_string(), 0)].into();
        assert!(matches!(
            check_assignment(&pm.model, &unknown),
            Err(IlpError::UnknownVariable(_))
        ));
        let missing: BTreeMap<String, u64> = [("y_1".to_string(), 2)].into();
        assert!(matches!(
            check_assignment(&pm.model, &missing),
            Err(IlpError::UnassignedVariable(_))
        ));
    }

    #[test]
    fn hall_model_single_demand() {
        let i = generalized_inst(2, &[(0, 1)], 1);
        let hm = build_hall_ilp(&i).unwrap();
        assert_eq!(hm.model.variables.len(), 1);
        // budget + 2 subset rows ({} and {0}).
        assert_eq!(hm.model.constraints.len(), 3);
        assert!(solve_small(&hm.model, 4).unwrap().is_some());
    }

    #[test]
    fn hall_model_detects_budget_conflicts() {
        // Both symbols demanded at once: one tile cannot serve both.
        let i = generalized_inst(2, &[(0, 1), (1, 1)], 1);
        let hm = build_hall_ilp(&i).unwrap();
        assert!(solve_small(&hm.model, 4).unwrap().is_none());
    }

    #[test]
    fn hall_model_multiplicity_demand() {
        let i = generalized_inst(3, &[(0, 2)], 2);
        let hm = build_hall_ilp(&i).unwrap();
        let solution = solve_small(&hm.model, 4).unwrap().unwrap();
        let total: u64 = solution.values().sum();
        assert_eq!(total, 2);
        // Two distinct tiles must touch symbol 0.
        assert_eq!(
            solution["x_0_1"] + solution["x_0_2"],
            2,
            "{solution:?}"
        );
    }

    #[test]
    fn contradictory_equality_is_infeasible() {
        let mut model = IlpModel::default();
        let v = model.add_variable("y", Some(1));
        model.constraints.push(IlpConstraint {
            name: "pin".into(),
            terms: vec![(1, v)],
            relation: Relation::Eq,
            rhs: 5,
        });
        assert!(solve_small(&model, 10).unwrap().is_none());
    }

    #[test]
    fn lp_export_is_stable_for_the_single_scenario_model() {
        let i = inst_with_budget(3, &[&[0, 1]], 2);
        let pm = build_pattern_ilp(&i).unwrap();
        let expected = "\
Minimize
 obj:
Subject To
 cell_1: y_1 = 2
 link_1: y_1 - x_0_1 = 0
 budget: x_0_1 <= 2
Bounds
 0 <= y_1 <= 2
 0 <= x_0_1 <= 2
Generals
 y_1
 x_0_1
End
";
        assert_eq!(export_lp(&pm.model), expected);
    }

    #[test]
    fn lp_export_counts_sections() {
        let empty = IlpModel::default();
        let text = export_lp(&empty);
        assert!(text.contains("Subject To"));
        assert!(text.contains("Bounds"));
        assert!(text.contains("Generals"));
        assert!(text.ends_with("End\n"));

        let i = inst_with_budget(3, &[&[0, 1]], 2);
        let pm = build_pattern_ilp(&i).unwrap();
        let text = export_lp(&pm.model);
        // 3 constraint rows, 2 bounds rows, 2 generals rows (plus obj).
        assert_eq!(text.matches("\n ").count() - 1, 3 + 2 + 2);
        assert!(text.contains(" budget: x_0_1 <= 2"));

        let g = generalized_inst(3, &[(0, 2)], 2);
        let hm = build_hall_ilp(&g).unwrap();
        assert_eq!(hm.model.variables.len(), 3);
        // One budget row plus 2^support rows for the one scenario.
        assert_eq!(hm.model.constraints.len(), 1 + 2);
    }

    #[test]
    fn pattern_model_requires_budget() {
        let names = vec!["a".into(), "b".into()];
        let sets = vec![SymbolSet::from_ids(2, [0]), SymbolSet::from_ids(2, [1])];
        let i = Instance::new(names, sets, None).unwrap();
        assert!(matches!(
            build_pattern_ilp(&i),
            Err(IlpError::MissingBudget)
        ));
    }

    #[test]
    fn pattern_cap_is_enforced() {
        let i = inst_with_budget(6, &[&[0], &[1], &[2], &[3], &[4]], 3);
        assert!(matches!(
            build_pattern_ilp(&i),
            Err(IlpError::TooManyScenarios { count: 5, cap: 4 })
        ));
    }
}
