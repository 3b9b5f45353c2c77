//! Toolkit for the *minimum feasible tileset* problem.
//!
//! A *tile* is an unordered pair of distinct symbols. A tileset (a multiset of
//! tiles) is *feasible* for a scenario `S` — a subset of the symbol universe —
//! if every symbol of `S` can be produced by taking at most one symbol from
//! each tile. Given a family of scenarios, the problem asks for a smallest
//! tileset feasible for all of them.
//!
//! The crate provides:
//!
//! - [`model`] — domain types, instance documents, normalization, and the
//!   tileset graph.
//! - [`feasibility`] — matching-based feasibility checks with certificates,
//!   edge orientations, and the forest component-containment test.
//! - [`canonical`] — transforms any feasible tileset into a no-larger one
//!   whose graph is a forest.
//! - [`exact`] — exact optimum via a subset dynamic program over `2^|F|`
//!   states, plus a brute-force partition oracle for cross-checks.
//! - [`approx`] — a 4/3-approximation built from a maximum matching over
//!   admissible pairs and a greedy packing of admissible triples.
//! - [`ilp`] — integer feasibility models (scenario-pattern and Hall-style
//!   demand formulations), a small exhaustive solver, and LP-format export.
//! - [`reductions`] — instance transformers from exact cover by 3-sets (and
//!   by d-sets) into tileset instances.
//! - [`generators`] — seeded random and planted instance generators.
//! - [`cli`] — the command-line front end used by the `tilekit` binary.
//!
//! Each major capability has a runnable program under `examples/`; start with
//! `cargo run --example feasibility_check`.

pub mod approx;
pub mod canonical;
pub mod cli;
pub mod exact;
pub mod feasibility;
pub mod generators;
pub mod ilp;
pub mod matching;
pub mod model;
pub mod reductions;

pub use model::{Instance, Scenario, SymbolId, SymbolSet, Tile, Tileset};
