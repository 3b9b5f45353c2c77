//! Acceptance suite: every guarantee the toolkit makes, checked end to end
//! against independent oracles at fixed tolerances. Each test prints one
//! PASS/FAIL line (run with `--nocapture` to see them on success).

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::{
    exhaustive_cover, exhaustive_tileset_search, orientation_oracle, random_forest_tileset,
    random_tileset,
};
use tilekit::approx::approximate;
use tilekit::canonical::canonicalize;
use tilekit::exact::{solve_bruteforce, solve_dp};
use tilekit::feasibility::{forest_feasible, is_feasible, is_feasible_scenario};
use tilekit::generators::{random_instance, SplitMix64};
use tilekit::ilp::{build_hall_ilp, build_pattern_ilp, solve_small};
use tilekit::model::{tileset_graph, GeneralizedScenario, Instance, SymbolId, SymbolSet};
use tilekit::reductions::{x3c_to_mft, xdc_to_mft};

fn report(name: &str, ok: bool, details: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("[acceptance] {verdict} — {name}: {details}");
    assert!(ok, "{name}: {details}");
}

/// Varied random instance within the given universe bound.
fn varied_instance(max_n: usize, rng: &mut SplitMix64) -> Instance {
    let n = 2 + rng.below(max_n as u64 - 1) as usize;
    let m = 1 + rng.below(12) as usize;
    let max_size = 1 + rng.below(n as u64 - 1) as usize;
    random_instance(n, m, max_size, rng.next_u64()).unwrap()
}

#[test]
fn oracle_equivalence_dp_vs_bruteforce() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0001);
    let trials = 500;
    let mut mismatches = 0;
    for _ in 0..trials {
        let inst = varied_instance(8, &mut rng);
        let dp = solve_dp(&inst).unwrap();
        let brute = solve_bruteforce(&inst).unwrap();
        if dp.opt_tiles != brute.opt_tiles {
            mismatches += 1;
        }
    }
    report(
        "exact optimum equals brute-force partition search",
        mismatches == 0,
        &format!(
            "{trials} instances with up to 8 symbols, {mismatches} mismatches, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn approximation_guarantee_holds() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0002);
    let trials = 1000;
    let mut violations = 0;
    for _ in 0..trials {
        let inst = varied_instance(14, &mut rng);
        let ts = approximate(&inst);
        let opt = solve_dp(&inst).unwrap().opt_tiles;
        let feasible = is_feasible(&ts, &inst).is_feasible();
        // Integer form of the 4/3 bound.
        if !feasible || 3 * ts.size() > 4 * opt {
            violations += 1;
        }
    }
    report(
        "approximation is feasible and within 4/3 of the optimum",
        violations == 0,
        &format!(
            "{trials} instances with up to 14 symbols, {violations} violations, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn structural_guarantees_hold() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0003);
    let target = 500;

    // (a) Canonicalization: feasibility preserved, size never grows.
    let mut canonical_checked = 0;
    let mut canonical_bad = 0;
    let mut attempts = 0;
    while canonical_checked < target && attempts < 20 * target {
        attempts += 1;
        let inst = varied_instance(10, &mut rng);
        let n = inst.symbol_count();
        let mut ts = random_forest_tileset(&inst, &mut rng);
        for _ in 0..rng.below(4) {
            let extra = random_tileset(n, 1, &mut rng);
            for (tile, mult) in extra.iter() {
                ts.add(tile, mult);
            }
        }
        if !is_feasible(&ts, &inst).is_feasible() {
            continue;
        }
        canonical_checked += 1;
        match canonicalize(&ts, &inst) {
            Err(_) => canonical_bad += 1,
            Ok(out) => {
                let ok = out.size() <= ts.size()
                    && tileset_graph(&out, n).is_forest()
                    && is_feasible(&out, &inst).is_feasible();
                if !ok {
                    canonical_bad += 1;
                }
            }
        }
    }

    // (b) Forest tilesets: matching-based feasibility equals the
    // component-containment test.
    let mut forest_bad = 0;
    for _ in 0..target {
        let inst = varied_instance(10, &mut rng);
        let ts = random_forest_tileset(&inst, &mut rng);
        if forest_feasible(&ts, &inst).unwrap() != is_feasible(&ts, &inst).is_feasible() {
            forest_bad += 1;
        }
    }

    // (c) Orientation equivalence, brute-forced over every orientation.
    let mut orientation_bad = 0;
    for _ in 0..target {
        let inst = varied_instance(10, &mut rng);
        let n = inst.symbol_count();
        let ts = random_tileset(n, 1 + rng.below(12) as usize, &mut rng);
        let graph = tileset_graph(&ts, n);
        for scenario in inst.scenarios() {
            let matched = is_feasible_scenario(&ts, scenario.members()).is_some();
            let oriented = orientation_oracle(&ts, scenario.members(), n);
            let per_component = graph.components().iter().all(|component| {
                let restricted: Vec<SymbolId> = scenario
                    .members()
                    .iter()
                    .filter(|s| component.contains(s))
                    .collect();
                restricted.is_empty()
                    || is_feasible_scenario(&ts, &SymbolSet::from_ids(n, restricted)).is_some()
            });
            if matched != oriented || matched != per_component {
                orientation_bad += 1;
            }
        }
    }

    let ok = canonical_checked == target
        && canonical_bad == 0
        && forest_bad == 0
        && orientation_bad == 0;
    report(
        "structural guarantees (canonical forests, containment test, orientations)",
        ok,
        &format!(
            "{canonical_checked} canonicalizations ({canonical_bad} bad), \
             {target} forest checks ({forest_bad} bad), \
             {target} orientation checks ({orientation_bad} bad), {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn budget_duality_holds_at_every_budget() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0004);
    let trials = 200;
    let mut violations = 0;
    for _ in 0..trials {
        let inst = varied_instance(8, &mut rng);
        let n = inst.symbol_count();
        let dp = solve_dp(&inst).unwrap();
        let brute = solve_bruteforce(&inst).unwrap();
        for budget in n.div_ceil(2)..=n {
            let yes = dp.opt_tiles <= budget as u64;
            let dual_yes = brute.max_parts >= n - budget;
            if yes != dual_yes {
                violations += 1;
            }
        }
    }
    report(
        "solvable within budget iff enough admissible parts exist",
        violations == 0,
        &format!(
            "{trials} instances, all budgets from ceil(n/2) to n, {violations} violations, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn reductions_are_sound() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0005);
    let mut bad = 0;

    // Exact cover by 3-sets over six elements, random triple families.
    let names: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    let all_triples: Vec<Vec<usize>> = (0..6)
        .flat_map(|a| {
            (a + 1..6).flat_map(move |b| (b + 1..6).map(move |c| vec![a, b, c]))
        })
        .collect();
    let trials = 60;
    for _ in 0..trials {
        let family: Vec<Vec<usize>> = all_triples
            .iter()
            .filter(|_| rng.below(100) < 25)
            .cloned()
            .collect();
        let family_names: Vec<Vec<String>> = family
            .iter()
            .map(|t| t.iter().map(|&e| names[e].clone()).collect())
            .collect();
        let expected = exhaustive_cover(6, &family);
        let reduction = xdc_to_mft(&names, &family_names, 3).unwrap();
        let budget = reduction.instance.budget().unwrap();
        let dp = solve_dp(&reduction.instance).unwrap();
        if expected != (dp.opt_tiles <= budget) {
            bad += 1;
        }
        // On YES instances the witness partition must itself be a cover:
        // parts of size exactly three, all from the family.
        if expected && dp.opt_tiles <= budget {
            let is_cover = dp.partition.parts().iter().all(|part| {
                part.len() == 3
                    && family.contains(&part.iter().map(|&s| s as usize).collect::<Vec<_>>())
            });
            if !is_cover {
                bad += 1;
            }
        }
    }

    // d = 4 over eight elements.
    let names8: Vec<String> = (1..=8).map(|i| i.to_string()).collect();
    let all_quads: Vec<Vec<usize>> = (0..8)
        .flat_map(|a| {
            (a + 1..8).flat_map(move |b| {
                (b + 1..8).flat_map(move |c| (c + 1..8).map(move |d| vec![a, b, c, d]))
            })
        })
        .collect();
    let quad_trials = 25;
    for _ in 0..quad_trials {
        let family: Vec<Vec<usize>> = all_quads
            .iter()
            .filter(|_| rng.below(100) < 8)
            .cloned()
            .collect();
        let family_names: Vec<Vec<String>> = family
            .iter()
            .map(|t| t.iter().map(|&e| names8[e].clone()).collect())
            .collect();
        let expected = exhaustive_cover(8, &family);
        let reduction = xdc_to_mft(&names8, &family_names, 4).unwrap();
        let budget = reduction.instance.budget().unwrap();
        let got = solve_dp(&reduction.instance).unwrap().opt_tiles <= budget;
        if expected != got {
            bad += 1;
        }
    }

    // Scenario sizes in the 3-set reduction stay at most three.
    let x3c = tilekit::reductions::X3cInstance::new(
        names.clone(),
        vec![vec!["1".into(), "2".into(), "3".into()]],
    )
    .unwrap();
    let reduction = x3c_to_mft(&x3c).unwrap();
    let sizes_ok = reduction.instance.scenarios().iter().all(|s| s.len() <= 3);

    report(
        "cover reductions preserve the decision",
        bad == 0 && sizes_ok,
        &format!(
            "{trials} triple families and {quad_trials} quad families, {bad} mismatches, \
             scenario sizes bounded: {sizes_ok}, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn pattern_ilp_agrees_with_dp() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0006);
    let target = 100;
    let mut accepted = 0;
    let mut bad = 0;
    let mut counts_bad = 0;
    let mut listing_checked = false;
    let mut attempts = 0;
    while accepted < target && attempts < 100 * target {
        attempts += 1;
        let n = 4 + rng.below(5) as usize;
        let m = 1 + rng.below(3) as usize;
        let max_size = (n - 1).max(1);
        let inst = random_instance(n, m, max_size, rng.next_u64()).unwrap();
        let k = inst.scenarios().len();
        if k > 3 {
            continue;
        }
        accepted += 1;

        let dp = solve_dp(&inst).unwrap();
        for budget in n.div_ceil(2)..=n {
            let with_budget = inst.with_budget(Some(budget as u64));
            let pattern = build_pattern_ilp(&with_budget).unwrap();
            // Closed-form variable counts.
            if pattern.x_count != (3usize.pow(k as u32) - 1) / 2 {
                counts_bad += 1;
            }
            if k == 3 {
                for name in ["y_1.2.3", "y_1.2_3", "y_1.3_2", "y_1_2.3", "y_1_2_3"] {
                    if pattern.model.variable_index(name).is_none() {
                        counts_bad += 1;
                    }
                }
                listing_checked = true;
            }
            let ilp_feasible = solve_small(&pattern.model, 1_000_000).unwrap().is_some();
            let dp_feasible = dp.opt_tiles <= budget as u64;
            if ilp_feasible != dp_feasible {
                bad += 1;
            }
        }
    }
    report(
        "pattern model feasibility matches the exact optimum at every budget",
        accepted == target && bad == 0 && counts_bad == 0 && listing_checked,
        &format!(
            "{accepted} instances with at most 3 scenarios, {bad} decision mismatches, \
             {counts_bad} count mismatches, 3-scenario listing checked: {listing_checked}, {:.1?}",
            started.elapsed()
        ),
    );
}

#[test]
fn hall_ilp_agrees_with_exhaustive_search() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x0007);
    let mut bad = 0;
    let mut cases = 0;

    // Unit demands: a generalized scenario with count one per symbol,
    // sometimes alongside plain scenarios.
    for _ in 0..40 {
        let n = 2 + rng.below(4) as usize;
        let inst = unit_demand_instance(n, &mut rng);
        for budget in 1..=n as u64 {
            let with_budget = inst.with_budget(Some(budget));
            let hall = build_hall_ilp(&with_budget).unwrap();
            let ilp = solve_small(&hall.model, 1_000_000).unwrap().is_some();
            let oracle = exhaustive_tileset_search(n, &demand_maps(&inst), budget);
            cases += 1;
            if ilp != oracle {
                bad += 1;
            }
        }
    }

    // Small multiplicities: counts up to 3 over up to six symbols.
    for _ in 0..25 {
        let n = 3 + rng.below(4) as usize;
        let inst = multi_demand_instance(n, &mut rng);
        let max_budget = if n >= 6 { 5 } else { 6 };
        for budget in 1..=max_budget {
            let with_budget = inst.with_budget(Some(budget));
            let hall = build_hall_ilp(&with_budget).unwrap();
            let ilp = solve_small(&hall.model, 1_000_000).unwrap().is_some();
            let oracle = exhaustive_tileset_search(n, &demand_maps(&inst), budget);
            cases += 1;
            if ilp != oracle {
                bad += 1;
            }
        }
    }

    report(
        "Hall model feasibility matches exhaustive tileset search",
        bad == 0,
        &format!("{cases} (instance, budget) cases, {bad} mismatches, {:.1?}", started.elapsed()),
    );
}

fn unit_demand_instance(n: usize, rng: &mut SplitMix64) -> Instance {
    let support_size = 1 + rng.below(n as u64) as usize;
    let support = rng.distinct(n, support_size);
    let demand: BTreeMap<SymbolId, u32> = support.iter().map(|&s| (s, 1)).collect();
    let simple = if rng.below(2) == 0 && n >= 2 {
        let size = 1 + rng.below(n as u64 - 1) as usize;
        vec![SymbolSet::from_ids(n, rng.distinct(n, size))]
    } else {
        Vec::new()
    };
    Instance::with_generalized(
        (0..n).map(|i| format!("s{i}")).collect(),
        simple,
        None,
        Some(GeneralizedScenario::new(demand).unwrap()),
    )
    .unwrap()
}

fn multi_demand_instance(n: usize, rng: &mut SplitMix64) -> Instance {
    let support_size = 1 + rng.below(3.min(n as u64)) as usize;
    let support = rng.distinct(n, support_size);
    let demand: BTreeMap<SymbolId, u32> = support
        .iter()
        .map(|&s| (s, 1 + rng.below(3) as u32))
        .collect();
    Instance::with_generalized(
        (0..n).map(|i| format!("s{i}")).collect(),
        Vec::new(),
        None,
        Some(GeneralizedScenario::new(demand).unwrap()),
    )
    .unwrap()
}

fn demand_maps(inst: &Instance) -> Vec<BTreeMap<SymbolId, u32>> {
    let mut maps: Vec<BTreeMap<SymbolId, u32>> = inst
        .scenarios()
        .iter()
        .map(|s| s.members().iter().map(|id| (id, 1)).collect())
        .collect();
    if let Some(g) = inst.generalized() {
        maps.push(g.demand().clone());
    }
    maps
}

#[test]
fn dp_scales_to_twenty_symbols_within_the_split_bound() {
    let started = Instant::now();
    let inst = random_instance(20, 25, 6, 0x2020).unwrap();
    let dp = solve_dp(&inst).unwrap();
    let bound = 3u64.pow(20);
    let ok = dp.stats.split_evaluations <= bound
        && is_feasible(&dp.tileset, &inst).is_feasible();
    report(
        "subset dynamic program completes at 20 symbols within its work bound",
        ok,
        &format!(
            "opt {} with {} split evaluations (bound {bound}), {:.1?}",
            dp.opt_tiles,
            dp.stats.split_evaluations,
            started.elapsed()
        ),
    );
}
