//! Search behaviour against seeded ground truth and the breadth-first oracle.

use mutapath_core::minilang::gen::{random_program, GenConfig};
use mutapath_core::mutops::max_touched_size;
use mutapath_core::search::{bfs_oracle_with_cap, find_mutation_path_with, NoClock};
use mutapath_core::{
    build_pool, classify, find_mutation_path, parse, seed_bug, Ast, OperatorName, OperatorSet,
    ReproClass, SearchBudget, SearchStatus, SeededBug,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn program(seed: u64) -> Ast {
    random_program(&mut ChaCha8Rng::seed_from_u64(seed), &GenConfig::default())
}

fn seeded(seed: u64, k: usize) -> SeededBug {
    seed_bug(&program(seed), k, seed, &OperatorSet::extended())
        .expect("generated programs have sites")
}

/// Heuristic scale under which `ceil(h / scale)` never overestimates: no
/// single application on a shortest path can change the distance by more than
/// the largest subtree it touches, and each step grows a subtree by at most
/// one node.
fn admissible_scale(bug: &SeededBug) -> f64 {
    let pool = build_pool(&bug.fixed, &bug.buggy);
    (max_touched_size(&OperatorSet::extended(), &bug.fixed, &pool) + bug.k) as f64
}

#[test]
fn sum_to_difference_pair() {
    let fixed = parse("int f(int a,int b){return a + a;}").unwrap();
    let buggy = parse("int f(int a,int b){return a - b;}").unwrap();
    let r = find_mutation_path(
        &fixed,
        &buggy,
        &OperatorSet::extended(),
        &SearchBudget::default(),
    )
    .unwrap();
    assert_eq!((r.status, r.path.order()), (SearchStatus::Full, 2));
    let mut ops: Vec<_> = r.path.steps.iter().map(|s| s.operator).collect();
    ops.sort();
    assert_eq!(ops, [OperatorName::Math, OperatorName::Rename]);
    assert_eq!(r.path.replay(&fixed).unwrap(), buggy);
}

#[test]
fn seeded_bugs_are_reproduced() {
    let mut full = 0;
    let mut total = 0;
    for k in 1..=4 {
        for seed in 0..10u64 {
            let bug = seeded(1000 * k as u64 + seed, k);
            let r = find_mutation_path(
                &bug.fixed,
                &bug.buggy,
                &OperatorSet::extended(),
                &SearchBudget::default(),
            )
            .unwrap();
            total += 1;
            if classify(&r) == ReproClass::R {
                full += 1;
                assert!(
                    r.path.order() <= bug.k,
                    "found {} > truth {}",
                    r.path.order(),
                    bug.k
                );
                assert_eq!(r.path.replay(&bug.fixed).unwrap(), bug.buggy);
            }
        }
    }
    assert!(full * 100 >= total * 95, "{full}/{total}");
}

#[test]
fn admissible_search_matches_oracle() {
    for k in 1..=2 {
        for seed in 0..10u64 {
            let bug = seeded(5000 * k as u64 + seed, k);
            let oracle = bfs_oracle_with_cap(
                &bug.fixed,
                &bug.buggy,
                &OperatorSet::extended(),
                k,
                2_000_000,
            );
            let budget = SearchBudget {
                heuristic_scale: admissible_scale(&bug),
                ..SearchBudget::default()
            };
            let r = find_mutation_path(&bug.fixed, &bug.buggy, &OperatorSet::extended(), &budget)
                .unwrap();
            let min = oracle
                .expect("small instances stay under the cap")
                .expect("truth path bounds the depth");
            assert_eq!(
                (r.status, r.path.order()),
                (SearchStatus::Full, min),
                "k={k} seed={seed}"
            );
        }
    }
}

#[test]
fn expanded_f_values_never_decrease_under_a_consistent_heuristic() {
    for seed in 0..8u64 {
        let bug = seeded(7000 + seed, 3);
        // far above any touched size, so ceil(h / scale) changes by at most
        // one per step
        let scale = (4 * (bug.fixed.size() + bug.buggy.size())) as f64;
        let budget = SearchBudget {
            heuristic_scale: scale,
            max_expansions: 300,
            ..SearchBudget::default()
        };
        let mut trace = Vec::new();
        find_mutation_path_with(
            &bug.fixed,
            &bug.buggy,
            &OperatorSet::extended(),
            &budget,
            &NoClock,
            Some(&mut trace),
        )
        .unwrap();
        assert!(!trace.is_empty());
        assert!(
            trace.windows(2).all(|w| w[0] <= w[1]),
            "seed {seed}: {trace:?}"
        );
    }
}

#[test]
fn repeated_runs_agree() {
    let bug = seeded(42, 4);
    let run = || {
        let mut r = find_mutation_path_with(
            &bug.fixed,
            &bug.buggy,
            &OperatorSet::extended(),
            &SearchBudget::default(),
            &NoClock,
            None,
        )
        .unwrap();
        r.wall_time = 0.0;
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn expansion_budget_cuts_the_search_short() {
    // Three independent edits; one expansion can only realise one of them.
    let fixed = parse("int f(int a, int b){ if (a < b) { return a + 1; } return b * 2; }").unwrap();
    let buggy =
        parse("int f(int a, int b){ if (a <= b) { return a - 1; } return b * 3; }").unwrap();
    let budget = SearchBudget {
        max_expansions: 1,
        ..SearchBudget::default()
    };
    let r = find_mutation_path(&fixed, &buggy, &OperatorSet::extended(), &budget).unwrap();
    assert_eq!(r.status, SearchStatus::Partial);
    assert_eq!(r.expansions, 1);
    assert_eq!(
        (r.initial_diff, r.remaining_diff, r.path.order()),
        (3, 2, 1)
    );
    assert!((r.progress - 1.0 / 3.0).abs() < 1e-12);
    let full = find_mutation_path(
        &fixed,
        &buggy,
        &OperatorSet::extended(),
        &SearchBudget::default(),
    )
    .unwrap();
    assert_eq!((full.status, full.path.order()), (SearchStatus::Full, 3));
}

#[test]
fn frontier_budget_cuts_the_search_short() {
    let fixed = parse("int f(int a, int b){ if (a < b) { return a + 1; } return b * 2; }").unwrap();
    let buggy =
        parse("int f(int a, int b){ if (a <= b) { return a - 1; } return b * 3; }").unwrap();
    let budget = SearchBudget {
        max_frontier: 1,
        ..SearchBudget::default()
    };
    let r = find_mutation_path(&fixed, &buggy, &OperatorSet::extended(), &budget).unwrap();
    assert_ne!(r.status, SearchStatus::Full);
}

#[test]
fn results_round_trip_through_json() {
    let bug = seeded(77, 3);
    let r = find_mutation_path(
        &bug.fixed,
        &bug.buggy,
        &OperatorSet::extended(),
        &SearchBudget::default(),
    )
    .unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert_eq!(
        serde_json::from_str::<mutapath_core::SearchResult>(&text).unwrap(),
        r
    );
    let bug_text = serde_json::to_string(&bug).unwrap();
    assert_eq!(serde_json::from_str::<SeededBug>(&bug_text).unwrap(), bug);
}
