//! Seeded bugs: ground-truth pairs built by applying random mutations.
//!
//! Starting from a fixed program, `k` applications are drawn uniformly from
//! the enumerated successors, skipping any whose result was already visited on
//! the way. The candidate pool for drawing is the fixed program's own symbols.
//! A truth path is only kept if the search over the resulting pair could take
//! the same steps, i.e. every step is enumerable with the pool the search
//! builds from `(fixed, buggy)`; otherwise the longest prefix with that
//! property is returned.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::minilang::{canonical_hash, Ast};
use crate::mutops::{
    apply, build_pool, enumerate_applications, CandidatePool, MutationApplication, OperatorSet,
};
use crate::search::MutationPath;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeededBug {
    pub fixed: Ast,
    pub buggy: Ast,
    pub truth_path: MutationPath,
    pub seed: u64,
    /// Actual order; may be below the requested one when the walk got stuck.
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SeedError {
    #[error("the program has no applicable mutation sites")]
    NoSites,
    #[error("the requested mutant order must be at least 1")]
    ZeroOrder,
}

pub fn seed_bug(
    fixed: &Ast,
    k: usize,
    seed: u64,
    opset: &OperatorSet,
) -> Result<SeededBug, SeedError> {
    if k == 0 {
        return Err(SeedError::ZeroOrder);
    }
    let pool = build_pool(fixed, fixed);
    if enumerate_applications(opset, fixed, &pool).is_empty() {
        return Err(SeedError::NoSites);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::from([canonical_hash(fixed)]);
    let mut states = alloc::vec![fixed.clone()];
    let mut steps: Vec<MutationApplication> = Vec::new();
    while steps.len() < k {
        let current = states.last().expect("non-empty");
        let mut fresh: Vec<(MutationApplication, Ast)> =
            enumerate_applications(opset, current, &pool)
                .into_iter()
                .filter_map(|app| {
                    let next = apply(&app, current).ok()?;
                    (!seen.contains(&canonical_hash(&next))).then_some((app, next))
                })
                .collect();
        if fresh.is_empty() {
            break;
        }
        let (app, next) = fresh.swap_remove(rng.gen_range(0..fresh.len()));
        seen.insert(canonical_hash(&next));
        steps.push(app);
        states.push(next);
    }
    while !steps.is_empty() && !searchable(opset, &states, &steps) {
        steps.pop();
        states.pop();
    }
    let buggy = states.pop().expect("non-empty");
    let k = steps.len();
    Ok(SeededBug {
        fixed: fixed.clone(),
        buggy,
        truth_path: MutationPath { steps },
        seed,
        k,
    })
}

/// Whether every step is enumerable with the search's pool for the pair
/// `(states[0], states[steps.len()])`.
fn searchable(opset: &OperatorSet, states: &[Ast], steps: &[MutationApplication]) -> bool {
    let pool: CandidatePool = build_pool(&states[0], &states[steps.len()]);
    steps
        .iter()
        .zip(states)
        .all(|(step, state)| enumerate_applications(opset, state, &pool).contains(step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minilang::parse;

    fn check(bug: &SeededBug) {
        assert_eq!(bug.truth_path.order(), bug.k);
        assert_eq!(bug.truth_path.replay(&bug.fixed).unwrap(), bug.buggy);
        assert_ne!(canonical_hash(&bug.buggy), canonical_hash(&bug.fixed));
    }

    #[test]
    fn single_application() {
        let fixed = parse("int f(int a){ return a + a; }").unwrap();
        let bug = seed_bug(&fixed, 1, 7, &OperatorSet::extended()).unwrap();
        assert_eq!(bug.k, 1);
        check(&bug);
    }

    #[test]
    fn deterministic() {
        let fixed = parse("int f(int a, int b){ if (a < b) { a++; } return a * 2 + b; }").unwrap();
        let x = seed_bug(&fixed, 2, 99, &OperatorSet::extended()).unwrap();
        let y = seed_bug(&fixed, 2, 99, &OperatorSet::extended()).unwrap();
        assert_eq!(x, y);
        check(&x);
    }

    #[test]
    fn stuck_walk_reports_actual_order() {
        // The only pitest mutants toggle the returned boolean, so the second
        // step can only restore the original program and is rejected.
        let fixed = parse("bool f(){ return true; }").unwrap();
        let ops = OperatorSet::pitest();
        let bug = seed_bug(&fixed, 3, 1, &ops).unwrap();
        assert!(bug.k < 3, "k = {}", bug.k);
        check(&bug);
    }

    #[test]
    fn errors() {
        let fixed = parse("void f(){ }").unwrap();
        assert_eq!(
            seed_bug(&fixed, 1, 0, &OperatorSet::extended()),
            Err(SeedError::NoSites)
        );
        let fixed = parse("int f(){ return 1; }").unwrap();
        assert_eq!(
            seed_bug(&fixed, 0, 0, &OperatorSet::extended()),
            Err(SeedError::ZeroOrder)
        );
    }
}
