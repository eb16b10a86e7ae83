//! Invariants of seeded bug generation.

use std::collections::BTreeSet;

use mutapath_core::minilang::gen::{random_program, GenConfig};
use mutapath_core::{
    apply, build_pool, canonical_hash, enumerate_applications, seed_bug, OperatorSet,
    OperatorSetName,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truth_path_is_sound(seed in any::<u64>(), k in 1usize..=4, extended in any::<bool>()) {
        let opset = OperatorSet::named(if extended { OperatorSetName::Extended } else { OperatorSetName::Pitest });
        let fixed = random_program(&mut ChaCha8Rng::seed_from_u64(seed), &GenConfig::default());
        let bug = seed_bug(&fixed, k, seed, &opset).unwrap();
        prop_assert!(bug.k >= 1 && bug.k <= k);
        prop_assert_eq!(bug.truth_path.order(), bug.k);
        prop_assert_eq!(&bug.truth_path.replay(&fixed).unwrap(), &bug.buggy);
        prop_assert_ne!(canonical_hash(&bug.buggy), canonical_hash(&fixed));
        prop_assert_eq!(&seed_bug(&fixed, k, seed, &opset).unwrap(), &bug);

        // no intermediate state repeats, and the search could take each step
        let pool = build_pool(&fixed, &bug.buggy);
        let mut seen = BTreeSet::from([canonical_hash(&fixed)]);
        let mut state = fixed.clone();
        for step in &bug.truth_path.steps {
            prop_assert!(enumerate_applications(&opset, &state, &pool).contains(step));
            state = apply(step, &state).unwrap();
            prop_assert!(seen.insert(canonical_hash(&state)));
        }
    }
}
