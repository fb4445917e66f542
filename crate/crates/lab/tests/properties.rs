use amst_core::principles::PrincipleId;
use amst_lab::enumerate::{count, Symmetry};
use amst_lab::eval::{node_bits, space_at};
use amst_lab::EnumerationSpace;
use proptest::prelude::*;

proptest! {
    // Principles are invariant under renaming models and sentences, so a
    // canonical representative has the same profile as any orbit member.
    #[test]
    fn profile_is_symmetry_invariant(idx in 0u64..65536) {
        let sym = Symmetry::new(2, 3);
        let canon = sym.canonical(idx);
        prop_assert!(canon <= idx);
        prop_assert_eq!(node_bits(&space_at(2, 3, idx)), node_bits(&space_at(2, 3, canon)));
    }

    #[test]
    fn exhaustive_count(models in 1u32..=4, n in 1u32..=2) {
        let s = EnumerationSpace::exhaustive(models, n);
        prop_assert_eq!(count(&s, 16).unwrap(), 1u64 << (models << n));
    }

    #[test]
    fn arrows_hold_on_random_three_by_three(idx in 0u64..(1 << 24)) {
        let bits = node_bits(&space_at(3, 3, idx));
        for a in amst_core::principles::ARROWS {
            let has = |p: PrincipleId| amst_lab::eval::holds(bits, p);
            prop_assert!(!has(a.from) || has(a.to), "{} -> {} at {}", a.from, a.to, idx);
        }
    }
}
