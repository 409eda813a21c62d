mod common;

use common::{permutation_strategy, pool};
use nda_core::names::{fresh, fresh_many, Name, NameSet, Nominal, Permutation};
use proptest::prelude::*;

fn name_set() -> impl Strategy<Value = NameSet> {
    prop::collection::btree_set((0u32..60).prop_map(|i| Name::parse(&label(i)).unwrap()), 0..12)
}

fn label(i: u32) -> String {
    let letter = char::from(b'a' + (i % 26) as u8);
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

proptest! {
    #[test]
    fn composition_applies_right_to_left(p in permutation_strategy(5), q in permutation_strategy(5)) {
        for x in pool(6) {
            prop_assert_eq!(p.compose(&q).apply(x), p.apply(q.apply(x)));
        }
    }

    #[test]
    fn inverse_undoes(p in permutation_strategy(5)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn fresh_avoids(avoid in name_set()) {
        prop_assert!(!avoid.contains(&fresh(&avoid)));
        let many = fresh_many(&avoid, 3);
        prop_assert_eq!(many.iter().copied().collect::<NameSet>().len(), 3);
        prop_assert!(many.iter().all(|a| !avoid.contains(a)));
    }

    #[test]
    fn names_round_trip_through_labels(i in 0u32..2000) {
        let a = Name::parse(&label(i)).unwrap();
        prop_assert_eq!(Name::parse(&a.label()).unwrap(), a);
    }

    #[test]
    fn set_action_is_a_group_action(s in name_set(), p in permutation_strategy(4), q in permutation_strategy(4)) {
        prop_assert_eq!(s.act(&p.compose(&q)), s.act(&q).act(&p));
        prop_assert_eq!(s.act(&Permutation::identity()), s);
    }
}
