mod common;

use std::collections::BTreeSet;

use common::{permutation_strategy, pool, rns_word_strategy, word_strategy};
use nda_core::names::{first_names, NameSet, Nominal};
use nda_core::semantics::alpha_close;
use nda_core::words::{
    alpha_eq, alpha_eq_oracle, alpha_variants, classify, db, disc, is_disciplined, is_rns, is_rns_by_splits,
};
use nda_core::Word;
use proptest::prelude::*;

fn minus(x: &NameSet, y: &NameSet) -> NameSet {
    x.difference(y).copied().collect()
}

fn union(x: &NameSet, y: &NameSet) -> NameSet {
    x.union(y).copied().collect()
}

/// The pool `{a,b,c}` plus two spare names for the rule-closure oracle.
fn oracle_pool() -> NameSet {
    first_names(5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn concatenation_identities(u in word_strategy(4, 8), v in word_strategy(4, 8)) {
        let (pu, pv, puv) = (classify(&u), classify(&v), classify(&u.concat(&v)));
        prop_assert_eq!(&puv.rc, &union(&minus(&pu.rc, &union(&pv.lc, &pv.lo)), &pv.rc));
        prop_assert_eq!(&puv.lc, &union(&pu.lc, &minus(&pv.lc, &pu.lo)));
        prop_assert_eq!(&puv.lo, &union(&pu.lo, &minus(&pv.lo, &pu.lc)));
        prop_assert_eq!(pu.concat(&pv), puv);
    }

    #[test]
    fn profile_sets_are_disjoint(w in word_strategy(4, 8)) {
        let p = classify(&w);
        prop_assert!(p.lo.is_disjoint(&p.lc));
    }

    #[test]
    fn rns_split_formula(w in rns_word_strategy(3, 8), cut in 0usize..9) {
        let cut = cut.min(w.len());
        let (u, v) = (Word(w.0[..cut].to_vec()), Word(w.0[cut..].to_vec()));
        let (pu, pv) = (classify(&u), classify(&v));
        prop_assert_eq!(classify(&w).rc, union(&minus(&pu.rc, &pv.lc), &pv.rc));
    }

    #[test]
    fn rns_closed_under_compatible_concatenation(u in rns_word_strategy(3, 5), v in rns_word_strategy(3, 5)) {
        if classify(&u).rc.is_disjoint(&classify(&v).lo) {
            prop_assert!(is_rns(&u.concat(&v)));
        }
    }

    #[test]
    fn rns_scan_matches_split_definition(w in word_strategy(3, 8)) {
        prop_assert_eq!(is_rns(&w), is_rns_by_splits(&w));
    }

    #[test]
    fn lo_is_alpha_invariant(w in rns_word_strategy(3, 5)) {
        let lo = classify(&w).lo;
        for v in alpha_variants(&w, &oracle_pool()) {
            prop_assert_eq!(&classify(&v).lo, &lo);
        }
    }

    #[test]
    fn alpha_eq_matches_oracle(w in rns_word_strategy(3, 5), v in rns_word_strategy(3, 5)) {
        prop_assert_eq!(alpha_eq(&w, &v).unwrap(), alpha_eq_oracle(&w, &v, &oracle_pool()).unwrap());
    }

    #[test]
    fn alpha_eq_matches_oracle_on_variants(w in rns_word_strategy(3, 5), pick in any::<prop::sample::Index>()) {
        let names: NameSet = first_names(3);
        let variants: Vec<Word> = alpha_variants(&w, &names).into_iter().collect();
        prop_assume!(!variants.is_empty());
        let v = pick.get(&variants);
        prop_assert!(alpha_eq(&w, v).unwrap());
        prop_assert!(alpha_eq_oracle(&w, v, &oracle_pool()).unwrap());
    }

    #[test]
    fn disc_is_idempotent_and_disciplined(w in word_strategy(3, 8)) {
        let d = disc(&w);
        prop_assert_eq!(&disc(&d), &d);
        prop_assert!(is_disciplined(&d));
        prop_assert_eq!(classify(&d).lo, classify(&w).lo);
        prop_assert_eq!(db(&d), db(&w));
    }

    #[test]
    fn classification_is_equivariant(w in word_strategy(4, 8), p in permutation_strategy(4)) {
        let moved = w.act(&p);
        prop_assert_eq!(classify(&moved), classify(&w).act(&p));
        prop_assert_eq!(is_rns(&moved), is_rns(&w));
        prop_assert_eq!(db(&moved), db(&w).act(&p));
    }

    #[test]
    fn alpha_data_invariant_under_disc(w in rns_word_strategy(3, 5)) {
        let names = pool(3).into_iter().collect::<NameSet>();
        let of = |x: &Word| -> BTreeSet<_> {
            alpha_close(&[x.clone()].into(), &names, x.len()).iter().map(db).collect()
        };
        prop_assert_eq!(of(&w), of(&disc(&w)));
    }
}
