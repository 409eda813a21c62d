mod common;

use std::collections::BTreeSet;

use common::{fixture, pool, random_rns_word, random_valid_nda, rng, w};
use nda_core::constructions::name_drop;
use nda_core::semantics::{
    alpha_classes, alpha_close, bounded_language, canonical, data_language, lang_compare, local_freshness,
    CompareStatus, Flavor,
};
use nda_core::words::{alpha_eq, db, is_rns};
use nda_core::{NameSet, Word};
use proptest::prelude::*;

fn names(n: usize) -> NameSet {
    pool(n).into_iter().collect()
}

fn random_language(seed: u64, size: usize) -> BTreeSet<Word> {
    let mut r = rng(seed);
    (0..size).map(|_| random_rns_word(&mut r, &pool(3), 3)).collect()
}

#[test]
fn flavors_parse_and_print() {
    for flavor in [Flavor::Literal, Flavor::Alphatic, Flavor::Data, Flavor::Freshness] {
        assert_eq!(flavor.to_string().parse::<Flavor>().unwrap(), flavor);
    }
    assert!("regular".parse::<Flavor>().is_err());
}

#[test]
fn comparison_statuses() {
    let ndalang = fixture("ndalang");
    let dropped = name_drop(&ndalang).unwrap();
    let empty = fixture("empty");
    let cmp = |a, b, flavor| lang_compare(a, b, flavor, 3).unwrap().status;
    assert_eq!(cmp(&ndalang, &dropped, Flavor::Alphatic), CompareStatus::Equal);
    assert_eq!(cmp(&ndalang, &dropped, Flavor::Literal), CompareStatus::RightOnly);
    assert_eq!(cmp(&dropped, &ndalang, Flavor::Literal), CompareStatus::LeftOnly);
    let c = lang_compare(&ndalang, &dropped, Flavor::Literal, 3).unwrap();
    assert!(c.right_only.contains(&"<a <a".to_string()));
    assert!(c.left_only.is_empty());
    // Different pools are refused.
    assert!(lang_compare(&ndalang, &empty, Flavor::Literal, 3).is_err());
    let ab = fixture("allocdealloc");
    let eps = fixture("epsilon");
    assert_eq!(cmp(&ab, &eps, Flavor::Literal), CompareStatus::Incomparable);
}

#[test]
fn ndalang_local_freshness() {
    let a = fixture("ndalang");
    let expected: BTreeSet<String> =
        a.pool.iter().flat_map(|x| a.pool.iter().map(move |y| format!("{x} {y}"))).collect();
    let got: BTreeSet<String> = local_freshness(&a, 2).iter().map(|d| d.to_string()).collect();
    assert_eq!(got, expected);
    let data: BTreeSet<String> = data_language(&a, 2).iter().map(|d| d.to_string()).collect();
    assert_eq!(data, expected.iter().filter(|s| s.as_bytes()[0] != s.as_bytes()[2]).cloned().collect());
}

#[test]
fn bounded_languages_report_their_parameters() {
    let a = fixture("lastletter");
    let l = bounded_language(&a, Flavor::Alphatic, 3);
    assert_eq!(l.flavor, Flavor::Alphatic);
    assert_eq!(l.maxlen, 3);
    assert_eq!(l.pool, a.pool);
    assert!(l.words.lines().iter().all(|s| s.split(' ').count() <= 3));
    assert!(bounded_language(&fixture("empty"), Flavor::Literal, 4).words.is_empty());
    assert_eq!(bounded_language(&fixture("epsilon"), Flavor::Data, 4).words.lines(), vec!["ε".to_string()]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_closure_is_a_closure(seed in any::<u64>(), extra in any::<u64>()) {
        let pool = names(4);
        let l = random_language(seed, 4);
        let m: BTreeSet<Word> = l.iter().cloned().chain(random_language(extra, 2)).collect();
        let cl = alpha_close(&l, &pool, 3);
        prop_assert!(l.is_subset(&cl));
        prop_assert!(cl.is_subset(&alpha_close(&m, &pool, 3)));
        prop_assert_eq!(&alpha_close(&cl, &pool, 3), &cl);
        for v in &cl {
            prop_assert!(is_rns(v));
            prop_assert!(l.iter().any(|u| alpha_eq(u, v).unwrap()));
        }
    }

    #[test]
    fn canonical_representatives(seed in any::<u64>()) {
        let pool = names(4);
        let l = random_language(seed, 5);
        let classes = alpha_classes(&l, &pool);
        prop_assert!(classes.len() <= l.len());
        for u in &l {
            let c = canonical(u, &pool).unwrap();
            prop_assert!(alpha_eq(u, &c).unwrap());
            prop_assert!(c <= *u);
            prop_assert!(classes.contains(&c));
        }
        prop_assert_eq!(alpha_classes(&alpha_close(&l, &pool, 3), &pool), classes);
    }

    #[test]
    fn freshness_contains_the_data_language(seed in any::<u64>()) {
        let a = random_valid_nda(&mut rng(seed), 3, 3, 2, 3);
        let fresh = local_freshness(&a, 4);
        prop_assert!(data_language(&a, 4).is_subset(&fresh));
        prop_assert_eq!(&fresh, &local_freshness(&a.to_rnna(), 4));
        prop_assert_eq!(&fresh, &local_freshness(&name_drop(&a).unwrap(), 4));
        let literal = a.enum_literal(4);
        let closed = alpha_close(&literal, &a.pool, 4);
        prop_assert_eq!(fresh, closed.iter().map(db).collect::<BTreeSet<_>>());
    }
}

#[test]
fn counterexample_languages() {
    let a = fixture("counterexample");
    let words = a.enum_literal(3);
    assert!(words.contains(&w("<a a>")));
    assert!(!words.contains(&w("<b b>")));
    let closed = alpha_close(&words, &a.pool, 3);
    assert!(closed.contains(&w("<b b>")));
}
