mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use common::{permutation_strategy, pool, random_regdex, random_valid_nda, rng, word_strategy};
use nda_core::automaton::Label;
use nda_core::expressions::regex_to_eps_nfa;
use nda_core::names::{NameSet, Nominal};
use nda_core::words::{classify, is_rns, Profile};
use nda_core::{fixtures, LetterKind, SAutomaton, Word};
use proptest::prelude::*;

fn automaton(seed: u64) -> SAutomaton {
    random_valid_nda(&mut rng(seed), 3, 3, 2, 3)
}

/// Every word of length at most `n` readable from `q`, with the state reached.
fn runs_from(a: &SAutomaton, q: usize, n: usize) -> Vec<(Word, usize)> {
    let succ = a.successors();
    let mut out = Vec::new();
    let mut frontier = vec![(Word::empty(), q)];
    for len in 0..=n {
        let mut next = Vec::new();
        for (w, p) in frontier {
            for &(label, r) in &succ[p] {
                match label {
                    Label::Eps => next.push((w.clone(), r)),
                    Label::Letter(l) if len < n => next.push((w.push(l), r)),
                    Label::Letter(_) => {}
                }
            }
            out.push((w, p));
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out
}

/// Names right-closed in some word read into each state, and names left-open
/// in some word read out of it, by exploring (state, profile) pairs.
fn witnessed_profiles(a: &SAutomaton) -> (Vec<NameSet>, Vec<NameSet>) {
    let n = a.num_states();
    let (succ, pred) = (a.successors(), a.predecessors());
    let letter_profile = |label: Label| match label {
        Label::Eps => Profile::default(),
        Label::Letter(l) => Profile::of_letter(l),
    };
    let mut rc = vec![NameSet::new(); n];
    let mut seen: HashSet<(usize, Profile)> = HashSet::new();
    let mut queue: VecDeque<(usize, Profile)> = (0..n).map(|q| (q, Profile::default())).collect();
    while let Some((q, p)) = queue.pop_front() {
        if !seen.insert((q, p.clone())) {
            continue;
        }
        rc[q].extend(p.rc.iter().copied());
        for &(label, r) in &succ[q] {
            queue.push_back((r, p.concat(&letter_profile(label))));
        }
    }
    let mut lo = vec![NameSet::new(); n];
    seen.clear();
    let mut queue: VecDeque<(usize, Profile)> = (0..n).map(|q| (q, Profile::default())).collect();
    while let Some((q, p)) = queue.pop_front() {
        if !seen.insert((q, p.clone())) {
            continue;
        }
        lo[q].extend(p.lo.iter().copied());
        for &(label, r) in &pred[q] {
            queue.push_back((r, letter_profile(label).concat(&p)));
        }
    }
    (rc, lo)
}

fn corpus(seed: u64) -> Vec<SAutomaton> {
    let mut all: Vec<SAutomaton> = fixtures::all().into_iter().map(|(_, a)| a).collect();
    all.push(automaton(seed));
    all
}

#[test]
fn fixtures_validate_and_round_trip_through_json() {
    for (name, a) in fixtures::all() {
        assert!(a.validate_nda().is_valid(), "{name}: {}", a.validate_nda().summary());
        let back = SAutomaton::from_json(&a.to_json()).unwrap();
        assert_eq!(back.to_json(), a.to_json(), "{name}");
        assert_eq!(back.enum_literal(3), a.enum_literal(3), "{name}");
    }
}

#[test]
fn profile_clauses_on_small_chains() {
    use nda_core::automaton::NdaBuilder;
    let mut b = NdaBuilder::new("a,b");
    b.orbit("i", 0).orbit("f", 0);
    let (i, f) = (b.state("i", ""), b.state("f", ""));
    b.initial(i).accept(f).edge(i, "a", f);
    let p = b.build_raw().state_profiles();
    assert_eq!(p.lo[i], ["a"].iter().map(|s| s.parse().unwrap()).collect());
    assert!(p.rc[i].is_empty() && p.rc[f].is_empty() && p.lo[f].is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn accepted_words_are_rns(seed in any::<u64>()) {
        for a in corpus(seed) {
            prop_assert!(a.enum_literal(4).iter().all(is_rns));
        }
    }

    #[test]
    fn acceptance_is_equivariant(seed in any::<u64>(), p in permutation_strategy(3), w in word_strategy(3, 4)) {
        let a = automaton(seed);
        let moved = a.act(&p).unwrap();
        prop_assert!(moved.validate_nda().is_valid());
        prop_assert_eq!(a.run_literal(&w).unwrap(), moved.run_literal(&w.act(&p)).unwrap());
        let image: BTreeSet<Word> = a.enum_literal(3).iter().map(|x| x.act(&p)).collect();
        prop_assert_eq!(moved.enum_literal(3), image);
    }

    #[test]
    fn profiles_are_sound_on_bounded_runs(seed in any::<u64>()) {
        let a = automaton(seed);
        let profile = a.state_profiles();
        for q in 0..a.num_states() {
            for (w, p) in runs_from(&a, q, 3) {
                let c = classify(&w);
                prop_assert!(c.rc.is_subset(&profile.rc[p]), "rc({w}) ⊄ rc(q{p})");
                prop_assert!(c.lo.is_subset(&profile.lo[q]), "lo({w}) ⊄ lo(q{q})");
            }
        }
    }

    #[test]
    fn profiles_are_least(seed in any::<u64>()) {
        for a in corpus(seed) {
            let profile = a.state_profiles();
            let (rc, lo) = witnessed_profiles(&a);
            prop_assert_eq!(&profile.rc, &rc);
            prop_assert_eq!(&profile.lo, &lo);
        }
    }

    #[test]
    fn epsilon_elimination_keeps_the_language(seed in any::<u64>()) {
        let r = random_regdex(&mut rng(seed), &pool(2), 4);
        let a = regex_to_eps_nfa(&r);
        let e = a.eliminate_epsilon();
        prop_assert!(!e.has_epsilon());
        for n in 0..=4 {
            prop_assert_eq!(e.enum_literal(n), a.enum_literal(n));
        }
        prop_assert!(e.is_dnfa());
    }

    #[test]
    fn rnna_translation_is_valid(seed in any::<u64>()) {
        let a = automaton(seed);
        let r = a.to_rnna();
        prop_assert!(r.validate_nda().is_valid());
        prop_assert!(r.transitions.iter().all(|t| !matches!(t.label,
            Label::Letter(l) if matches!(l.kind, LetterKind::Dealloc | LetterKind::Both))));
    }
}
