//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use nda_core::automaton::NdaBuilder;
use nda_core::expressions::{is_regdex, Regex};
use nda_core::names::{first_names, Name};
use nda_core::{Letter, LetterKind, SAutomaton, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pool(n: usize) -> Vec<Name> {
    first_names(n).into_iter().collect()
}

pub fn random_letter(rng: &mut impl Rng, names: &[Name]) -> Letter {
    let kind = LetterKind::ALL[rng.gen_range(0..LetterKind::ALL.len())];
    Letter { kind, name: *names.choose(rng).unwrap() }
}

pub fn random_word(rng: &mut impl Rng, names: &[Name], maxlen: usize) -> Word {
    let len = rng.gen_range(0..=maxlen);
    Word((0..len).map(|_| random_letter(rng, names)).collect())
}

/// A random right-non-shadowing word, by rejection.
pub fn random_rns_word(rng: &mut impl Rng, names: &[Name], maxlen: usize) -> Word {
    loop {
        let w = random_word(rng, names, maxlen);
        if nda_core::words::is_rns(&w) {
            return w;
        }
    }
}

fn support_text(arity: usize, rng: &mut impl Rng, allowed: &[Name]) -> String {
    let mut pick = allowed.to_vec();
    pick.shuffle(rng);
    (0..arity)
        .map(|i| match pick.get(i) {
            Some(a) if rng.gen_bool(0.85) => a.to_string(),
            _ => "_".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A random automaton over the first `pool_size` names: two to `max_orbits`
/// orbits (the initial one of arity 0, the others positive), arities at most
/// `max_arity`, and a few
/// transitions grown from the reachable part, each respecting the support
/// evolution, closed under permutations and left α-invariance. `None` if the
/// result does not validate.
pub fn random_nda(rng: &mut impl Rng, pool_size: usize, max_orbits: usize, max_arity: usize) -> Option<SAutomaton> {
    let names = pool(pool_size);
    let pool_text = names.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
    let mut b = NdaBuilder::new(&pool_text);
    let orbits = rng.gen_range(2.min(max_orbits)..=max_orbits);
    let last_arity = max_arity;
    let mut arity = vec![0];
    for k in 1..orbits {
        arity.push(if k + 1 == orbits { last_arity } else { rng.gen_range(1.min(max_arity)..=max_arity) });
    }
    for (k, &n) in arity.iter().enumerate() {
        b.orbit(&format!("o{k}"), n);
    }
    let start = b.state("o0", "");
    b.initial(start);
    // Reached states with their defined support names.
    let mut reached: Vec<(usize, Vec<Name>)> = vec![(start, Vec::new())];
    for step in 0..rng.gen_range(2..=7) {
        let from_index = if step == 1 { reached.len() - 1 } else { rng.gen_range(0..reached.len()) };
        let (from, s) = reached[from_index].clone();
        // Mostly free letters and allocations; start with two allocations.
        let kind = match rng.gen_range(0..9) {
            _ if step < 2 => LetterKind::Alloc,
            0..=2 => LetterKind::Free,
            3..=5 => LetterKind::Alloc,
            6 | 7 => LetterKind::Dealloc,
            _ => LetterKind::Both,
        };
        let x = match kind {
            LetterKind::Free | LetterKind::Dealloc => match s.choose(rng) {
                Some(x) => *x,
                None => continue,
            },
            LetterKind::Alloc | LetterKind::Both => *names.choose(rng).unwrap(),
        };
        let allowed: Vec<Name> = match kind {
            LetterKind::Free => s.clone(),
            LetterKind::Alloc => {
                let mut t = s.clone();
                if !t.contains(&x) {
                    t.push(x);
                }
                t
            }
            LetterKind::Dealloc | LetterKind::Both => s.iter().copied().filter(|y| *y != x).collect(),
        };
        let target = match step {
            0 => 1.min(arity.len() - 1),
            1 => arity.len() - 1,
            _ => rng.gen_range(0..arity.len()),
        };
        let text = support_text(arity[target], rng, &allowed);
        let to = b.state(&format!("o{target}"), &text);
        b.edge(from, &Letter { kind, name: x }.to_string(), to);
        if reached.iter().all(|(q, _)| *q != to) {
            let support = text.split(' ').filter(|t| !t.is_empty() && *t != "_").map(|t| Name::parse(t).unwrap()).collect();
            reached.push((to, support));
        }
    }
    for _ in 0..rng.gen_range(1..=2) {
        b.accept(reached[rng.gen_range(0..reached.len())].0);
    }
    b.build().ok()
}

/// A validated random automaton accepting some non-empty word up to `bound`,
/// by rejection.
pub fn random_valid_nda(rng: &mut impl Rng, pool_size: usize, max_orbits: usize, max_arity: usize, bound: usize) -> SAutomaton {
    loop {
        if let Some(a) = random_nda(rng, pool_size, max_orbits, max_arity) {
            if a.enum_literal(bound).iter().any(|w| !w.is_empty()) {
                return a;
            }
        }
    }
}

/// A random expression of depth at most `depth` over `names`.
pub fn random_regex(rng: &mut impl Rng, names: &[Name], depth: usize, star_free: bool) -> Regex {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..20) {
            0 => Regex::Empty,
            1 | 2 => Regex::Eps,
            3 => Regex::Unknown,
            _ => Regex::Lit(random_letter(rng, names)),
        };
    }
    let choices = if star_free { 2 } else { 3 };
    match rng.gen_range(0..choices) {
        0 => Regex::cat(random_regex(rng, names, depth - 1, star_free), random_regex(rng, names, depth - 1, star_free)),
        1 => Regex::sum(random_regex(rng, names, depth - 1, star_free), random_regex(rng, names, depth - 1, star_free)),
        _ => Regex::star(random_regex(rng, names, depth - 1, star_free)),
    }
}

/// Whether some concatenation has an operand with the empty language.
pub fn has_empty_factor(r: &Regex) -> bool {
    match r {
        Regex::Cat(x, y) => x.is_empty_language() || y.is_empty_language() || has_empty_factor(x) || has_empty_factor(y),
        Regex::Sum(x, y) => has_empty_factor(x) || has_empty_factor(y),
        Regex::Star(x) => has_empty_factor(x),
        _ => false,
    }
}

/// A random regular deallocation expression with a non-empty language.
pub fn random_regdex(rng: &mut impl Rng, names: &[Name], depth: usize) -> Regex {
    loop {
        let r = random_regex(rng, names, depth, false);
        if is_regdex(&r).ok && !r.is_empty_language() && r.depth() >= 2 {
            return r;
        }
    }
}

pub fn w(text: &str) -> Word {
    Word::parse(text).unwrap()
}

pub fn fixture(name: &str) -> SAutomaton {
    nda_core::fixtures::by_name(name).unwrap_or_else(|| panic!("unknown fixture {name}"))
}

/// Words of length at most `maxlen` over the first `pool_size` names.
pub fn word_strategy(pool_size: usize, maxlen: usize) -> impl proptest::strategy::Strategy<Value = Word> {
    use proptest::prelude::*;
    prop::collection::vec((0..4usize, 0..pool_size), 0..=maxlen).prop_map(move |letters| {
        let names = pool(pool_size);
        Word(letters.into_iter().map(|(k, n)| Letter { kind: LetterKind::ALL[k], name: names[n] }).collect())
    })
}

/// Right-non-shadowing words, by filtering.
pub fn rns_word_strategy(pool_size: usize, maxlen: usize) -> impl proptest::strategy::Strategy<Value = Word> {
    use proptest::prelude::*;
    word_strategy(pool_size, maxlen).prop_filter("right-non-shadowing", nda_core::words::is_rns)
}

/// Permutations of the first `pool_size` names.
pub fn permutation_strategy(pool_size: usize) -> impl proptest::strategy::Strategy<Value = nda_core::Permutation> {
    use proptest::prelude::*;
    Just(pool(pool_size)).prop_shuffle().prop_map(move |image| {
        nda_core::Permutation::from_pairs(pool(pool_size).into_iter().zip(image)).expect("a bijection")
    })
}
