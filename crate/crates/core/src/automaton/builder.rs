//! Building automata from a handful of representative states and transitions,
//! closing them under pool permutations and left α-invariance.

use std::collections::{BTreeMap, HashMap};

use super::{Flags, Label, Orbit, SAutomaton, State, StateId, StateKey, Transition};
use crate::error::Result;
use crate::names::{generating_transpositions, parse_name_set, Name, Nominal, Permutation};
use crate::words::{Letter, LetterKind};

/// Incremental construction of an [`SAutomaton`] from representatives.
#[derive(Clone, Debug)]
pub struct NdaBuilder {
    automaton: SAutomaton,
    orbit_names: BTreeMap<String, usize>,
}

impl NdaBuilder {
    /// Starts an automaton over the comma- or space-separated `pool`.
    ///
    /// # Panics
    /// Panics on malformed pool text; the builder is meant for literal fixtures.
    pub fn new(pool: &str) -> Self {
        let pool = parse_name_set(pool).expect("valid pool");
        NdaBuilder {
            automaton: SAutomaton {
                pool,
                orbits: Vec::new(),
                states: Vec::new(),
                initial: 0,
                finals: Default::default(),
                transitions: Default::default(),
                flags: Flags::default(),
            },
            orbit_names: BTreeMap::new(),
        }
    }

    /// Declares a named orbit.
    pub fn orbit(&mut self, name: &str, arity: usize) -> &mut Self {
        let id = self.automaton.orbits.len();
        self.automaton.orbits.push(Orbit { id, arity });
        self.orbit_names.insert(name.to_string(), id);
        self
    }

    /// Adds (or finds) the state of orbit `orbit` with the given support,
    /// written as names separated by spaces or commas, `_` for undefined.
    ///
    /// # Panics
    /// Panics on unknown orbits or malformed names.
    pub fn state(&mut self, orbit: &str, support: &str) -> StateId {
        let orbit = self.orbit_names[orbit];
        let support = support
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| (t != "_").then(|| Name::parse(t).expect("valid name")))
            .collect();
        self.automaton.add_state(orbit, support)
    }

    /// Sets the initial state.
    pub fn initial(&mut self, q: StateId) -> &mut Self {
        self.automaton.initial = q;
        self
    }

    /// Marks a final state.
    pub fn accept(&mut self, q: StateId) -> &mut Self {
        self.automaton.finals.insert(q);
        self
    }

    /// Adds a transition labelled by a letter token, or `eps`.
    ///
    /// # Panics
    /// Panics on malformed letters.
    pub fn edge(&mut self, from: StateId, label: &str, to: StateId) -> &mut Self {
        let label = if label == "eps" {
            Label::Eps
        } else {
            Label::Letter(Letter::parse(label).expect("valid letter"))
        };
        self.automaton.transitions.insert(Transition { from, label, to });
        self
    }

    /// The automaton exactly as specified.
    pub fn build_raw(&self) -> SAutomaton {
        let mut a = self.automaton.clone();
        a.flags.eps_allowed = a.has_epsilon();
        a
    }

    /// Closes under pool permutations and left α-invariance, then validates.
    pub fn build(&self) -> Result<SAutomaton> {
        let mut a = self.build_raw();
        saturate(&mut a);
        a.validated()
    }
}

struct Index(HashMap<StateKey, StateId>);

impl Index {
    fn get_or_add(&mut self, a: &mut SAutomaton, key: StateKey) -> (StateId, bool) {
        if let Some(&q) = self.0.get(&key) {
            return (q, false);
        }
        let id = a.states.len();
        a.states.push(State { id, orbit: key.0, support: key.1.clone() });
        self.0.insert(key, id);
        (id, true)
    }
}

pub(super) fn close_equivariant(a: &mut SAutomaton) {
    let generators = generating_transpositions(&a.pool);
    let mut index = Index(a.state_index());
    loop {
        let mut changed = false;
        for pi in &generators {
            for q in 0..a.states.len() {
                let key = (a.states[q].orbit, a.states[q].support.act(pi));
                let (p, added) = index.get_or_add(a, key);
                changed |= added;
                if a.finals.contains(&q) && a.finals.insert(p) {
                    changed = true;
                }
            }
            let transitions: Vec<Transition> = a.transitions.iter().copied().collect();
            for t in transitions {
                let (from, _) = index.get_or_add(a, image(a, t.from, pi));
                let (to, _) = index.get_or_add(a, image(a, t.to, pi));
                changed |= a.transitions.insert(Transition { from, label: t.label.act(pi), to });
            }
        }
        if !changed {
            break;
        }
    }
}

fn image(a: &SAutomaton, q: StateId, pi: &Permutation) -> StateKey {
    (a.states[q].orbit, a.states[q].support.act(pi))
}

pub(super) fn saturate(a: &mut SAutomaton) {
    loop {
        close_equivariant(a);
        let mut index = Index(a.state_index());
        let mut changed = false;
        let transitions: Vec<Transition> = a.transitions.iter().copied().collect();
        for t in transitions {
            let Label::Letter(l) = t.label else { continue };
            if !l.kind.is_binder() {
                continue;
            }
            let target_supp = a.supp(t.to);
            let pool: Vec<Name> = a.pool.iter().copied().collect();
            for b in pool {
                if b == l.name || target_supp.contains(&b) {
                    continue;
                }
                let key = if l.kind == LetterKind::Alloc {
                    image(a, t.to, &Permutation::swap(l.name, b))
                } else {
                    a.states[t.to].key()
                };
                let (to, added) = index.get_or_add(a, key);
                changed |= added;
                changed |= a.transitions.insert(Transition {
                    from: t.from,
                    label: Label::Letter(l.with_name(b)),
                    to,
                });
            }
        }
        if !changed {
            break;
        }
    }
}
