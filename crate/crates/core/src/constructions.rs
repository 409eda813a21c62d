//! Automaton transformations: name dropping, restriction to a sub-pool,
//! disciplining, the powerset construction, nominalization and the composed
//! determinization pipeline.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::automaton::{Flags, Label, Orbit, SAutomaton, State, StateId, StateKey, Transition};
use crate::error::{Error, Result};
use crate::names::{Name, NameSet, Nominal, Permutation};
use crate::words::{join_names, Letter, LetterKind};

fn ensure_valid(a: &SAutomaton) -> Result<()> {
    if a.flags.validated_nda {
        return Ok(());
    }
    let report = a.validate_nda();
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidNda(report.summary()))
    }
}

/// Replaces partial supports by total ones: every combination of orbit and
/// defined-position pattern becomes an orbit of its own.
pub fn strengthen(a: &SAutomaton) -> SAutomaton {
    if a.states.iter().all(State::is_total) {
        return a.clone();
    }
    let mut orbit_of: BTreeMap<(usize, Vec<bool>), usize> = BTreeMap::new();
    let mut orbits = Vec::new();
    let mut states = Vec::new();
    for s in &a.states {
        let mask: Vec<bool> = s.support.iter().map(Option::is_some).collect();
        let arity = mask.iter().filter(|d| **d).count();
        let orbit = *orbit_of.entry((s.orbit, mask)).or_insert_with(|| {
            orbits.push(Orbit { id: orbits.len(), arity });
            orbits.len() - 1
        });
        let support = s.support.iter().flatten().map(|&n| Some(n)).collect();
        states.push(State { id: s.id, orbit, support });
    }
    SAutomaton { orbits, states, ..a.clone() }
}

/// All sub-maps of a support tuple obtained by undefining some positions.
fn sub_maps(tuple: &[Option<Name>]) -> Vec<Vec<Option<Name>>> {
    let defined: Vec<usize> = (0..tuple.len()).filter(|&i| tuple[i].is_some()).collect();
    (0..1u64 << defined.len())
        .map(|mask| {
            let mut out = tuple.to_vec();
            for (bit, &i) in defined.iter().enumerate() {
                if mask >> bit & 1 == 0 {
                    out[i] = None;
                }
            }
            out
        })
        .collect()
}

fn names_of(tuple: &[Option<Name>]) -> NameSet {
    tuple.iter().flatten().copied().collect()
}

fn extends(total: &[Option<Name>], partial: &[Option<Name>]) -> bool {
    total.len() == partial.len() && partial.iter().zip(total).all(|(p, t)| p.is_none() || p == t)
}

struct Growing {
    automaton: SAutomaton,
    index: HashMap<StateKey, StateId>,
    queue: VecDeque<StateId>,
}

impl Growing {
    fn new(pool: NameSet, orbits: Vec<Orbit>) -> Self {
        Growing {
            automaton: SAutomaton {
                pool,
                orbits,
                states: Vec::new(),
                initial: 0,
                finals: BTreeSet::new(),
                transitions: BTreeSet::new(),
                flags: Flags::default(),
            },
            index: HashMap::new(),
            queue: VecDeque::new(),
        }
    }

    fn state(&mut self, key: StateKey) -> StateId {
        if let Some(&q) = self.index.get(&key) {
            return q;
        }
        let id = self.automaton.states.len();
        self.automaton.states.push(State { id, orbit: key.0, support: key.1.clone() });
        self.index.insert(key, id);
        self.queue.push_back(id);
        id
    }

    fn edge(&mut self, from: StateId, letter: Letter, key: StateKey) {
        let to = self.state(key);
        self.automaton.transitions.insert(Transition { from, label: Label::Letter(letter), to });
    }
}

/// The name-dropping modification, computed inside the pool.
///
/// States are the partial supports obtained by undefining positions of the
/// input's support tuples; only the part generated from the orbit of the
/// initial state is built. Its literal language is the α-closure (inside the
/// pool) of the input's literal language.
pub fn name_drop(a: &SAutomaton) -> Result<SAutomaton> {
    ensure_valid(a)?;
    let a = strengthen(a);
    let succ = a.successors();
    let mut by_orbit: Vec<Vec<StateId>> = vec![Vec::new(); a.orbits.len()];
    for s in &a.states {
        by_orbit[s.orbit].push(s.id);
    }
    let mut g = Growing::new(a.pool.clone(), a.orbits.clone());
    let initial_orbit = a.states[a.initial].orbit;
    for &q in &by_orbit[initial_orbit] {
        g.state(a.states[q].key());
    }
    let initial = g.index[&a.states[a.initial].key()];

    while let Some(q) = g.queue.pop_front() {
        let State { orbit, support: f, .. } = g.automaton.states[q].clone();
        let supp_f = names_of(&f);
        let extensions: Vec<StateId> = by_orbit[orbit]
            .iter()
            .copied()
            .filter(|&e| extends(&a.states[e].support, &f))
            .collect();
        if extensions.iter().any(|e| a.finals.contains(e)) {
            g.automaton.finals.insert(q);
        }
        for &e in &extensions {
            for &(label, e2) in &succ[e] {
                let Label::Letter(letter) = label else { continue };
                let target = &a.states[e2];
                for sub in sub_maps(&target.support) {
                    let supp_g = names_of(&sub);
                    match letter.kind {
                        LetterKind::Free | LetterKind::Dealloc => {
                            if supp_f.contains(&letter.name) && supp_g.is_subset(&supp_f) {
                                g.edge(q, letter, (target.orbit, sub));
                            }
                        }
                        LetterKind::Alloc => {
                            let b = letter.name;
                            for &x in &a.pool {
                                let renamed = if x == b {
                                    sub.clone()
                                } else if !supp_g.contains(&x) {
                                    sub.act(&Permutation::swap(x, b))
                                } else {
                                    continue;
                                };
                                if names_of(&renamed).iter().all(|y| *y == x || supp_f.contains(y)) {
                                    g.edge(q, Letter::alloc(x), (target.orbit, renamed));
                                }
                            }
                        }
                        LetterKind::Both => {
                            if supp_g.is_subset(&supp_f) {
                                for &x in a.pool.iter().filter(|x| !supp_g.contains(x)) {
                                    g.edge(q, Letter::both(x), (target.orbit, sub.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut out = g.automaton;
    out.initial = initial;
    let report = out.validate_nda();
    if !report.is_valid() {
        return Err(Error::Internal(format!("name-dropping output is not an NDA: {}", report.summary())));
    }
    out.flags = Flags { validated_nda: true, name_dropped: true, ..Flags::default() };
    Ok(out)
}

/// Keeps the states whose support lies in `sub_pool` and the transitions whose
/// label names lie in it.
pub fn restrict(a: &SAutomaton, sub_pool: &NameSet) -> Result<SAutomaton> {
    if !sub_pool.is_subset(&a.pool) {
        return Err(Error::precondition(format!(
            "{{{}}} is not contained in the pool {{{}}}",
            join_names(sub_pool),
            join_names(&a.pool)
        )));
    }
    if !a.supp(a.initial).is_subset(sub_pool) {
        return Err(Error::precondition(format!(
            "the initial support {{{}}} is not contained in {{{}}}",
            join_names(&a.supp(a.initial)),
            join_names(sub_pool)
        )));
    }
    let keep: Vec<bool> = a.states.iter().map(|s| s.supp().is_subset(sub_pool)).collect();
    let mut out = a.clone();
    out.transitions.retain(|t| t.label.name().is_none_or(|x| sub_pool.contains(&x)));
    out.pool = sub_pool.clone();
    let mut out = out.retain_states(&keep);
    out.flags.name_dropped_restriction = a.flags.name_dropped || a.flags.name_dropped_restriction;
    out.flags.name_dropped = false;
    Ok(out)
}

/// The disciplined restriction: letters are rewritten so that every name is
/// deallocated at its last use, following the exact evolution of supports.
///
/// With `Sq`, `Sq′` the supports of source and target, an allocation `<a`
/// (with `a ∉ Sq`) is kept if `Sq′ = Sq ∪ {a}` and becomes `<a>` if `Sq′ = Sq`;
/// a use `a` is kept if `Sq′ = Sq` and becomes `a>` if `Sq′ = Sq \ {a}`; `a>`
/// needs `Sq′ = Sq \ {a}` and `<a>` needs `a ∉ Sq = Sq′`. Final states are the
/// final states of empty support. The result is trimmed.
pub fn discipline(a: &SAutomaton) -> Result<SAutomaton> {
    if !a.flags.name_dropped_restriction {
        return Err(Error::precondition(
            "disciplining needs the restriction of a name-dropping modification",
        ));
    }
    let mut out = a.clone();
    out.transitions = BTreeSet::new();
    for t in &a.transitions {
        let Label::Letter(l) = t.label else { continue };
        let x = l.name;
        let sq = a.supp(t.from);
        let sp = a.supp(t.to);
        let mut with_x = sq.clone();
        with_x.insert(x);
        let mut without_x = sq.clone();
        without_x.remove(&x);
        let kind = match l.kind {
            LetterKind::Alloc if !sq.contains(&x) && sp == with_x => Some(LetterKind::Alloc),
            LetterKind::Alloc if !sq.contains(&x) && sp == sq => Some(LetterKind::Both),
            LetterKind::Free if sp == sq => Some(LetterKind::Free),
            LetterKind::Free if sp == without_x => Some(LetterKind::Dealloc),
            LetterKind::Dealloc if sp == without_x => Some(LetterKind::Dealloc),
            LetterKind::Both if !sq.contains(&x) && sp == sq => Some(LetterKind::Both),
            _ => None,
        };
        if let Some(kind) = kind {
            out.transitions.insert(Transition { label: Label::Letter(Letter::new(kind, x)), ..*t });
        }
    }
    out.finals = a.finals.iter().copied().filter(|&f| a.supp(f).is_empty()).collect();

    let initial_support = a.states[a.initial].support.clone();
    if names_of(&initial_support).is_empty() {
        out = out.trim();
    } else {
        // A fresh entry point offering every drop-variant of the initial state.
        let variants: Vec<StateId> = a
            .states
            .iter()
            .filter(|s| s.orbit == a.states[a.initial].orbit && extends(&initial_support, &s.support))
            .map(|s| s.id)
            .collect();
        let orbit = out.orbits.len();
        let defined: Vec<Option<Name>> = initial_support.iter().flatten().map(|&n| Some(n)).collect();
        out.orbits.push(Orbit { id: orbit, arity: defined.len() });
        let entry = out.states.len();
        out.states.push(State { id: entry, orbit, support: defined });
        for v in variants {
            out.transitions.insert(Transition { from: entry, label: Label::Eps, to: v });
        }
        out.initial = entry;
        out = out.eliminate_epsilon().trim();
    }
    out.flags = Flags { disciplined: true, ..Flags::default() };
    Ok(out)
}

/// Canonical pattern of a macrostate: member orbits with supports written as
/// positions in an ordering of the union of their supports, minimised over
/// all orderings.
type Pattern = Vec<(usize, Vec<Option<usize>>)>;

fn canonical_pattern(a: &SAutomaton, members: &BTreeSet<StateId>) -> (Pattern, Vec<Name>) {
    let union: Vec<Name> = members.iter().flat_map(|&q| a.supp(q)).collect::<BTreeSet<_>>().into_iter().collect();
    let mut best: Option<(Pattern, Vec<Name>)> = None;
    for order in union.iter().copied().permutations(union.len()) {
        let pos: HashMap<Name, usize> = order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut pattern: Pattern = members
            .iter()
            .map(|&q| {
                let s = &a.states[q];
                (s.orbit, s.support.iter().map(|n| n.map(|n| pos[&n])).collect())
            })
            .collect();
        pattern.sort();
        if best.as_ref().is_none_or(|(p, _)| pattern < *p) {
            best = Some((pattern, order));
        }
    }
    best.expect("at least one ordering")
}

/// The reachable subset construction, together with the member sets of the
/// macrostates (indexed like the output states).
pub fn powerset_with_members(a: &SAutomaton) -> (SAutomaton, Vec<BTreeSet<StateId>>) {
    let a = if a.has_epsilon() { a.eliminate_epsilon() } else { a.clone() };
    let succ = a.successors();
    let start: BTreeSet<StateId> = [a.initial].into();
    let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::from([(start.clone(), 0)]);
    let mut macros = vec![start];
    let mut transitions = BTreeSet::new();
    let mut next = 0;
    while next < macros.len() {
        let current = macros[next].clone();
        let mut by_letter: BTreeMap<Letter, BTreeSet<StateId>> = BTreeMap::new();
        for &q in &current {
            for &(l, p) in &succ[q] {
                if let Label::Letter(letter) = l {
                    by_letter.entry(letter).or_default().insert(p);
                }
            }
        }
        for (letter, target) in by_letter {
            let id = *ids.entry(target.clone()).or_insert_with(|| {
                macros.push(target);
                macros.len() - 1
            });
            transitions.insert(Transition { from: next, label: Label::Letter(letter), to: id });
        }
        next += 1;
    }

    let annotate = a.flags.disciplined;
    let mut orbits = Vec::new();
    let mut states = Vec::new();
    if annotate {
        let mut orbit_of: HashMap<Pattern, usize> = HashMap::new();
        for (id, members) in macros.iter().enumerate() {
            let (pattern, order) = canonical_pattern(&a, members);
            let orbit = *orbit_of.entry(pattern).or_insert_with(|| {
                orbits.push(Orbit { id: orbits.len(), arity: order.len() });
                orbits.len() - 1
            });
            states.push(State { id, orbit, support: order.into_iter().map(Some).collect() });
        }
    } else {
        orbits.push(Orbit { id: 0, arity: 0 });
        states = (0..macros.len()).map(|id| State { id, orbit: 0, support: Vec::new() }).collect();
    }
    let finals = macros
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().any(|q| a.finals.contains(q)))
        .map(|(id, _)| id)
        .collect();
    let out = SAutomaton {
        pool: a.pool.clone(),
        orbits,
        states,
        initial: 0,
        finals,
        transitions,
        flags: Flags { disciplined: a.flags.disciplined, orbit_annotated: annotate, ..Flags::default() },
    };
    (out, macros)
}

/// The reachable subset construction.
pub fn powerset(a: &SAutomaton) -> SAutomaton {
    powerset_with_members(a).0
}

/// A name relative to a support tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Slot {
    /// The name at this position of the source tuple.
    Pos(usize),
    /// A name outside the source tuple.
    Fresh,
}

/// A transition of an orbit, written relative to the source's support tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Shape {
    kind: LetterKind,
    name: Slot,
    target_orbit: usize,
    target: Vec<Slot>,
}

/// The nominalization of `d` over its own pool.
pub fn nominalize(d: &SAutomaton) -> Result<SAutomaton> {
    nominalize_over(d, &d.pool)
}

/// The nominalization over `pool`: each state's orbit is instantiated with
/// every injective support tuple over `pool`, transitions being transported
/// by the renaming between support tuples, with allocations and
/// allocate-and-deallocate letters closed under α-renaming.
///
/// Orbits and supports recorded by the powerset construction are used when
/// every state's support enumerates exactly its left-open names; otherwise
/// each state forms its own orbit with the ascending list of its left-open
/// names as support.
pub fn nominalize_over(d: &SAutomaton, pool: &NameSet) -> Result<SAutomaton> {
    let d = if d.has_epsilon() { d.eliminate_epsilon() } else { d.clone() };
    if !d.pool.is_subset(pool) {
        return Err(Error::precondition(format!(
            "the pool {{{}}} does not contain {{{}}}",
            join_names(pool),
            join_names(&d.pool)
        )));
    }
    let profile = d.state_profiles();
    let tagged = d.flags.orbit_annotated && d.states.iter().all(|s| s.is_total() && s.supp() == profile.lo[s.id]);
    let (orbit_arity, orbit_of, tuples): (Vec<usize>, Vec<usize>, Vec<Vec<Name>>) = if tagged {
        (
            d.orbits.iter().map(|o| o.arity).collect(),
            d.states.iter().map(|s| s.orbit).collect(),
            d.states.iter().map(|s| s.support.iter().flatten().copied().collect()).collect(),
        )
    } else {
        let tuples: Vec<Vec<Name>> = profile.lo.iter().map(|lo| lo.iter().copied().collect()).collect();
        (tuples.iter().map(Vec::len).collect(), (0..d.states.len()).collect(), tuples)
    };

    // Shapes of every orbit, collected from all of its states.
    let mut shapes: Vec<BTreeSet<Shape>> = vec![BTreeSet::new(); orbit_arity.len()];
    let mut final_orbits = BTreeSet::new();
    for s in &d.states {
        if d.finals.contains(&s.id) {
            final_orbits.insert(orbit_of[s.id]);
        }
    }
    for t in &d.transitions {
        let Label::Letter(l) = t.label else { continue };
        let source = &tuples[t.from];
        let slot = |n: Name| source.iter().position(|&x| x == n).map_or(Slot::Fresh, Slot::Pos);
        let target: Vec<Slot> = tuples[t.to]
            .iter()
            .map(|&n| if l.kind == LetterKind::Alloc && n == l.name { Slot::Fresh } else { slot(n) })
            .collect();
        let name = if l.kind == LetterKind::Alloc { Slot::Fresh } else { slot(l.name) };
        if matches!(l.kind, LetterKind::Free | LetterKind::Dealloc) && name == Slot::Fresh {
            return Err(Error::precondition(format!("transition on {l} uses a name that is not left-open")));
        }
        if l.kind != LetterKind::Alloc && target.contains(&Slot::Fresh) {
            return Err(Error::precondition(format!("transition on {l} introduces a name without a binder")));
        }
        shapes[orbit_of[t.from]].insert(Shape { kind: l.kind, name, target_orbit: orbit_of[t.to], target });
    }

    // Orbits reachable from the initial one.
    let initial_orbit = orbit_of[d.initial];
    let mut live = vec![false; orbit_arity.len()];
    let mut queue = VecDeque::from([initial_orbit]);
    live[initial_orbit] = true;
    while let Some(o) = queue.pop_front() {
        for s in &shapes[o] {
            if !live[s.target_orbit] {
                live[s.target_orbit] = true;
                queue.push_back(s.target_orbit);
            }
        }
    }
    let renumber: Vec<Option<usize>> = live
        .iter()
        .scan(0, |next, &l| {
            Some(l.then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect();

    let mut out = SAutomaton {
        pool: pool.clone(),
        orbits: Vec::new(),
        states: Vec::new(),
        initial: 0,
        finals: BTreeSet::new(),
        transitions: BTreeSet::new(),
        flags: Flags::default(),
    };
    let mut index: HashMap<(usize, Vec<Name>), StateId> = HashMap::new();
    let names: Vec<Name> = pool.iter().copied().collect();
    for (o, &arity) in orbit_arity.iter().enumerate() {
        let Some(new_orbit) = renumber[o] else { continue };
        out.orbits.push(Orbit { id: new_orbit, arity });
        for tuple in names.iter().copied().permutations(arity) {
            let id = out.states.len();
            out.states.push(State { id, orbit: new_orbit, support: tuple.iter().map(|&n| Some(n)).collect() });
            if final_orbits.contains(&o) {
                out.finals.insert(id);
            }
            index.insert((o, tuple), id);
        }
    }

    for (&(o, ref tuple), &from) in &index {
        for shape in &shapes[o] {
            let mapped = |slot: Slot, fresh: Option<Name>| match slot {
                Slot::Pos(i) => tuple[i],
                Slot::Fresh => fresh.expect("fresh slot is bound"),
            };
            let mut add = |letter: Letter, target: Vec<Name>| {
                let to = index[&(shape.target_orbit, target)];
                out.transitions.insert(Transition { from, label: Label::Letter(letter), to });
            };
            match (shape.kind, shape.name) {
                (LetterKind::Alloc, _) => {
                    let others: NameSet = shape
                        .target
                        .iter()
                        .filter(|s| **s != Slot::Fresh)
                        .map(|&s| mapped(s, None))
                        .collect();
                    for &b in names.iter().filter(|b| !others.contains(b)) {
                        let target = shape.target.iter().map(|&s| mapped(s, Some(b))).collect();
                        add(Letter::alloc(b), target);
                    }
                }
                (LetterKind::Both, Slot::Fresh) => {
                    let target: Vec<Name> = shape.target.iter().map(|&s| mapped(s, None)).collect();
                    for &b in names.iter().filter(|b| !tuple.contains(b)) {
                        add(Letter::both(b), target.clone());
                    }
                }
                (kind, slot) => {
                    let target = shape.target.iter().map(|&s| mapped(s, None)).collect();
                    add(Letter::new(kind, mapped(slot, None)), target);
                }
            }
        }
    }

    out.initial = index[&(initial_orbit, tuples[d.initial].clone())];
    out.flags.disciplined = d.flags.disciplined;
    out.flags.validated_nda = out.validate_nda().is_valid();
    Ok(out)
}

/// State and transition counts of one pipeline stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    /// Stage name.
    pub stage: String,
    /// Number of states.
    pub states: usize,
    /// Number of transitions.
    pub transitions: usize,
}

/// What the determinization pipeline did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    /// Stages in pipeline order.
    pub stages: Vec<StageSummary>,
    /// The sub-pool used for the restriction.
    pub restriction_pool: Vec<Name>,
    /// Degree of the input automaton.
    pub input_degree: usize,
    /// Degree of the name-dropping modification.
    pub name_dropped_degree: usize,
    /// Whether the output passed the post-checks.
    pub deterministic: bool,
}

/// Every intermediate automaton of the pipeline.
#[derive(Clone, Debug)]
pub struct Pipeline {
    /// The validated input.
    pub input: SAutomaton,
    /// Its name-dropping modification.
    pub name_dropped: SAutomaton,
    /// The restriction to the chosen sub-pool.
    pub restricted: SAutomaton,
    /// The disciplined restriction.
    pub disciplined: SAutomaton,
    /// Its powerset automaton.
    pub powerset: SAutomaton,
    /// The nominalized powerset automaton.
    pub output: SAutomaton,
    /// Summary.
    pub report: PipelineReport,
}

impl Pipeline {
    /// `(stage name, automaton)` in pipeline order.
    pub fn stages(&self) -> Vec<(&'static str, &SAutomaton)> {
        vec![
            ("input", &self.input),
            ("namedrop", &self.name_dropped),
            ("restrict", &self.restricted),
            ("discipline", &self.disciplined),
            ("powerset", &self.powerset),
            ("nominalize", &self.output),
        ]
    }
}

/// The pool for the restriction step: the initial support plus the smallest
/// further names, `degree + 1` names in total.
pub fn restriction_pool(a: &SAutomaton, degree: usize) -> Result<NameSet> {
    let mut s = a.supp(a.initial);
    let needed = (degree + 1).max(s.len());
    for &x in &a.pool {
        if s.len() >= needed {
            break;
        }
        s.insert(x);
    }
    if s.len() < needed {
        return Err(Error::PoolTooSmall(format!(
            "determinization needs {needed} names but the pool has {}",
            a.pool.len()
        )));
    }
    Ok(s)
}

/// Runs name dropping, restriction, disciplining, the powerset construction
/// and nominalization, keeping every stage.
///
/// The initial state must have empty support: every state of the result
/// accepts only words whose left-open names are exactly its support, and its
/// accepting states have empty support, so names free in the input's initial
/// state could not be handled.
pub fn determinize_pipeline(a: &SAutomaton) -> Result<Pipeline> {
    ensure_valid(a)?;
    let initial_support = a.supp(a.initial);
    if !initial_support.is_empty() {
        return Err(Error::precondition(format!(
            "determinization needs an initial state of empty support, not {{{}}}",
            join_names(&initial_support)
        )));
    }
    let mut input = a.clone();
    input.flags.validated_nda = true;
    let name_dropped = name_drop(&input)?;
    let degree = name_dropped.degree();
    let sub_pool = restriction_pool(&name_dropped, degree)?;
    let restricted = restrict(&name_dropped, &sub_pool)?;
    let disciplined = discipline(&restricted)?;
    let powerset = powerset(&disciplined);
    let output = nominalize_over(&powerset, &input.pool)?;
    let deterministic = output.flags.validated_nda && output.is_deterministic();
    let summary = |stage: &str, x: &SAutomaton| StageSummary {
        stage: stage.to_string(),
        states: x.num_states(),
        transitions: x.num_transitions(),
    };
    let report = PipelineReport {
        stages: vec![
            summary("input", &input),
            summary("namedrop", &name_dropped),
            summary("restrict", &restricted),
            summary("discipline", &disciplined),
            summary("powerset", &powerset),
            summary("nominalize", &output),
        ],
        restriction_pool: sub_pool.iter().copied().collect(),
        input_degree: input.degree(),
        name_dropped_degree: degree,
        deterministic,
    };
    Ok(Pipeline { input, name_dropped, restricted, disciplined, powerset, output, report })
}

/// A deterministic deallocation automaton whose data language is the local
/// freshness semantics of `a`, which must have an initial state of empty
/// support (see [`determinize_pipeline`]).
pub fn determinize(a: &SAutomaton) -> Result<(SAutomaton, PipelineReport)> {
    let pipeline = determinize_pipeline(a)?;
    if !pipeline.report.deterministic {
        let reason = if pipeline.output.flags.validated_nda {
            "the nominalized powerset automaton is not deterministic".to_string()
        } else {
            format!("the nominalized powerset automaton is not an NDA: {}", pipeline.output.validate_nda().summary())
        };
        return Err(Error::Internal(reason));
    }
    Ok((pipeline.output, pipeline.report))
}
