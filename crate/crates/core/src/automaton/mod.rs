//! Finite automata over the binder alphabet restricted to a name pool.
//!
//! An [`SAutomaton`] is the concrete representation of an orbit-finite
//! deallocation automaton: its states carry an orbit tag and a (partial,
//! injective) support tuple over the pool, and its transitions are labelled by
//! letters whose names lie in the pool, or by ε.

mod builder;
mod dot;
mod json;
mod validate;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::names::{Name, NameSet, Nominal, Permutation};
use crate::words::{alpha_variants, is_rns, join_names, Letter, LetterKind, Word};

pub use builder::NdaBuilder;
pub use validate::{ValidationReport, Violation, ViolationKind};

/// Dense state index.
pub type StateId = usize;

/// A transition label: a letter of the binder alphabet or ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// The empty word.
    Eps,
    /// A letter.
    Letter(Letter),
}

impl Label {
    /// The letter, if this is not ε.
    pub fn letter(self) -> Option<Letter> {
        match self {
            Label::Eps => None,
            Label::Letter(l) => Some(l),
        }
    }

    /// The underlying name, if any.
    pub fn name(self) -> Option<Name> {
        self.letter().map(|l| l.name)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Eps => write!(f, "ε"),
            Label::Letter(l) => write!(f, "{l}"),
        }
    }
}

impl Nominal for Label {
    fn act(&self, pi: &Permutation) -> Self {
        match self {
            Label::Eps => Label::Eps,
            Label::Letter(l) => Label::Letter(l.act(pi)),
        }
    }
}

/// An orbit of states: all states of an orbit have support tuples of the same arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// The orbit's index.
    pub id: usize,
    /// Length of the support tuples.
    pub arity: usize,
}

/// A state: an orbit tag together with a partial injective support tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    /// Dense index of the state.
    pub id: StateId,
    /// Index of the orbit.
    pub orbit: usize,
    /// Support tuple; `None` marks an undefined position.
    pub support: Vec<Option<Name>>,
}

impl State {
    /// The names of the support tuple.
    pub fn supp(&self) -> NameSet {
        self.support.iter().flatten().copied().collect()
    }

    /// The key identifying the state up to its id.
    pub fn key(&self) -> StateKey {
        (self.orbit, self.support.clone())
    }

    /// Whether every position of the support is defined.
    pub fn is_total(&self) -> bool {
        self.support.iter().all(Option::is_some)
    }

    /// The state's label `q{id}(a,_,c)`.
    pub fn display_label(&self) -> String {
        format!("q{}({})", self.id, support_text(&self.support))
    }
}

/// `(orbit, support)` identifying a state.
pub type StateKey = (usize, Vec<Option<Name>>);

pub(crate) fn support_text(support: &[Option<Name>]) -> String {
    support
        .iter()
        .map(|n| n.map_or("_".to_string(), |a| a.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

/// A labelled transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    /// Source state.
    pub from: StateId,
    /// Label.
    pub label: Label,
    /// Target state.
    pub to: StateId,
}

/// Facts about an automaton that are tracked by the constructions.
///
/// Flags live only in memory; automata read from files start with the flags
/// implied by their contents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    /// The automaton may contain ε transitions.
    pub eps_allowed: bool,
    /// The automaton passed [`SAutomaton::validate_nda`].
    pub validated_nda: bool,
    /// The automaton is a name-dropping modification.
    pub name_dropped: bool,
    /// The automaton is a restriction of a name-dropping modification.
    pub name_dropped_restriction: bool,
    /// The automaton is the output of disciplining (or a powerset thereof).
    pub disciplined: bool,
    /// Orbits and supports record canonical macrostate patterns.
    pub orbit_annotated: bool,
}

/// Least right-closed and left-open name sets per state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StateProfile {
    /// `rc(q)` per state.
    pub rc: Vec<NameSet>,
    /// `lo(q)` per state.
    pub lo: Vec<NameSet>,
}

/// A finite automaton over the letters of a name pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SAutomaton {
    /// The name pool `S`.
    pub pool: NameSet,
    /// Orbits, indexed by `Orbit::id`.
    pub orbits: Vec<Orbit>,
    /// States, indexed by `State::id`.
    pub states: Vec<State>,
    /// Initial state.
    pub initial: StateId,
    /// Final states.
    pub finals: BTreeSet<StateId>,
    /// Transitions, sorted and deduplicated.
    pub transitions: BTreeSet<Transition>,
    /// Tracked facts.
    pub flags: Flags,
}

impl SAutomaton {
    /// An automaton with a single state of a nullary orbit and nothing else.
    pub fn single_state(pool: NameSet, accepting: bool) -> Self {
        SAutomaton {
            pool,
            orbits: vec![Orbit { id: 0, arity: 0 }],
            states: vec![State { id: 0, orbit: 0, support: Vec::new() }],
            initial: 0,
            finals: if accepting { [0].into() } else { BTreeSet::new() },
            transitions: BTreeSet::new(),
            flags: Flags::default(),
        }
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Number of transitions.
    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    /// Whether any transition is labelled ε.
    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.label == Label::Eps)
    }

    /// The support names of a state.
    pub fn supp(&self, q: StateId) -> NameSet {
        self.states[q].supp()
    }

    /// The degree: the largest support size of any state.
    pub fn degree(&self) -> usize {
        self.states.iter().map(|s| s.supp().len()).max().unwrap_or(0)
    }

    /// Map from state keys to ids.
    pub fn state_index(&self) -> HashMap<StateKey, StateId> {
        self.states.iter().map(|s| (s.key(), s.id)).collect()
    }

    /// Outgoing transitions per state.
    pub fn successors(&self) -> Vec<Vec<(Label, StateId)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            out[t.from].push((t.label, t.to));
        }
        out
    }

    /// Incoming transitions per state.
    pub fn predecessors(&self) -> Vec<Vec<(Label, StateId)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            out[t.to].push((t.label, t.from));
        }
        out
    }

    /// Adds a state (or finds an existing one with the same key).
    pub fn add_state(&mut self, orbit: usize, support: Vec<Option<Name>>) -> StateId {
        if let Some(s) = self.states.iter().find(|s| s.orbit == orbit && s.support == support) {
            return s.id;
        }
        let id = self.states.len();
        self.states.push(State { id, orbit, support });
        id
    }

    /// All names used by labels.
    pub fn label_names(&self) -> NameSet {
        self.transitions.iter().filter_map(|t| t.label.name()).collect()
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for &(_, p) in &succ[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let pred = self.predecessors();
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<StateId> = self.finals.iter().copied().collect();
        for &f in &self.finals {
            seen[f] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &(_, p) in &pred[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Keeps the states marked `keep` (the initial state is always kept) and
    /// renumbers densely in the original order. Unused orbits are kept.
    pub fn retain_states(&self, keep: &[bool]) -> SAutomaton {
        let mut map = vec![None; self.states.len()];
        let mut states = Vec::new();
        for s in &self.states {
            if keep[s.id] || s.id == self.initial {
                map[s.id] = Some(states.len());
                states.push(State { id: states.len(), ..s.clone() });
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter_map(|t| {
                Some(Transition { from: map[t.from]?, label: t.label, to: map[t.to]? })
            })
            .collect();
        SAutomaton {
            pool: self.pool.clone(),
            orbits: self.orbits.clone(),
            states,
            initial: map[self.initial].expect("initial state kept"),
            finals: self.finals.iter().filter_map(|&f| map[f]).collect(),
            transitions,
            flags: self.flags,
        }
    }

    /// Restricts to states that are reachable and co-reachable (plus the initial state).
    pub fn trim(&self) -> SAutomaton {
        let r = self.reachable();
        let c = self.coreachable();
        let keep: Vec<bool> = r.iter().zip(&c).map(|(x, y)| *x && *y).collect();
        self.retain_states(&keep)
    }

    /// The ε-closure of a set of states.
    pub fn eps_closure(&self, set: &BTreeSet<StateId>, succ: &[Vec<(Label, StateId)>]) -> BTreeSet<StateId> {
        let mut out = set.clone();
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(l, p) in &succ[q] {
                if l == Label::Eps && out.insert(p) {
                    stack.push(p);
                }
            }
        }
        out
    }

    /// Removes ε transitions by the ε-closure construction; the literal
    /// language is unchanged. ε-free automata are returned unchanged.
    pub fn eliminate_epsilon(&self) -> SAutomaton {
        if !self.has_epsilon() {
            let mut out = self.clone();
            out.flags.eps_allowed = false;
            return out;
        }
        let succ = self.successors();
        let mut transitions = BTreeSet::new();
        let mut finals = BTreeSet::new();
        for q in 0..self.states.len() {
            let closure = self.eps_closure(&[q].into(), &succ);
            if closure.iter().any(|p| self.finals.contains(p)) {
                finals.insert(q);
            }
            for &p in &closure {
                for &(l, r) in &succ[p] {
                    if l != Label::Eps {
                        transitions.insert(Transition { from: q, label: l, to: r });
                    }
                }
            }
        }
        let mut flags = self.flags;
        flags.eps_allowed = false;
        let full = SAutomaton { finals, transitions, flags, ..self.clone() };
        full.retain_states(&full.reachable())
    }

    /// Least `rc`/`lo` per state by chaotic worklist iteration over the
    /// transition clauses (ε transitions propagate both sets unchanged).
    pub fn state_profiles(&self) -> StateProfile {
        let n = self.states.len();
        let mut rc = vec![NameSet::new(); n];
        let mut lo = vec![NameSet::new(); n];
        let succ = self.successors();
        let pred = self.predecessors();
        let mut queue: VecDeque<Transition> = self.transitions.iter().copied().collect();
        let mut queued: BTreeSet<Transition> = self.transitions.clone();
        while let Some(t) = queue.pop_front() {
            queued.remove(&t);
            let (q, p) = (t.from, t.to);
            // Forward flow of rc from q to p, backward flow of lo from p to q.
            let mut rc_in: NameSet = rc[q].clone();
            let mut lo_in: NameSet = lo[p].clone();
            match t.label {
                Label::Eps => {}
                Label::Letter(l) => {
                    let a = l.name;
                    match l.kind {
                        LetterKind::Dealloc => {
                            rc_in.insert(a);
                            lo_in.insert(a);
                        }
                        LetterKind::Free => {
                            rc_in.remove(&a);
                            lo_in.insert(a);
                        }
                        LetterKind::Both => {
                            rc_in.insert(a);
                        }
                        LetterKind::Alloc => {
                            rc_in.remove(&a);
                            lo_in.remove(&a);
                        }
                    }
                }
            }
            let rc_grew = extend(&mut rc[p], rc_in);
            let lo_grew = extend(&mut lo[q], lo_in);
            if rc_grew {
                for &(label, r) in &succ[p] {
                    let next = Transition { from: p, label, to: r };
                    if queued.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            if lo_grew {
                for &(label, r) in &pred[q] {
                    let next = Transition { from: r, label, to: q };
                    if queued.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        StateProfile { rc, lo }
    }

    /// Whether the least profiles are disjoint at every state.
    pub fn is_dnfa(&self) -> bool {
        let p = self.state_profiles();
        p.rc.iter().zip(&p.lo).all(|(r, l)| r.is_disjoint(l))
    }

    fn check_pool(&self, w: &Word) -> Result<()> {
        if let Some(a) = w.names().into_iter().find(|a| !self.pool.contains(a)) {
            return Err(Error::NameOutsidePool { name: a.to_string(), pool: join_names(&self.pool) });
        }
        Ok(())
    }

    /// The set of states reached from the initial state by reading `w`.
    pub fn run_states(&self, w: &Word) -> BTreeSet<StateId> {
        let succ = self.successors();
        let mut cur = self.eps_closure(&[self.initial].into(), &succ);
        for &letter in w.letters() {
            let next: BTreeSet<StateId> = cur
                .iter()
                .flat_map(|&q| succ[q].iter())
                .filter(|(l, _)| *l == Label::Letter(letter))
                .map(|&(_, p)| p)
                .collect();
            cur = self.eps_closure(&next, &succ);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    /// Whether `w` has an accepting run.
    pub fn run_literal(&self, w: &Word) -> Result<bool> {
        self.check_pool(w)?;
        Ok(self.run_states(w).iter().any(|q| self.finals.contains(q)))
    }

    /// Whether some α-variant of `w` over the pool has an accepting run.
    pub fn accepts_alpha(&self, w: &Word) -> Result<bool> {
        if !is_rns(w) {
            return Err(Error::NotRns(w.to_string()));
        }
        let variants = alpha_variants(w, &self.pool);
        if variants.is_empty() {
            let rigid = crate::words::classify(w).lo;
            if let Some(a) = rigid.iter().find(|a| !self.pool.contains(a)) {
                return Err(Error::NameOutsidePool { name: a.to_string(), pool: join_names(&self.pool) });
            }
            return Err(Error::PoolTooSmall(format!(
                "no α-variant of `{w}` fits into the pool {{{}}}",
                join_names(&self.pool)
            )));
        }
        Ok(variants.iter().any(|v| self.run_states(v).iter().any(|q| self.finals.contains(q))))
    }

    /// All accepted words of length at most `maxlen`.
    pub fn enum_literal(&self, maxlen: usize) -> BTreeSet<Word> {
        let succ = self.successors();
        let live = self.coreachable();
        let mut out = BTreeSet::new();
        let start: BTreeSet<StateId> = self
            .eps_closure(&[self.initial].into(), &succ)
            .into_iter()
            .filter(|&q| live[q])
            .collect();
        if start.is_empty() {
            return out;
        }
        let mut layer = vec![(Word::empty(), start)];
        for depth in 0..=maxlen {
            let mut next_layer = Vec::new();
            for (w, set) in layer {
                if set.iter().any(|q| self.finals.contains(q)) {
                    out.insert(w.clone());
                }
                if depth == maxlen {
                    continue;
                }
                let mut by_letter: BTreeMap<Letter, BTreeSet<StateId>> = BTreeMap::new();
                for &q in &set {
                    for &(l, p) in &succ[q] {
                        if let Label::Letter(letter) = l {
                            if live[p] {
                                by_letter.entry(letter).or_default().insert(p);
                            }
                        }
                    }
                }
                for (letter, targets) in by_letter {
                    let closed: BTreeSet<StateId> = self
                        .eps_closure(&targets, &succ)
                        .into_iter()
                        .filter(|&q| live[q])
                        .collect();
                    next_layer.push((w.push(letter), closed));
                }
            }
            layer = next_layer;
        }
        out
    }

    /// Renames supports and labels by `pi`, which must map the pool onto itself.
    pub fn act(&self, pi: &Permutation) -> Result<SAutomaton> {
        if !pi.preserves(&self.pool) {
            return Err(Error::precondition(format!(
                "permutation {pi} does not preserve the pool {{{}}}",
                join_names(&self.pool)
            )));
        }
        let mut out = self.clone();
        for s in &mut out.states {
            s.support = s.support.act(pi);
        }
        out.transitions = self
            .transitions
            .iter()
            .map(|t| Transition { label: t.label.act(pi), ..*t })
            .collect();
        Ok(out)
    }

    /// Replaces `a>` by `a` and `<a>` by `<a`, giving an automaton without
    /// deallocation that has the same data language.
    pub fn to_rnna(&self) -> SAutomaton {
        let mut out = self.clone();
        out.transitions = self
            .transitions
            .iter()
            .map(|t| {
                let label = match t.label {
                    Label::Letter(l) => Label::Letter(Letter::new(
                        match l.kind {
                            LetterKind::Dealloc => LetterKind::Free,
                            LetterKind::Both => LetterKind::Alloc,
                            k => k,
                        },
                        l.name,
                    )),
                    Label::Eps => Label::Eps,
                };
                Transition { label, ..*t }
            })
            .collect();
        out.flags = Flags { eps_allowed: self.flags.eps_allowed, ..Flags::default() };
        out.flags.validated_nda = !out.has_epsilon() && out.validate_nda().is_valid();
        out
    }

    /// Whether every state has at most one successor per concrete free,
    /// allocating or deallocating label, and at most one successor across all
    /// `<·>` labels. Automata flagged as disciplined must moreover only
    /// allocate names that are left-open in the target.
    pub fn is_deterministic(&self) -> bool {
        if self.has_epsilon() {
            return false;
        }
        let mut concrete: HashMap<(StateId, Letter), StateId> = HashMap::new();
        let mut unknown: HashMap<StateId, StateId> = HashMap::new();
        for t in &self.transitions {
            let Label::Letter(l) = t.label else { continue };
            let previous = if l.kind == LetterKind::Both {
                unknown.insert(t.from, t.to)
            } else {
                concrete.insert((t.from, l), t.to)
            };
            if previous.is_some_and(|p| p != t.to) {
                return false;
            }
        }
        if self.flags.disciplined {
            let profile = self.state_profiles();
            let bad = self.transitions.iter().any(|t| {
                matches!(t.label, Label::Letter(l) if l.kind == LetterKind::Alloc
                    && !profile.lo[t.to].contains(&l.name))
            });
            if bad {
                return false;
            }
        }
        true
    }

    /// Checks the well-formedness conditions of a deallocation automaton.
    pub fn validate_nda(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// Validates and sets the `validated_nda` flag, failing with the list of violations.
    pub fn validated(mut self) -> Result<SAutomaton> {
        let report = self.validate_nda();
        if !report.is_valid() {
            return Err(Error::InvalidNda(report.summary()));
        }
        self.flags.validated_nda = true;
        Ok(self)
    }

    /// Closes states, finals and transitions under all permutations of the pool.
    pub fn close_equivariant(&mut self) {
        builder::close_equivariant(self);
    }

    /// Adds the transitions (and states) demanded by left α-invariance.
    pub fn saturate(&mut self) {
        builder::saturate(self);
    }

    /// Parses the JSON interchange format.
    pub fn from_json(text: &str) -> Result<SAutomaton> {
        json::from_json(text)
    }

    /// Serialises to the JSON interchange format.
    pub fn to_json(&self) -> String {
        json::to_json(self, false)
    }

    /// Serialises to indented JSON.
    pub fn to_json_pretty(&self) -> String {
        json::to_json(self, true)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        dot::to_dot(self)
    }
}

fn extend(target: &mut NameSet, source: NameSet) -> bool {
    let before = target.len();
    target.extend(source);
    target.len() != before
}
