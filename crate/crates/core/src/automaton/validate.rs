//! Validation of the conditions on deallocation automata: equivariance inside
//! the pool, left α-invariance, name erasure and the support evolution along
//! transitions.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{Label, SAutomaton, StateKey, Transition};
use crate::names::{generating_transpositions, Nominal, Permutation};
use crate::words::LetterKind;

/// The class of a violated condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Malformed state, label or reference.
    Structure,
    /// Two states share orbit and support.
    DuplicateState,
    /// An ε transition is present.
    Epsilon,
    /// The automaton is not closed under some pool permutation.
    Equivariance,
    /// A renamed binder transition is missing.
    LeftAlphaInvariance,
    /// A deallocated name survives in the target support.
    NameErasure,
    /// The support does not evolve as required along a transition.
    Support,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            ViolationKind::Structure => "structure",
            ViolationKind::DuplicateState => "duplicate-state",
            ViolationKind::Epsilon => "epsilon",
            ViolationKind::Equivariance => "equivariance",
            ViolationKind::LeftAlphaInvariance => "left-alpha-invariance",
            ViolationKind::NameErasure => "name-erasure",
            ViolationKind::Support => "support",
        };
        f.write_str(text)
    }
}

/// One violated condition with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Which condition failed.
    pub kind: ViolationKind,
    /// Human-readable witness (offending transition, state or permutation).
    pub witness: String,
}

/// All violations found by [`SAutomaton::validate_nda`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Whether no violation was found.
    pub valid: bool,
    /// The violations, in discovery order.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Whether the automaton passed.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether some violation has the given kind.
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// One line per violation (at most ten).
    pub fn summary(&self) -> String {
        let mut lines: Vec<String> = self
            .violations
            .iter()
            .take(10)
            .map(|v| format!("{}: {}", v.kind, v.witness))
            .collect();
        if self.violations.len() > 10 {
            lines.push(format!("… and {} more", self.violations.len() - 10));
        }
        lines.join("; ")
    }
}

fn transition_text(a: &SAutomaton, t: &Transition) -> String {
    format!(
        "{} --{}--> {}",
        a.states[t.from].display_label(),
        t.label,
        a.states[t.to].display_label()
    )
}

pub(super) fn validate(a: &SAutomaton) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |kind, witness: String| violations.push(Violation { kind, witness });

    // Structure: references, arities, injectivity, names inside the pool.
    let n = a.states.len();
    let mut structural = false;
    if a.initial >= n {
        push(ViolationKind::Structure, format!("initial state {} does not exist", a.initial));
        structural = true;
    }
    for &f in &a.finals {
        if f >= n {
            push(ViolationKind::Structure, format!("final state {f} does not exist"));
            structural = true;
        }
    }
    for s in &a.states {
        let Some(orbit) = a.orbits.get(s.orbit) else {
            push(ViolationKind::Structure, format!("state {} refers to a missing orbit", s.id));
            structural = true;
            continue;
        };
        if orbit.arity != s.support.len() {
            push(
                ViolationKind::Structure,
                format!("state {} has support length {} in an orbit of arity {}", s.display_label(), s.support.len(), orbit.arity),
            );
            structural = true;
        }
        let names: Vec<_> = s.support.iter().flatten().collect();
        if names.len() != s.supp().len() {
            push(ViolationKind::Structure, format!("state {} has a non-injective support", s.display_label()));
        }
        if let Some(x) = names.iter().find(|x| !a.pool.contains(x)) {
            push(ViolationKind::Structure, format!("state {} uses {x} outside the pool", s.display_label()));
        }
    }
    for t in &a.transitions {
        if t.from >= n || t.to >= n {
            push(ViolationKind::Structure, format!("transition {:?} refers to a missing state", t));
            structural = true;
        } else if let Some(x) = t.label.name().filter(|x| !a.pool.contains(x)) {
            push(ViolationKind::Structure, format!("label of {} uses {x} outside the pool", transition_text(a, t)));
        }
    }
    if structural {
        return ValidationReport { valid: false, violations };
    }

    let index = a.state_index();
    if index.len() != n {
        let mut seen = HashSet::new();
        for s in &a.states {
            if !seen.insert(s.key()) {
                push(ViolationKind::DuplicateState, format!("state {} repeats an earlier state", s.display_label()));
            }
        }
    }

    for t in &a.transitions {
        if t.label == Label::Eps {
            push(ViolationKind::Epsilon, transition_text(a, t));
        }
    }

    // Equivariance under generating transpositions of the pool.
    let keys: HashSet<StateKey> = index.keys().cloned().collect();
    let act_key = |pi: &Permutation, key: &StateKey| (key.0, key.1.act(pi));
    for pi in generating_transpositions(&a.pool) {
        for s in &a.states {
            if !keys.contains(&act_key(&pi, &s.key())) {
                push(ViolationKind::Equivariance, format!("{pi}·{} is not a state", s.display_label()));
            }
        }
        for &f in &a.finals {
            let image = act_key(&pi, &a.states[f].key());
            if let Some(g) = index.get(&image) {
                if !a.finals.contains(g) {
                    push(ViolationKind::Equivariance, format!("{pi}·{} is not final", a.states[f].display_label()));
                }
            }
        }
        for t in &a.transitions {
            let from = index.get(&act_key(&pi, &a.states[t.from].key()));
            let to = index.get(&act_key(&pi, &a.states[t.to].key()));
            if let (Some(&from), Some(&to)) = (from, to) {
                let image = Transition { from, label: t.label.act(&pi), to };
                if !a.transitions.contains(&image) {
                    push(ViolationKind::Equivariance, format!("{pi}·({}) is missing", transition_text(a, t)));
                }
            }
        }
    }

    for t in &a.transitions {
        let Label::Letter(l) = t.label else { continue };
        let x = l.name;
        let sq = a.supp(t.from);
        let sp = a.supp(t.to);
        let text = || transition_text(a, t);

        // Left α-invariance inside the pool.
        if l.kind.is_binder() {
            for &b in a.pool.iter().filter(|b| **b != x && !sp.contains(b)) {
                let (label, target) = if l.kind == LetterKind::Alloc {
                    let pi = Permutation::swap(x, b);
                    (l.with_name(b), act_key(&pi, &a.states[t.to].key()))
                } else {
                    (l.with_name(b), a.states[t.to].key())
                };
                let present = index
                    .get(&target)
                    .is_some_and(|&to| a.transitions.contains(&Transition { from: t.from, label: Label::Letter(label), to }));
                if !present {
                    push(ViolationKind::LeftAlphaInvariance, format!("{} requires the {label} variant", text()));
                }
            }
        }

        // Name erasure.
        if l.kind.is_closing() && sp.contains(&x) {
            push(ViolationKind::NameErasure, format!("{} keeps {x} in the target support", text()));
        }

        // Support evolution.
        let ok = match l.kind {
            LetterKind::Free => sq.contains(&x) && sp.is_subset(&sq),
            LetterKind::Alloc => sp.iter().all(|y| *y == x || sq.contains(y)),
            LetterKind::Dealloc => sq.contains(&x) && sp.iter().all(|y| *y != x && sq.contains(y)),
            LetterKind::Both => sp.is_subset(&sq),
        };
        if !ok {
            push(ViolationKind::Support, format!("{} violates the support evolution", text()));
        }
    }

    ValidationReport { valid: violations.is_empty(), violations }
}
