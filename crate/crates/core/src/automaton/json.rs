//! The JSON interchange format.
//!
//! ```json
//! {"version":1, "pool":["a","b"], "orbits":[{"id":0,"arity":1}],
//!  "states":[{"id":0,"orbit":0,"support":["a"]}], "initial":0, "finals":[0],
//!  "transitions":[{"from":0,"label":{"kind":"free","name":"a"},"to":0}]}
//! ```
//!
//! Orbit and state ids may be arbitrary distinct integers on input; they are
//! renumbered densely in file order.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Flags, Label, Orbit, SAutomaton, State, Transition};
use crate::error::{Error, Result};
use crate::names::Name;
use crate::words::{Letter, LetterKind};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileJson {
    version: u32,
    pool: Vec<Name>,
    orbits: Vec<OrbitJson>,
    states: Vec<StateJson>,
    initial: u64,
    finals: Vec<u64>,
    transitions: Vec<TransitionJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitJson {
    id: u64,
    arity: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateJson {
    id: u64,
    orbit: u64,
    support: Vec<Option<Name>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionJson {
    from: u64,
    label: LabelJson,
    to: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelJson {
    kind: String,
    name: Option<Name>,
}

fn schema(message: impl Into<String>) -> Error {
    Error::Schema(message.into())
}

pub(super) fn from_json(text: &str) -> Result<SAutomaton> {
    let file: FileJson = serde_json::from_str(text).map_err(|e| {
        Error::Parse {
            input: "automaton JSON".to_string(),
            position: e.column(),
            message: format!("line {}: {e}", e.line()),
        }
    })?;
    if file.version != 1 {
        return Err(schema(format!("unsupported version {}", file.version)));
    }
    let pool: BTreeSet<Name> = file.pool.iter().copied().collect();
    if pool.len() != file.pool.len() {
        return Err(schema("pool lists a name twice"));
    }

    let mut orbit_ids = HashMap::new();
    let mut orbits = Vec::new();
    for o in &file.orbits {
        if orbit_ids.insert(o.id, orbits.len()).is_some() {
            return Err(schema(format!("orbit id {} is repeated", o.id)));
        }
        orbits.push(Orbit { id: orbits.len(), arity: o.arity });
    }

    let mut state_ids = HashMap::new();
    let mut states = Vec::new();
    for s in &file.states {
        let id = states.len();
        if state_ids.insert(s.id, id).is_some() {
            return Err(schema(format!("state id {} is repeated", s.id)));
        }
        let orbit = *orbit_ids
            .get(&s.orbit)
            .ok_or_else(|| schema(format!("state {} refers to unknown orbit {}", s.id, s.orbit)))?;
        if s.support.len() != orbits[orbit].arity {
            return Err(schema(format!(
                "state {} has {} support entries but orbit {} has arity {}",
                s.id,
                s.support.len(),
                s.orbit,
                orbits[orbit].arity
            )));
        }
        let defined: Vec<Name> = s.support.iter().flatten().copied().collect();
        if let Some(a) = defined.iter().find(|a| !pool.contains(a)) {
            return Err(schema(format!("state {} uses {a}, which is not in the pool", s.id)));
        }
        if defined.iter().collect::<BTreeSet<_>>().len() != defined.len() {
            return Err(schema(format!("state {} has a non-injective support", s.id)));
        }
        states.push(State { id, orbit, support: s.support.clone() });
    }

    let lookup = |id: u64, what: &str| {
        state_ids
            .get(&id)
            .copied()
            .ok_or_else(|| schema(format!("{what} refers to unknown state {id}")))
    };
    let initial = lookup(file.initial, "initial")?;
    let finals = file
        .finals
        .iter()
        .map(|&f| lookup(f, "finals"))
        .collect::<Result<BTreeSet<_>>>()?;
    let mut transitions = BTreeSet::new();
    for t in &file.transitions {
        let from = lookup(t.from, "transition")?;
        let to = lookup(t.to, "transition")?;
        let label = match (t.label.kind.as_str(), t.label.name) {
            ("eps", None) => Label::Eps,
            ("eps", Some(_)) => return Err(schema("an eps label must have a null name")),
            (kind, Some(name)) => {
                let kind = match kind {
                    "free" => LetterKind::Free,
                    "alloc" => LetterKind::Alloc,
                    "dealloc" => LetterKind::Dealloc,
                    "both" => LetterKind::Both,
                    other => return Err(schema(format!("unknown label kind `{other}`"))),
                };
                if !pool.contains(&name) {
                    return Err(schema(format!("label name {name} is not in the pool")));
                }
                Label::Letter(Letter::new(kind, name))
            }
            (kind, None) => return Err(schema(format!("a {kind} label needs a name"))),
        };
        transitions.insert(Transition { from, label, to });
    }

    let mut a = SAutomaton { pool, orbits, states, initial, finals, transitions, flags: Flags::default() };
    a.flags.eps_allowed = a.has_epsilon();
    Ok(a)
}

pub(super) fn to_json(a: &SAutomaton, pretty: bool) -> String {
    let file = FileJson {
        version: 1,
        pool: a.pool.iter().copied().collect(),
        orbits: a.orbits.iter().map(|o| OrbitJson { id: o.id as u64, arity: o.arity }).collect(),
        states: a
            .states
            .iter()
            .map(|s| StateJson { id: s.id as u64, orbit: s.orbit as u64, support: s.support.clone() })
            .collect(),
        initial: a.initial as u64,
        finals: a.finals.iter().map(|&f| f as u64).collect(),
        transitions: a
            .transitions
            .iter()
            .map(|t| TransitionJson {
                from: t.from as u64,
                label: match t.label {
                    Label::Eps => LabelJson { kind: "eps".to_string(), name: None },
                    Label::Letter(l) => LabelJson {
                        kind: match l.kind {
                            LetterKind::Free => "free",
                            LetterKind::Alloc => "alloc",
                            LetterKind::Dealloc => "dealloc",
                            LetterKind::Both => "both",
                        }
                        .to_string(),
                        name: Some(l.name),
                    },
                },
                to: t.to as u64,
            })
            .collect(),
    };
    if pretty {
        serde_json::to_string_pretty(&file).expect("serialisable")
    } else {
        serde_json::to_string(&file).expect("serialisable")
    }
}
