//! Languages of data words with explicit allocation and deallocation binders.
//!
//! * [`names`] — names, permutations and fresh-name supply;
//! * [`words`] — the binder alphabet, rc/lo/lc, right-non-shadowing words,
//!   α-equivalence, discipline and debracketing;
//! * [`automaton`] — finite automata over a name pool with validation,
//!   ε-elimination, state profiles, runs and enumeration;
//! * [`expressions`] — regular deallocation expressions and both directions of
//!   the Kleene correspondence;
//! * [`constructions`] — name dropping, restriction, disciplining, powerset,
//!   nominalization and determinization;
//! * [`semantics`] — bounded languages, α-closure, local freshness and
//!   language comparison;
//! * [`cli`] — the `nda` command-line front end.

pub mod automaton;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod expressions;
pub mod fixtures;
pub mod names;
pub mod semantics;
pub mod words;

pub use automaton::{Label, SAutomaton, State, StateId, Transition};
pub use error::{Error, ErrorKind, Result};
pub use names::{Name, NameSet, Permutation};
pub use words::{Letter, LetterKind, Profile, Word};
