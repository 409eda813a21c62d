//! Small named automata used throughout the tests, the CLI and the documentation.
//!
//! Each fixture is given by a few representative transitions and closed under
//! pool permutations and left α-invariance.

use crate::automaton::{NdaBuilder, SAutomaton};

fn finish(b: &NdaBuilder) -> SAutomaton {
    b.build().expect("fixture is a valid deallocation automaton")
}

/// `i --<a--> q(a) --<b--> f(a,b)`: two allocations of distinct names, pool `{a,b,c}`.
pub fn ndalang() -> SAutomaton {
    let mut b = NdaBuilder::new("a,b,c");
    b.orbit("i", 0).orbit("q", 1).orbit("f", 2);
    let i = b.state("i", "");
    let q = b.state("q", "a");
    let f = b.state("f", "a b");
    b.initial(i).accept(f).edge(i, "<a", q).edge(q, "<b", f);
    finish(&b)
}

/// An automaton whose literal language is not α-closed: it accepts `<a a>`
/// from `q0(b)` but not `<b b>`.
pub fn counterexample() -> SAutomaton {
    let mut b = NdaBuilder::new("a,b,c");
    b.orbit("q0", 1).orbit("q1", 2).orbit("q2", 1).orbit("q3", 2);
    let q0 = b.state("q0", "b");
    let q1 = b.state("q1", "a b");
    let q2 = b.state("q2", "b");
    let q3 = b.state("q3", "a b");
    b.initial(q0)
        .accept(q2)
        .accept(q3)
        .edge(q0, "<a", q1)
        .edge(q1, "a>", q2)
        .edge(q1, "<c>", q3);
    finish(&b)
}

/// Data words whose last letter has occurred before, pool `{a,b,c}`.
pub fn last_letter() -> SAutomaton {
    let mut b = NdaBuilder::new("a,b,c");
    b.orbit("q1", 0).orbit("q2", 1).orbit("qf", 0);
    let q1 = b.state("q1", "");
    let q2 = b.state("q2", "a");
    let qf = b.state("qf", "");
    b.initial(q1)
        .accept(qf)
        .edge(q1, "<a>", q1)
        .edge(q1, "<a", q2)
        .edge(q2, "<b>", q2)
        .edge(q2, "a", qf);
    finish(&b)
}

/// Session logs with up to two users logged in at a time, an administrator
/// `c` acting freely and a blocked user `d`; pool `{a,b,c,d,e}`.
pub fn logging() -> SAutomaton {
    let mut b = NdaBuilder::new("a,b,c,d,e");
    b.orbit("s", 2).orbit("q1", 3).orbit("q2", 4);
    let s = b.state("s", "c d");
    let q1a = b.state("q1", "a c d");
    let q1b = b.state("q1", "b c d");
    let q2 = b.state("q2", "a b c d");
    b.initial(s).accept(s);
    b.edge(s, "<a", q1a).edge(q1a, "a>", s);
    b.edge(s, "<b", q1b).edge(q1b, "b>", s);
    b.edge(q1a, "<b", q2).edge(q2, "b>", q1a);
    b.edge(q1b, "<a", q2).edge(q2, "a>", q1b);
    b.edge(s, "c", s);
    b.edge(q1a, "a", q1a).edge(q1a, "c", q1a);
    b.edge(q1b, "b", q1b).edge(q1b, "c", q1b);
    b.edge(q2, "a", q2).edge(q2, "b", q2).edge(q2, "c", q2);
    b.edge(q2, "<e>", q2);
    let mut a = finish(&b);
    // Every `s` state is final, not just the orbit of the initial one.
    let s_orbit = a.states[a.initial].orbit;
    a.finals = a.states.iter().filter(|q| q.orbit == s_orbit).map(|q| q.id).collect();
    a
}

/// `i --<a--> q(a) --a>--> f` over `{a,b}`: the language of `<a a>` up to α.
pub fn alloc_dealloc() -> SAutomaton {
    let mut b = NdaBuilder::new("a,b");
    b.orbit("i", 0).orbit("q", 1).orbit("f", 0);
    let i = b.state("i", "");
    let q = b.state("q", "a");
    let f = b.state("f", "");
    b.initial(i).accept(f).edge(i, "<a", q).edge(q, "a>", f);
    finish(&b)
}

/// A single accepting state: the language `{ε}`.
pub fn epsilon_only() -> SAutomaton {
    SAutomaton::single_state(crate::names::first_names(2), true)
        .validated()
        .expect("valid")
}

/// A single non-accepting state: the empty language.
pub fn empty() -> SAutomaton {
    SAutomaton::single_state(crate::names::first_names(2), false)
        .validated()
        .expect("valid")
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, SAutomaton)> {
    vec![
        ("ndalang", ndalang()),
        ("counterexample", counterexample()),
        ("lastletter", last_letter()),
        ("logging", logging()),
        ("allocdealloc", alloc_dealloc()),
        ("epsilon", epsilon_only()),
        ("empty", empty()),
    ]
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<SAutomaton> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
