//! Graphviz export.

use std::fmt::Write;

use super::SAutomaton;

pub(super) fn to_dot(a: &SAutomaton) -> String {
    let mut out = String::new();
    out.push_str("digraph nda {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  __start [shape=point];\n");
    for s in &a.states {
        let shape = if a.finals.contains(&s.id) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{} [label=\"{}\", shape={shape}];", s.id, escape(&s.display_label()));
    }
    let _ = writeln!(out, "  __start -> q{};", a.initial);
    for t in &a.transitions {
        let _ = writeln!(out, "  q{} -> q{} [label=\"{}\"];", t.from, t.to, escape(&t.label.to_string()));
    }
    out.push_str("}\n");
    out
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn dot_lists_states_and_edges() {
        let dot = fixtures::ndalang().to_dot();
        assert!(dot.starts_with("digraph nda {"));
        assert!(dot.contains("label=\"q0()\""));
        assert!(dot.contains("[label=\"<a\"]"));
        assert!(dot.contains("doublecircle"));
    }
}
