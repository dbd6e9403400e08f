//! Graphviz DOT export.

use crate::dfa::Dfa;

/// Renders a DFA as a DOT digraph: one node per state, doubled circles for
/// final states, one edge per state pair carrying all its letters as a
/// merged comma-separated label. Node and edge order follow the state
/// numbering and alphabet order, so the output is diffable.
pub fn emit_dot(d: &Dfa) -> String {
    let mut out = String::new();
    out.push_str("digraph dfa {\n");
    out.push_str("    rankdir=LR;\n");
    out.push_str("    node [shape=point]; __start;\n");
    for q in 0..d.state_count() {
        let shape = if d.is_final(q) { "doublecircle" } else { "circle" };
        out.push_str(&format!("    {q} [shape={shape}];\n"));
    }
    out.push_str(&format!("    __start -> {};\n", d.start()));
    for q in 0..d.state_count() {
        // group letters by target, keeping alphabet order inside each label
        let mut targets: Vec<usize> = Vec::new();
        for j in 0..d.alphabet().len() {
            let t = d.step_idx(q, j);
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            let label: Vec<String> = d
                .alphabet()
                .letters()
                .iter()
                .enumerate()
                .filter(|(j, _)| d.step_idx(q, *j) == t)
                .map(|(_, c)| c.to_string())
                .collect();
            out.push_str(&format!(
                "    {q} -> {t} [label=\"{}\"];\n",
                label.join(",")
            ));
        }
    }
    out.push_str("}\n");
    out
}
