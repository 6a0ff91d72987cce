//! Graphviz output of Hasse diagrams.

use taxotopy::FinitePoset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A `digraph` with one node per element and one edge per cover, drawn bottom-up.
///
/// Quotient posets already carry class labels: a representative element
/// for constant classes and `a<b<c` for chain classes.
pub fn to_dot(name: &str, p: &FinitePoset) -> String {
    let mut out = format!(
        "digraph {} {{\n  rankdir=BT;\n  node [shape=plaintext];\n",
        quote(name)
    );
    for i in p.elements() {
        out.push_str(&format!("  n{i} [label={}];\n", quote(p.label(i))));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use taxotopy::catalog;

    #[test]
    fn diamond_has_four_nodes_and_four_edges() {
        let dot = to_dot("diamond", &catalog("diamond").unwrap());
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.starts_with("digraph \"diamond\" {"));
    }

    #[test]
    fn labels_are_escaped() {
        let p = FinitePoset::from_covers::<&str>(&["say \"hi\""], &[]).unwrap();
        assert!(to_dot("q", &p).contains("label=\"say \\\"hi\\\"\""));
    }
}
