use std::fmt::Write;

use super::ARQuiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// DOT rendering: boxes for projectives, double circles for injectives,
/// dotted undirected edges between `z` and `τz`.
pub fn to_dot(ar: &ARQuiver) -> String {
    let mut out = String::from("digraph AR {\n");
    if !ar.nodes.is_empty() {
        out.push_str("  rankdir=LR;\n");
    }
    for node in &ar.nodes {
        let dims: Vec<String> = node.dims().0.iter().map(ToString::to_string).collect();
        let shape = match (node.is_projective, node.is_injective) {
            (true, true) => "box, peripheries=2",
            (true, false) => "box",
            (false, true) => "doublecircle",
            (false, false) => "ellipse",
        };
        let _ = writeln!(
            out,
            "  {} [label={}, shape={}];",
            quote(&node.id),
            quote(&format!("{}\\n({})", node.id, dims.join(","))),
            shape
        );
    }
    for a in &ar.arrows {
        let (s, t) = (quote(&ar.nodes[a.source].id), quote(&ar.nodes[a.target].id));
        if a.valuation == (1, 1) {
            let _ = writeln!(out, "  {s} -> {t};");
        } else {
            let _ = writeln!(out, "  {s} -> {t} [label=\"({},{})\"];", a.valuation.0, a.valuation.1);
        }
    }
    for (z, t) in ar.translate.iter().enumerate() {
        if let Some(x) = t {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dotted, dir=none, constraint=false];",
                quote(&ar.nodes[z].id),
                quote(&ar.nodes[*x].id)
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Field;
    use crate::knit::knit_preprojective;
    use crate::quiver::Family;

    #[test]
    fn a2_dot() {
        let q = Arc::new(Family::LinearA(2).build().unwrap());
        let ar = knit_preprojective(&q, Field::Rational, 10).unwrap();
        let dot = to_dot(&ar);
        assert_eq!(dot.matches("shape=").count(), 3);
        assert_eq!(dot.matches("style=dotted").count(), 1);
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("\"P1\" [label=\"P1\\n(1,1)\", shape=box, peripheries=2]"));
        assert_eq!(dot, to_dot(&ar));
    }

    #[test]
    fn kronecker_labels_and_empty() {
        let q = Arc::new(Family::Kronecker.build().unwrap());
        let mut ar = knit_preprojective(&q, Field::Rational, 3).unwrap();
        let dot = to_dot(&ar);
        let solid: Vec<&str> = dot
            .lines()
            .filter(|l| l.contains(" -> ") && !l.contains("dotted"))
            .collect();
        assert!(!solid.is_empty());
        assert!(solid.iter().all(|l| l.contains("label=\"(2,2)\"")));
        ar.nodes.clear();
        ar.arrows.clear();
        ar.translate.clear();
        assert_eq!(to_dot(&ar), "digraph AR {\n}\n");
    }
}
