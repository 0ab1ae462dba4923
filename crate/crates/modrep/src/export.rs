//! Poset export: DOT digraphs with marker styling for the invariant and star
//! node classes, and a structured JSON document. Output is byte-stable for a
//! fixed scenario and seed.

use serde::Serialize;

use crate::error::Result;
use crate::stt::SttPoset;

#[derive(Serialize)]
pub struct PosetDocument {
    pub algebra: String,
    pub field: String,
    pub nodes: Vec<NodeDocument>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
pub struct NodeDocument {
    pub id: usize,
    pub summands: Vec<String>,
    pub proj_part: Vec<String>,
    pub markers: Vec<String>,
}

/// Marker sets per node, e.g. "invariant" / "star".
pub struct Markers {
    pub name: &'static str,
    pub flags: Vec<bool>,
}

pub fn poset_document(poset: &SttPoset, algebra_label: &str, markers: &[Markers]) -> Result<PosetDocument> {
    let ga = &poset.view.ga;
    let mut nodes = Vec::with_capacity(poset.node_count());
    for (i, node) in poset.nodes.iter().enumerate() {
        let summands: Vec<String> = node
            .pair
            .m
            .iter()
            .map(|&c| ga.class_info(c).display)
            .collect();
        let proj_part: Vec<String> = node
            .pair
            .p
            .iter()
            .map(|&c| ga.class_info(c).display)
            .collect();
        let markers: Vec<String> = markers
            .iter()
            .filter(|m| m.flags[i])
            .map(|m| m.name.to_string())
            .collect();
        nodes.push(NodeDocument { id: i, summands, proj_part, markers });
    }
    Ok(PosetDocument {
        algebra: algebra_label.to_string(),
        field: ga.field.header(),
        nodes,
        edges: poset.edges.iter().map(|&(a, b)| [a, b]).collect(),
    })
}

pub fn to_json(doc: &PosetDocument) -> String {
    serde_json::to_string_pretty(doc).expect("poset documents serialize cleanly")
}

/// DOT rendering; invariant nodes get a doubled border, star nodes a filled
/// background, so marked node classes stand out at a glance.
pub fn to_dot(doc: &PosetDocument) -> String {
    let mut out = String::new();
    out.push_str("digraph stt {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str(&format!("  label=\"stt poset of {} over {}\";\n", doc.algebra, doc.field));
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for node in &doc.nodes {
        let label = if node.summands.is_empty() {
            if node.proj_part.is_empty() {
                "0".to_string()
            } else {
                format!("0 | {}", node.proj_part.join("+"))
            }
        } else if node.proj_part.is_empty() {
            node.summands.join(" + ")
        } else {
            format!("{} | {}", node.summands.join(" + "), node.proj_part.join("+"))
        };
        let mut attrs = vec![format!("label=\"{}\"", label)];
        if node.markers.iter().any(|m| m == "invariant") {
            attrs.push("peripheries=2".into());
        }
        if node.markers.iter().any(|m| m == "star") {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgrey".into());
        }
        out.push_str(&format!("  n{} [{}];\n", node.id, attrs.join(", ")));
    }
    for e in &doc.edges {
        out.push_str(&format!("  n{} -> n{};\n", e[0], e[1]));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebra;
    use crate::field::Field;
    use crate::group::cyclic;
    use crate::rng::Rng;
    use crate::stt::{enumerate, AlgebraView, DEFAULT_NODE_CAP};

    #[test]
    fn export_is_stable() {
        let f = Field::new(2, 1).unwrap();
        let c2 = cyclic(2).unwrap();
        let ga = GroupAlgebra::new(&c2, &f, 3);
        let view = AlgebraView::full(&ga);
        let mut rng = Rng::new(3);
        let poset = enumerate(&view, DEFAULT_NODE_CAP, &mut rng).unwrap();
        let doc = poset_document(&poset, "kC2", &[]).unwrap();
        let dot1 = to_dot(&doc);
        let json1 = to_json(&doc);
        // regenerate from scratch
        let ga2 = GroupAlgebra::new(&c2, &f, 3);
        let view2 = AlgebraView::full(&ga2);
        let mut rng2 = Rng::new(3);
        let poset2 = enumerate(&view2, DEFAULT_NODE_CAP, &mut rng2).unwrap();
        let doc2 = poset_document(&poset2, "kC2", &[]).unwrap();
        assert_eq!(dot1, to_dot(&doc2));
        assert_eq!(json1, to_json(&doc2));
        assert!(dot1.contains("digraph"));
        assert!(json1.contains("\"edges\""));
    }
}
