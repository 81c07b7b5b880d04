//! Flat renderings of a transition tree for external tools.

use std::fmt::Write as _;

use serde::Serialize;

use crate::transition::{shape_of_code, TransitionNode};

/// One node of a flattened tree. Ids are assigned in preorder from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeRecord {
    pub id: usize,
    pub word: String,
    pub children: Vec<usize>,
    pub leaf_shape: Option<Vec<usize>>,
}

/// Preorder list of nodes; the root has id 0.
pub fn flatten(root: &TransitionNode) -> Vec<NodeRecord> {
    let mut out = Vec::with_capacity(root.node_count());
    push(root, &mut out);
    out
}

fn push(node: &TransitionNode, out: &mut Vec<NodeRecord>) -> usize {
    let id = out.len();
    out.push(NodeRecord {
        id,
        word: node.perm.to_string(),
        children: Vec::new(),
        leaf_shape: node
            .is_leaf()
            .then(|| shape_of_code(&node.perm).parts().to_vec()),
    });
    let ids: Vec<usize> = node.children.iter().map(|c| push(c, out)).collect();
    out[id].children = ids;
    id
}

/// Graphviz source for the tree. Leaves are boxed and labelled with their
/// shape.
pub fn to_dot(root: &TransitionNode) -> String {
    let mut s = String::from("digraph transition {\n  node [fontname=\"monospace\"];\n");
    for rec in flatten(root) {
        match &rec.leaf_shape {
            Some(shape) => {
                let parts: Vec<String> = shape.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(
                    s,
                    "  n{} [label=\"{}\\n({})\", shape=box];",
                    rec.id,
                    rec.word,
                    parts.join(",")
                );
            }
            None => {
                let _ = writeln!(s, "  n{} [label=\"{}\"];", rec.id, rec.word);
            }
        }
        for c in rec.children {
            let _ = writeln!(s, "  n{} -> n{};", rec.id, c);
        }
    }
    s.push_str("}\n");
    s
}
