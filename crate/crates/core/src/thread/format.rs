//! Text and DOT renderings of thread graphs.

use super::{Node, RegularThread};

/// One line per node: `id: S`, `id: D` or `id: act ? then : else`.
/// Node 0 is the root.
pub(super) fn to_text(t: &RegularThread) -> String {
    let mut out = String::new();
    for (id, node) in t.nodes().iter().enumerate() {
        let line = match node {
            Node::Stop => format!("{id}: S"),
            Node::Dead => format!("{id}: D"),
            Node::Branch { action, then, otherwise } => format!("{id}: {action} ? {then} : {otherwise}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub(super) fn to_dot(t: &RegularThread) -> String {
    let mut out = String::from("digraph thread {\n");
    for (id, node) in t.nodes().iter().enumerate() {
        let label = match node {
            Node::Stop => "S".to_string(),
            Node::Dead => "D".to_string(),
            Node::Branch { action, .. } => action.to_string().replace('"', "\\\""),
        };
        let shape = if matches!(node, Node::Branch { .. }) { "box" } else { "circle" };
        out.push_str(&format!("  n{id} [label=\"{label}\", shape={shape}];\n"));
        if let Node::Branch { then, otherwise, .. } = node {
            out.push_str(&format!("  n{id} -> n{then} [label=\"1\"];\n"));
            out.push_str(&format!("  n{id} -> n{otherwise} [label=\"0\", style=dashed];\n"));
        }
    }
    out.push_str("}\n");
    out
}
