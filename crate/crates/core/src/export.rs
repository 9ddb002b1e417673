//! DOT and JSON renderings of trees and semilattices. Vertices appear by
//! their 1-based ids.

use serde_json::{json, Value};

use crate::analysis::layout::LayeredLayout;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::semilattice::{Semilattice, RECOMPOSITION_RULE};
use crate::search::topdown::DecompositionTree;

#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    /// Nodes numbered in pre-order, as in [`crate::analysis::layout_tree`].
    Tree(&'a DecompositionTree),
    Semilattice(&'a Semilattice),
}

fn id_list(g: &Graph, vs: &[usize]) -> String {
    vs.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>().join(" ")
}

/// One node per structure node, one rank per layout level in layout order.
/// Output depends only on the inputs.
pub fn export_dot(g: &Graph, structure: Structure<'_>, layout: &LayeredLayout) -> Result<String> {
    let (sets, arcs, header): (Vec<&[usize]>, Vec<(usize, usize)>, &str) = match structure {
        Structure::Tree(t) => {
            let walk = t.walk();
            let sets = walk.iter().map(|w| w.1.set.as_slice()).collect();
            (sets, layout.arcs.clone(), "  rankdir=TB;\n")
        }
        Structure::Semilattice(s) => {
            let sets = s.nodes.iter().map(|n| n.members.as_slice()).collect();
            (sets, s.arcs.clone(), "  rankdir=BT;\n")
        }
    };
    let mut placed: Vec<usize> = layout.levels.iter().flatten().copied().collect();
    placed.sort_unstable();
    let mut layout_arcs = layout.arcs.clone();
    layout_arcs.sort_unstable();
    let mut own_arcs = arcs.clone();
    own_arcs.sort_unstable();
    if placed != (0..sets.len()).collect::<Vec<_>>() || layout_arcs != own_arcs {
        return Err(Error::InvalidArgument("layout does not belong to this structure".into()));
    }
    let mut out = String::from("digraph hidecs {\n");
    if let Structure::Semilattice(_) = structure {
        out.push_str(&format!("  // recomposition: {RECOMPOSITION_RULE}\n"));
    }
    out.push_str(header);
    out.push_str("  node [shape=box];\n");
    for level in &layout.levels {
        for &n in level {
            out.push_str(&format!("  n{n} [label=\"{}\"];\n", id_list(g, sets[n])));
        }
    }
    for level in &layout.levels {
        let names: Vec<String> = level.iter().map(|n| format!("n{n};")).collect();
        out.push_str(&format!("  {{ rank=same; {} }}\n", names.join(" ")));
    }
    for (a, b) in own_arcs {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Nested `{"ids": [...], "value": x | null, "children": [...]}`.
pub fn tree_to_json(g: &Graph, t: &DecompositionTree) -> Value {
    let ids: Vec<usize> = t.set.iter().map(|&v| g.id(v)).collect();
    match t.children() {
        Some(c) => json!({
            "ids": ids,
            "value": t.value(),
            "children": [tree_to_json(g, &c[0]), tree_to_json(g, &c[1])],
        }),
        None => json!({ "ids": ids, "value": null, "children": [] }),
    }
}

/// `{"rule": .., "nodes": [{"id", "level", "ids"}], "arcs": [{"child", "parent"}]}`.
pub fn semilattice_to_json(g: &Graph, s: &Semilattice) -> Value {
    let nodes: Vec<Value> = s
        .nodes
        .iter()
        .map(|n| json!({ "id": n.id, "level": n.level, "ids": n.members.iter().map(|&v| g.id(v)).collect::<Vec<_>>() }))
        .collect();
    let arcs: Vec<Value> = s.arcs.iter().map(|&(c, p)| json!({ "child": c, "parent": p })).collect();
    json!({ "rule": RECOMPOSITION_RULE, "nodes": nodes, "arcs": arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{layout_layers, layout_tree};
    use crate::search::recompose_semilattice;

    #[test]
    fn single_leaf_tree() {
        let g = Graph::from_links(3, []).unwrap();
        let t = DecompositionTree::leaf(vec![0, 1, 2]);
        let dot = export_dot(&g, Structure::Tree(&t), &layout_tree(&t)).unwrap();
        assert_eq!(
            dot,
            "digraph hidecs {\n  rankdir=TB;\n  node [shape=box];\n  n0 [label=\"1 2 3\"];\n  { rank=same; n0; }\n}\n"
        );
        assert_eq!(tree_to_json(&g, &t), json!({ "ids": [1, 2, 3], "value": null, "children": [] }));
    }

    #[test]
    fn disjoint_cliques_make_a_forest() {
        let g = Graph::from_links(4, [(0, 1), (2, 3)]).unwrap();
        let s = recompose_semilattice(&g, &[vec![0, 1], vec![2, 3]]).unwrap();
        let layout = layout_layers(&s);
        let dot = export_dot(&g, Structure::Semilattice(&s), &layout).unwrap();
        assert_eq!(dot.matches(" -> ").count(), s.arcs.len());
        assert!(dot.contains("n4 [label=\"1 2\"]"));
        assert_eq!(dot, export_dot(&g, Structure::Semilattice(&s), &layout).unwrap());
        let j = semilattice_to_json(&g, &s);
        assert_eq!(j["nodes"].as_array().unwrap().len(), 6);
        assert_eq!(j["rule"], "overlap-components");
    }

    #[test]
    fn mismatched_layout_rejected() {
        let g = Graph::from_links(4, [(0, 1), (2, 3)]).unwrap();
        let s = recompose_semilattice(&g, &[vec![0, 1], vec![2, 3]]).unwrap();
        let t = DecompositionTree::leaf(vec![0, 1]);
        assert!(export_dot(&g, Structure::Semilattice(&s), &layout_tree(&t)).is_err());
    }
}
