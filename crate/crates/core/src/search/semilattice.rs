//! Overlapping recombination of cliques into a leveled structure.
//!
//! Level 0 holds one node per covered vertex and level 1 the given sets.
//! Each further level joins the nodes of the level below that overlap,
//! directly or through a chain of overlaps, into one node holding their
//! union. Building stops once a level has a single node or no two of its
//! nodes overlap. This recombination rule is this crate's own reading of
//! hierarchical clique recombination; outputs carry it as metadata.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const RECOMPOSITION_RULE: &str = "overlap-components";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeNode {
    pub id: usize,
    pub level: usize,
    /// Sorted vertex indices.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    pub nodes: Vec<SemilatticeNode>,
    /// `(child, parent)` node ids; the parent is one level up and contains the child.
    pub arcs: Vec<(usize, usize)>,
}

impl Semilattice {
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let top = self.nodes.iter().map(|n| n.level).max().unwrap_or(0);
        let mut out = vec![Vec::new(); top + 1];
        for n in &self.nodes {
            out[n.level].push(n.id);
        }
        out
    }

    pub fn children(&self, id: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.1 == id).map(|a| a.0).collect()
    }

    pub fn parents(&self, id: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.0 == id).map(|a| a.1).collect()
    }

    /// Nodes without parents.
    pub fn maximal(&self) -> Vec<&SemilatticeNode> {
        self.nodes.iter().filter(|n| self.parents(n.id).is_empty()).collect()
    }
}

fn overlaps(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Build the structure over `sets` of vertices of `g`, usually its maximal
/// cliques. Duplicate sets are merged; empty sets are rejected.
pub fn recompose_semilattice(g: &Graph, sets: &[Vec<usize>]) -> Result<Semilattice> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument("no sets to recompose".into()));
    }
    let mut level1: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if s.is_empty() {
            return Err(Error::InvalidArgument("empty set in recomposition input".into()));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::UnknownVertex(v + 1));
        }
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if !level1.contains(&s) {
            level1.push(s);
        }
    }
    let mut vertices: Vec<usize> = level1.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();

    let mut nodes = Vec::new();
    let mut arcs = Vec::new();
    let mut vertex_node = std::collections::HashMap::new();
    for &v in &vertices {
        vertex_node.insert(v, nodes.len());
        nodes.push(SemilatticeNode { id: nodes.len(), level: 0, members: vec![v] });
    }
    let mut current: Vec<usize> = Vec::new();
    for s in level1 {
        let id = nodes.len();
        for v in &s {
            arcs.push((vertex_node[v], id));
        }
        nodes.push(SemilatticeNode { id, level: 1, members: s });
        current.push(id);
    }
    let mut level = 1;
    while current.len() > 1 {
        let comps = overlap_components(&current, &nodes);
        if comps.len() == current.len() {
            break;
        }
        level += 1;
        let mut next = Vec::new();
        for comp in comps {
            let mut members: Vec<usize> = comp.iter().flat_map(|&c| nodes[c].members.iter().copied()).collect();
            members.sort_unstable();
            members.dedup();
            let id = nodes.len();
            for &c in &comp {
                arcs.push((c, id));
            }
            nodes.push(SemilatticeNode { id, level, members });
            next.push(id);
        }
        current = next;
    }
    Ok(Semilattice { nodes, arcs })
}

/// Connected components of the overlap graph on `ids`, each listed in
/// input order, components ordered by their first member.
fn overlap_components(ids: &[usize], nodes: &[SemilatticeNode]) -> Vec<Vec<usize>> {
    let k = ids.len();
    let mut comp = vec![usize::MAX; k];
    let mut out = Vec::new();
    for start in 0..k {
        if comp[start] != usize::MAX {
            continue;
        }
        let c = out.len();
        comp[start] = c;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..k {
                if comp[j] == usize::MAX && overlaps(&nodes[ids[i]].members, &nodes[ids[j]].members) {
                    comp[j] = c;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|i| ids[i]).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: usize) -> Graph {
        Graph::from_links(m, []).unwrap()
    }

    fn check_shape(s: &Semilattice) {
        for &(c, p) in &s.arcs {
            assert_eq!(s.nodes[p].level, s.nodes[c].level + 1);
            assert!(s.nodes[c].members.iter().all(|v| s.nodes[p].members.contains(v)));
        }
        for n in s.nodes.iter().filter(|n| n.level > 0) {
            let mut union: Vec<usize> = s.children(n.id).iter().flat_map(|&c| s.nodes[c].members.clone()).collect();
            union.sort_unstable();
            union.dedup();
            assert_eq!(union, n.members);
        }
    }

    #[test]
    fn chained_overlap() {
        let s = recompose_semilattice(&g(8), &[vec![1, 2, 3], vec![3, 4, 5], vec![6, 7]]).unwrap();
        check_shape(&s);
        let top: Vec<&Vec<usize>> = s.maximal().iter().map(|n| &n.members).collect();
        assert_eq!(top, vec![&vec![1, 2, 3, 4, 5], &vec![6, 7]]);
        assert_eq!(s.levels().len(), 3);
    }

    #[test]
    fn disjoint_sets_stop_at_level_one() {
        let s = recompose_semilattice(&g(4), &[vec![0, 1], vec![2, 3]]).unwrap();
        check_shape(&s);
        assert_eq!(s.levels().len(), 2);
        assert_eq!(s.maximal().len(), 2);
    }

    #[test]
    fn single_component_ends_with_root() {
        let s = recompose_semilattice(&g(4), &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        check_shape(&s);
        assert_eq!(s.maximal().len(), 1);
        assert_eq!(s.maximal()[0].members, vec![0, 1, 2, 3]);
    }

    #[test]
    fn bad_input() {
        assert!(recompose_semilattice(&g(3), &[]).is_err());
        assert!(recompose_semilattice(&g(3), &[vec![]]).is_err());
        assert!(recompose_semilattice(&g(3), &[vec![0, 3]]).is_err());
    }
}
