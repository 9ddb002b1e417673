use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::derive_seed;

use super::bisect::bisect_best;
use super::SearchConfig;

/// Binary tree of vertex sets. Children split their parent's set.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionTree {
    /// Sorted vertex indices.
    pub set: Vec<usize>,
    pub split: Option<Box<Split>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    /// Measure value of the two-cell split of `set`.
    pub value: f64,
    /// Child holding the smallest vertex comes first.
    pub children: [DecompositionTree; 2],
}

impl DecompositionTree {
    pub fn leaf(mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        Self { set, split: None }
    }

    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    pub fn children(&self) -> Option<&[DecompositionTree; 2]> {
        self.split.as_ref().map(|s| &s.children)
    }

    pub fn value(&self) -> Option<f64> {
        self.split.as_ref().map(|s| s.value)
    }

    pub fn depth(&self) -> usize {
        self.children().map_or(0, |c| 1 + c[0].depth().max(c[1].depth()))
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().map_or(0, |c| c[0].node_count() + c[1].node_count())
    }

    pub fn leaves(&self) -> Vec<&[usize]> {
        let mut out = Vec::new();
        self.collect_level(usize::MAX, 0, &mut out);
        out
    }

    /// Sets of the nodes at depth `level`, with shallower leaves standing
    /// in for themselves. Always a partition of the root set.
    pub fn level_partition(&self, level: usize) -> Partition {
        let mut out = Vec::new();
        self.collect_level(level, 0, &mut out);
        Partition::new(out.into_iter().map(<[usize]>::to_vec).collect()).expect("children partition their parent")
    }

    fn collect_level<'a>(&'a self, level: usize, depth: usize, out: &mut Vec<&'a [usize]>) {
        match self.children() {
            Some(c) if depth < level => {
                c[0].collect_level(level, depth + 1, out);
                c[1].collect_level(level, depth + 1, out);
            }
            _ => out.push(&self.set),
        }
    }

    /// Pre-order walk with depths.
    pub fn walk(&self) -> Vec<(usize, &DecompositionTree)> {
        let mut out = Vec::new();
        let mut stack = vec![(0, self)];
        while let Some((d, t)) = stack.pop() {
            out.push((d, t));
            if let Some(c) = t.children() {
                stack.push((d + 1, &c[1]));
                stack.push((d + 1, &c[0]));
            }
        }
        out
    }
}

/// Recursive bisection of all vertices of `g`.
///
/// A node stays a leaf when its set is a clique, has at most
/// `cfg.min_size` vertices, or sits at depth `cfg.max_depth`. The root is
/// bisected with `cfg.seed`; child `i` of a node with seed `s` uses
/// `derive_seed(s, i + 1)`.
pub fn decompose_topdown(g: &Graph, cfg: &SearchConfig) -> Result<DecompositionTree> {
    decompose_set(g, &(0..g.vertex_count()).collect::<Vec<_>>(), cfg)
}

/// As [`decompose_topdown`], rooted at `set`.
pub fn decompose_set(g: &Graph, set: &[usize], cfg: &SearchConfig) -> Result<DecompositionTree> {
    cfg.validate()?;
    if set.len() < 2 {
        return Err(Error::InvalidArgument("need at least two vertices to decompose".into()));
    }
    build(g, set.to_vec(), 0, cfg.seed, cfg)
}

fn build(g: &Graph, set: Vec<usize>, depth: usize, seed: u64, cfg: &SearchConfig) -> Result<DecompositionTree> {
    let node = DecompositionTree::leaf(set);
    if node.set.len() <= cfg.min_size || cfg.max_depth == Some(depth) || g.is_clique(&node.set) {
        return Ok(node);
    }
    let node_cfg = SearchConfig { seed, ..cfg.clone() };
    let b = bisect_best(g, &node.set, &node_cfg)?;
    let mut cells = b.partition.cells().iter().cloned();
    let (first, second) = (cells.next().expect("two cells"), cells.next().expect("two cells"));
    let children = [
        build(g, first, depth + 1, derive_seed(seed, 1), cfg)?,
        build(g, second, depth + 1, derive_seed(seed, 2), cfg)?,
    ];
    Ok(DecompositionTree { set: node.set, split: Some(Box::new(Split { value: b.value.value, children })) })
}
