use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{evaluate, Measure};
use crate::partition::Partition;
use crate::search::topdown::{DecompositionTree, Split};

/// Cells are the sets of the nodes at depth `n`; leaves above that depth
/// stand for themselves.
pub fn tree_level_partition(t: &DecompositionTree, n: usize) -> Partition {
    t.level_partition(n)
}

/// Binary tree whose levels follow a chain of successively finer
/// partitions, each cell of `chain[i + 1]` lying inside one cell of
/// `chain[i]`. A cell refined into `k > 2` parts is halved repeatedly: with
/// the parts ordered by smallest vertex, the first `ceil(k/2)` go to the
/// first child. Split values are `measure` on the two-cell split of each
/// node.
pub fn refinement_tree(g: &Graph, chain: &[&Partition], measure: Measure) -> Result<DecompositionTree> {
    let root = chain.first().ok_or_else(|| Error::InvalidArgument("empty refinement chain".into()))?;
    if root.len() != 1 {
        return Err(Error::InvalidArgument("refinement chain must start from a single cell".into()));
    }
    grow(g, root.cells()[0].clone(), &chain[1..], measure)
}

fn grow(g: &Graph, set: Vec<usize>, rest: &[&Partition], measure: Measure) -> Result<DecompositionTree> {
    let Some((next, deeper)) = rest.split_first() else {
        return Ok(DecompositionTree::leaf(set));
    };
    let parts: Vec<Vec<usize>> = next.cells().iter().filter(|c| c.iter().any(|v| set.contains(v))).cloned().collect();
    if parts.iter().flatten().any(|v| !set.contains(v)) || parts.iter().map(Vec::len).sum::<usize>() != set.len() {
        return Err(Error::InvalidPartition("chain partitions are not successive refinements".into()));
    }
    if parts.len() == 1 {
        return grow(g, set, deeper, measure);
    }
    split_parts(g, parts, deeper, measure)
}

fn split_parts(
    g: &Graph,
    mut parts: Vec<Vec<usize>>,
    deeper: &[&Partition],
    measure: Measure,
) -> Result<DecompositionTree> {
    if parts.len() == 1 {
        let set = parts.pop().expect("one part");
        return grow(g, set, deeper, measure);
    }
    parts.sort_unstable_by_key(|p| p[0]);
    let second = parts.split_off(parts.len().div_ceil(2));
    let flat = |ps: &[Vec<usize>]| {
        let mut s: Vec<usize> = ps.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    };
    let (a, b) = (flat(&parts), flat(&second));
    let value = evaluate(measure, g, &Partition::new(vec![a.clone(), b.clone()])?)?.value;
    let mut set = [a, b].concat();
    set.sort_unstable();
    let children = [split_parts(g, parts, deeper, measure)?, split_parts(g, second, deeper, measure)?];
    Ok(DecompositionTree { set, split: Some(Box::new(Split { value, children })) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaves_persist_below_their_depth() {
        let g = Graph::from_links(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let chain = [&Partition::single(6), &Partition::new(vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap()];
        let t = refinement_tree(&g, &chain, Measure::Hidecs2Decomp).unwrap();
        assert_eq!(tree_level_partition(&t, 0), Partition::single(6));
        assert_eq!(tree_level_partition(&t, 5).cells(), &[vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(t.value().unwrap() < 0.0);
    }

    #[test]
    fn three_way_refinement_is_halved() {
        let g = Graph::from_links(6, []).unwrap();
        let chain = [&Partition::single(6), &Partition::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap()];
        let t = refinement_tree(&g, &chain, Measure::Hidecs2Decomp).unwrap();
        assert_eq!(tree_level_partition(&t, 1).cells(), &[vec![0, 1, 2, 3], vec![4, 5]]);
        assert_eq!(tree_level_partition(&t, 2).len(), 3);
    }

    #[test]
    fn rejects_non_refinements() {
        let g = Graph::from_links(4, []).unwrap();
        let a = Partition::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let b = Partition::new(vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(refinement_tree(&g, &[&Partition::single(4), &a, &b], Measure::Hidecs2Decomp).is_err());
        assert!(refinement_tree(&g, &[&a], Measure::Hidecs2Decomp).is_err());
    }
}
