//! Exhaustive reference searches for small inputs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{evaluate, Measure, MeasureValue};
use crate::partition::Partition;

/// Largest set [`brute_force_bipartition`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Optimum of `measure` over all `2^(n-1) - 1` two-cell splits of `set`.
/// Equal values keep the split whose canonical cells compare lowest.
pub fn brute_force_bipartition(g: &Graph, set: &[usize], measure: Measure) -> Result<(Partition, MeasureValue)> {
    let mut vs = set.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let n = vs.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::InvalidArgument(format!("brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    let mut best: Option<(Partition, MeasureValue)> = None;
    // vs[0] always sits in the first cell
    for mask in 0u32..(1 << (n - 1)) - 1 {
        let (mut a, mut b) = (vec![vs[0]], Vec::new());
        for (i, &v) in vs.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        let p = Partition::new(vec![a, b])?;
        let value = evaluate(measure, g, &p)?;
        let better = match &best {
            None => true,
            Some((bp, bv)) => {
                let (x, y) = (measure.rank_key(value.value), measure.rank_key(bv.value));
                x < y || (x == y && p.cells() < bp.cells())
            }
        };
        if better {
            best = Some((p, value));
        }
    }
    Ok(best.expect("at least one split"))
}

/// Maximal cliques by checking every vertex subset. Same ordering as
/// [`super::maximal_cliques`].
pub fn brute_force_maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let m = g.vertex_count();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::InvalidArgument(format!("brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {m}")));
    }
    let sets: Vec<Vec<usize>> =
        (1u32..1 << m).map(|mask| (0..m).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>()).collect();
    let mut out: Vec<Vec<usize>> = sets
        .into_iter()
        .filter(|s| g.is_clique(s))
        .filter(|s| (0..m).all(|v| s.contains(&v) || !s.iter().all(|&u| g.has_link(u, v))))
        .collect();
    out.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}
