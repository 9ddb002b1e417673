use pathfinding::kuhn_munkres::kuhn_munkres;
use pathfinding::matrix::Matrix;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellPair {
    /// Cell index in the first partition.
    pub a: usize,
    /// Cell index in the second partition.
    pub b: usize,
    pub overlap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    /// Ordered by `a`.
    pub pairs: Vec<CellPair>,
    pub unpaired_a: Vec<usize>,
    pub unpaired_b: Vec<usize>,
}

impl Pairing {
    pub fn total_overlap(&self) -> usize {
        self.pairs.iter().map(|p| p.overlap).sum()
    }

    pub fn partner_of_a(&self, a: usize) -> Option<CellPair> {
        self.pairs.iter().copied().find(|p| p.a == a)
    }
}

/// One-to-one assignment of cells maximizing the summed intersection
/// sizes. Among optimal assignments the one that gives the lowest-index
/// cell of the smaller side the lowest-index partner (and so on down the
/// cells) wins. Assigned pairs sharing nothing are reported as unpaired.
pub fn pair_partitions(pa: &Partition, pb: &Partition) -> Result<Pairing> {
    if pa.universe() != pb.universe() {
        return Err(Error::InvalidPartition("partitions to pair cover different vertex sets".into()));
    }
    let overlap = |x: &[usize], y: &[usize]| x.iter().filter(|v| y.binary_search(v).is_ok()).count();
    let flip = pa.len() > pb.len();
    let (rows, cols) = if flip { (pb, pa) } else { (pa, pb) };
    let w: Vec<Vec<i64>> =
        rows.cells().iter().map(|r| cols.cells().iter().map(|c| overlap(r, c) as i64).collect()).collect();
    let assign = lexicographic_assignment(&w);
    let mut pairs = Vec::new();
    for (r, &c) in assign.iter().enumerate() {
        if w[r][c] > 0 {
            let (a, b) = if flip { (c, r) } else { (r, c) };
            pairs.push(CellPair { a, b, overlap: w[r][c] as usize });
        }
    }
    pairs.sort_unstable_by_key(|p| p.a);
    let unpaired_a = (0..pa.len()).filter(|&a| pairs.iter().all(|p| p.a != a)).collect();
    let unpaired_b = (0..pb.len()).filter(|&b| pairs.iter().all(|p| p.b != b)).collect();
    Ok(Pairing { pairs, unpaired_a, unpaired_b })
}

/// Optimal assignment of every row (`rows <= cols`), fixing rows in order
/// to their lowest column that keeps the optimum reachable.
fn lexicographic_assignment(w: &[Vec<i64>]) -> Vec<usize> {
    let (n, k) = (w.len(), w.first().map_or(0, Vec::len));
    if n == 0 {
        return Vec::new();
    }
    // forbidden entries cost more than any assignment can gain
    let forbid = -(n as i64 * w.iter().flatten().max().copied().unwrap_or(0) + 1);
    let solve = |fixed: &[usize]| {
        let m = Matrix::from_fn(n, k, |(r, c)| {
            let clash = match fixed.get(r) {
                Some(&f) => f != c,
                None => fixed.contains(&c),
            };
            if clash {
                forbid
            } else {
                w[r][c]
            }
        });
        kuhn_munkres(&m)
    };
    let (best, mut assign) = solve(&[]);
    let mut fixed = Vec::new();
    for _ in 0..n {
        let chosen = (0..k)
            .filter(|c| !fixed.contains(c))
            .find_map(|c| {
                let mut trial = fixed.clone();
                trial.push(c);
                let (v, a) = solve(&trial);
                (v == best).then_some((c, a))
            })
            .expect("the optimal assignment extends the fixed rows");
        fixed.push(chosen.0);
        assign = chosen.1;
    }
    assign
}
