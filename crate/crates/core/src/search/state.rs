use crate::graph::Graph;
use crate::measures::{stabl_weight, Summary};
use crate::partition::Partition;

/// Cell assignment of every vertex of a graph, with the aggregates the
/// measures need kept current under single-vertex moves.
///
/// Cells live in fixed slots; a slot whose size drops to zero is dead.
#[derive(Debug, Clone)]
pub(crate) struct CellState<'g> {
    g: &'g Graph,
    cell_of: Vec<usize>,
    sizes: Vec<u64>,
    internal: Vec<u64>,
    degree_sum: Vec<u64>,
    cut: u64,
    live: u64,
    sum_sq_sizes: u64,
    sum_sq_degrees: u64,
    stabl_denom: f64,
}

/// Effect of moving one vertex, enough to build the new summary.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Move {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
    /// Neighbors of `vertex` in its current cell.
    pub links_from: u64,
    /// Neighbors of `vertex` in the destination cell.
    pub links_to: u64,
}

impl<'g> CellState<'g> {
    pub fn new(g: &'g Graph, cell_of: Vec<usize>, slots: usize) -> Self {
        let mut s = Self {
            g,
            cell_of,
            sizes: vec![0; slots],
            internal: vec![0; slots],
            degree_sum: vec![0; slots],
            cut: 0,
            live: 0,
            sum_sq_sizes: 0,
            sum_sq_degrees: 0,
            stabl_denom: 0.0,
        };
        for v in 0..g.vertex_count() {
            let c = s.cell_of[v];
            s.sizes[c] += 1;
            s.degree_sum[c] += g.degree(v) as u64;
        }
        for (a, b) in g.links() {
            if s.cell_of[a] == s.cell_of[b] {
                s.internal[s.cell_of[a]] += 1;
            } else {
                s.cut += 1;
            }
        }
        s.refresh();
        s
    }

    pub fn unit(g: &'g Graph) -> Self {
        let m = g.vertex_count();
        Self::new(g, (0..m).collect(), m)
    }

    /// Recompute the sums over cells from the per-cell counts.
    fn refresh(&mut self) {
        self.live = self.sizes.iter().filter(|&&s| s > 0).count() as u64;
        self.sum_sq_sizes = self.sizes.iter().map(|s| s * s).sum();
        self.sum_sq_degrees = self.degree_sum.iter().map(|d| d * d).sum();
        self.stabl_denom = self.sizes.iter().filter(|&&s| s > 0).map(|&s| stabl_weight(s)).sum();
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.cell_of
    }

    pub fn size(&self, c: usize) -> u64 {
        self.sizes[c]
    }

    pub fn slots(&self) -> usize {
        self.sizes.len()
    }

    pub fn summary(&self) -> Summary {
        Summary {
            n: self.g.vertex_count() as u64,
            links: self.g.total() as u64,
            cut: self.cut,
            cells: self.live,
            sum_sq_sizes: self.sum_sq_sizes,
            sum_sq_degrees: self.sum_sq_degrees,
            stabl_denom: self.stabl_denom,
            pair: self.pair(None),
        }
    }

    /// (size, internal) of the two cells when the state has two slots.
    fn pair(&self, mv: Option<&Move>) -> Option<[(u64, u64); 2]> {
        if self.sizes.len() != 2 {
            return None;
        }
        let mut sizes = [self.sizes[0], self.sizes[1]];
        let mut internal = [self.internal[0], self.internal[1]];
        if let Some(m) = mv {
            sizes[m.from] -= 1;
            sizes[m.to] += 1;
            internal[m.from] -= m.links_from;
            internal[m.to] += m.links_to;
        }
        Some([(sizes[0], internal[0]), (sizes[1], internal[1])])
    }

    /// Neighbor count of `v` in every slot, written into `counts`.
    pub fn neighbor_counts(&self, v: usize, counts: &mut Vec<u64>) {
        counts.clear();
        counts.resize(self.sizes.len(), 0);
        for &u in self.g.neighbors(v) {
            counts[self.cell_of[u]] += 1;
        }
    }

    pub fn make_move(&self, vertex: usize, to: usize, counts: &[u64]) -> Move {
        let from = self.cell_of[vertex];
        Move { vertex, from, to, links_from: counts[from], links_to: counts[to] }
    }

    /// Summary of the partition after `m`, without applying it.
    pub fn summary_after(&self, m: &Move) -> Summary {
        let (sf, st) = (self.sizes[m.from], self.sizes[m.to]);
        let d = self.g.degree(m.vertex) as u64;
        let (df, dt) = (self.degree_sum[m.from], self.degree_sum[m.to]);
        let sum_sq_sizes = self.sum_sq_sizes + 2 * st + 2 - 2 * sf;
        let sum_sq_degrees = self.sum_sq_degrees + (df - d) * (df - d) + (dt + d) * (dt + d) - df * df - dt * dt;
        let mut stabl_denom = self.stabl_denom - stabl_weight(sf) - stabl_weight(st) + stabl_weight(st + 1);
        if sf > 1 {
            stabl_denom += stabl_weight(sf - 1);
        }
        let mut live = self.live;
        if sf == 1 {
            live -= 1;
        }
        if st == 0 {
            live += 1;
        }
        Summary {
            n: self.g.vertex_count() as u64,
            links: self.g.total() as u64,
            cut: self.cut + m.links_from - m.links_to,
            cells: live,
            sum_sq_sizes,
            sum_sq_degrees,
            stabl_denom,
            pair: self.pair(Some(m)),
        }
    }

    pub fn apply(&mut self, m: &Move) {
        let d = self.g.degree(m.vertex) as u64;
        self.sizes[m.from] -= 1;
        self.sizes[m.to] += 1;
        self.internal[m.from] -= m.links_from;
        self.internal[m.to] += m.links_to;
        self.degree_sum[m.from] -= d;
        self.degree_sum[m.to] += d;
        self.cut = self.cut + m.links_from - m.links_to;
        self.cell_of[m.vertex] = m.to;
        self.refresh();
    }

    /// Smallest vertex of each slot, `usize::MAX` for dead slots.
    pub fn slot_minimums(&self) -> Vec<usize> {
        let mut mins = vec![usize::MAX; self.sizes.len()];
        for (v, &c) in self.cell_of.iter().enumerate() {
            mins[c] = mins[c].min(v);
        }
        mins
    }

    /// Live cells ordered by smallest member.
    pub fn partition(&self) -> Partition {
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); self.sizes.len()];
        for (v, &c) in self.cell_of.iter().enumerate() {
            cells[c].push(v);
        }
        cells.retain(|c| !c.is_empty());
        cells.sort_unstable_by_key(|c| c[0]);
        Partition::new(cells).expect("cells are disjoint by construction")
    }

    /// Canonical labeling: cells numbered by first appearance in vertex order.
    pub fn canonical_labels(&self) -> Vec<u32> {
        let mut relabel = vec![u32::MAX; self.sizes.len()];
        let mut next = 0;
        self.cell_of
            .iter()
            .map(|&c| {
                if relabel[c] == u32::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                relabel[c]
            })
            .collect()
    }
}
