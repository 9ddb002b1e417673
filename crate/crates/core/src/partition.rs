use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Disjoint nonempty cells of internal vertex indices. The universe is the
/// union of the cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    /// Cells are sorted internally; cell order is kept.
    pub fn new(mut cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (i, cell) in cells.iter_mut().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidPartition(format!("cell {} is empty", i + 1)));
            }
            cell.sort_unstable();
            for &v in cell.iter() {
                if !seen.insert(v) {
                    return Err(Error::InvalidPartition(format!("vertex index {v} appears in more than one cell")));
                }
            }
        }
        Ok(Self { cells })
    }

    /// Build from external ids of `g`.
    pub fn from_ids(g: &Graph, sets: &[Vec<usize>]) -> Result<Self> {
        let cells = sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&id| {
                        g.index_of(id)
                            .ok_or_else(|| Error::InvalidPartition(format!("id {id} is not a vertex of the graph")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cells)
    }

    /// Every vertex of `g` in its own cell.
    pub fn unit(m: usize) -> Self {
        Self { cells: (0..m).map(|v| vec![v]).collect() }
    }

    pub fn single(m: usize) -> Self {
        Self { cells: vec![(0..m).collect()] }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn universe(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.cells.iter().flatten().copied().collect();
        u.sort_unstable();
        u
    }

    pub fn universe_size(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// True when the universe is exactly `0..m`.
    pub fn covers(&self, m: usize) -> bool {
        self.universe_size() == m && self.cells.iter().flatten().all(|&v| v < m)
    }

    /// Cells ordered by their smallest member.
    pub fn canonical(&self) -> Self {
        let mut cells = self.cells.clone();
        cells.sort_unstable_by_key(|c| c[0]);
        Self { cells }
    }

    /// Cell index for each vertex below `m`; `None` outside the universe.
    pub fn cell_map(&self, m: usize) -> Vec<Option<usize>> {
        let mut map = vec![None; m];
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                if v < m {
                    map[v] = Some(c);
                }
            }
        }
        map
    }

    pub fn to_ids(&self, g: &Graph) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.iter().map(|&v| g.id(v)).collect()).collect()
    }

    /// Rewrite indices of an induced subgraph into indices of its parent.
    pub fn lift(&self, sub_to_parent: &[usize]) -> Self {
        Self {
            cells: self
                .cells
                .iter()
                .map(|c| {
                    let mut v: Vec<usize> = c.iter().map(|&i| sub_to_parent[i]).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
        }
    }
}

/// On-disk partition: `{"sets": [[1, 2], [3]]}` with 1-based ids.
/// Extra fields such as `"labels"` are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub sets: Vec<Vec<usize>>,
}

impl PartitionFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: PartitionFile = serde_json::from_str(text)?;
        if let Some(l) = &f.labels {
            if l.len() != f.sets.len() {
                return Err(Error::InvalidPartition(format!("{} labels for {} sets", l.len(), f.sets.len())));
            }
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn resolve(&self, g: &Graph) -> Result<Partition> {
        Partition::from_ids(g, &self.sets)
    }
}
