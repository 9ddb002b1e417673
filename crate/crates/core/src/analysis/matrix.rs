use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Link densities of a partition. Entry `(i, i)` is the cohesion of cell
/// `i`: its internal links over `s(s-1)/2`, or 0 for a singleton. Entry
/// `(i, j)` is the coupling of cells `i` and `j`: links between them over
/// `s_i * s_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CohesionCouplingMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

pub fn cohesion_coupling_matrix(g: &Graph, p: &Partition) -> CohesionCouplingMatrix {
    let stats = g.link_stats(p);
    let k = p.len();
    let size = |i: usize| stats.sizes[i] as f64;
    let values = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (i == j, stats.sizes[i] > 1) {
                    (true, true) => stats.internal[i] as f64 / (size(i) * (size(i) - 1.0) / 2.0),
                    (true, false) => 0.0,
                    (false, _) => stats.between[i][j] as f64 / (size(i) * size(j)),
                })
                .collect()
        })
        .collect();
    CohesionCouplingMatrix { labels: (1..=k).map(|i| i.to_string()).collect(), values }
}

impl CohesionCouplingMatrix {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidArgument(format!("{} labels for {} cells", labels.len(), self.len())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn cohesion(&self, i: usize) -> f64 {
        self.values[i][i]
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    /// Entry by cell labels.
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        Some(self.values[self.index_of(a)?][self.index_of(b)?])
    }

    /// Aligned text table, cells in the `.444` style.
    pub fn to_table(&self) -> String {
        let w = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(5) + 1;
        let mut out = format!("{:w$}", "");
        for l in &self.labels {
            out.push_str(&format!("{l:>w$}"));
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.values) {
            out.push_str(&format!("{l:<w$}"));
            for &x in row {
                out.push_str(&format!("{:>w$}", format_ratio(x)));
            }
            out.push('\n');
        }
        out
    }
}

/// Three decimals without a leading zero: `0.4444` gives `.444`.
pub fn format_ratio(x: f64) -> String {
    let s = format!("{x:.3}");
    match s.strip_prefix("0.") {
        Some(rest) => format!(".{rest}"),
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_and_disconnected_cells() {
        let g = Graph::from_links(7, [(0, 1), (1, 2), (0, 2), (3, 4), (2, 3)]).unwrap();
        let p = Partition::new(vec![vec![0, 1, 2], vec![3, 4, 5], vec![6]]).unwrap();
        let m = cohesion_coupling_matrix(&g, &p);
        assert_eq!(m.cohesion(0), 1.0);
        assert!((m.cohesion(1) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.cohesion(2), 0.0);
        assert!((m.coupling(0, 1) - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(m.coupling(0, 2), 0.0);
        assert_eq!(m.coupling(1, 0), m.coupling(0, 1));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_ratio(4.0 / 9.0), ".444");
        assert_eq!(format_ratio(1.0), "1.000");
        assert_eq!(format_ratio(0.0), ".000");
        let g = Graph::from_links(2, [(0, 1)]).unwrap();
        let m = cohesion_coupling_matrix(&g, &Partition::single(2)).with_labels(vec!["A".into()]).unwrap();
        assert_eq!(m.to_table(), "           A\nA      1.000\n");
    }
}
