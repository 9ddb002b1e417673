//! A small instance on which greedy top-down splitting misplaces a vertex.
//!
//! Eight triangles `L0..L3` and `R0..R3`. Within each side the triangles
//! form a ring: member 1 of each triangle links to member 0 of the next.
//! The extra vertex `x` (the last index) links to every member of `L2` and
//! to member 2 of each `R` triangle. At the first split `x` sees three links
//! into `L` and four into `R`, although it only completes a clique with `L2`.

use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct CounterexampleInstance {
    pub graph: Graph,
    /// Index of the contested vertex.
    pub x: usize,
    /// `("L0", members) .. ("R3", members)`, vertex indices.
    pub clusters: Vec<(String, Vec<usize>)>,
}

impl CounterexampleInstance {
    pub fn cluster(&self, name: &str) -> Option<&[usize]> {
        self.clusters.iter().find(|c| c.0 == name).map(|c| c.1.as_slice())
    }

    /// Union of the clusters whose names start with `side` (`"L"` or `"R"`).
    pub fn side(&self, side: &str) -> Vec<usize> {
        self.clusters.iter().filter(|c| c.0.starts_with(side)).flat_map(|c| c.1.iter().copied()).collect()
    }

    /// Links from `x` into `set`.
    pub fn links_of_x_into(&self, set: &[usize]) -> usize {
        set.iter().filter(|&&v| self.graph.has_link(self.x, v)).count()
    }
}

pub fn build_misplaced_vertex_instance() -> CounterexampleInstance {
    let mut clusters = Vec::new();
    let mut links = Vec::new();
    for (s, side) in ["L", "R"].into_iter().enumerate() {
        for i in 0..4 {
            let base = s * 12 + i * 3;
            links.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)]);
            let next = s * 12 + (i + 1) % 4 * 3;
            links.push((base + 1, next));
            clusters.push((format!("{side}{i}"), vec![base, base + 1, base + 2]));
        }
    }
    let x = 24;
    links.extend([(x, 6), (x, 7), (x, 8)]);
    for i in 0..4 {
        links.push((x, 12 + i * 3 + 2));
    }
    let graph = Graph::from_links(25, links).expect("valid construction");
    CounterexampleInstance { graph, x, clusters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Measure;
    use crate::search::{bisect_best, stabl_search, SearchConfig};

    #[test]
    fn x_sees_more_links_toward_r() {
        let h = build_misplaced_vertex_instance();
        assert_eq!(h.links_of_x_into(&h.side("L")), 3);
        assert_eq!(h.links_of_x_into(&h.side("R")), 4);
        assert_eq!(h.graph.total(), 8 * 3 + 8 + 7);
    }

    #[test]
    fn first_split_puts_x_with_r() {
        let h = build_misplaced_vertex_instance();
        let all: Vec<usize> = (0..25).collect();
        let b = bisect_best(&h.graph, &all, &SearchConfig::default()).unwrap();
        let cell = b.partition.cells().iter().find(|c| c.contains(&h.x)).unwrap();
        let mut r = h.side("R");
        r.push(h.x);
        r.sort_unstable();
        assert_eq!(cell, &r);
    }

    #[test]
    fn cohesion_search_puts_x_with_l2() {
        let h = build_misplaced_vertex_instance();
        for m in [Measure::Hidecs3Stabl, Measure::NewmanQ] {
            let out = stabl_search(&h.graph, &SearchConfig::with_measure(m)).unwrap();
            let cell = out.partition.cells().iter().find(|c| c.contains(&h.x)).unwrap();
            assert_eq!(cell, &vec![6, 7, 8, 24], "{m}");
        }
    }
}
