//! Interaction tables, symmetric graphs built from them, and link counting.
//!
//! Vertex ids are 1-based in every table, file and report. Inside a
//! [`Graph`] vertices are indices `0..m`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// One line per source vertex, targets kept in the order they were listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInteractionTable {
    vertex_count: usize,
    entries: Vec<(usize, Vec<usize>)>,
}

impl RawInteractionTable {
    pub fn new(vertex_count: usize, entries: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidArgument("vertex count must be positive".into()));
        }
        let mut first_line = HashMap::new();
        for (k, (src, targets)) in entries.iter().enumerate() {
            let line = k + 1;
            check_id(*src, vertex_count, line)?;
            if let Some(first) = first_line.insert(*src, line) {
                return Err(Error::DuplicateSource { line, id: *src, first });
            }
            for &t in targets {
                check_id(t, vertex_count, line)?;
                if t == *src {
                    return Err(Error::SelfInteraction { line, id: t });
                }
            }
        }
        Ok(Self { vertex_count, entries })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn entries(&self) -> &[(usize, Vec<usize>)] {
        &self.entries
    }

    pub fn targets(&self, source: usize) -> Option<&[usize]> {
        self.entries.iter().find(|(s, _)| *s == source).map(|(_, t)| t.as_slice())
    }

    /// Number of (source, target) entries, counting both directions of a
    /// mutual pair.
    pub fn directed_entry_count(&self) -> usize {
        self.entries.iter().map(|(_, t)| t.len()).sum()
    }

    /// Render in the line format accepted by [`parse_interactions`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (src, targets) in &self.entries {
            let list: Vec<String> = targets.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(out, "{src} : {}", list.join(", "));
        }
        out
    }
}

fn check_id(id: usize, max: usize, line: usize) -> Result<()> {
    if id == 0 || id > max {
        Err(Error::IdOutOfRange { line, id, max })
    } else {
        Ok(())
    }
}

/// Parse `<id> : <id>, <id>, ...` lines. `#` starts a comment, blank lines
/// are skipped. A source with no targets may be written `<id> :`.
///
/// When `vertex_count` is `None` the largest id mentioned is used.
/// Line numbers in errors refer to physical lines of `text`.
pub fn parse_interactions(text: &str, vertex_count: Option<usize>) -> Result<RawInteractionTable> {
    let mut parsed: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut max_id = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (lhs, rhs) = body
            .split_once(':')
            .ok_or_else(|| Error::Malformed { line, reason: "expected `<id> : <id>, ...`".into() })?;
        let src = parse_id(lhs, line)?;
        let mut targets = Vec::new();
        let rhs = rhs.trim();
        if !rhs.is_empty() {
            for tok in rhs.split(',') {
                targets.push(parse_id(tok, line)?);
            }
        }
        max_id = max_id.max(src).max(targets.iter().copied().max().unwrap_or(0));
        parsed.push((line, src, targets));
    }
    let n = vertex_count.unwrap_or(max_id);
    if n == 0 {
        return Err(Error::Malformed { line: 0, reason: "no interaction lines".into() });
    }
    let mut first_line = HashMap::new();
    let mut entries = Vec::with_capacity(parsed.len());
    for (line, src, targets) in parsed {
        check_id(src, n, line)?;
        if let Some(first) = first_line.insert(src, line) {
            return Err(Error::DuplicateSource { line, id: src, first });
        }
        for &t in &targets {
            check_id(t, n, line)?;
            if t == src {
                return Err(Error::SelfInteraction { line, id: t });
            }
        }
        entries.push((src, targets));
    }
    Ok(RawInteractionTable { vertex_count: n, entries })
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    let tok = tok.trim();
    tok.parse::<usize>().map_err(|_| Error::Malformed { line, reason: format!("`{tok}` is not a vertex id") })
}

/// How one-way entries are turned into links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymmetryRule {
    /// A link exists only when each endpoint lists the other.
    #[default]
    Both,
    /// A link exists when either endpoint lists the other.
    Either,
}

/// Undirected, loop-free, unsigned graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    words: usize,
    rows: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    total: usize,
    labels: Option<Vec<String>>,
    ids: Vec<usize>,
}

impl Graph {
    /// Build from 0-based links. Duplicate pairs collapse; self pairs are
    /// rejected.
    pub fn from_links(m: usize, links: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let words = m.div_ceil(64).max(1);
        let mut rows = vec![0u64; m * words];
        for (a, b) in links {
            if a >= m {
                return Err(Error::UnknownVertex(a + 1));
            }
            if b >= m {
                return Err(Error::UnknownVertex(b + 1));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self link at vertex {}", a + 1)));
            }
            rows[a * words + b / 64] |= 1 << (b % 64);
            rows[b * words + a / 64] |= 1 << (a % 64);
        }
        let neighbors: Vec<Vec<usize>> =
            (0..m).map(|v| (0..m).filter(|&u| rows[v * words + u / 64] >> (u % 64) & 1 == 1).collect()).collect();
        let total = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self { m, words, rows, neighbors, total, labels: None, ids: (1..=m).collect() })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m {
            return Err(Error::InvalidArgument(format!("{} labels for {} vertices", labels.len(), self.m)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Number of links.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of vertex pairs, `m(m-1)/2`.
    pub fn nsq1(&self) -> usize {
        self.m * self.m.saturating_sub(1) / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External id of internal vertex `v`. Induced subgraphs keep the ids
    /// of the graph they came from.
    pub fn id(&self, v: usize) -> usize {
        self.ids[v]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Internal index of external id `id`.
    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn has_link(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Adjacency row of `v` as a bitset of `word_count()` words.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn word_count(&self) -> usize {
        self.words
    }

    /// Links as 0-based pairs `(a, b)` with `a < b`, in ascending order.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |a| self.neighbors[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// Subgraph on the given internal vertices. Ids and labels carry over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&bad) = vs.iter().find(|&&v| v >= self.m) {
            return Err(Error::UnknownVertex(bad + 1));
        }
        let mut pos = vec![usize::MAX; self.m];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let links = vs.iter().enumerate().flat_map(|(i, &v)| {
            let pos = &pos;
            self.neighbors[v].iter().filter_map(move |&u| (pos[u] != usize::MAX && pos[u] > i).then_some((i, pos[u])))
        });
        let mut g = Graph::from_links(vs.len(), links.collect::<Vec<_>>())?;
        g.ids = vs.iter().map(|&v| self.ids[v]).collect();
        g.labels = self.labels.as_ref().map(|l| vs.iter().map(|&v| l[v].clone()).collect());
        Ok(g)
    }

    /// Subgraph on the given external ids.
    pub fn induced_by_ids(&self, ids: &[usize]) -> Result<Graph> {
        let vs = self.indices_of(ids)?;
        self.induced_subgraph(&vs)
    }

    pub fn indices_of(&self, ids: &[usize]) -> Result<Vec<usize>> {
        ids.iter().map(|&id| self.index_of(id).ok_or(Error::UnknownVertex(id))).collect()
    }

    /// True when every pair in `set` is linked. Sets of size 0 or 1 qualify.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && self.has_link(a, b)))
    }

    /// Links inside each cell and across cells, counted on the subgraph
    /// induced by the partition's universe.
    pub fn link_stats(&self, p: &Partition) -> LinkStats {
        let mut cell_of = vec![usize::MAX; self.m];
        for (c, cell) in p.cells().iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = p.cells().len();
        let mut internal = vec![0usize; k];
        let mut between = vec![vec![0usize; k]; k];
        let mut degree_sum = vec![0usize; k];
        for (a, b) in self.links() {
            let (ca, cb) = (cell_of[a], cell_of[b]);
            if ca == usize::MAX || cb == usize::MAX {
                continue;
            }
            degree_sum[ca] += 1;
            degree_sum[cb] += 1;
            if ca == cb {
                internal[ca] += 1;
            } else {
                between[ca][cb] += 1;
                between[cb][ca] += 1;
            }
        }
        let cut = between.iter().flatten().sum::<usize>() / 2;
        LinkStats { sizes: p.cells().iter().map(Vec::len).collect(), internal, between, degree_sum, cut }
    }
}

/// Output of [`Graph::link_stats`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkStats {
    pub sizes: Vec<usize>,
    /// Links with both ends in cell `i`.
    pub internal: Vec<usize>,
    /// Links between cells `i` and `j`; symmetric, zero diagonal.
    pub between: Vec<Vec<usize>>,
    /// Sum of degrees (within the universe) of the vertices of each cell.
    pub degree_sum: Vec<usize>,
    /// Links joining different cells.
    pub cut: usize,
}

impl LinkStats {
    /// Links of the induced subgraph.
    pub fn total(&self) -> usize {
        self.internal.iter().sum::<usize>() + self.cut
    }

    pub fn universe_size(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// `to` is listed under `from`, but `from` is not listed under `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OneWayEntry {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AsymmetryReport {
    pub entries: Vec<OneWayEntry>,
}

impl AsymmetryReport {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// How many one-way entries touch each vertex.
    pub fn per_vertex(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.entries {
            *counts.entry(e.from).or_insert(0) += 1;
            *counts.entry(e.to).or_insert(0) += 1;
        }
        counts
    }

    pub fn touching(&self, id: usize) -> usize {
        self.entries.iter().filter(|e| e.from == id || e.to == id).count()
    }

    /// One `<i> -> <j>` line per entry.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{} -> {}", e.from, e.to);
        }
        out
    }

    /// Entries grouped under the smaller id of each pair:
    /// `3 interacts with: ←86, →88`. `→j` means the smaller id lists `j`;
    /// `←j` means only `j` lists the smaller id.
    pub fn to_arrow_lines(&self) -> String {
        let mut groups: BTreeMap<usize, Vec<(usize, char)>> = BTreeMap::new();
        for e in &self.entries {
            let (low, other, arrow) = if e.from < e.to { (e.from, e.to, '→') } else { (e.to, e.from, '←') };
            groups.entry(low).or_default().push((other, arrow));
        }
        let mut out = String::new();
        for (low, mut items) in groups {
            items.sort();
            let parts: Vec<String> = items.iter().map(|(o, a)| format!("{a}{o}")).collect();
            let _ = writeln!(out, "{low} interacts with: {}", parts.join(", "));
        }
        out
    }
}

/// Build the undirected graph from a raw table, reporting every entry whose
/// reverse is missing. The report is the same under either rule.
pub fn symmetrize(raw: &RawInteractionTable, rule: SymmetryRule) -> (Graph, AsymmetryReport) {
    let n = raw.vertex_count();
    let directed: BTreeSet<(usize, usize)> =
        raw.entries().iter().flat_map(|(s, ts)| ts.iter().map(move |&t| (*s, t))).collect();
    let mut links = Vec::new();
    let mut report = AsymmetryReport::default();
    for &(s, t) in &directed {
        let mutual = directed.contains(&(t, s));
        if !mutual {
            report.entries.push(OneWayEntry { from: s, to: t });
        }
        let keep = match rule {
            SymmetryRule::Both => mutual && s < t,
            SymmetryRule::Either => !mutual || s < t,
        };
        if keep {
            links.push((s - 1, t - 1));
        }
    }
    let g = Graph::from_links(n, links).expect("ids validated by the table");
    (g, report)
}

/// Inverse of [`symmetrize`] for a symmetric graph: every link listed under
/// both endpoints, targets ascending.
pub fn to_table(g: &Graph) -> RawInteractionTable {
    let entries = (0..g.vertex_count()).map(|v| (g.id(v), g.neighbors(v).iter().map(|&u| g.id(u)).collect())).collect();
    RawInteractionTable { vertex_count: g.ids().last().copied().unwrap_or(0).max(g.vertex_count()), entries }
}
