use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hidecs::analysis::{
    cohesion_coupling_matrix, estimate_cut_stats, exact_cut_variance, layout_layers, layout_tree, pair_partitions,
    refinement_tree, simulate_homeostasis_with, sorted_ratio_series, HomeostasisConfig, UpdateOrder,
};
use hidecs::datasets::{load_dataset, reference_partitions, DatasetBundle, ReferencePartitions};
use hidecs::export::{export_dot, semilattice_to_json, tree_to_json, Structure};
use hidecs::graph::{parse_interactions, symmetrize, to_table, AsymmetryReport};
use hidecs::measures::{display, evaluate, Arity, Measure, MeasureValue};
use hidecs::partition::PartitionFile;
use hidecs::replicate::{replicate_suite, ExternalData, Scope};
use hidecs::search::{
    bldup_agglomerate, decompose_topdown, maximal_cliques, recompose_semilattice, stabl_search, DecompositionTree,
    SearchConfig, Semilattice, TiePolicy,
};
use hidecs::{Graph, Partition, SymmetryRule};

#[derive(Parser)]
#[command(name = "hidecs", version, about = "Graph decomposition measures and searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit an interaction table: one-way entries and link counts.
    Check {
        #[command(flatten)]
        input: Input,
        /// List entries grouped by the smaller id with arrows.
        #[arg(long)]
        arrows: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Search for a decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Algo::Topdown)]
        algo: Algo,
        /// Defaults to h2-decomp, h3-bldup or h3-stabl depending on --algo.
        #[arg(long)]
        measure: Option<Measure>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
    /// Evaluate measures on a partition.
    Eval {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        /// Every applicable measure when omitted.
        #[arg(long)]
        measure: Option<Measure>,
        #[command(flatten)]
        out: Out,
    },
    /// List maximal cliques, largest first.
    Cliques {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Build the overlap semilattice over the maximal cliques or given sets.
    Recompose {
        #[command(flatten)]
        input: Input,
        /// Partition-format file whose sets replace the cliques; sets may overlap.
        #[arg(long)]
        sets: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
    /// Sample the cut-link count of random bipartitions.
    Estimate {
        #[command(flatten)]
        input: Input,
        /// Vertex count; with --total replaces the dataset.
        #[arg(long, requires = "total")]
        m: Option<u64>,
        #[arg(long, requires = "m")]
        total: Option<u64>,
        /// Size of the first side.
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Mean settle time of the lights model.
    Simulate {
        #[command(flatten)]
        input: Input,
        /// Complete graph on N lights instead of a dataset.
        #[arg(long, conflicts_with = "isolated")]
        complete: Option<usize>,
        /// N unconnected lights instead of a dataset.
        #[arg(long)]
        isolated: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "sequential-random")]
        order: UpdateOrder,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Pair the cells of two partitions by largest total overlap.
    Pair {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        /// Second partition, same forms as --partition.
        #[arg(long)]
        with: String,
        #[command(flatten)]
        out: Out,
    },
    /// Cohesion and coupling matrix of a partition.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        /// Sorted cohesion and coupling series as CSV instead of the table.
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Run the replication checks.
    Replicate {
        #[arg(long, default_value = "deterministic")]
        scope: Scope,
        /// Required with --scope all.
        #[arg(long)]
        seed: Option<u64>,
        /// Interaction file for the STABL figure graph.
        #[arg(long)]
        stabl_graph: Option<PathBuf>,
        /// Partition file of the published STABL result on that graph.
        #[arg(long, requires = "stabl_graph")]
        stabl_partition: Option<PathBuf>,
        /// Interaction file for Graph A.
        #[arg(long)]
        graph_a: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Lay out a tree or semilattice and write it as DOT.
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        structure: DotStructure,
        #[arg(long)]
        measure: Option<Measure>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Write embedded data in the interchange formats.
    ExportData {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = DataKind::Interactions)]
        what: DataKind,
        /// Reference partition id for --what partition.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Input {
    /// Embedded dataset name.
    #[arg(long, conflicts_with = "graph")]
    dataset: Option<String>,
    /// Interaction file instead of a dataset.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Keep links listed in one direction only.
    #[arg(long)]
    promote: bool,
    /// Work on the subgraph induced by a reference set such as C or B3.
    #[arg(long)]
    restrict: Option<String>,
}

#[derive(Args)]
struct PartitionArg {
    /// Reference id (ca-pi2), partition file, or reference sets such as A+B,C+D.
    #[arg(long)]
    partition: String,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 100)]
    latis: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long, default_value_t = 3)]
    min_size: usize,
    #[arg(long, default_value = "auto")]
    tie_policy: TiePolicy,
    #[arg(long, default_value_t = 100_000)]
    tie_cap: usize,
}

#[derive(Args)]
struct Out {
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Topdown,
    Bldup,
    Stabl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotStructure {
    /// Top-down bisection tree; needs --seed.
    Tree,
    /// Binary tree through the reference chain ca-pi1, ca-pi2, ca-pi4.
    ReferenceTree,
    /// Overlap semilattice of the maximal cliques.
    Semilattice,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataKind {
    Interactions,
    Requirements,
    OneWay,
    Partition,
}

struct Loaded {
    name: String,
    bundle: Option<DatasetBundle>,
    report: AsymmetryReport,
    directed: usize,
    graph: Graph,
}

impl Input {
    fn rule(&self) -> SymmetryRule {
        if self.promote {
            SymmetryRule::Either
        } else {
            SymmetryRule::Both
        }
    }

    fn load(&self) -> Result<Loaded> {
        let (name, bundle, raw) = match (&self.dataset, &self.graph) {
            (_, Some(path)) => {
                let raw =
                    parse_interactions(&read(path)?, None).with_context(|| format!("parsing {}", path.display()))?;
                (path.display().to_string(), None, raw)
            }
            (Some(name), None) => {
                let b = load_dataset(name)?;
                let raw = b.raw.clone();
                (name.clone(), Some(b), raw)
            }
            (None, None) => bail!("give --dataset or --graph"),
        };
        let (mut graph, report) = match &bundle {
            Some(b) => b.graph_with(self.rule()),
            None => symmetrize(&raw, self.rule()),
        };
        if let Some(label) = &self.restrict {
            if self.dataset.as_deref() != Some("indian-village") {
                bail!("--restrict names reference sets of indian-village");
            }
            let set = graph.indices_of(reference_partitions().ca_set(label)?)?;
            graph = graph.induced_subgraph(&set)?;
        }
        Ok(Loaded { name, bundle, report, directed: raw.directed_entry_count(), graph })
    }
}

impl Loaded {
    fn header(&self) -> String {
        let mut h = format!("# dataset={}", self.name);
        if self.graph.vertex_count() > 0 {
            let _ = write!(h, " vertices={} links={}", self.graph.vertex_count(), self.graph.total());
        }
        h
    }
}

impl SearchArgs {
    fn config(&self, measure: Measure) -> SearchConfig {
        SearchConfig {
            measure,
            latis: self.latis,
            seed: self.seed.unwrap_or(0),
            max_depth: self.max_depth,
            min_size: self.min_size,
            tie_policy: self.tie_policy,
            tie_branch_cap: self.tie_cap,
        }
    }

    fn seed(&self, why: &str) -> Result<u64> {
        self.seed.with_context(|| format!("{why} is randomized; give --seed"))
    }
}

impl Out {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Reference id, partition file, or `+`-joined reference sets separated by commas.
fn resolve_partition(spec: &str, g: &Graph, refs: &ReferencePartitions) -> Result<(Partition, Vec<String>)> {
    if let Ok(named) = refs.get(spec) {
        return Ok((named.resolve(g)?, named.labels.clone()));
    }
    let path = Path::new(spec);
    if path.exists() {
        let file = PartitionFile::parse(&read(path)?).with_context(|| format!("parsing {spec}"))?;
        let labels = file.labels.clone().unwrap_or_else(|| (1..=file.sets.len()).map(|i| i.to_string()).collect());
        return Ok((file.resolve(g)?, labels));
    }
    let mut sets = Vec::new();
    let mut labels = Vec::new();
    for cell in spec.split(',') {
        let mut ids = Vec::new();
        for label in cell.split('+') {
            let set = refs
                .ca_set(label.trim())
                .with_context(|| format!("{spec:?} is not a reference id, file or set list"))?;
            ids.extend_from_slice(set);
        }
        ids.sort_unstable();
        sets.push(ids);
        labels.push(cell.trim().to_string());
    }
    Ok((Partition::from_ids(g, &sets)?, labels))
}

fn ids(g: &Graph, vs: &[usize]) -> String {
    vs.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>().join(" ")
}

fn value_line(v: &MeasureValue) -> String {
    let mut s = format!("{} = {}", v.measure, v.display());
    if v.degenerate {
        s.push_str(" (degenerate)");
    }
    for (k, x) in &v.intermediates {
        if *x != 0.0 && x.abs() < 1e-3 {
            let _ = write!(s, "  {k}={x:.6e}");
        } else {
            let _ = write!(s, "  {k}={}", display(*x, 6));
        }
    }
    s
}

fn tree_text(g: &Graph, t: &DecompositionTree, decimals: usize) -> String {
    let mut s = String::new();
    for (depth, node) in t.walk() {
        let indent = "  ".repeat(depth);
        match node.value() {
            Some(v) => {
                let _ = writeln!(s, "{indent}{} [{}] {}", display(v, decimals), node.set.len(), ids(g, &node.set));
            }
            None => {
                let _ = writeln!(s, "{indent}leaf [{}] {}", node.set.len(), ids(g, &node.set));
            }
        }
    }
    s
}

fn semilattice_text(g: &Graph, s: &Semilattice) -> String {
    let mut out = String::new();
    for n in &s.nodes {
        let parents: Vec<String> = s.parents(n.id).iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "{} level={} parents=[{}] {}", n.id, n.level, parents.join(","), ids(g, &n.members));
    }
    out
}

fn partition_text(g: &Graph, p: &Partition) -> String {
    let mut s = String::new();
    for (i, c) in p.cells().iter().enumerate() {
        let _ = writeln!(s, "{} [{}] {}", i + 1, c.len(), ids(g, c));
    }
    s
}

fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data") + "\n"
}

fn load_external(path: &Path) -> Result<Graph> {
    let raw = parse_interactions(&read(path)?, None).with_context(|| format!("parsing {}", path.display()))?;
    Ok(symmetrize(&raw, SymmetryRule::Both).0)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check { input, arrows, out } => {
            let d = input.load()?;
            let mut s = d.header();
            let _ = writeln!(s, " rule={}", if input.promote { "either" } else { "both" });
            let _ = writeln!(s, "directed entries: {}", d.directed);
            let _ = writeln!(s, "one-way entries: {}", d.report.len());
            s.push_str(&if arrows { d.report.to_arrow_lines() } else { d.report.to_lines() });
            let worst = d.report.per_vertex().into_iter().max_by_key(|&(v, n)| (n, std::cmp::Reverse(v)));
            if let Some((v, n)) = worst {
                let _ = writeln!(s, "most one-way entries: vertex {v} ({n})");
            }
            let _ = writeln!(s, "links: {}", d.graph.total());
            out.emit(&s)?;
        }
        Command::Decompose { input, algo, measure, search, format, out } => {
            let d = input.load()?;
            let g = &d.graph;
            let measure = measure.unwrap_or(match algo {
                Algo::Topdown => Measure::Hidecs2Decomp,
                Algo::Bldup => Measure::Hidecs3Bldup,
                Algo::Stabl => Measure::Hidecs3Stabl,
            });
            let mut cfg = search.config(measure);
            let mut s = d.header();
            let _ = write!(s, " algo={} measure={measure}", algo.to_possible_value().unwrap().get_name());
            match algo {
                Algo::Topdown => {
                    cfg.seed = search.seed("topdown")?;
                    let _ = writeln!(s, " latis={} seed={}", cfg.latis, cfg.seed);
                    let t = decompose_topdown(g, &cfg)?;
                    if format == Format::Json {
                        s = json(&tree_to_json(g, &t));
                    } else {
                        if let Some(v) = t.value() {
                            let _ = writeln!(s, "top split: {}", display(v, measure.decimals()));
                        }
                        s.push_str(&tree_text(g, &t, measure.decimals()));
                    }
                }
                Algo::Bldup => {
                    s.push('\n');
                    let a = bldup_agglomerate(g, &cfg)?;
                    if format == Format::Json {
                        s = PartitionFile { labels: None, sets: a.partition.to_ids(g) }.to_json() + "\n";
                    } else {
                        let _ = writeln!(s, "merges: {}", a.history.len().saturating_sub(1));
                        let _ = writeln!(s, "{}", value_line(&a.value));
                        s.push_str(&partition_text(g, &a.partition));
                    }
                }
                Algo::Stabl => {
                    let policy = cfg.tie_policy.resolve(g.vertex_count());
                    if policy == TiePolicy::SeededRandom {
                        cfg.seed = search.seed("the seeded-random tie policy")?;
                        let _ = write!(s, " seed={}", cfg.seed);
                    }
                    let _ = writeln!(s, " tie-policy={}", policy.id());
                    let o = stabl_search(g, &cfg)?;
                    if format == Format::Json {
                        s = PartitionFile { labels: None, sets: o.partition.to_ids(g) }.to_json() + "\n";
                    } else {
                        let ties = o.trace.iter().filter(|c| c.ties > 1).count();
                        let _ = writeln!(
                            s,
                            "cycles: {}  tied cycles: {ties}  visited: {}{}",
                            o.trace.len(),
                            o.visited,
                            if o.truncated { "  (cap reached)" } else { "" }
                        );
                        let _ = writeln!(s, "start: {}", display(o.initial_value, measure.decimals()));
                        let _ = writeln!(s, "{}", value_line(&o.value));
                        s.push_str(&partition_text(g, &o.partition));
                    }
                }
            }
            out.emit(&s)?;
        }
        Command::Eval { input, partition, measure, out } => {
            let d = input.load()?;
            let (p, _) = resolve_partition(&partition.partition, &d.graph, &reference_partitions())?;
            let mut s = d.header();
            let _ = writeln!(s, " partition={} cells={}", partition.partition, p.len());
            let measures: Vec<Measure> = match measure {
                Some(m) => vec![m],
                None => Measure::ALL.into_iter().filter(|m| m.arity() == Arity::Any || p.len() == 2).collect(),
            };
            for m in measures {
                let _ = writeln!(s, "{}", value_line(&evaluate(m, &d.graph, &p)?));
            }
            out.emit(&s)?;
        }
        Command::Cliques { input, out } => {
            let d = input.load()?;
            let cliques = maximal_cliques(&d.graph);
            let mut s = d.header();
            let _ = writeln!(s, " cliques={}", cliques.len());
            for c in &cliques {
                let _ = writeln!(s, "[{}] {}", c.len(), ids(&d.graph, c));
            }
            out.emit(&s)?;
        }
        Command::Recompose { input, sets, format, out } => {
            let d = input.load()?;
            let g = &d.graph;
            let sets = match &sets {
                Some(path) => {
                    let f = PartitionFile::parse(&read(path)?)?;
                    f.sets.iter().map(|s| g.indices_of(s)).collect::<hidecs::Result<Vec<_>>>()?
                }
                None => maximal_cliques(g),
            };
            let lattice = recompose_semilattice(g, &sets)?;
            let s = if format == Format::Json {
                json(&semilattice_to_json(g, &lattice))
            } else {
                let mut s = d.header();
                let _ = writeln!(
                    s,
                    " nodes={} arcs={} levels={}",
                    lattice.nodes.len(),
                    lattice.arcs.len(),
                    lattice.levels().len()
                );
                s + &semilattice_text(g, &lattice)
            };
            out.emit(&s)?;
        }
        Command::Estimate { input, m, total, a, samples, seed, workers, out } => {
            let (m, total, mut s) = match (m, total) {
                (Some(m), Some(t)) => (m, t, format!("# m={m} total={t}")),
                _ => {
                    let d = input.load()?;
                    (d.graph.vertex_count() as u64, d.graph.total() as u64, d.header())
                }
            };
            let st = estimate_cut_stats(m, total, a, samples, seed, workers)?;
            let _ = writeln!(s, " a={a} b={} samples={samples} seed={seed} workers={workers}", m.saturating_sub(a));
            let b = m - a;
            let nsq1 = m * (m - 1) / 2;
            let _ = writeln!(s, "mean: {:.4}", st.mean);
            let _ = writeln!(s, "variance: {:.4}", st.variance);
            let _ = writeln!(s, "exact mean: {:.4}", total as f64 * (a * b) as f64 / nsq1 as f64);
            let _ = writeln!(s, "exact variance: {:.4}", exact_cut_variance(m, total, a));
            let _ = writeln!(s, "mn(nsq1-mn): {}", a * b * (nsq1 - a * b));
            out.emit(&s)?;
        }
        Command::Simulate { input, complete, isolated, trials, seed, order, workers, out } => {
            let (g, mut s) = match (complete, isolated) {
                (Some(n), _) => (
                    Graph::from_links(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))?,
                    format!("# complete={n}"),
                ),
                (_, Some(n)) => (Graph::from_links(n, [])?, format!("# isolated={n}")),
                _ => {
                    let d = input.load()?;
                    let h = d.header();
                    (d.graph, h)
                }
            };
            let cfg = HomeostasisConfig { trials, seed, order, workers, ..Default::default() };
            let st = simulate_homeostasis_with(&g, &cfg)?;
            let _ = writeln!(s, " trials={trials} seed={seed} order={} workers={workers}", order.id());
            let _ = writeln!(s, "mean steps: {:.4}", st.mean_steps);
            if st.capped > 0 {
                let _ = writeln!(s, "capped trials: {}", st.capped);
            }
            out.emit(&s)?;
        }
        Command::Pair { input, partition, with, out } => {
            let d = input.load()?;
            let refs = reference_partitions();
            let (pa, la) = resolve_partition(&partition.partition, &d.graph, &refs)?;
            let (pb, lb) = resolve_partition(&with, &d.graph, &refs)?;
            let pr = pair_partitions(&pa, &pb)?;
            let mut s = d.header();
            let _ = writeln!(s, " a={} b={with} overlap={}", partition.partition, pr.total_overlap());
            for p in &pr.pairs {
                let _ = writeln!(s, "{} <-> {} ({} in common)", la[p.a], lb[p.b], p.overlap);
            }
            for &a in &pr.unpaired_a {
                let _ = writeln!(s, "{} unpaired", la[a]);
            }
            for &b in &pr.unpaired_b {
                let _ = writeln!(s, "unpaired {}", lb[b]);
            }
            out.emit(&s)?;
        }
        Command::Matrix { input, partition, series, out } => {
            let d = input.load()?;
            let (p, labels) = resolve_partition(&partition.partition, &d.graph, &reference_partitions())?;
            let m = cohesion_coupling_matrix(&d.graph, &p).with_labels(labels)?;
            out.emit(&if series { sorted_ratio_series(&m).to_csv() } else { m.to_table() })?;
        }
        Command::Replicate { scope, seed, stabl_graph, stabl_partition, graph_a, out } => {
            let seed = match (scope, seed) {
                (Scope::All, None) => bail!("--scope all runs seeded searches; give --seed"),
                (_, s) => s.unwrap_or(1),
            };
            let mut ext = ExternalData::default();
            if let Some(p) = &stabl_graph {
                let g = load_external(p)?;
                if let Some(pp) = &stabl_partition {
                    ext.stabl_partition = Some(PartitionFile::parse(&read(pp)?)?.resolve(&g)?);
                }
                ext.stabl_graph = Some(g);
            }
            if let Some(p) = &graph_a {
                ext.graph_a = Some(load_external(p)?);
            }
            let report = replicate_suite(scope, seed, &ext)?;
            out.emit(&report.to_text())?;
            return Ok(report.deterministic_failures().is_empty());
        }
        Command::ExportDot { input, structure, measure, search, out } => {
            let d = input.load()?;
            let g = &d.graph;
            let dot = match structure {
                DotStructure::Tree => {
                    let mut cfg = search.config(measure.unwrap_or(Measure::Hidecs2Decomp));
                    cfg.seed = search.seed("tree export")?;
                    let t = decompose_topdown(g, &cfg)?;
                    let dot = export_dot(g, Structure::Tree(&t), &layout_tree(&t))?;
                    format!("// seed={} latis={}\n{dot}", cfg.seed, cfg.latis)
                }
                DotStructure::ReferenceTree => {
                    let refs = reference_partitions();
                    let chain = ["ca-pi1", "ca-pi2", "ca-pi4"]
                        .iter()
                        .map(|id| refs.get(id)?.resolve(g))
                        .collect::<hidecs::Result<Vec<_>>>()?;
                    let single = Partition::single(g.vertex_count());
                    let t = refinement_tree(
                        g,
                        &[&single, &chain[0], &chain[1], &chain[2]],
                        measure.unwrap_or(Measure::Hidecs2Decomp),
                    )?;
                    export_dot(g, Structure::Tree(&t), &layout_tree(&t))?
                }
                DotStructure::Semilattice => {
                    let s = recompose_semilattice(g, &maximal_cliques(g))?;
                    export_dot(g, Structure::Semilattice(&s), &layout_layers(&s))?
                }
            };
            out.emit(&dot)?;
        }
        Command::ExportData { input, what, id, out } => {
            let d = input.load()?;
            let text = match what {
                DataKind::Interactions => match &d.bundle {
                    Some(b) if input.restrict.is_none() => b.raw.to_text(),
                    _ => to_table(&d.graph).to_text(),
                },
                DataKind::Requirements => {
                    let b = d.bundle.as_ref().context("requirements exist only for embedded datasets")?;
                    let mut s = String::new();
                    for r in &b.requirements {
                        let group = r.group.as_deref().map(|g| format!("[{g}] ")).unwrap_or_default();
                        let _ = writeln!(s, "{} {group}{}", r.id, r.text);
                    }
                    s
                }
                DataKind::OneWay => d.report.to_lines(),
                DataKind::Partition => {
                    let id = id.context("--what partition needs --id")?;
                    let refs = reference_partitions();
                    let named = refs.get(&id)?;
                    PartitionFile { labels: Some(named.labels.clone()), sets: named.sets.clone() }.to_json() + "\n"
                }
            };
            out.emit(&text)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
