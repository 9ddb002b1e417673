//! Acceptance criteria 1 to 14, one PASS/FAIL line each. Runs without the
//! libtest harness; exits nonzero when any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use hidecs::analysis::{
    cohesion_coupling_matrix, estimate_cut_stats, format_ratio, simulate_homeostasis, CohesionCouplingMatrix,
};
use hidecs::datasets::{load_dataset, reference_partitions, ReferencePartitions};
use hidecs::graph::{parse_interactions, symmetrize};
use hidecs::measures::{evaluate, Arity, Measure};
use hidecs::replicate::{replicate_suite, ExternalData, Scope, Status};
use hidecs::rng::SplitMix64;
use hidecs::search::{
    bisect_best, brute_force_bipartition, build_misplaced_vertex_instance, decompose_set, maximal_cliques,
    stabl_search, SearchConfig,
};
use hidecs::{Graph, Partition, SymmetryRule};

const SEED: u64 = 1;

type Criterion = (&'static str, fn(&Ctx) -> Verdict);

struct Ctx {
    g: Graph,
    refs: ReferencePartitions,
}

impl Ctx {
    fn ids(&self, labels: &[&str]) -> Vec<usize> {
        labels.iter().flat_map(|l| self.refs.ca_set(l).unwrap().to_vec()).collect()
    }

    fn cells(&self, groups: &[&[&str]]) -> Partition {
        let sets: Vec<Vec<usize>> = groups.iter().map(|g| self.ids(g)).collect();
        Partition::from_ids(&self.g, &sets).unwrap()
    }

    fn named(&self, id: &str) -> Partition {
        self.refs.get(id).unwrap().resolve(&self.g).unwrap()
    }

    fn value(&self, m: Measure, p: &Partition) -> f64 {
        evaluate(m, &self.g, p).unwrap().value
    }
}

/// Collects sub-check results for one criterion.
#[derive(Default)]
struct Verdict {
    notes: Vec<String>,
    ok: bool,
}

impl Verdict {
    fn new() -> Self {
        Self { notes: Vec::new(), ok: true }
    }

    fn check(&mut self, ok: bool, note: String) {
        if !ok {
            self.ok = false;
            self.notes.push(format!("[x] {note}"));
        } else {
            self.notes.push(note);
        }
    }

    fn near(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.check((got - want).abs() <= tol, format!("{what} {got:.4} vs {want} ±{tol}"));
    }
}

fn c1(_: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let d = load_dataset("indian-village").unwrap();
    let (g, rep) = symmetrize(&d.raw, SymmetryRule::Both);
    v.check(rep.len() == 50, format!("{} one-way entries", rep.len()));
    v.check(rep.touching(33) == 30, format!("{} touching 33", rep.touching(33)));
    v.check(g.total() == 1383, format!("{} links", g.total()));
    v
}

fn c2(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    v.near("C1/C2", c.value(Measure::Hidecs2Decomp, &c.cells(&[&["C1"], &["C2"]])), -89.60, 0.01);
    v
}

fn c3(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let o1 = c.value(Measure::Hidecs2Decomp, &c.cells(&[&["A", "B"], &["C", "D"]]));
    let o2 = c.value(Measure::Hidecs2Decomp, &c.cells(&[&["A", "C"], &["B", "D"]]));
    let o3 = c.value(Measure::Hidecs2Decomp, &c.cells(&[&["A", "D"], &["B", "C"]]));
    v.near("AB|CD", o1, -645.04, 0.01);
    v.near("AC|BD", o2, -434.40, 0.01);
    v.near("AD|BC", o3, -562.65, 0.01);
    v.check(o1 < o3 && o3 < o2, "option 1 < 3 < 2".into());
    v
}

fn c4(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    for (x, y, want) in [
        ("A", "B", -197.83),
        ("A", "C", -257.00),
        ("A", "D", -197.98),
        ("B", "C", -341.70),
        ("B", "D", -345.84),
        ("C", "D", -297.75),
    ] {
        // evaluation is on the subgraph induced by the partition's universe
        v.near(&format!("{x}&{y}"), c.value(Measure::Hidecs2Decomp, &c.cells(&[&[x], &[y]])), want, 0.01);
    }
    v
}

fn c5(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    for (id, want) in [("ca-pi1", -434.40), ("ca-pi2", -945.57), ("ca-pi4", -1072.62)] {
        v.near(id, c.value(Measure::Hidecs2Notes, &c.named(id)), want, 0.01);
    }
    v
}

fn c6(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    for (id, want) in [("rpg1-pi4", -1182.20), ("rpg2-pi4", -1089.22)] {
        v.near(id, c.value(Measure::Hidecs2Notes, &c.named(id)), want, 0.01);
    }
    v
}

fn c7(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let named = c.refs.get("ca-pi4").unwrap();
    let m: CohesionCouplingMatrix =
        cohesion_coupling_matrix(&c.g, &c.named("ca-pi4")).with_labels(named.labels.clone()).unwrap();
    for (a, b, want) in
        [("A1", "A1", 0.444), ("A2", "A2", 0.778), ("B3", "B3", 0.682), ("A1", "A2", 0.173), ("D2", "D3", 0.205)]
    {
        v.near(&format!("{a}/{b}"), m.get(a, b).unwrap(), want, 0.0005);
    }
    let printed = include_str!("../data/ca_pi4_matrix.txt");
    let mut rows = printed.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = rows.next().unwrap().split_whitespace().collect();
    let (mut cells, mut bad) = (0, 0);
    for row in rows {
        let mut f = row.split_whitespace();
        let r = f.next().unwrap();
        for (col, want) in header.iter().zip(f) {
            cells += 1;
            bad += usize::from(format_ratio(m.get(r, col).unwrap()) != want);
        }
    }
    v.check(cells == 144 && bad == 0, format!("{bad} of {cells} printed cells differ"));
    v
}

fn c8(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    v.near("Q newman-4", c.value(Measure::NewmanQ, &c.named("newman-4")), 0.297, 0.002);
    // the .208 figure is the 12-cell decomposition; the 4-cell one gives .285
    v.near("Q ca-pi4", c.value(Measure::NewmanQ, &c.named("ca-pi4")), 0.208, 0.005);
    v.near("Q rpg1-pi4", c.value(Measure::NewmanQ, &c.named("rpg1-pi4")), 0.193, 0.005);
    v.near("Q rpg2-pi4", c.value(Measure::NewmanQ, &c.named("rpg2-pi4")), 0.176, 0.005);
    v
}

fn c9(_: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let small = estimate_cut_stats(9, 14, 5, 1_000_000, SEED, 1).unwrap();
    v.near("(9,14,5) mean", small.mean, 7.7778, 0.01);
    v.near("(9,14,5) variance", small.variance, 2.60, 0.15);
    let iv = estimate_cut_stats(141, 1383, 75, 100_000, SEED, 1).unwrap();
    v.near("(141,1383,75) variance", iv.variance, 293.60, 29.36);
    let (m, n): (u64, u64) = (75, 66);
    let nsq1 = 141 * 140 / 2;
    v.check(m * n * (nsq1 - m * n) == 24_354_000, format!("mn(nsq1-mn) = {}", m * n * (nsq1 - m * n)));
    v
}

fn c10(c: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let set = c.g.indices_of(c.refs.ca_set("C").unwrap()).unwrap();
    let sub = c.g.induced_subgraph(&set).unwrap();
    let all: Vec<usize> = (0..sub.vertex_count()).collect();
    let (mut best, mut lo, mut hi) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let mut trees = HashSet::new();
    for r in 0..100 {
        let cfg = SearchConfig { latis: 5, seed: SEED + r, max_depth: Some(3), ..Default::default() };
        let t = decompose_set(&sub, &all, &cfg).unwrap();
        best = best.min(t.value().unwrap());
        let leaves = evaluate(Measure::Hidecs2Notes, &sub, &t.level_partition(usize::MAX)).unwrap().value;
        lo = lo.min(leaves);
        hi = hi.max(leaves);
        trees.insert(t.walk().iter().map(|w| (w.0, w.1.set.clone())).collect::<Vec<_>>());
    }
    v.near("best top split", best, -91.60, 0.01);
    v.check(trees.len() >= 30, format!("{} distinct trees", trees.len()));
    v.check(
        lo >= -144.68 - 0.5 && hi <= -136.94 + 0.5,
        format!("leaf values [{lo:.2}, {hi:.2}] vs [-144.68, -136.94] ±0.5"),
    );
    v
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn random_graph(rng: &mut SplitMix64, m: usize) -> Graph {
    let p = 0.15 + 0.7 * rng.next_f64();
    let mut links = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if rng.next_f64() < p {
                links.push((a, b));
            }
        }
    }
    Graph::from_links(m, links).unwrap()
}

fn split(rng: &mut SplitMix64, m: usize) -> Partition {
    loop {
        let side: Vec<bool> = (0..m).map(|_| rng.coin()).collect();
        let a: Vec<usize> = (0..m).filter(|&v| side[v]).collect();
        if !a.is_empty() && a.len() < m {
            let b = (0..m).filter(|&v| !side[v]).collect();
            return Partition::new(vec![a, b]).unwrap();
        }
    }
}

/// h2-decomp written out from link counts.
fn decomp_oracle(g: &Graph, side: &[bool]) -> f64 {
    let m = side.len() as f64;
    let nsq1 = m * (m - 1.0) / 2.0;
    let a = side.iter().filter(|&&s| s).count() as f64;
    let ab = a * (m - a);
    let cut = g.links().filter(|&(x, y)| side[x] != side[y]).count() as f64;
    let d = ab * (nsq1 - ab);
    if d == 0.0 {
        0.0
    } else {
        (cut * nsq1 - g.total() as f64 * ab) / d.sqrt()
    }
}

fn best_split_oracle(g: &Graph) -> f64 {
    let m = g.vertex_count();
    (0u32..1 << m)
        .filter(|&mask| mask & 1 == 1 && mask != (1 << m) - 1)
        .map(|mask| decomp_oracle(g, &(0..m).map(|v| mask >> v & 1 == 1).collect::<Vec<_>>()))
        .fold(f64::INFINITY, f64::min)
}

fn cliques_oracle(g: &Graph) -> Vec<Vec<usize>> {
    let m = g.vertex_count();
    let is_clique =
        |s: u32| (0..m).all(|a| (0..m).all(|b| a == b || s >> a & 1 == 0 || s >> b & 1 == 0 || g.has_link(a, b)));
    let cliques: Vec<u32> = (1u32..1 << m).filter(|&s| is_clique(s)).collect();
    let mut out: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|&&s| !cliques.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..m).filter(|&v| s >> v & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

fn c11(_: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let mut rng = SplitMix64::new(SEED);
    let mut bad = [0usize; 6];
    for _ in 0..1000 {
        let m = 4 + rng.below(9) as usize;
        let g = random_graph(&mut rng, m);
        if g.total() == 0 {
            continue;
        }
        let (p1, p2) = (split(&mut rng, m), split(&mut rng, m));
        let ev = |ms: Measure, g: &Graph, p: &Partition| evaluate(ms, g, p).unwrap();
        let (d1, d2) = (ev(Measure::Hidecs2Decomp, &g, &p1), ev(Measure::Hidecs2Decomp, &g, &p2));
        let (a1, a2) = (ev(Measure::Hidecs2Actual, &g, &p1), ev(Measure::Hidecs2Actual, &g, &p2));
        bad[0] += usize::from(!close(d1.value, d2.value) && (d1.value < d2.value) != (a1.value < a2.value));
        bad[1] += usize::from(!close(ev(Measure::Hidecs2Notes, &g, &p1).value, d1.value));
        if let Some(s) = a1.get("STR") {
            bad[2] += usize::from(!close(d1.value, g.nsq1() as f64 * s));
        }
        bad[3] += usize::from(!close(ev(Measure::Hidecs3Stabl, &g, &Partition::unit(m)).value, -2.0 * m as f64));
        bad[4] += usize::from(ev(Measure::NewmanQ, &g, &Partition::single(m)).value.abs() > 1e-12);
        let mut perm: Vec<usize> = (0..m).collect();
        rng.shuffle(&mut perm);
        let pg = Graph::from_links(m, g.links().map(|(a, b)| (perm[a], perm[b]))).unwrap();
        let k = 1 + rng.below(m as u64) as usize;
        let mut cells = vec![Vec::new(); k];
        for x in 0..m {
            cells[rng.below(k as u64) as usize].push(x);
        }
        let pk = Partition::new(cells.into_iter().filter(|c| !c.is_empty()).collect()).unwrap();
        let moved = |p: &Partition| {
            Partition::new(p.cells().iter().map(|c| c.iter().map(|&x| perm[x]).collect()).collect()).unwrap()
        };
        for ms in Measure::ALL {
            let p = if ms.arity() == Arity::Bipartition { &p1 } else { &pk };
            bad[5] += usize::from(!close(ev(ms, &g, p).value, ev(ms, &pg, &moved(p)).value));
        }
    }
    for (name, b) in ["order", "two-cell", "proportional", "EXP(unit)", "Q(single)", "relabel"].iter().zip(bad) {
        v.check(b == 0, format!("{name} {b}"));
    }
    let (mut clique_bad, mut split_bad) = (0, 0);
    for _ in 0..200 {
        let m = 1 + rng.below(10) as usize;
        let g = random_graph(&mut rng, m);
        clique_bad += usize::from(maximal_cliques(&g) != cliques_oracle(&g));
        if m >= 3 {
            let all: Vec<usize> = (0..m).collect();
            let (_, val) = brute_force_bipartition(&g, &all, Measure::Hidecs2Decomp).unwrap();
            split_bad += usize::from(!close(val.value, best_split_oracle(&g)));
        }
    }
    v.check(clique_bad == 0, format!("cliques {clique_bad}"));
    v.check(split_bad == 0, format!("brute split {split_bad}"));
    let mut hits = 0;
    for k in 0..50 {
        let g = random_graph(&mut rng, 10);
        let all: Vec<usize> = (0..10).collect();
        let b = bisect_best(&g, &all, &SearchConfig { latis: 500, seed: SEED + k, ..Default::default() }).unwrap();
        hits += usize::from(close(b.value.value, best_split_oracle(&g)));
    }
    v.check(hits >= 45, format!("bisect optimal on {hits}/50"));
    v
}

fn c12(_: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let h = build_misplaced_vertex_instance();
    let l = h.side("L");
    let r = h.side("R");
    v.check(h.links_of_x_into(&l) == 3 && h.links_of_x_into(&r) == 4, "x has 3 links to L, 4 to R".into());
    let all: Vec<usize> = (0..h.graph.vertex_count()).collect();
    let b = bisect_best(&h.graph, &all, &SearchConfig { seed: SEED, ..Default::default() }).unwrap();
    let with_x = b.partition.cells().iter().find(|c| c.contains(&h.x)).unwrap();
    v.check(r.iter().all(|u| with_x.contains(u)) && with_x.len() == r.len() + 1, "bisection puts x with R".into());
    let mut l2 = h.cluster("L2").unwrap().to_vec();
    l2.push(h.x);
    for ms in [Measure::Hidecs3Stabl, Measure::NewmanQ] {
        let out = stabl_search(&h.graph, &SearchConfig::with_measure(ms)).unwrap();
        let cell = out.partition.cells().iter().find(|c| c.contains(&h.x)).unwrap();
        v.check(cell == &l2, format!("{ms} puts x with L2"));
    }
    v
}

fn c13(_: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let free = Graph::from_links(5, []).unwrap();
    let k5 = Graph::from_links(5, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b)))).unwrap();
    let a = simulate_homeostasis(&free, 100_000, SEED).unwrap().mean_steps;
    let b = simulate_homeostasis(&k5, 100_000, SEED).unwrap().mean_steps;
    v.check((3.0..=7.0).contains(&(b / a)), format!("ratio {:.3} ({b:.3} / {a:.3}) in [3, 7]", b / a));
    v
}

fn c14(_: &Ctx) -> Verdict {
    let mut v = Verdict::new();
    let report = replicate_suite(Scope::Deterministic, SEED, &ExternalData::default()).unwrap();
    let external: Vec<_> = report.records.iter().filter(|r| r.criterion == Some(14)).collect();
    v.check(
        external.len() == 4 && external.iter().all(|r| r.status == Status::Skipped("external data".into())),
        format!("{} figure-only checks marked skipped: external data", external.len()),
    );
    // with a transcription supplied the checks run instead of skipping
    let text = "1 : 2, 3\n2 : 1, 3\n3 : 1, 2, 4\n4 : 3, 5, 6\n5 : 4, 6\n6 : 4, 5\n";
    let (g, _) = symmetrize(&parse_interactions(text, None).unwrap(), SymmetryRule::Both);
    let ext = ExternalData { stabl_graph: Some(g.clone()), stabl_partition: None, graph_a: Some(g) };
    let report = replicate_suite(Scope::Deterministic, SEED, &ext).unwrap();
    let ran =
        report.records.iter().filter(|r| r.criterion == Some(14) && !matches!(r.status, Status::Skipped(_))).count();
    v.check(ran == 3, format!("{ran} figure-only checks run on a supplied file"));
    v
}

fn main() -> ExitCode {
    let ctx = Ctx { g: load_dataset("indian-village").unwrap().graph(), refs: reference_partitions() };
    let criteria: [Criterion; 14] = [
        ("data audit", c1),
        ("C1/C2 split", c2),
        ("balanced union options", c3),
        ("pairwise unions", c4),
        ("reference decompositions", c5),
        ("published 16-set partitions", c6),
        ("cohesion and coupling matrix", c7),
        ("modularity", c8),
        ("sampling estimators", c9),
        ("search target on C", c10),
        ("property suites", c11),
        ("misplaced vertex instance", c12),
        ("homeostasis", c13),
        ("figure-only results", c14),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = run(&ctx);
        let mark = if verdict.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!verdict.ok);
        println!(
            "criterion {:>2} {mark} {name} ({:.1}s): {}",
            i + 1,
            t.elapsed().as_secs_f64(),
            verdict.notes.join("; ")
        );
    }
    println!("acceptance: {} of 14 criteria pass", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
