use proptest::prelude::*;

use hidecs::analysis::{count_crossings, estimate_cut_stats, exact_cut_variance, layout_levels, pair_partitions};
use hidecs::measures::{evaluate, Arity, Measure};
use hidecs::search::{decompose_topdown, maximal_cliques, stabl_search, SearchConfig, TiePolicy};
use hidecs::{Graph, Partition};

fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (2..=max).prop_flat_map(|m| {
        proptest::collection::vec(any::<bool>(), m * (m - 1) / 2).prop_map(move |bits| {
            let pairs = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b)));
            Graph::from_links(m, pairs.zip(bits).filter(|p| p.1).map(|p| p.0)).unwrap()
        })
    })
}

/// A graph with a cell label in `0..k` per vertex.
fn graph_and_labels(max: usize, k: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max).prop_flat_map(move |g| {
        let m = g.vertex_count();
        (Just(g), proptest::collection::vec(0..k, m))
    })
}

fn partition(labels: &[usize]) -> Partition {
    let k = labels.iter().max().map_or(0, |&x| x + 1);
    let mut cells = vec![Vec::new(); k];
    for (v, &c) in labels.iter().enumerate() {
        cells[c].push(v);
    }
    Partition::new(cells.into_iter().filter(|c| !c.is_empty()).collect()).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Every set partition of `0..m` as restricted growth strings.
fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0; m];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for c in 0..=max + 1 {
            rgs[i] = c;
            rec(i + 1, max.max(c), rgs, out);
        }
    }
    if m > 0 {
        rec(1, 0, &mut rgs, &mut out);
    }
    out
}

fn value(ms: Measure, g: &Graph, p: &Partition) -> f64 {
    evaluate(ms, g, p).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bell_numbers(m in 1usize..=7) {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        prop_assert_eq!(set_partitions(m).len(), bell[m]);
    }

    #[test]
    fn actual_and_decomp_order_agree((g, l1, l2) in graph(10).prop_flat_map(|g| {
        let m = g.vertex_count();
        (Just(g), proptest::collection::vec(any::<bool>(), m), proptest::collection::vec(any::<bool>(), m))
    })) {
        let m = g.vertex_count();
        let two = |side: &[bool]| {
            let a: Vec<usize> = (0..m).filter(|&v| side[v]).collect();
            let b: Vec<usize> = (0..m).filter(|&v| !side[v]).collect();
            (!a.is_empty() && !b.is_empty()).then(|| Partition::new(vec![a, b]).unwrap())
        };
        let (Some(p1), Some(p2)) = (two(&l1), two(&l2)) else { return Ok(()) };
        prop_assume!(g.total() > 0);
        let (d1, d2) = (value(Measure::Hidecs2Decomp, &g, &p1), value(Measure::Hidecs2Decomp, &g, &p2));
        let (a1, a2) = (value(Measure::Hidecs2Actual, &g, &p1), value(Measure::Hidecs2Actual, &g, &p2));
        if !close(d1, d2) && !close(a1, a2) {
            prop_assert_eq!(d1 < d2, a1 < a2);
        }
        prop_assert!(close(value(Measure::Hidecs2Notes, &g, &p1), d1));
        let str_ = evaluate(Measure::Hidecs2Actual, &g, &p1).unwrap().get("STR");
        if let Some(s) = str_ {
            prop_assert!(close(d1, g.nsq1() as f64 * s));
        }
    }

    #[test]
    fn unit_and_single_partitions(g in graph(12)) {
        let m = g.vertex_count();
        prop_assert!(close(value(Measure::Hidecs3Stabl, &g, &Partition::unit(m)), -2.0 * m as f64));
        if g.total() > 0 {
            prop_assert!(value(Measure::NewmanQ, &g, &Partition::single(m)).abs() < 1e-12);
        }
    }

    #[test]
    fn measures_ignore_vertex_names((g, labels, seed) in graph_and_labels(10, 4).prop_flat_map(|(g, l)| (Just(g), Just(l), any::<u64>()))) {
        let m = g.vertex_count();
        let mut perm: Vec<usize> = (0..m).collect();
        hidecs::rng::SplitMix64::new(seed).shuffle(&mut perm);
        let pg = Graph::from_links(m, g.links().map(|(a, b)| (perm[a], perm[b]))).unwrap();
        let p = partition(&labels);
        let moved = Partition::new(p.cells().iter().map(|c| c.iter().map(|&x| perm[x]).collect()).collect()).unwrap();
        for ms in Measure::ALL {
            if ms.arity() == Arity::Bipartition && p.len() != 2 {
                continue;
            }
            let (x, y) = (evaluate(ms, &g, &p), evaluate(ms, &pg, &moved));
            match (x, y) {
                (Ok(x), Ok(y)) => prop_assert!(close(x.value, y.value), "{ms}: {} vs {}", x.value, y.value),
                (x, y) => prop_assert_eq!(x.is_ok(), y.is_ok()),
            }
        }
    }

    #[test]
    fn bldup_sign_follows_notes((g, labels) in graph_and_labels(10, 2)) {
        let p = partition(&labels);
        prop_assume!(p.len() == 2 && g.total() > 0);
        let notes = value(Measure::Hidecs2Notes, &g, &p);
        let info2 = value(Measure::Hidecs3Bldup, &g, &p);
        if notes.abs() > 1e-9 {
            prop_assert_eq!(notes > 0.0, info2 > 0.0, "notes {} info2 {}", notes, info2);
        }
    }

    #[test]
    fn cliques_match_subset_enumeration(g in graph(10)) {
        let m = g.vertex_count();
        let clique = |s: u32| (0..m).all(|a| (a + 1..m).all(|b| s >> a & 1 == 0 || s >> b & 1 == 0 || g.has_link(a, b)));
        let all: Vec<u32> = (1u32..1 << m).filter(|&s| clique(s)).collect();
        let mut want: Vec<Vec<usize>> = all
            .iter()
            .filter(|&&s| !all.iter().any(|&t| t != s && t & s == s))
            .map(|&s| (0..m).filter(|&v| s >> v & 1 == 1).collect())
            .collect();
        want.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        prop_assert_eq!(maximal_cliques(&g), want);
    }

    #[test]
    fn pairing_matches_injection_enumeration((l1, l2) in (1usize..10).prop_flat_map(|m| {
        (proptest::collection::vec(0..4usize, m), proptest::collection::vec(0..5usize, m))
    })) {
        let (pa, pb) = (partition(&l1), partition(&l2));
        let pr = pair_partitions(&pa, &pb).unwrap();
        let ov = |i: usize, j: usize| pa.cells()[i].iter().filter(|v| pb.cells()[j].contains(v)).count();
        // every injection of the smaller side into the larger one
        let (small, large) = (pa.len().min(pb.len()), pa.len().max(pb.len()));
        let mut best = 0;
        let mut stack = vec![(Vec::<usize>::new(), 0usize)];
        while let Some((used, sum)) = stack.pop() {
            if used.len() == small {
                best = best.max(sum);
                continue;
            }
            let i = used.len();
            for j in (0..large).filter(|j| !used.contains(j)) {
                let o = if pa.len() <= pb.len() { ov(i, j) } else { ov(j, i) };
                let mut next = used.clone();
                next.push(j);
                stack.push((next, sum + o));
            }
        }
        prop_assert_eq!(pr.total_overlap(), best);
        for p in &pr.pairs {
            prop_assert_eq!(p.overlap, ov(p.a, p.b));
            prop_assert!(p.overlap > 0);
        }
    }

    #[test]
    fn layout_never_adds_crossings(levels_arcs in (2usize..5).prop_flat_map(|depth| {
        proptest::collection::vec(1usize..6, depth).prop_flat_map(|sizes| {
            let mut ids = Vec::new();
            let mut next = 0;
            for s in &sizes {
                ids.push((next..next + s).collect::<Vec<_>>());
                next += s;
            }
            let arcs = proptest::collection::vec((0..next, 0..next), 0..20);
            (Just(ids), arcs)
        })
    })) {
        let (levels, raw) = levels_arcs;
        let level_of = |v: usize| levels.iter().position(|l| l.contains(&v)).unwrap();
        let arcs: Vec<(usize, usize)> = raw.into_iter().filter(|&(a, b)| level_of(b) == level_of(a) + 1).collect();
        let before = count_crossings(&levels, &arcs);
        let out = layout_levels(levels.clone(), arcs.clone());
        prop_assert_eq!(out.initial_crossings, before);
        prop_assert!(out.crossings <= before);
        prop_assert_eq!(count_crossings(&out.levels, &arcs), out.crossings);
        for (l, o) in levels.iter().zip(&out.levels) {
            let (mut a, mut b) = (l.clone(), o.clone());
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn topdown_leaves_partition_the_universe((g, seed) in (graph(12), any::<u64>())) {
        let cfg = SearchConfig { latis: 8, seed, ..Default::default() };
        let t = decompose_topdown(&g, &cfg).unwrap();
        let mut leaves: Vec<usize> = t.leaves().concat();
        leaves.sort_unstable();
        prop_assert_eq!(leaves, (0..g.vertex_count()).collect::<Vec<_>>());
        for (_, node) in t.walk() {
            if let (Some([a, b]), Some(v)) = (node.children(), node.value()) {
                let p = Partition::new(vec![a.set.clone(), b.set.clone()]).unwrap();
                let sub = g.induced_subgraph(&node.set).unwrap();
                let local = |s: &[usize]| s.iter().map(|x| node.set.binary_search(x).unwrap()).collect::<Vec<_>>();
                let lp = Partition::new(p.cells().iter().map(|c| local(c)).collect()).unwrap();
                prop_assert!(close(value(cfg.measure, &sub, &lp), v));
            }
        }
        prop_assert_eq!(&t, &decompose_topdown(&g, &cfg).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stabl_ends_at_a_local_optimum_below_the_global_one(g in graph(7), random in any::<bool>(), seed in any::<u64>()) {
        prop_assume!(g.total() > 0);
        let m = g.vertex_count();
        for ms in [Measure::Hidecs3Stabl, Measure::NewmanQ] {
            let policy = if random { TiePolicy::SeededRandom } else { TiePolicy::Exhaustive };
            let cfg = SearchConfig { measure: ms, seed, tie_policy: policy, ..Default::default() };
            let out = stabl_search(&g, &cfg).unwrap();
            let got = value(ms, &g, &out.partition);
            prop_assert!(close(got, out.value.value));
            let global = set_partitions(m).iter().map(|r| value(ms, &g, &partition(r))).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(got <= global + 1e-9);
            // no single element move improves the end point
            let cell_of = out.partition.cell_map(m);
            let labels: Vec<usize> = cell_of.iter().map(|c| c.unwrap()).collect();
            for v in 0..m {
                for c in 0..out.partition.len() {
                    let mut moved = labels.clone();
                    moved[v] = c;
                    prop_assert!(value(ms, &g, &partition(&moved)) <= got + 1e-9);
                }
            }
            prop_assert_eq!(&out, &stabl_search(&g, &cfg).unwrap());
        }
    }

    #[test]
    fn sampled_cut_stats_converge(m in 4u64..12, frac in 0.1f64..0.9, a_frac in 0.2f64..0.8, seed in any::<u64>()) {
        let nsq1 = m * (m - 1) / 2;
        let total = ((nsq1 as f64 * frac) as u64).max(1);
        let a = ((m as f64 * a_frac) as u64).clamp(1, m - 1);
        let st = estimate_cut_stats(m, total, a, 20_000, seed, 2).unwrap();
        let ab = (a * (m - a)) as f64;
        let mean = total as f64 * ab / nsq1 as f64;
        let var = exact_cut_variance(m, total, a);
        prop_assert!((st.mean - mean).abs() < 5.0 * (var / 20_000.0).sqrt() + 1e-9, "mean {} vs {}", st.mean, mean);
        prop_assert!((st.variance - var).abs() < 0.1 * var + 1e-9, "variance {} vs {}", st.variance, var);
        prop_assert_eq!(st, estimate_cut_stats(m, total, a, 20_000, seed, 2).unwrap());
    }
}
