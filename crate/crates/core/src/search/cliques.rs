use crate::graph::Graph;

type Bits = Vec<u64>;

fn count(b: &[u64]) -> u32 {
    b.iter().map(|w| w.count_ones()).sum()
}

fn members(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Every maximal clique of `g`, each sorted, ordered by size descending
/// and then lexicographically. Isolated vertices are cliques of one.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let m = g.vertex_count();
    let words = g.word_count();
    let mut all: Bits = vec![0; words];
    for v in 0..m {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(g, &mut r, all, vec![0; words], &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Bron-Kerbosch with Tomita pivoting: the pivot maximizes its neighbors
/// among the candidates.
fn expand(g: &Graph, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
    if p.iter().all(|&w| w == 0) {
        if x.iter().all(|&w| w == 0) && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = members(&p)
        .chain(members(&x))
        .max_by_key(|&u| (count(&and(&p, g.row(u))), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    let skip = g.row(pivot);
    let candidates: Vec<usize> = members(&p).filter(|&v| skip[v / 64] >> (v % 64) & 1 == 0).collect();
    for v in candidates {
        let row = g.row(v);
        r.push(v);
        expand(g, r, and(&p, row), and(&x, row), out);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}
