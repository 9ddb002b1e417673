//! Layered drawing order with barycenter crossing reduction.

use crate::search::semilattice::Semilattice;
use crate::search::topdown::DecompositionTree;

/// Node ids per level, bottom level first, plus `(lower, upper)` arcs
/// between adjacent levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredLayout {
    pub levels: Vec<Vec<usize>>,
    pub arcs: Vec<(usize, usize)>,
    pub initial_crossings: u64,
    pub crossings: u64,
}

pub fn layout_layers(s: &Semilattice) -> LayeredLayout {
    layout_levels(s.levels(), s.arcs.clone())
}

/// Tree nodes are numbered in pre-order ([`DecompositionTree::walk`]);
/// level `d` holds depth `d`, so the root sits on level 0 here and the
/// arcs run `(parent, child)`.
pub fn layout_tree(t: &DecompositionTree) -> LayeredLayout {
    let walk = t.walk();
    let depth = walk.iter().map(|w| w.0).max().unwrap_or(0);
    let mut levels = vec![Vec::new(); depth + 1];
    let mut arcs = Vec::new();
    // the parent of node i is the last node before it one level up
    let mut last_at: Vec<usize> = vec![0; depth + 1];
    for (id, &(d, _)) in walk.iter().enumerate() {
        levels[d].push(id);
        if d > 0 {
            arcs.push((last_at[d - 1], id));
        }
        last_at[d] = id;
    }
    layout_levels(levels, arcs)
}

/// Start from the given order and alternate downward and upward sweeps,
/// each reordering one level at a time by the mean position of its
/// neighbors on the level just processed. Nodes without such neighbors
/// keep their position as key; equal keys keep their order. Stops at the
/// first sweep that does not lower the crossing count and returns the best
/// order seen.
pub fn layout_levels(levels: Vec<Vec<usize>>, arcs: Vec<(usize, usize)>) -> LayeredLayout {
    let initial = count_crossings(&levels, &arcs);
    let mut best = levels.clone();
    let mut best_count = initial;
    let mut cur = levels;
    let mut down = true;
    while best_count > 0 {
        sweep(&mut cur, &arcs, down);
        down = !down;
        let c = count_crossings(&cur, &arcs);
        if c >= best_count {
            break;
        }
        best_count = c;
        best = cur.clone();
    }
    LayeredLayout { levels: best, arcs, initial_crossings: initial, crossings: best_count }
}

fn positions(levels: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let n = levels.iter().flatten().max().map_or(0, |&x| x + 1);
    let (mut pos, mut lvl) = (vec![usize::MAX; n], vec![usize::MAX; n]);
    for (l, nodes) in levels.iter().enumerate() {
        for (i, &v) in nodes.iter().enumerate() {
            pos[v] = i;
            lvl[v] = l;
        }
    }
    (pos, lvl)
}

fn sweep(levels: &mut [Vec<usize>], arcs: &[(usize, usize)], down: bool) {
    let k = levels.len();
    let order: Vec<usize> = if down { (1..k).collect() } else { (0..k.saturating_sub(1)).rev().collect() };
    for l in order {
        let fixed = if down { l - 1 } else { l + 1 };
        let (pos, lvl) = positions(levels);
        let mut keyed: Vec<(f64, usize)> = levels[l]
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let ns: Vec<usize> = arcs
                    .iter()
                    .filter_map(|&(a, b)| match (a == v, b == v) {
                        (true, _) if lvl[b] == fixed => Some(pos[b]),
                        (_, true) if lvl[a] == fixed => Some(pos[a]),
                        _ => None,
                    })
                    .collect();
                let key = if ns.is_empty() { i as f64 } else { ns.iter().sum::<usize>() as f64 / ns.len() as f64 };
                (key, v)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
        levels[l] = keyed.into_iter().map(|x| x.1).collect();
    }
}

/// Pairs of arcs between the same two adjacent levels whose end points
/// appear in opposite orders.
pub fn count_crossings(levels: &[Vec<usize>], arcs: &[(usize, usize)]) -> u64 {
    let (pos, lvl) = positions(levels);
    let mut total = 0;
    for l in 0..levels.len().saturating_sub(1) {
        let mut pairs: Vec<(usize, usize)> = arcs
            .iter()
            .filter_map(|&(a, b)| {
                if lvl[a] == l && lvl[b] == l + 1 {
                    Some((pos[a], pos[b]))
                } else if lvl[b] == l && lvl[a] == l + 1 {
                    Some((pos[b], pos[a]))
                } else {
                    None
                }
            })
            .collect();
        pairs.sort_unstable();
        // Fenwick tree over upper positions, filled one lower position at a time
        let width = levels[l + 1].len();
        let mut tree = vec![0u64; width + 1];
        let mut inserted = 0u64;
        let mut i = 0;
        while i < pairs.len() {
            let mut j = i;
            while j < pairs.len() && pairs[j].0 == pairs[i].0 {
                // earlier arcs ending strictly to the right cross this one
                let mut at_most = 0;
                let mut x = pairs[j].1 + 1;
                while x > 0 {
                    at_most += tree[x];
                    x &= x - 1;
                }
                total += inserted - at_most;
                j += 1;
            }
            for p in &pairs[i..j] {
                let mut x = p.1 + 1;
                while x <= width {
                    tree[x] += 1;
                    x += x & x.wrapping_neg();
                }
                inserted += 1;
            }
            i = j;
        }
    }
    total
}
