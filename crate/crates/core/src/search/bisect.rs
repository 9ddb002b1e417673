use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{score, Measure, MeasureValue};
use crate::partition::Partition;
use crate::rng::SplitMix64;

use super::state::CellState;
use super::SearchConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct Bisection {
    /// Two cells of indices into the searched graph, smallest member first.
    pub partition: Partition,
    pub value: MeasureValue,
    /// Restarts whose local optimum equals the returned value.
    pub hits: usize,
}

/// Best two-way split of `set` found by `cfg.latis` random restarts of
/// steepest single-vertex descent.
///
/// Restart `k` draws its starting split from seed `cfg.seed + k`: one fair
/// coin per vertex in ascending order, redrawn in full while a side is
/// empty. Each step applies the single move with the best value, lowest
/// vertex first on ties, while it beats the current value by more than
/// `1e-9`. Moves that would empty a side are not considered. Restarts run in
/// parallel and are merged by value, then by canonical cell order.
pub fn bisect_best(g: &Graph, set: &[usize], cfg: &SearchConfig) -> Result<Bisection> {
    cfg.validate()?;
    let mut vertices = set.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() < 2 {
        return Err(Error::InvalidArgument(format!("cannot bisect a set of {} vertices", vertices.len())));
    }
    let sub = g.induced_subgraph(&vertices)?;
    let measure = cfg.measure;
    let runs: Vec<(f64, Vec<usize>)> =
        (0..cfg.latis as u64).into_par_iter().map(|k| descend(&sub, measure, cfg.seed.wrapping_add(k))).collect();
    let best = runs
        .iter()
        .min_by(|a, b| measure.rank_key(a.0).total_cmp(&measure.rank_key(b.0)).then_with(|| a.1.cmp(&b.1)))
        .expect("latis >= 1");
    let hits = runs.iter().filter(|r| r.0 == best.0).count();
    let state = CellState::new(&sub, best.1.clone(), 2);
    let value = score(measure, &state.summary());
    Ok(Bisection { partition: state.partition().lift(&vertices), value, hits })
}

/// One restart. Returns the final value and the side of each vertex with
/// vertex 0 on side 0.
fn descend(g: &Graph, measure: Measure, seed: u64) -> (f64, Vec<usize>) {
    let n = g.vertex_count();
    let mut rng = SplitMix64::new(seed);
    let sides = loop {
        let s: Vec<usize> = (0..n).map(|_| rng.coin() as usize).collect();
        let ones = s.iter().sum::<usize>();
        if ones > 0 && ones < n {
            break s;
        }
    };
    let mut state = CellState::new(g, sides, 2);
    let mut current = score(measure, &state.summary()).value;
    let mut counts = Vec::with_capacity(2);
    loop {
        let mut best: Option<(f64, super::state::Move)> = None;
        for v in 0..n {
            let from = state.cell_of(v);
            if state.size(from) == 1 {
                continue;
            }
            state.neighbor_counts(v, &mut counts);
            let mv = state.make_move(v, 1 - from, &counts);
            let value = score(measure, &state.summary_after(&mv)).value;
            if best.as_ref().is_none_or(|(b, _)| measure.rank_key(value) < measure.rank_key(*b)) {
                best = Some((value, mv));
            }
        }
        match best {
            Some((value, mv)) if measure.improves(value, current) => {
                state.apply(&mv);
                current = value;
            }
            _ => break,
        }
    }
    let flip = state.cell_of(0);
    let sides = state.assignment().iter().map(|&c| c ^ flip).collect();
    (current, sides)
}
