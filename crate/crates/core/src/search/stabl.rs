use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{score, Arity, Direction, Measure, MeasureValue};
use crate::partition::Partition;
use crate::rng::SplitMix64;

use super::state::{CellState, Move};
use super::{SearchConfig, TiePolicy};

/// One accepted move of the element-move search.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleTrace {
    /// Moves sharing the best value in this cycle.
    pub ties: usize,
    /// Value after the move.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StablOutcome {
    pub partition: Partition,
    pub value: MeasureValue,
    /// Value of the unit partition the search starts from.
    pub initial_value: f64,
    /// Cycles along the path to the returned partition.
    pub trace: Vec<CycleTrace>,
    /// Policy actually used after resolving `Auto`.
    pub policy: TiePolicy,
    /// Partitions expanded. Only the exhaustive policy expands more than one path.
    pub visited: usize,
    /// The exhaustive search stopped at `tie_branch_cap`.
    pub truncated: bool,
}

fn is_tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Best moves of one cycle, in canonical order (element, then destination
/// cell by least member), and their common value.
fn best_moves(state: &CellState<'_>, measure: Measure, counts: &mut Vec<u64>) -> (f64, Vec<Move>) {
    let n = state.graph().vertex_count();
    let mins = state.slot_minimums();
    let mut dest: Vec<usize> = (0..state.slots()).filter(|&c| state.size(c) > 0).collect();
    dest.sort_unstable_by_key(|&c| mins[c]);
    let mut best_value = f64::NAN;
    let mut best: Vec<Move> = Vec::new();
    for v in 0..n {
        state.neighbor_counts(v, counts);
        for &to in &dest {
            if to == state.cell_of(v) {
                continue;
            }
            let mv = state.make_move(v, to, counts);
            let value = score(measure, &state.summary_after(&mv)).value;
            let tie = !best.is_empty() && is_tie(value, best_value);
            if best.is_empty() || (!tie && measure.rank_key(value) < measure.rank_key(best_value)) {
                best_value = value;
                best.clear();
                best.push(mv);
            } else if tie {
                best.push(mv);
            }
        }
    }
    (best_value, best)
}

/// Element-move search from the unit partition.
///
/// Every cycle tries moving each element into each other nonempty cell and
/// applies the best move; cells left empty disappear. The search stops
/// when no move raises the value by more than `1e-9`. Equal-best moves are
/// resolved by `cfg.tie_policy`; the exhaustive policy explores every tied
/// branch depth first, skipping partitions already seen, and returns the
/// best end point found within `cfg.tie_branch_cap` expanded partitions.
pub fn stabl_search(g: &Graph, cfg: &SearchConfig) -> Result<StablOutcome> {
    cfg.validate()?;
    let measure = cfg.measure;
    if measure.direction() != Direction::Maximize || measure.arity() != Arity::Any {
        return Err(Error::InvalidArgument(format!("element-move search needs a maximized measure, not {measure}")));
    }
    let policy = cfg.tie_policy.resolve(g.vertex_count());
    let start = CellState::unit(g);
    let initial_value = score(measure, &start.summary()).value;
    match policy {
        TiePolicy::Exhaustive => exhaustive(start, measure, cfg.tie_branch_cap, initial_value),
        _ => {
            let mut rng = SplitMix64::new(cfg.seed);
            let mut state = start;
            let mut current = initial_value;
            let mut trace = Vec::new();
            let mut counts = Vec::new();
            loop {
                let (value, moves) = best_moves(&state, measure, &mut counts);
                if moves.is_empty() || !measure.improves(value, current) {
                    break;
                }
                let pick = if policy == TiePolicy::SeededRandom { rng.below(moves.len() as u64) as usize } else { 0 };
                state.apply(&moves[pick]);
                current = score(measure, &state.summary()).value;
                trace.push(CycleTrace { ties: moves.len(), value: current });
            }
            Ok(StablOutcome {
                partition: state.partition(),
                value: score(measure, &state.summary()),
                initial_value,
                visited: trace.len() + 1,
                trace,
                policy,
                truncated: false,
            })
        }
    }
}

struct Frontier {
    measure: Measure,
    cap: usize,
    seen: HashSet<Vec<u32>>,
    counts: Vec<u64>,
    path: Vec<CycleTrace>,
    best: Option<(f64, Vec<u32>, Partition, MeasureValue, Vec<CycleTrace>)>,
    truncated: bool,
}

impl Frontier {
    fn visit(&mut self, state: &CellState<'_>) {
        if self.seen.len() >= self.cap {
            self.truncated = true;
            self.finish_greedily(state.clone());
            return;
        }
        if !self.seen.insert(state.canonical_labels()) {
            return;
        }
        let current = score(self.measure, &state.summary()).value;
        let (value, moves) = best_moves(state, self.measure, &mut self.counts);
        if moves.is_empty() || !self.measure.improves(value, current) {
            self.record(state);
            return;
        }
        for mv in &moves {
            let mut next = state.clone();
            next.apply(mv);
            let after = score(self.measure, &next.summary()).value;
            self.path.push(CycleTrace { ties: moves.len(), value: after });
            self.visit(&next);
            self.path.pop();
            if self.truncated {
                return;
            }
        }
    }

    /// Follow first-canonical choices to an end point once the cap is hit.
    fn finish_greedily(&mut self, mut state: CellState<'_>) {
        let depth = self.path.len();
        loop {
            let current = score(self.measure, &state.summary()).value;
            let (value, moves) = best_moves(&state, self.measure, &mut self.counts);
            if moves.is_empty() || !self.measure.improves(value, current) {
                break;
            }
            state.apply(&moves[0]);
            let after = score(self.measure, &state.summary()).value;
            self.path.push(CycleTrace { ties: moves.len(), value: after });
        }
        self.record(&state);
        self.path.truncate(depth);
    }

    fn record(&mut self, state: &CellState<'_>) {
        let current = score(self.measure, &state.summary());
        let labels = state.canonical_labels();
        let better = match &self.best {
            None => true,
            Some((b, bl, ..)) => {
                let tie = is_tie(current.value, *b);
                (!tie && self.measure.rank_key(current.value) < self.measure.rank_key(*b)) || (tie && labels < *bl)
            }
        };
        if better {
            self.best = Some((current.value, labels, state.partition(), current, self.path.clone()));
        }
    }
}

fn exhaustive(start: CellState<'_>, measure: Measure, cap: usize, initial_value: f64) -> Result<StablOutcome> {
    let mut f = Frontier {
        measure,
        cap,
        seen: HashSet::new(),
        counts: Vec::new(),
        path: Vec::new(),
        best: None,
        truncated: false,
    };
    f.visit(&start);
    let (_, _, partition, value, trace) = f.best.expect("every branch ends at a recorded partition");
    Ok(StablOutcome {
        partition,
        value,
        initial_value,
        trace,
        policy: TiePolicy::Exhaustive,
        visited: f.seen.len(),
        truncated: f.truncated,
    })
}
