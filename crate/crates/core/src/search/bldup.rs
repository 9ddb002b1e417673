use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{score, stabl_weight, Arity, Direction, MeasureValue, Summary};
use crate::partition::Partition;

use super::SearchConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct Agglomeration {
    pub partition: Partition,
    pub value: MeasureValue,
    /// Value after each accepted merge, starting with the unit partition.
    pub history: Vec<f64>,
}

/// Start from singletons and keep applying the merge of two cells that
/// lowers the measure the most. Ties go to the pair whose cells have the
/// smallest least members. Stops when no merge lowers the value by more
/// than `1e-9`.
pub fn bldup_agglomerate(g: &Graph, cfg: &SearchConfig) -> Result<Agglomeration> {
    let measure = cfg.measure;
    if measure.arity() != Arity::Any || measure.direction() != Direction::Minimize {
        return Err(Error::InvalidArgument(format!(
            "agglomeration needs a minimized any-partition measure, not {measure}"
        )));
    }
    let m = g.vertex_count();
    // cells[i] sorted; cells kept ordered by least member
    let mut cells: Vec<Vec<usize>> = (0..m).map(|v| vec![v]).collect();
    let mut degree: Vec<u64> = (0..m).map(|v| g.degree(v) as u64).collect();
    let mut between: Vec<Vec<u64>> = (0..m).map(|a| (0..m).map(|b| g.has_link(a, b) as u64).collect()).collect();
    let mut summary = Summary {
        n: m as u64,
        links: g.total() as u64,
        cut: g.total() as u64,
        cells: m as u64,
        sum_sq_sizes: m as u64,
        sum_sq_degrees: degree.iter().map(|d| d * d).sum(),
        stabl_denom: m as f64 * stabl_weight(1),
        pair: None,
    };
    let mut current = score(measure, &summary);
    let mut history = vec![current.value];
    loop {
        let mut best: Option<(f64, usize, usize, Summary)> = None;
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let (si, sj) = (cells[i].len() as u64, cells[j].len() as u64);
                let mut s = summary.clone();
                s.cut -= between[i][j];
                s.cells -= 1;
                s.sum_sq_sizes += 2 * si * sj;
                s.sum_sq_degrees += 2 * degree[i] * degree[j];
                s.stabl_denom += stabl_weight(si + sj) - stabl_weight(si) - stabl_weight(sj);
                s.pair = None;
                let v = score(measure, &s).value;
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, i, j, s));
                }
            }
        }
        let Some((v, i, j, mut s)) = best else { break };
        if !measure.improves(v, current.value) {
            break;
        }
        let moved = cells.remove(j);
        cells[i].extend(moved);
        cells[i].sort_unstable();
        degree[i] += degree[j];
        degree.remove(j);
        for row in between.iter_mut() {
            let bj = row.remove(j);
            row[i] += bj;
        }
        let row_j = between.remove(j);
        for (k, b) in row_j.into_iter().enumerate() {
            if k != i {
                between[i][k] += b;
            }
        }
        between[i][i] = 0;
        s.stabl_denom = cells.iter().map(|c| stabl_weight(c.len() as u64)).sum();
        summary = s;
        current = score(measure, &summary);
        history.push(current.value);
    }
    Ok(Agglomeration { partition: Partition::new(cells)?, value: current, history })
}
