//! Goodness measures for partitions.
//!
//! Every measure is evaluated on the subgraph induced by the partition's
//! universe: `n` is the universe size, `nsq1 = n(n-1)/2` and `l` counts
//! only links with both ends inside the universe.
//!
//! When a denominator vanishes (one cell, all singletons, an empty side)
//! the value is defined as 0 and [`MeasureValue::degenerate`] is set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, LinkStats};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Squared standardized deviation of the cut count from its expectation.
    Hidecs2Actual,
    /// The same deviation scaled by `nsq1`, without squaring.
    Hidecs2Decomp,
    /// Multi-cell generalization of `Hidecs2Decomp`.
    Hidecs2Notes,
    /// Incohesion of both sides plus coupling, over a balance factor.
    Hidecs2Rpg,
    /// Multi-cell generalization of `Hidecs2Actual`.
    Hidecs3Bldup,
    /// Internal-link surplus against a size penalty, to be maximized.
    Hidecs3Stabl,
    /// Newman-Girvan modularity.
    NewmanQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Bipartition,
    Any,
}

/// Moves must beat the current value by more than this.
pub const IMPROVEMENT_EPS: f64 = 1e-9;

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Hidecs2Actual,
        Measure::Hidecs2Decomp,
        Measure::Hidecs2Notes,
        Measure::Hidecs2Rpg,
        Measure::Hidecs3Bldup,
        Measure::Hidecs3Stabl,
        Measure::NewmanQ,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Measure::Hidecs2Actual => "h2-actual",
            Measure::Hidecs2Decomp => "h2-decomp",
            Measure::Hidecs2Notes => "h2-notes",
            Measure::Hidecs2Rpg => "h2-rpg",
            Measure::Hidecs3Bldup => "h3-bldup",
            Measure::Hidecs3Stabl => "h3-stabl",
            Measure::NewmanQ => "newman-q",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Measure::Hidecs3Stabl | Measure::NewmanQ => Direction::Maximize,
            _ => Direction::Minimize,
        }
    }

    pub fn arity(self) -> Arity {
        match self {
            Measure::Hidecs2Actual | Measure::Hidecs2Decomp | Measure::Hidecs2Rpg => Arity::Bipartition,
            _ => Arity::Any,
        }
    }

    /// Digits shown in reports.
    pub fn decimals(self) -> usize {
        match self {
            Measure::NewmanQ => 3,
            _ => 2,
        }
    }

    /// `candidate` beats `incumbent` by more than [`IMPROVEMENT_EPS`].
    pub fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self.direction() {
            Direction::Minimize => candidate < incumbent - IMPROVEMENT_EPS,
            Direction::Maximize => candidate > incumbent + IMPROVEMENT_EPS,
        }
    }

    /// Total order where smaller means better.
    pub fn rank_key(self, value: f64) -> f64 {
        match self.direction() {
            Direction::Minimize => value,
            Direction::Maximize => -value,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| Error::Unknown { kind: "measure", name: s.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureValue {
    pub measure: Measure,
    pub value: f64,
    pub degenerate: bool,
    pub intermediates: Vec<(&'static str, f64)>,
}

impl MeasureValue {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.intermediates.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn display(&self) -> String {
        display(self.value, self.measure.decimals())
    }
}

/// Round half away from zero to `decimals` places and format.
pub fn display(value: f64, decimals: usize) -> String {
    let scale = 10f64.powi(decimals as i32);
    let r = (value * scale).round() / scale;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.decimals$}")
}

/// Everything the measures need, in integers where possible.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Summary {
    pub n: u64,
    pub links: u64,
    pub cut: u64,
    pub cells: u64,
    pub sum_sq_sizes: u64,
    pub sum_sq_degrees: u64,
    pub stabl_denom: f64,
    /// (size, internal links) of each side when there are exactly two cells.
    pub pair: Option<[(u64, u64); 2]>,
}

/// Contribution of one cell of size `s` to the STABL denominator.
pub(crate) fn stabl_weight(s: u64) -> f64 {
    if s == 0 {
        return 0.0;
    }
    ((s * (s - 1) + 1) as f64 / 2.0) * 4f64.powi(-(s as i32))
}

impl Summary {
    pub fn from_stats(st: &LinkStats) -> Self {
        let pair = (st.sizes.len() == 2)
            .then(|| [(st.sizes[0] as u64, st.internal[0] as u64), (st.sizes[1] as u64, st.internal[1] as u64)]);
        Summary {
            n: st.universe_size() as u64,
            links: st.total() as u64,
            cut: st.cut as u64,
            cells: st.sizes.len() as u64,
            sum_sq_sizes: st.sizes.iter().map(|&s| (s * s) as u64).sum(),
            sum_sq_degrees: st.degree_sum.iter().map(|&d| (d * d) as u64).sum(),
            stabl_denom: st.sizes.iter().map(|&s| stabl_weight(s as u64)).sum(),
            pair,
        }
    }

    fn nsq1(&self) -> u64 {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Number of vertex pairs split across cells.
    fn split_pairs(&self) -> u64 {
        (self.n * self.n - self.sum_sq_sizes) / 2
    }
}

fn signed_square(nom: f64, denom: f64) -> f64 {
    nom.signum() * nom * nom / denom
}

fn degenerate(measure: Measure, intermediates: Vec<(&'static str, f64)>) -> MeasureValue {
    MeasureValue { measure, value: 0.0, degenerate: true, intermediates }
}

pub(crate) fn score(measure: Measure, s: &Summary) -> MeasureValue {
    let nsq1 = s.nsq1();
    let l = s.links;
    match measure {
        Measure::Hidecs2Actual => {
            let ab = s.split_pairs();
            let expected = if nsq1 == 0 { 0.0 } else { l as f64 * ab as f64 / nsq1 as f64 };
            let denom = ab * nsq1.saturating_sub(ab);
            if denom == 0 {
                return degenerate(measure, vec![("RR", s.cut as f64), ("expected", expected)]);
            }
            let nom = (s.cut as i128 * nsq1 as i128 - l as i128 * ab as i128) as f64 / nsq1 as f64;
            let denom = denom as f64;
            let info = signed_square(nom, denom);
            MeasureValue {
                measure,
                value: info,
                degenerate: false,
                intermediates: vec![
                    ("RR", s.cut as f64),
                    ("expected", expected),
                    ("nom", nom),
                    ("denom", denom),
                    ("STR", nom / denom.sqrt()),
                    ("INFO", info),
                ],
            }
        }
        Measure::Hidecs2Decomp | Measure::Hidecs2Notes => {
            let ss = s.split_pairs();
            let denom = ss * nsq1.saturating_sub(ss);
            let name = if measure == Measure::Hidecs2Decomp { "SCORE" } else { "R" };
            if denom == 0 {
                return degenerate(measure, vec![("RR", s.cut as f64)]);
            }
            let nom = (s.cut as i128 * nsq1 as i128 - l as i128 * ss as i128) as f64;
            let denom = denom as f64;
            let value = nom / denom.sqrt();
            MeasureValue {
                measure,
                value,
                degenerate: false,
                intermediates: vec![("RR", s.cut as f64), ("nom", nom), ("denom", denom), (name, value)],
            }
        }
        Measure::Hidecs2Rpg => {
            let [(a, la), (b, lb)] = s.pair.expect("checked by caller");
            let (ma, mb, mab) = (a * a.saturating_sub(1) / 2, b * b.saturating_sub(1) / 2, a * b);
            let incohesion = |li: u64, mi: u64| if mi == 0 { 0.0 } else { 1.0 - li as f64 / mi as f64 };
            let f1 = incohesion(la, ma);
            let f3 = incohesion(lb, mb);
            let f2 = s.cut as f64 / mab as f64;
            let skew = (a as f64 - b as f64) / (a + b) as f64;
            let f4 = 1.0 - skew * skew;
            let rscore = (f1 + f2 + f3) / f4;
            MeasureValue {
                measure,
                value: rscore,
                degenerate: false,
                intermediates: vec![
                    ("l", l as f64),
                    ("l_a", la as f64),
                    ("l_b", lb as f64),
                    ("l_ab", s.cut as f64),
                    ("m_a", ma as f64),
                    ("m_b", mb as f64),
                    ("m_ab", mab as f64),
                    ("f1", f1),
                    ("f2", f2),
                    ("f3", f3),
                    ("f4", f4),
                    ("RSCORE", rscore),
                ],
            }
        }
        Measure::Hidecs3Bldup => {
            let ss = s.split_pairs();
            let denom = ss * nsq1.saturating_sub(ss);
            if denom == 0 {
                return degenerate(measure, vec![("RR", s.cut as f64)]);
            }
            let nom = (s.cut as i128 * nsq1 as i128 - l as i128 * ss as i128) as f64 / nsq1 as f64;
            let denom = denom as f64;
            let info2 = signed_square(nom, denom);
            MeasureValue {
                measure,
                value: info2,
                degenerate: false,
                intermediates: vec![
                    ("RR", s.cut as f64),
                    ("nom", nom),
                    ("denom", denom),
                    ("STR2", nom / denom.sqrt()),
                    ("INFO2", info2),
                ],
            }
        }
        Measure::Hidecs3Stabl => {
            let inside = if l == 0 { 0.0 } else { nsq1 as f64 * (l - s.cut) as f64 / l as f64 };
            let penalty = (s.sum_sq_sizes + s.cells - s.n) as f64 / 2.0;
            let nom = inside - penalty;
            let denom = s.stabl_denom;
            let exp = signed_square(nom, denom);
            MeasureValue {
                measure,
                value: exp,
                degenerate: l == 0,
                intermediates: vec![("nom", nom), ("denom", denom), ("EXP", exp)],
            }
        }
        Measure::NewmanQ => {
            if l == 0 {
                return degenerate(measure, vec![]);
            }
            let lf = l as f64;
            let inside = (l - s.cut) as f64 / lf;
            let spread = s.sum_sq_degrees as f64 / (4.0 * lf * lf);
            let q = inside - spread;
            MeasureValue {
                measure,
                value: q,
                degenerate: false,
                intermediates: vec![("e_in", inside), ("a_sq", spread), ("Q", q)],
            }
        }
    }
}

/// Evaluate `measure` on `p`, restricted to the subgraph induced by its
/// universe.
pub fn evaluate(measure: Measure, g: &Graph, p: &Partition) -> Result<MeasureValue> {
    if measure.arity() == Arity::Bipartition && p.len() != 2 {
        return Err(Error::NotBipartition { measure: measure.id(), cells: p.len() });
    }
    if let Some(&v) = p.cells().iter().flatten().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::UnknownVertex(v + 1));
    }
    Ok(score(measure, &Summary::from_stats(&g.link_stats(p))))
}

pub fn hidecs2_actual(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::Hidecs2Actual, g, p)
}

pub fn hidecs2_decomp(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::Hidecs2Decomp, g, p)
}

pub fn hidecs2_notes(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::Hidecs2Notes, g, p)
}

pub fn hidecs2_rpg(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::Hidecs2Rpg, g, p)
}

pub fn hidecs3_bldup(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::Hidecs3Bldup, g, p)
}

pub fn hidecs3_stabl(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::Hidecs3Stabl, g, p)
}

pub fn newman_q(g: &Graph, p: &Partition) -> Result<MeasureValue> {
    evaluate(Measure::NewmanQ, g, p)
}

/// Expected number of links crossing an `a`/`b` split when `total` links
/// are spread uniformly over the `m(m-1)/2` pairs.
pub fn expected_cut_links(m: usize, total: usize, a: usize, b: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    if a + b != m {
        return Err(Error::InvalidArgument(format!("sides {a} + {b} do not add up to {m}")));
    }
    let nsq1 = m * (m - 1) / 2;
    if total > nsq1 {
        return Err(Error::InvalidArgument(format!("{total} links exceed {nsq1} pairs")));
    }
    Ok(total as f64 / nsq1 as f64 * (a * b) as f64)
}
