//! Monte Carlo estimates of the cut count of a random graph.
//!
//! A random graph has exactly `total` links drawn without replacement from
//! the `m(m-1)/2` vertex pairs. With the vertices split `a / (m - a)`, its
//! cut count follows from how many drawn pairs fall among the `a(m - a)`
//! crossing pairs, so each sample draws the `total` links one at a time.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, SplitMix64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutStats {
    pub mean: f64,
    /// Sample variance (divisor `samples - 1`; 0 for one sample).
    pub variance: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

/// Running mean and squared deviations, mergeable across workers.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64,
        }
    }
}

/// Worker `w` takes an equal share of the samples (the first
/// `samples % workers` take one extra) and seeds its generator with
/// `derive_seed(seed, w)`. Results depend on `workers` but not on
/// scheduling.
fn run(samples: u64, seed: u64, workers: usize, draw: impl Fn(&mut SplitMix64) -> f64 + Sync) -> CutStats {
    let per = samples / workers as u64;
    let extra = samples % workers as u64;
    let parts: Vec<Moments> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = SplitMix64::new(derive_seed(seed, w as u64));
            let mut mo = Moments::default();
            for _ in 0..per + u64::from((w as u64) < extra) {
                mo.push(draw(&mut rng));
            }
            mo
        })
        .collect();
    let all = parts.into_iter().fold(Moments::default(), Moments::merge);
    CutStats {
        mean: all.mean,
        variance: if all.n > 1 { all.m2 / (all.n - 1) as f64 } else { 0.0 },
        samples,
        seed,
        workers,
    }
}

fn check(samples: u64, workers: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidArgument("need at least one worker".into()));
    }
    Ok(())
}

/// Mean and variance of the cut count over random `total`-link graphs on
/// `m` vertices split into `a` and `m - a`.
pub fn estimate_cut_stats(m: u64, total: u64, a: u64, samples: u64, seed: u64, workers: usize) -> Result<CutStats> {
    check(samples, workers)?;
    if a == 0 || a >= m {
        return Err(Error::InvalidArgument(format!("split size {a} must lie in 1..{m}")));
    }
    let slots = m * (m - 1) / 2;
    if total > slots {
        return Err(Error::InvalidArgument(format!("{total} links do not fit on {m} vertices")));
    }
    let crossing = a * (m - a);
    Ok(run(samples, seed, workers, |rng| {
        let (mut left, mut hits) = (slots, crossing);
        let mut cut = 0u64;
        for _ in 0..total {
            if rng.below(left) < hits {
                cut += 1;
                hits -= 1;
            }
            left -= 1;
        }
        cut as f64
    }))
}

/// Mean and variance of the cut of `g` over uniformly random vertex sets
/// of size `a`.
pub fn estimate_cut_stats_on_graph(g: &Graph, a: usize, samples: u64, seed: u64, workers: usize) -> Result<CutStats> {
    check(samples, workers)?;
    let m = g.vertex_count();
    if a == 0 || a >= m {
        return Err(Error::InvalidArgument(format!("split size {a} must lie in 1..{m}")));
    }
    Ok(run(samples, seed, workers, |rng| {
        let mut order: Vec<usize> = (0..m).collect();
        // partial shuffle: the first a entries become a uniform a-subset
        for i in 0..a {
            let j = i + rng.below((m - i) as u64) as usize;
            order.swap(i, j);
        }
        let mut side = vec![false; m];
        for &v in &order[..a] {
            side[v] = true;
        }
        g.links().filter(|&(x, y)| side[x] != side[y]).count() as f64
    }))
}

/// Variance of the cut count under the same model, in closed form.
pub fn exact_cut_variance(m: u64, total: u64, a: u64) -> f64 {
    let slots = (m * (m - 1) / 2) as f64;
    let k = (a * (m - a)) as f64;
    let n = total as f64;
    if slots <= 1.0 {
        return 0.0;
    }
    n * (k / slots) * (1.0 - k / slots) * (slots - n) / (slots - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::expected_cut_links;

    #[test]
    fn forced_cut_has_no_variance() {
        let s = estimate_cut_stats(6, 15, 2, 200, 1, 1).unwrap();
        assert_eq!(s.mean, 8.0);
        assert_eq!(s.variance, 0.0);
    }

    #[test]
    fn mean_near_expectation() {
        let s = estimate_cut_stats(9, 14, 5, 20_000, 3, 4).unwrap();
        let sd = s.variance.sqrt();
        let want = expected_cut_links(9, 14, 5, 4).unwrap();
        assert!((s.mean - want).abs() < 4.0 * sd / (20_000f64).sqrt());
        assert!((s.variance - exact_cut_variance(9, 14, 5)).abs() < 0.1);
    }

    #[test]
    fn worker_count_is_part_of_the_result() {
        let a = estimate_cut_stats(20, 30, 7, 1000, 9, 3).unwrap();
        let b = estimate_cut_stats(20, 30, 7, 1000, 9, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn moment_merge_matches_single_pass() {
        let xs = [1.0, 4.0, 2.0, 8.0, 5.0, 7.0];
        let mut all = Moments::default();
        let (mut l, mut r) = (Moments::default(), Moments::default());
        for (i, &x) in xs.iter().enumerate() {
            all.push(x);
            if i < 2 {
                l.push(x)
            } else {
                r.push(x)
            }
        }
        let m = l.merge(r);
        assert!((m.mean - all.mean).abs() < 1e-12 && (m.m2 - all.m2).abs() < 1e-12);
    }

    #[test]
    fn on_graph_path() {
        let g = Graph::from_links(3, [(0, 1), (1, 2)]).unwrap();
        // singletons: 1 cuts two links, 0 and 2 cut one each
        let s = estimate_cut_stats_on_graph(&g, 1, 30_000, 5, 1).unwrap();
        assert!((s.mean - 4.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn bad_parameters() {
        assert!(estimate_cut_stats(5, 3, 5, 10, 0, 1).is_err());
        assert!(estimate_cut_stats(5, 11, 2, 10, 0, 1).is_err());
        assert!(estimate_cut_stats(5, 3, 2, 0, 0, 1).is_err());
    }
}
