use super::matrix::CohesionCouplingMatrix;

/// Matrix entries sorted from high to low, ready for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    /// Diagonal entries.
    pub cohesion: Vec<f64>,
    /// Upper-triangle entries.
    pub coupling: Vec<f64>,
}

pub fn sorted_ratio_series(m: &CohesionCouplingMatrix) -> RatioSeries {
    let k = m.len();
    let mut cohesion: Vec<f64> = (0..k).map(|i| m.cohesion(i)).collect();
    let mut coupling: Vec<f64> =
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| m.coupling(i, j)).collect();
    cohesion.sort_unstable_by(|a, b| b.total_cmp(a));
    coupling.sort_unstable_by(|a, b| b.total_cmp(a));
    RatioSeries { cohesion, coupling }
}

impl RatioSeries {
    /// `rank,cohesion,coupling` rows; the shorter column is left blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,cohesion,coupling\n");
        for i in 0..self.cohesion.len().max(self.coupling.len()) {
            let cell = |s: &[f64]| s.get(i).map_or(String::new(), |x| format!("{x:.6}"));
            out.push_str(&format!("{},{},{}\n", i + 1, cell(&self.cohesion), cell(&self.coupling)));
        }
        out
    }
}
