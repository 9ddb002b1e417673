//! Analyses built on graphs, partitions and search results.

pub mod homeostasis;
pub mod layout;
pub mod levels;
pub mod matrix;
pub mod pairing;
pub mod sampling;
pub mod series;

pub use homeostasis::{
    simulate_homeostasis, simulate_homeostasis_with, HomeostasisConfig, HomeostasisStats, UpdateOrder,
};
pub use layout::{count_crossings, layout_layers, layout_levels, layout_tree, LayeredLayout};
pub use levels::{refinement_tree, tree_level_partition};
pub use matrix::{cohesion_coupling_matrix, format_ratio, CohesionCouplingMatrix};
pub use pairing::{pair_partitions, CellPair, Pairing};
pub use sampling::{estimate_cut_stats, estimate_cut_stats_on_graph, exact_cut_variance, CutStats};
pub use series::{sorted_ratio_series, RatioSeries};
