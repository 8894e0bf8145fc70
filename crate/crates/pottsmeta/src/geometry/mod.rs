//! Structural classifiers on configurations.

pub mod bridges;
pub mod clusters;
pub mod minima;
pub mod samplers;
pub mod shapes;
pub mod tiles;

pub use bridges::BridgeReport;
pub use clusters::{clusters, single_segment_touch, Cluster, ClusterMap, Interval};
pub use minima::{local_min_class, MinClass, MinReport};
pub use shapes::{
    fd_single_touch, in_bbar, in_d, in_fd, in_rbar, in_strip_h, in_strip_v, in_tube, in_w, in_w_prime, shape_class,
    ShapeClass, ShapeReport,
};
pub use tiles::{classify_tile, TileVerdict};

pub use crate::energy::critical_length;

/// `N_s(σ)`.
pub fn count_spins(cfg: &crate::lattice::Config, s: u8) -> usize {
    cfg.count(s)
}
