//! Statistical checks on simulated and exact dynamics: hitting-time scaling,
//! the exponential law, crossing frequencies, spectral gap and mixing time.

pub mod arrhenius;
pub mod crossing;
pub mod hitting;
pub mod spectral;
pub mod stats;

pub use arrhenius::{arrhenius_experiment, arrhenius_fit, ArrheniusPoint, ArrheniusReport};
pub use crossing::{crossing_stats, CrossingReport, CrossingRow};
pub use hitting::{default_cap, estimate_hitting, exp_law_test, ExpLawReport, HittingReport, TargetSet};
pub use spectral::{spectral_and_mixing, SpectralModel, SpectralReport};
