//! Metastability of the q-state Potts model with a positive external field
//! under Metropolis dynamics on a periodic grid.

pub mod cli;
pub mod dynamics;
pub mod energy;
pub mod estimators;
pub mod error;
pub mod geometry;
pub mod landscape;
pub mod lattice;
pub mod paths;

pub use energy::{Energy, Params};
pub use error::{Error, Result};
pub use lattice::{Config, Geom, Move};
