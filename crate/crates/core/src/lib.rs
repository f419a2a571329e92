//! Detection probabilities, distinguishability and contrast for two-particle
//! states built from multimode boson or fermion wave packets.
//!
//! Each particle is described by a real, non-negative momentum amplitude
//! ([`ModeDistribution`]). The pair's one-particle detection density at a
//! point splits into single-source densities weighted by the state norm plus
//! an interference term proportional to the mode overlap β_fg
//! ([`interference`]). From it follow the distinguishability D = 1 − β_fg,
//! the contrast C = P/P₀ and the complementarity bounds ([`measures`]).
//! [`gaussian`] holds closed forms for equal-width Gaussians, and
//! [`montecarlo`] reconstructs the contrast from simulated detector counts.

pub mod error;
pub mod families;
pub mod gaussian;
pub mod grid;
pub mod interference;
pub mod measures;
pub mod model;
pub mod montecarlo;
pub mod numerics;
pub mod sweep;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use gaussian::{DirectionalLimit, GaussianPair};
pub use grid::{QuadratureGrid, QuadratureRule};
pub use interference::{detection_breakdown, inner_product, spatial_total, DetectionBreakdown, DetectionModel};
pub use measures::{
    complementarity_report, contrast, distinguishability, BoundKind, ComplementarityReport, Contrast,
};
pub use model::{
    make_gaussian, renormalize, validate_distribution, GaussianComponent, ModeDistribution,
    PhysicalConfig, Statistics, TwoParticleState, ValidationReport,
};
pub use montecarlo::{DensityKind, DetectorBin, RunResult};
pub use numerics::{ComplexAmplitude, Estimate};
pub use sweep::{run_sweep, Output, RowStatus, SweepParameter, SweepRow, SweepSpec};
pub use vector::Vector;
