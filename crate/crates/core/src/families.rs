//! Seeded random families of normalized mixture states for property sweeps.

use rand::Rng;

use crate::error::Result;
use crate::grid::QuadratureGrid;
use crate::model::{renormalize, GaussianComponent, ModeDistribution, PhysicalConfig, Statistics, TwoParticleState};
use crate::vector::{Vector, MAX_DIMENSION};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub dimension: usize,
    pub max_components: usize,
    /// Component centres uniform in [−center_range, center_range] per axis.
    pub center_range: f64,
    pub q_min: f64,
    pub q_max: f64,
    /// Detector positions uniform in [−r_range, r_range] per axis.
    pub r_range: f64,
    pub hbar: f64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            dimension: 1,
            max_components: 3,
            center_range: 3.0,
            q_min: 0.5,
            q_max: 1.5,
            r_range: 3.0,
            hbar: 1.0,
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, range: f64) -> Vector {
    let mut c = [0.0; MAX_DIMENSION];
    for slot in c.iter_mut().take(dim) {
        *slot = rng.random_range(-range..=range);
    }
    Vector::new(&c[..dim]).expect("finite")
}

/// Mixture of 1..=max_components Gaussians with positive weights, rescaled
/// to unit norm.
pub fn random_mixture<R: Rng>(rng: &mut R, params: &FamilyParams) -> Result<ModeDistribution> {
    let n = rng.random_range(1..=params.max_components.max(1));
    let components = (0..n)
        .map(|_| GaussianComponent {
            center: random_vector(rng, params.dimension, params.center_range),
            q: rng.random_range(params.q_min..=params.q_max),
            weight: rng.random_range(0.1..=1.0),
        })
        .collect();
    let raw = ModeDistribution::mixture(components)?;
    // Parametric distributions renormalize analytically; the grid is unused.
    let unused = QuadratureGrid::cube(params.dimension, -1.0, 1.0, 2, Default::default())?;
    renormalize(&raw, &unused)
}

pub fn random_state<R: Rng>(rng: &mut R, statistics: Statistics, params: &FamilyParams) -> Result<TwoParticleState> {
    let f = random_mixture(rng, params)?;
    let g = random_mixture(rng, params)?;
    TwoParticleState::new(f, g, statistics, PhysicalConfig::new(params.hbar, params.dimension)?)
}
