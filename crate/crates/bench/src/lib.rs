//! Fixed inputs shared by the benchmarks.

use duomode_core::model::default_mode_grid;
use duomode_core::{make_gaussian, renormalize, GaussianComponent, ModeDistribution, PhysicalConfig, Statistics, TwoParticleState, Vector};

/// Gaussian pair separated by `delta` along the first axis, Q = ħ = 1.
pub fn gaussian_state(statistics: Statistics, dim: usize, delta: f64) -> TwoParticleState {
    let config = PhysicalConfig::natural(dim).expect("valid dimension");
    let mut g0 = vec![0.0; dim];
    g0[0] = delta;
    TwoParticleState::new(
        make_gaussian(Vector::zeros(dim), 1.0, &config).unwrap(),
        make_gaussian(Vector::new(&g0).unwrap(), 1.0, &config).unwrap(),
        statistics,
        config,
    )
    .unwrap()
}

/// One-dimensional f and g sampled on their default grid, so every
/// evaluation goes through quadrature.
pub fn sampled_state(statistics: Statistics) -> TwoParticleState {
    let config = PhysicalConfig::natural(1).unwrap();
    let comp = |c: f64, q: f64, w: f64| GaussianComponent {
        center: Vector::new(&[c]).unwrap(),
        q,
        weight: w,
    };
    let f = ModeDistribution::mixture(vec![comp(-0.5, 0.8, 1.0), comp(1.0, 1.2, 0.5)]).unwrap();
    let g = ModeDistribution::mixture(vec![comp(0.3, 1.0, 1.0)]).unwrap();
    let grid = default_mode_grid(&[&f, &g]).unwrap();
    let sample = |m: &ModeDistribution| {
        let raw = ModeDistribution::grid_sampled(grid.clone(), m.values_on(&grid)).unwrap();
        renormalize(&raw, &grid).unwrap()
    };
    TwoParticleState::new(sample(&f), sample(&g), statistics, config).unwrap()
}
