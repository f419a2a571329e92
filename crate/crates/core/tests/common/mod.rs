#![allow(dead_code)]

use duomode_core::numerics::{overlap_quadrature, position_amplitude_quadrature};
use duomode_core::{
    make_gaussian, ModeDistribution, PhysicalConfig, QuadratureGrid, Statistics, TwoParticleState, Vector,
};

pub fn gaussian_state(stats: Statistics, f0: &[f64], g0: &[f64], q: f64, hbar: f64) -> TwoParticleState {
    let c = PhysicalConfig::new(hbar, f0.len()).unwrap();
    TwoParticleState::new(
        make_gaussian(Vector::new(f0).unwrap(), q, &c).unwrap(),
        make_gaussian(Vector::new(g0).unwrap(), q, &c).unwrap(),
        stats,
        c,
    )
    .unwrap()
}

/// Detection probability assembled from quadrature-only pieces:
/// P = [2β Re(Ψ_f* Ψ_g) ± (|Ψ_f|² + |Ψ_g|²)] / (±1 + β²).
pub fn quadrature_detection(state: &TwoParticleState, r: &Vector, grid: &QuadratureGrid) -> f64 {
    let c = state.config();
    let s = state.statistics().sign();
    let beta = overlap_quadrature(state.f(), state.g(), grid).value;
    let af = position_amplitude_quadrature(state.f(), r, grid, c).value;
    let ag = position_amplitude_quadrature(state.g(), r, grid, c).value;
    let re_fg = (af.conj() * ag).re;
    (2.0 * beta * re_fg + s * (af.norm_sqr() + ag.norm_sqr())) / (s + beta * beta)
}

/// Relative error against a reference; absolute where the reference is 0.
pub fn rel_err(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        (value - reference).abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

/// Analytic ∫ f g for two mixtures.
pub fn mixture_overlap(f: &ModeDistribution, g: &ModeDistribution) -> f64 {
    let fc = f.gaussian_components().unwrap();
    let gc = g.gaussian_components().unwrap();
    let mut sum = 0.0;
    for a in &fc {
        for b in &gc {
            sum += a.weight * b.weight * duomode_core::model::component_overlap(&a.center, a.q, &b.center, b.q);
        }
    }
    sum
}
