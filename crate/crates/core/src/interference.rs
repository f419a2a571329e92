//! Fock-space norm and one-particle detection probability with its
//! interference decomposition.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::QuadratureGrid;
use crate::model::{Statistics, TwoParticleState};
use crate::numerics::{overlap_integral, Estimate, PositionAmplitude};
use crate::vector::Vector;

/// Fermion states with β_fg > 1 − ε are rejected: the detection probability
/// is 0/0 there and its limit depends on the direction of approach.
pub const INDETERMINATE_EPSILON: f64 = 1e-9;

/// Boundary density (relative to the peak) above which a spatial integral is
/// flagged as truncated.
pub const SPATIAL_COVERAGE_TOLERANCE: f64 = 1e-8;

/// Every ingredient of the detection probability at one detector position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionBreakdown {
    pub beta_fg: f64,
    /// ⟨I|I⟩ = ±1 + β².
    pub inner_product: f64,
    pub alpha_fg: f64,
    pub alpha_ff: f64,
    pub alpha_gg: f64,
    pub p_ff: f64,
    pub p_gg: f64,
    pub re_p_fg: f64,
    /// 2α_fg Re P_fg ± α_gg P_ff ± α_ff P_gg.
    pub p: f64,
    /// |α_gg| P_ff + |α_ff| P_gg.
    pub p0: f64,
}

impl DetectionBreakdown {
    /// Interference term 2α_fg Re P_fg.
    pub fn interference(&self) -> f64 {
        2.0 * self.alpha_fg * self.re_p_fg
    }
}

/// ±1 + β²: upper sign for bosons, lower for fermions.
pub fn norm_from_overlap(statistics: Statistics, beta: f64) -> f64 {
    statistics.sign() + beta * beta
}

pub fn inner_product(state: &TwoParticleState, grid: &QuadratureGrid) -> f64 {
    let beta = overlap_integral(state.f(), state.g(), grid).value;
    norm_from_overlap(state.statistics(), beta)
}

pub(crate) fn check_determinate(statistics: Statistics, beta: f64) -> Result<()> {
    if statistics == Statistics::Fermion && beta >= 1.0 - INDETERMINATE_EPSILON {
        return Err(Error::IndeterminateState {
            beta,
            epsilon: INDETERMINATE_EPSILON,
        });
    }
    Ok(())
}

/// State-dependent coefficients computed once, then evaluated at any number
/// of detector positions.
#[derive(Debug, Clone)]
pub struct DetectionModel {
    statistics: Statistics,
    beta: f64,
    inner: f64,
    truncation_warning: bool,
    amp_f: PositionAmplitude,
    amp_g: PositionAmplitude,
}

impl DetectionModel {
    pub fn new(state: &TwoParticleState, mode_grid: &QuadratureGrid) -> Result<Self> {
        mode_grid.check_dim(state.config().dimension())?;
        let overlap = overlap_integral(state.f(), state.g(), mode_grid);
        check_determinate(state.statistics(), overlap.value)?;
        Ok(Self {
            statistics: state.statistics(),
            beta: overlap.value,
            inner: norm_from_overlap(state.statistics(), overlap.value),
            truncation_warning: overlap.truncation_warning,
            amp_f: PositionAmplitude::new(state.f(), mode_grid, state.config()),
            amp_g: PositionAmplitude::new(state.g(), mode_grid, state.config()),
        })
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn inner_product(&self) -> f64 {
        self.inner
    }

    /// The mode-overlap quadrature ran off its grid.
    pub fn truncation_warning(&self) -> bool {
        self.truncation_warning
    }

    pub fn at(&self, r: &Vector) -> DetectionBreakdown {
        let psi_f = self.amp_f.at(r);
        let psi_g = self.amp_g.at(r);
        let p_ff = psi_f.norm_sqr();
        let p_gg = psi_g.norm_sqr();
        let re_p_fg = (psi_f.conj() * psi_g).re;
        // β_ff = β_gg = 1 under unit normalization.
        let alpha_fg = self.beta / self.inner;
        let alpha_ff = 1.0 / self.inner;
        let alpha_gg = alpha_ff;
        let s = self.statistics.sign();
        DetectionBreakdown {
            beta_fg: self.beta,
            inner_product: self.inner,
            alpha_fg,
            alpha_ff,
            alpha_gg,
            p_ff,
            p_gg,
            re_p_fg,
            p: 2.0 * alpha_fg * re_p_fg + s * alpha_gg * p_ff + s * alpha_ff * p_gg,
            p0: alpha_gg.abs() * p_ff + alpha_ff.abs() * p_gg,
        }
    }

    pub fn probability(&self, r: &Vector) -> f64 {
        self.at(r).p
    }

    /// One-particle densities |Ψ_f(r)|² and |Ψ_g(r)|².
    pub fn single_densities(&self, r: &Vector) -> (f64, f64) {
        (self.amp_f.at(r).norm_sqr(), self.amp_g.at(r).norm_sqr())
    }
}

pub fn detection_breakdown(
    state: &TwoParticleState,
    r: &Vector,
    grid: &QuadratureGrid,
) -> Result<DetectionBreakdown> {
    r.check_dim(state.config().dimension())?;
    Ok(DetectionModel::new(state, grid)?.at(r))
}

/// ∫P(r) dᵈr over `position_grid`; equals 2 for either statistics when the
/// grid holds the whole density.
pub fn spatial_total(
    state: &TwoParticleState,
    position_grid: &QuadratureGrid,
    mode_grid: &QuadratureGrid,
) -> Result<Estimate<f64>> {
    position_grid.check_dim(state.config().dimension())?;
    let model = DetectionModel::new(state, mode_grid)?;
    let density: Vec<f64> = position_grid
        .points()
        .par_iter()
        .map(|r| model.probability(r))
        .collect();
    let value = position_grid.sum(&density);
    let peak = density.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let edge = density
        .iter()
        .enumerate()
        .filter(|&(i, _)| position_grid.is_boundary(i))
        .fold(0.0f64, |m, (_, v)| m.max(v.abs()));
    Ok(Estimate {
        value,
        truncation_warning: model.truncation_warning || edge > SPATIAL_COVERAGE_TOLERANCE * peak,
    })
}
