//! Closed forms for equal-width Gaussian mode distributions and the
//! direction-dependent limit of the fermion detection probability as the two
//! centres merge.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::interference::{check_determinate, norm_from_overlap};
use crate::model::{make_gaussian, PhysicalConfig, Statistics, TwoParticleState};
use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPair {
    pub f_center: Vector,
    pub g_center: Vector,
    pub q: f64,
    pub config: PhysicalConfig,
    pub statistics: Statistics,
}

impl GaussianPair {
    pub fn new(
        f_center: Vector,
        g_center: Vector,
        q: f64,
        config: PhysicalConfig,
        statistics: Statistics,
    ) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidParameter(format!("width Q must be positive, got {q}")));
        }
        f_center.check_dim(config.dimension())?;
        g_center.check_dim(config.dimension())?;
        Ok(Self {
            f_center,
            g_center,
            q,
            config,
            statistics,
        })
    }

    /// f₀ − g₀.
    pub fn separation(&self) -> Vector {
        self.f_center - self.g_center
    }

    pub fn to_state(&self) -> Result<TwoParticleState> {
        TwoParticleState::new(
            make_gaussian(self.f_center, self.q, &self.config)?,
            make_gaussian(self.g_center, self.q, &self.config)?,
            self.statistics,
            self.config,
        )
    }
}

/// exp(−|f₀ − g₀|²/2Q²)
pub fn closed_beta(pair: &GaussianPair) -> f64 {
    (-pair.separation().norm_sq() / (2.0 * pair.q * pair.q)).exp()
}

/// ±1 + exp(−|f₀ − g₀|²/Q²)
pub fn closed_inner(pair: &GaussianPair) -> f64 {
    norm_from_overlap(pair.statistics, closed_beta(pair))
}

pub fn closed_distinguishability(pair: &GaussianPair) -> f64 {
    1.0 - closed_beta(pair)
}

/// K(d) = 2(Q²/(2πħ²))^{d/2}, fixed by ∫P dᵈr = 2.
pub fn derived_prefactor(q: f64, hbar: f64, dim: usize) -> f64 {
    2.0 * (q * q / (2.0 * PI * hbar * hbar)).powf(dim as f64 / 2.0)
}

/// The three-dimensional prefactor Q³/(√8 ħ³) as commonly printed for this
/// Gaussian example. It does not integrate to two particles; kept for
/// reporting only.
pub fn printed_prefactor(q: f64, hbar: f64) -> f64 {
    (q / hbar).powi(3) / 8.0f64.sqrt()
}

/// printed / derived at d = 3; independent of Q and ħ (= π^{3/2}/2).
pub fn prefactor_discrepancy(q: f64, hbar: f64) -> f64 {
    printed_prefactor(q, hbar) / derived_prefactor(q, hbar, 3)
}

/// (±1 + β cos((f₀−g₀)·r/ħ)) / (±1 + β²): the interference factor multiplying
/// the Gaussian envelope.
pub fn detection_ratio(pair: &GaussianPair, r: &Vector) -> Result<f64> {
    r.check_dim(pair.config.dimension())?;
    let beta = closed_beta(pair);
    check_determinate(pair.statistics, beta)?;
    let s = pair.statistics.sign();
    let phase = pair.separation().dot(r) / pair.config.hbar();
    Ok((s + beta * phase.cos()) / (s + beta * beta))
}

/// exp(−Q²r²/2ħ²)
pub fn detection_envelope(pair: &GaussianPair, r: &Vector) -> f64 {
    let hbar = pair.config.hbar();
    (-pair.q * pair.q * r.norm_sq() / (2.0 * hbar * hbar)).exp()
}

/// P(r) = K(d) · envelope · ratio.
pub fn closed_detection(pair: &GaussianPair, r: &Vector) -> Result<f64> {
    let ratio = detection_ratio(pair, r)?;
    let k = derived_prefactor(pair.q, pair.config.hbar(), pair.config.dimension());
    Ok(k * detection_envelope(pair, r) * ratio)
}

/// F(W) = P_N/P_D with P_N = −1 + e^{−W²/2Q²} cos(W·r/ħ) and
/// P_D = −1 + e^{−W²/Q²}: the fermion detection ratio as a function of the
/// centre separation W.
pub fn fermion_ratio(w: &Vector, r: &Vector, q: f64, hbar: f64) -> Result<f64> {
    let w2 = w.norm_sq();
    if w2 == 0.0 {
        return Err(Error::IndeterminateState {
            beta: 1.0,
            epsilon: 0.0,
        });
    }
    if w.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            found: r.dim(),
        });
    }
    // Both terms vanish as W → 0; expm1 and the half-angle form keep the
    // cancellation exact.
    let theta = w.dot(r) / hbar;
    let cos_minus_one = -2.0 * (theta / 2.0).sin().powi(2);
    let numerator = (-w2 / (2.0 * q * q)).exp_m1() * theta.cos() + cos_minus_one;
    let denominator = (-w2 / (q * q)).exp_m1();
    Ok(numerator / denominator)
}

/// Limit of the fermion ratio as W → 0 along a fixed direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalLimit {
    pub direction: Vector,
    pub r: Vector,
    pub limit_value: f64,
}

/// ½(1 + (u·r)²Q²/ħ²) for unit `direction` u.
pub fn lhopital_limit(direction: &Vector, r: &Vector, q: f64, hbar: f64) -> Result<f64> {
    if (direction.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "direction must be a unit vector, |u| = {}",
            direction.norm()
        )));
    }
    if direction.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: direction.dim(),
            found: r.dim(),
        });
    }
    let x = direction.dot(r);
    Ok(0.5 * (1.0 + x * x * q * q / (hbar * hbar)))
}

impl DirectionalLimit {
    pub fn new(direction: Vector, r: Vector, q: f64, hbar: f64) -> Result<Self> {
        Ok(Self {
            direction,
            r,
            limit_value: lhopital_limit(&direction, &r, q, hbar)?,
        })
    }
}
