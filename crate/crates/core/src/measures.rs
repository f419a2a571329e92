//! Distinguishability, contrast and the complementarity bounds tying them.

use crate::error::{Error, Result};
use crate::grid::QuadratureGrid;
use crate::interference::{DetectionBreakdown, DetectionModel};
use crate::model::{ModeDistribution, Statistics, TwoParticleState};
use crate::numerics::overlap_integral;
use crate::vector::Vector;

/// Baseline densities at or below this are treated as singular points where
/// the contrast is undefined.
pub const SINGULAR_EPSILON: f64 = 1e-30;

/// D = 1 − 2∫fg / (∫f² + ∫g²), which is 1 − β_fg for unit-normalized inputs.
pub fn distinguishability(f: &ModeDistribution, g: &ModeDistribution, grid: &QuadratureGrid) -> f64 {
    let cross = overlap_integral(f, g, grid).value;
    let nf = overlap_integral(f, f, grid).value;
    let ng = overlap_integral(g, g, grid).value;
    1.0 - 2.0 * cross / (nf + ng)
}

/// Contrast at one detector position.
///
/// `c_tilde` is the signed interference fraction with C = 1 ± C̃. Its absolute
/// value is *not* a contrast measure: it cannot tell enhancement from
/// suppression and it peaks for fermions exactly where detection vanishes.
/// It is exposed for the |C̃| ≤ 1 bound only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contrast {
    pub c: f64,
    pub c_tilde: f64,
    pub breakdown: DetectionBreakdown,
}

pub fn contrast_from_breakdown(b: &DetectionBreakdown) -> Result<Contrast> {
    if b.p0.is_nan() || b.p0 <= SINGULAR_EPSILON {
        return Err(Error::SingularPoint {
            p0: b.p0,
            threshold: SINGULAR_EPSILON,
        });
    }
    Ok(Contrast {
        c: b.p / b.p0,
        c_tilde: 2.0 * b.beta_fg * b.re_p_fg / (b.p_ff + b.p_gg),
        breakdown: *b,
    })
}

pub fn contrast_detail(state: &TwoParticleState, r: &Vector, grid: &QuadratureGrid) -> Result<Contrast> {
    r.check_dim(state.config().dimension())?;
    contrast_from_breakdown(&DetectionModel::new(state, grid)?.at(r))
}

/// C = P/P₀.
pub fn contrast(state: &TwoParticleState, r: &Vector, grid: &QuadratureGrid) -> Result<f64> {
    contrast_detail(state, r, grid).map(|c| c.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// D + C ≤ 2.
    BosonUpper,
    /// D + C ≥ 2(1 − β_fg).
    FermionLower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityReport {
    pub distinguishability: f64,
    pub contrast: f64,
    pub c_tilde: f64,
    pub beta_fg: f64,
    pub statistics: Statistics,
    pub bound_kind: BoundKind,
    pub bound_value: f64,
    /// Non-negative when the bound holds.
    pub slack: f64,
    pub satisfied: bool,
}

impl ComplementarityReport {
    /// D + C.
    pub fn sum(&self) -> f64 {
        self.distinguishability + self.contrast
    }

    /// (√D, √C); their squares sum to D + C, the quadratic form of the bound.
    pub fn root_measures(&self) -> (f64, f64) {
        (self.distinguishability.max(0.0).sqrt(), self.contrast.max(0.0).sqrt())
    }
}

/// Assemble the report from an already computed D and contrast.
pub fn assess(
    statistics: Statistics,
    distinguishability: f64,
    contrast: &Contrast,
    tol: f64,
) -> ComplementarityReport {
    let sum = distinguishability + contrast.c;
    let beta = contrast.breakdown.beta_fg;
    let (bound_kind, bound_value, slack) = match statistics {
        Statistics::Boson => (BoundKind::BosonUpper, 2.0, 2.0 - sum),
        Statistics::Fermion => {
            let bound = 2.0 * (1.0 - beta);
            (BoundKind::FermionLower, bound, sum - bound)
        }
    };
    ComplementarityReport {
        distinguishability,
        contrast: contrast.c,
        c_tilde: contrast.c_tilde,
        beta_fg: beta,
        statistics,
        bound_kind,
        bound_value,
        slack,
        satisfied: slack >= -tol,
    }
}

pub fn complementarity_report(
    state: &TwoParticleState,
    r: &Vector,
    grid: &QuadratureGrid,
    tol: f64,
) -> Result<ComplementarityReport> {
    let c = contrast_detail(state, r, grid)?;
    let d = distinguishability(state.f(), state.g(), grid);
    Ok(assess(state.statistics(), d, &c, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::QuadratureRule;
    use crate::model::{make_gaussian, PhysicalConfig};

    fn gaussians(stats: Statistics, delta: f64) -> TwoParticleState {
        let c = PhysicalConfig::natural(1).unwrap();
        TwoParticleState::new(
            make_gaussian(Vector::zeros(1), 1.0, &c).unwrap(),
            make_gaussian(Vector::new(&[delta]).unwrap(), 1.0, &c).unwrap(),
            stats,
            c,
        )
        .unwrap()
    }

    fn disjoint(stats: Statistics) -> TwoParticleState {
        let grid = QuadratureGrid::cube(1, -3.0, 3.0, 121, QuadratureRule::Trapezoid).unwrap();
        let pts = grid.axis_points(0);
        let box_at = |lo: f64, hi: f64| -> Vec<f64> {
            pts.iter().map(|&x| if x > lo && x < hi { 1.0 } else { 0.0 }).collect()
        };
        let raw_f = ModeDistribution::grid_sampled(grid.clone(), box_at(-2.5, -0.5)).unwrap();
        let raw_g = ModeDistribution::grid_sampled(grid.clone(), box_at(0.5, 2.0)).unwrap();
        let f = crate::model::renormalize(&raw_f, &grid).unwrap();
        let g = crate::model::renormalize(&raw_g, &grid).unwrap();
        TwoParticleState::new(f, g, stats, PhysicalConfig::natural(1).unwrap()).unwrap()
    }

    #[test]
    fn distinguishability_examples() {
        let s = gaussians(Statistics::Boson, 0.0);
        let grid = s.mode_grid().unwrap();
        assert_eq!(distinguishability(s.f(), s.f(), &grid), 0.0);
        let s2 = gaussians(Statistics::Boson, 2.0);
        let d = distinguishability(s2.f(), s2.g(), &s2.mode_grid().unwrap());
        assert!((d - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!((d - 0.86466).abs() < 1e-5);
        let dj = disjoint(Statistics::Boson);
        assert_eq!(distinguishability(dj.f(), dj.g(), &dj.mode_grid().unwrap()), 1.0);
    }

    #[test]
    fn unnormalized_inputs_use_the_mean_norm() {
        // Scaling f and g together leaves D unchanged.
        let s = gaussians(Statistics::Boson, 1.0);
        let grid = s.mode_grid().unwrap();
        let d1 = distinguishability(s.f(), s.g(), &grid);
        let d2 = distinguishability(&s.f().scaled(3.0), &s.g().scaled(3.0), &grid);
        assert!((d1 - d2).abs() < 1e-9);
    }

    #[test]
    fn boson_identical_has_contrast_two() {
        let s = gaussians(Statistics::Boson, 0.0);
        let grid = s.mode_grid().unwrap();
        for x in [0.0, 0.7, -2.3] {
            let c = contrast(&s, &Vector::new(&[x]).unwrap(), &grid).unwrap();
            assert!((c - 2.0).abs() < 1e-14, "{c}");
        }
    }

    #[test]
    fn no_common_modes_gives_unit_contrast() {
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let s = disjoint(stats);
            let grid = s.mode_grid().unwrap();
            for x in [0.0, 0.3, 1.1] {
                let c = contrast(&s, &Vector::new(&[x]).unwrap(), &grid).unwrap();
                assert!((c - 1.0).abs() <= 1e-12, "{stats:?} x={x}: {c}");
            }
        }
    }

    #[test]
    fn fermion_contrast_vanishes_as_modes_merge() {
        let mut last = f64::INFINITY;
        for delta in [1e-1, 1e-2, 1e-3] {
            let s = gaussians(Statistics::Fermion, delta);
            let c = contrast(&s, &Vector::zeros(1), &s.mode_grid().unwrap()).unwrap();
            assert!(c < last && c >= 0.0, "Δ={delta}: {c}");
            // At the origin C = 1 − β exactly.
            assert!((c - (1.0 - (-delta * delta / 2.0).exp())).abs() < 1e-9);
            last = c;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn singular_and_indeterminate_errors() {
        let s = gaussians(Statistics::Boson, 1.0);
        let far = Vector::new(&[40.0]).unwrap();
        assert!(matches!(
            contrast(&s, &far, &s.mode_grid().unwrap()),
            Err(Error::SingularPoint { .. })
        ));
        let f = gaussians(Statistics::Fermion, 0.0);
        assert!(matches!(
            contrast(&f, &Vector::zeros(1), &f.mode_grid().unwrap()),
            Err(Error::IndeterminateState { .. })
        ));
        assert!(complementarity_report(&f, &Vector::zeros(1), &f.mode_grid().unwrap(), 1e-9).is_err());
    }

    #[test]
    fn boson_equality_case() {
        let s = gaussians(Statistics::Boson, 0.0);
        let rep = complementarity_report(&s, &Vector::new(&[0.4]).unwrap(), &s.mode_grid().unwrap(), 1e-9).unwrap();
        assert_eq!(rep.bound_kind, BoundKind::BosonUpper);
        assert_eq!(rep.distinguishability, 0.0);
        assert!((rep.contrast - 2.0).abs() < 1e-14);
        assert!(rep.slack.abs() < 1e-14);
        assert!(rep.satisfied);
        let (dr, cr) = rep.root_measures();
        assert!((dr * dr + cr * cr - rep.sum()).abs() < 1e-14);
    }

    #[test]
    fn fermion_bound_at_origin() {
        let s = gaussians(Statistics::Fermion, 2.0);
        let rep = complementarity_report(&s, &Vector::zeros(1), &s.mode_grid().unwrap(), 1e-9).unwrap();
        assert_eq!(rep.bound_kind, BoundKind::FermionLower);
        let beta = (-2.0f64).exp();
        assert!((rep.bound_value - 2.0 * (1.0 - beta)).abs() < 1e-15);
        assert!(rep.satisfied);
        // At r = 0 the bound is saturated: C = 1 − β and D = 1 − β.
        assert!(rep.slack.abs() < 1e-12);
    }
}
