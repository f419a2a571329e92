//! Quadrature engines: mode overlaps, momentum-to-position transforms and a
//! direct double-integral oracle for the factorized fast path.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::QuadratureGrid;
use crate::model::{GaussianComponent, ModeDistribution, PhysicalConfig};
use crate::vector::Vector;

/// One-particle position amplitude Ψ(r) or one of its products.
pub type ComplexAmplitude = Complex64;

/// Largest boundary |f| (relative to the peak) still counted as covered.
pub const COVERAGE_TOLERANCE: f64 = 1e-5;

/// Minimum grid nodes per period of e^{ip·r/ħ}.
pub const NODES_PER_PERIOD: f64 = 8.0;

/// Default cap on node pairs for [`double_overlap_bruteforce`].
pub const DEFAULT_BRUTEFORCE_BUDGET: usize = 1 << 26;

/// A quadrature result with a flag raised when the grid did not cover the
/// integrand's support or under-resolved its oscillation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub truncation_warning: bool,
}

/// True when the sampled function is negligible on the grid boundary.
pub fn covers(values: &[f64], grid: &QuadratureGrid) -> bool {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return true;
    }
    values
        .iter()
        .enumerate()
        .filter(|&(i, _)| grid.is_boundary(i))
        .all(|(_, v)| v.abs() <= COVERAGE_TOLERANCE * peak)
}

/// True when every axis has at least [`NODES_PER_PERIOD`] nodes per period of
/// e^{ip·r/ħ}.
pub fn resolves_oscillation(grid: &QuadratureGrid, r: &Vector, hbar: f64) -> bool {
    (0..grid.dimension()).all(|axis| {
        let x = r.get(axis).abs();
        x == 0.0 || grid.spacing(axis) <= 2.0 * PI * hbar / (NODES_PER_PERIOD * x)
    })
}

fn same_width_gaussians(f: &ModeDistribution, g: &ModeDistribution) -> Option<(Vector, Vector, f64)> {
    match (f, g) {
        (
            ModeDistribution::IsotropicGaussian { center: a, q: qa },
            ModeDistribution::IsotropicGaussian { center: b, q: qb },
        ) if (qa - qb).abs() <= 1e-12 * qa => Some((*a, *b, *qa)),
        _ => None,
    }
}

/// β_fg = ∫ f g dᵈq. Equal-width Gaussians use exp(−|f₀−g₀|²/2Q²) directly.
pub fn overlap_integral(f: &ModeDistribution, g: &ModeDistribution, grid: &QuadratureGrid) -> Estimate<f64> {
    if let Some((a, b, q)) = same_width_gaussians(f, g) {
        return Estimate {
            value: (-(a - b).norm_sq() / (2.0 * q * q)).exp(),
            truncation_warning: false,
        };
    }
    overlap_quadrature(f, g, grid)
}

/// β_fg by tensor-product quadrature on `grid`, whatever the inputs.
pub fn overlap_quadrature(f: &ModeDistribution, g: &ModeDistribution, grid: &QuadratureGrid) -> Estimate<f64> {
    let fv = f.values_on(grid);
    let gv = g.values_on(grid);
    let value = grid
        .weights()
        .iter()
        .zip(fv.iter().zip(&gv))
        .map(|(w, (a, b))| w * a * b)
        .sum();
    Estimate {
        value,
        truncation_warning: !(covers(&fv, grid) && covers(&gv, grid)),
    }
}

/// Ψ(r) of a unit-normalized Gaussian with centre `center` and width `q`:
/// e^{i c·r/ħ} (Q²/(2πħ²))^{d/4} e^{−Q²r²/(4ħ²)}.
pub fn gaussian_position_amplitude(center: &Vector, q: f64, r: &Vector, hbar: f64) -> ComplexAmplitude {
    let d = r.dim() as f64;
    let modulus = (q * q / (2.0 * PI * hbar * hbar)).powf(d / 4.0)
        * (-q * q * r.norm_sq() / (4.0 * hbar * hbar)).exp();
    Complex64::from_polar(modulus, center.dot(r) / hbar)
}

/// Precomputed evaluator for Ψ_f(r) = (2πħ)^{−d/2} ∫ f(p) e^{ip·r/ħ} dᵈp.
#[derive(Debug, Clone)]
pub struct PositionAmplitude {
    hbar: f64,
    kind: AmplitudeKind,
}

#[derive(Debug, Clone)]
enum AmplitudeKind {
    Gaussian(Vec<GaussianComponent>),
    Sampled {
        points: Vec<Vector>,
        /// Quadrature weight × f × (2πħ)^{−d/2} per node; zeros dropped.
        weighted: Vec<f64>,
    },
}

impl PositionAmplitude {
    /// Closed form for Gaussian and mixture inputs, quadrature on `grid`
    /// for grid samples.
    pub fn new(f: &ModeDistribution, grid: &QuadratureGrid, config: &PhysicalConfig) -> Self {
        match f.gaussian_components() {
            Some(comps) => Self {
                hbar: config.hbar(),
                kind: AmplitudeKind::Gaussian(comps),
            },
            None => Self::quadrature(f, grid, config),
        }
    }

    /// Always integrate on `grid`.
    pub fn quadrature(f: &ModeDistribution, grid: &QuadratureGrid, config: &PhysicalConfig) -> Self {
        let hbar = config.hbar();
        let d = grid.dimension() as f64;
        let plane_wave_norm = (2.0 * PI * hbar).powf(-d / 2.0);
        let values = f.values_on(grid);
        let (points, weighted) = grid
            .points()
            .into_iter()
            .zip(grid.weights())
            .zip(values)
            .filter(|(_, v)| *v != 0.0)
            .map(|((p, w), v)| (p, w * v * plane_wave_norm))
            .unzip();
        Self {
            hbar,
            kind: AmplitudeKind::Sampled { points, weighted },
        }
    }

    pub fn at(&self, r: &Vector) -> ComplexAmplitude {
        match &self.kind {
            AmplitudeKind::Gaussian(comps) => comps
                .iter()
                .map(|c| c.weight * gaussian_position_amplitude(&c.center, c.q, r, self.hbar))
                .sum(),
            AmplitudeKind::Sampled { points, weighted } => points
                .iter()
                .zip(weighted)
                .map(|(p, w)| Complex64::from_polar(*w, p.dot(r) / self.hbar))
                .sum(),
        }
    }
}

pub fn position_amplitude(
    f: &ModeDistribution,
    r: &Vector,
    grid: &QuadratureGrid,
    config: &PhysicalConfig,
) -> ComplexAmplitude {
    PositionAmplitude::new(f, grid, config).at(r)
}

/// Ψ_f(r) by quadrature regardless of the distribution's form; flags an
/// uncovered support or an under-resolved oscillation.
pub fn position_amplitude_quadrature(
    f: &ModeDistribution,
    r: &Vector,
    grid: &QuadratureGrid,
    config: &PhysicalConfig,
) -> Estimate<ComplexAmplitude> {
    let value = PositionAmplitude::quadrature(f, grid, config).at(r);
    let truncation_warning =
        !(covers(&f.values_on(grid), grid) && resolves_oscillation(grid, r, config.hbar()));
    Estimate {
        value,
        truncation_warning,
    }
}

/// P_fg(r) = ∫∫ f(q) g(p) ψ*_q(r) ψ_p(r) dᵈq dᵈp evaluated as a literal double
/// sum over node pairs. O(nodes²); used only as an oracle.
pub fn double_overlap_bruteforce(
    f: &ModeDistribution,
    g: &ModeDistribution,
    r: &Vector,
    grid: &QuadratureGrid,
    config: &PhysicalConfig,
) -> Result<ComplexAmplitude> {
    double_overlap_bruteforce_with_budget(f, g, r, grid, config, DEFAULT_BRUTEFORCE_BUDGET)
}

pub fn double_overlap_bruteforce_with_budget(
    f: &ModeDistribution,
    g: &ModeDistribution,
    r: &Vector,
    grid: &QuadratureGrid,
    config: &PhysicalConfig,
    budget: usize,
) -> Result<ComplexAmplitude> {
    let n = grid.total_nodes();
    let required = n.saturating_mul(n);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let hbar = config.hbar();
    let d = grid.dimension() as f64;
    let plane_wave_sq = (2.0 * PI * hbar).powf(-d);
    let points = grid.points();
    let weights = grid.weights();
    let fv = f.values_on(grid);
    let gv = g.values_on(grid);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let fq = weights[i] * fv[i];
        if fq == 0.0 {
            continue;
        }
        for j in 0..n {
            let gp = weights[j] * gv[j];
            if gp == 0.0 {
                continue;
            }
            // ψ*_q(r) ψ_p(r) = (2πħ)^{-d} e^{i(p−q)·r/ħ}
            let phase = (points[j] - points[i]).dot(r) / hbar;
            acc += Complex64::from_polar(fq * gp * plane_wave_sq, phase);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::QuadratureRule;
    use crate::model::{default_mode_grid, default_position_grid, make_gaussian};

    fn cfg1() -> PhysicalConfig {
        PhysicalConfig::natural(1).unwrap()
    }

    fn v(x: &[f64]) -> Vector {
        Vector::new(x).unwrap()
    }

    #[test]
    fn overlap_of_identical_is_one() {
        let f = make_gaussian(v(&[0.3]), 0.8, &cfg1()).unwrap();
        let grid = default_mode_grid(&[&f]).unwrap();
        assert_eq!(overlap_integral(&f, &f, &grid).value, 1.0);
        assert!((overlap_quadrature(&f, &f, &grid).value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_overlap_closed_form_matches_quadrature() {
        for d in 1..=3 {
            let c = PhysicalConfig::natural(d).unwrap();
            let mut g0 = vec![0.0; d];
            g0[0] = 2.0;
            let f = make_gaussian(Vector::zeros(d), 1.0, &c).unwrap();
            let g = make_gaussian(v(&g0), 1.0, &c).unwrap();
            let grid = default_mode_grid(&[&f, &g]).unwrap();
            let fast = overlap_integral(&f, &g, &grid).value;
            assert!((fast - (-2.0f64).exp()).abs() < 1e-15);
            let quad = overlap_quadrature(&f, &g, &grid);
            assert!(!quad.truncation_warning);
            assert!((quad.value - fast).abs() < 1e-6, "d={d}: {}", quad.value);
        }
    }

    #[test]
    fn disjoint_grid_supports_do_not_overlap() {
        let grid = QuadratureGrid::cube(1, -2.0, 2.0, 41, QuadratureRule::Trapezoid).unwrap();
        let pts = grid.axis_points(0);
        let f = ModeDistribution::grid_sampled(
            grid.clone(),
            pts.iter().map(|&x| if x < -0.5 { 1.0 } else { 0.0 }).collect(),
        )
        .unwrap();
        let g = ModeDistribution::grid_sampled(
            grid.clone(),
            pts.iter().map(|&x| if x > 0.5 { 1.0 } else { 0.0 }).collect(),
        )
        .unwrap();
        assert_eq!(overlap_integral(&f, &g, &grid).value, 0.0);
    }

    #[test]
    fn truncated_grid_is_flagged() {
        let f = make_gaussian(v(&[0.0]), 1.0, &cfg1()).unwrap();
        let narrow = QuadratureGrid::cube(1, -1.0, 1.0, 101, QuadratureRule::Trapezoid).unwrap();
        let g = f.scaled(1.0);
        assert!(overlap_quadrature(&f, &g, &narrow).truncation_warning);
    }

    #[test]
    fn gaussian_amplitude_at_origin() {
        let f = make_gaussian(v(&[0.0]), 1.0, &cfg1()).unwrap();
        let grid = default_mode_grid(&[&f]).unwrap();
        let a = position_amplitude(&f, &v(&[0.0]), &grid, &cfg1());
        let expected = (1.0 / (2.0 * PI)).powf(0.25);
        assert!((a.re - expected).abs() < 1e-15);
        assert!((a.re - 0.6317).abs() < 1e-4);
        assert_eq!(a.im, 0.0);
        let q = position_amplitude_quadrature(&f, &v(&[0.0]), &grid, &cfg1());
        assert!((q.value.re - expected).abs() < 1e-10);
        assert!(q.value.im.abs() < 1e-12);

        let shifted = make_gaussian(v(&[1.7]), 1.0, &cfg1()).unwrap();
        let b = position_amplitude(&shifted, &v(&[0.0]), &grid, &cfg1());
        assert!((b.norm() - expected).abs() < 1e-15);
    }

    #[test]
    fn amplitude_closed_form_matches_quadrature_off_origin() {
        let c = PhysicalConfig::new(0.7, 1).unwrap();
        let f = make_gaussian(v(&[1.3]), 0.9, &c).unwrap();
        let grid = default_mode_grid(&[&f]).unwrap();
        for x in [-2.0, -0.4, 0.9, 3.1] {
            let r = v(&[x]);
            let exact = position_amplitude(&f, &r, &grid, &c);
            let quad = position_amplitude_quadrature(&f, &r, &grid, &c);
            assert!(!quad.truncation_warning);
            assert!((exact - quad.value).norm() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn position_density_integrates_to_one() {
        let c = PhysicalConfig::new(1.3, 1).unwrap();
        let f = make_gaussian(v(&[0.5]), 1.4, &c).unwrap();
        let mode = default_mode_grid(&[&f]).unwrap();
        let pos = default_position_grid(&[&f], &c).unwrap();
        let amp = PositionAmplitude::new(&f, &mode, &c);
        let total = pos.integrate(|r| amp.at(r).norm_sqr());
        assert!((total - 1.0).abs() < 1e-9, "{total}");
    }

    #[test]
    fn coarse_grid_flags_aliasing() {
        let f = make_gaussian(v(&[0.0]), 1.0, &cfg1()).unwrap();
        let grid = QuadratureGrid::cube(1, -6.0, 6.0, 25, QuadratureRule::Trapezoid).unwrap();
        // spacing 0.5 needs |r| ≤ 2π/(8·0.5) ≈ 1.57
        assert!(!position_amplitude_quadrature(&f, &v(&[1.0]), &grid, &cfg1()).truncation_warning);
        assert!(position_amplitude_quadrature(&f, &v(&[3.0]), &grid, &cfg1()).truncation_warning);
    }

    #[test]
    fn bruteforce_budget_is_enforced() {
        let f = make_gaussian(v(&[0.0]), 1.0, &cfg1()).unwrap();
        let grid = QuadratureGrid::cube(1, -6.0, 6.0, 101, QuadratureRule::Trapezoid).unwrap();
        let err = double_overlap_bruteforce_with_budget(&f, &f, &v(&[0.0]), &grid, &cfg1(), 1000);
        assert!(matches!(err, Err(Error::BudgetExceeded { required: 10201, budget: 1000 })));
    }

    #[test]
    fn bruteforce_self_product_is_real() {
        let f = make_gaussian(v(&[0.8]), 1.0, &cfg1()).unwrap();
        let grid = default_mode_grid(&[&f]).unwrap();
        let r = v(&[0.6]);
        let p = double_overlap_bruteforce(&f, &f, &r, &grid, &cfg1()).unwrap();
        assert!(p.im.abs() < 1e-10);
        assert!(p.re > 0.0);
        assert!((p.re - position_amplitude(&f, &r, &grid, &cfg1()).norm_sqr()).abs() < 1e-8);
    }

    #[test]
    fn disjoint_modes_still_interfere_in_position() {
        // β = 0 but the position amplitudes overlap, so P_fg ≠ 0.
        let c = cfg1();
        let grid = QuadratureGrid::cube(1, -3.0, 3.0, 121, QuadratureRule::Trapezoid).unwrap();
        let pts = grid.axis_points(0);
        let bump = |centre: f64| -> Vec<f64> {
            pts.iter()
                .map(|&x| {
                    let t = (x - centre).abs();
                    if t < 0.75 { (1.0 - t / 0.75).powi(2) } else { 0.0 }
                })
                .collect()
        };
        let f = ModeDistribution::grid_sampled(grid.clone(), bump(-1.0)).unwrap();
        let g = ModeDistribution::grid_sampled(grid.clone(), bump(1.0)).unwrap();
        assert_eq!(overlap_integral(&f, &g, &grid).value, 0.0);
        let r = v(&[0.4]);
        let pfg = double_overlap_bruteforce(&f, &g, &r, &grid, &c).unwrap();
        assert!(pfg.norm() > 1e-3, "{pfg}");
        let fact = position_amplitude(&f, &r, &grid, &c).conj() * position_amplitude(&g, &r, &grid, &c);
        assert!((pfg - fact).norm() < 1e-8);
    }
}
