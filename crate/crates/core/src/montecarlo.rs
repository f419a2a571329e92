//! Simulated detector runs: draw detection events from the pair density and
//! from each single-source density, count the events landing in a small bin
//! around the detector, and rebuild the contrast from the three count rates.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{QuadratureGrid, QuadratureRule};
use crate::interference::DetectionModel;
use crate::model::{ModeDistribution, TwoParticleState};
use crate::numerics::PositionAmplitude;
use crate::vector::{Vector, MAX_DIMENSION};

/// Events per RNG stream. Runs are split into chunks of this size so counts
/// do not depend on how many threads execute them.
pub const CHUNK_EVENTS: usize = 1 << 16;

/// Largest relative density variation accepted across a detector bin.
pub const MAX_BIN_VARIATION: f64 = 0.05;

/// Stream offsets separating the three runs of a contrast estimate.
const PAIR_STREAM: u64 = 1 << 40;
const F_STREAM: u64 = 2 << 40;
const G_STREAM: u64 = 3 << 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorBin {
    center: Vector,
    half_widths: Vector,
}

impl DetectorBin {
    pub fn new(center: Vector, half_widths: Vector) -> Result<Self> {
        half_widths.check_dim(center.dim())?;
        if half_widths.as_slice().iter().any(|&h| h.is_nan() || h <= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bin half-widths must be positive, got {half_widths:?}"
            )));
        }
        Ok(Self { center, half_widths })
    }

    /// Cube of half-width `half_width` around `center`.
    pub fn cube(center: Vector, half_width: f64) -> Result<Self> {
        Self::new(center, Vector::splat(center.dim(), half_width))
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn half_widths(&self) -> &Vector {
        &self.half_widths
    }

    pub fn volume(&self) -> f64 {
        self.half_widths.as_slice().iter().map(|h| 2.0 * h).product()
    }

    pub fn contains(&self, p: &Vector) -> bool {
        p.as_slice()
            .iter()
            .zip(self.center.as_slice())
            .zip(self.half_widths.as_slice())
            .all(|((x, c), h)| (x - c).abs() <= *h)
    }

    /// Centre, the 2ᵈ corners and the 2d face centres.
    fn probe_points(&self) -> Vec<Vector> {
        let d = self.center.dim();
        let mut pts = vec![self.center];
        for corner in 0..(1usize << d) {
            let mut c = [0.0; MAX_DIMENSION];
            for (axis, slot) in c.iter_mut().enumerate().take(d) {
                let sign = if (corner >> axis) & 1 == 1 { 1.0 } else { -1.0 };
                *slot = self.center.get(axis) + sign * self.half_widths.get(axis);
            }
            pts.push(Vector::new(&c[..d]).expect("finite"));
        }
        for axis in 0..d {
            for sign in [-1.0, 1.0] {
                let mut p = self.center;
                let offset = Vector::axis(d, axis).scale(sign * self.half_widths.get(axis));
                p = p + offset;
                pts.push(p);
            }
        }
        pts
    }

    fn inside(&self, grid: &QuadratureGrid) -> bool {
        grid.bounds().iter().enumerate().all(|(axis, &(lo, hi))| {
            let c = self.center.get(axis);
            let h = self.half_widths.get(axis);
            c - h >= lo && c + h <= hi
        })
    }
}

/// Which density a run samples from.
#[derive(Debug, Clone, Copy)]
pub enum DensityKind<'a> {
    /// P(r)/2: one detection from the pair, normalized to one.
    TwoParticle(&'a TwoParticleState),
    /// |Ψ_f(r)|²: only one source emitting.
    OneParticle(&'a ModeDistribution, &'a crate::model::PhysicalConfig),
}

/// Piecewise-constant density on the cells of a position grid (one cell per
/// node, cells partitioning the grid box).
#[derive(Debug, Clone)]
pub struct DensitySampler {
    lower: Vector,
    cell: Vector,
    cells_per_axis: usize,
    index: WeightedIndex<f64>,
    /// Integral of the physical density the events represent (2 for the
    /// pair, 1 for one source).
    particle_mass: f64,
    grid_mass: f64,
}

fn cell_centers(grid: &QuadratureGrid) -> QuadratureGrid {
    grid.with_rule(QuadratureRule::Midpoint)
}

impl DensitySampler {
    pub fn new(kind: DensityKind<'_>, position_grid: &QuadratureGrid, mode_grid: &QuadratureGrid) -> Result<Self> {
        let centers = cell_centers(position_grid);
        let points = centers.points();
        let (density, particle_mass): (Vec<f64>, f64) = match kind {
            DensityKind::TwoParticle(state) => {
                position_grid.check_dim(state.config().dimension())?;
                let model = DetectionModel::new(state, mode_grid)?;
                (points.par_iter().map(|r| 0.5 * model.probability(r)).collect(), 2.0)
            }
            DensityKind::OneParticle(f, config) => {
                position_grid.check_dim(config.dimension())?;
                let amp = PositionAmplitude::new(f, mode_grid, config);
                (points.par_iter().map(|r| amp.at(r).norm_sqr()).collect(), 1.0)
            }
        };
        let cell_volume: f64 = (0..centers.dimension()).map(|a| centers.spacing(a)).product();
        // Round-off can leave tiny negative values where P vanishes.
        let masses: Vec<f64> = density.iter().map(|p| p.max(0.0) * cell_volume).collect();
        let grid_mass: f64 = masses.iter().sum();
        if grid_mass.is_nan() || grid_mass <= 0.0 {
            return Err(Error::DegenerateDensity(grid_mass));
        }
        let index = WeightedIndex::new(&masses).map_err(|_| Error::DegenerateDensity(grid_mass))?;
        let d = centers.dimension();
        let lower: Vec<f64> = centers.bounds().iter().map(|b| b.0).collect();
        let cell: Vec<f64> = (0..d).map(|a| centers.spacing(a)).collect();
        Ok(Self {
            lower: Vector::new(&lower)?,
            cell: Vector::new(&cell)?,
            cells_per_axis: centers.nodes_per_axis(),
            index,
            particle_mass,
            grid_mass,
        })
    }

    pub fn particle_mass(&self) -> f64 {
        self.particle_mass
    }

    /// Discretized mass actually on the grid (≈ 1 when the grid holds the
    /// whole density).
    pub fn grid_mass(&self) -> f64 {
        self.grid_mass
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> Vector {
        let mut flat = self.index.sample(rng);
        let d = self.lower.dim();
        let mut c = [0.0; MAX_DIMENSION];
        for axis in (0..d).rev() {
            let i = flat % self.cells_per_axis;
            flat /= self.cells_per_axis;
            let u: f64 = rng.random();
            c[axis] = self.lower.get(axis) + (i as f64 + u) * self.cell.get(axis);
        }
        Vector::new(&c[..d]).expect("finite")
    }

    fn chunk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng
    }

    fn chunks(n: usize) -> impl IndexedParallelIterator<Item = (u64, usize)> {
        let count = n.div_ceil(CHUNK_EVENTS);
        (0..count).into_par_iter().map(move |c| {
            let len = CHUNK_EVENTS.min(n - c * CHUNK_EVENTS);
            (c as u64, len)
        })
    }

    /// `n` positions; chunk `k` uses stream `stream_base + k`.
    pub fn sample(&self, n: usize, seed: u64, stream_base: u64) -> Vec<Vector> {
        let parts: Vec<Vec<Vector>> = Self::chunks(n)
            .map(|(c, len)| {
                let mut rng = Self::chunk_rng(seed, stream_base + c);
                (0..len).map(|_| self.draw(&mut rng)).collect()
            })
            .collect();
        parts.concat()
    }

    /// Number of `n` events landing in `bin`, without storing positions.
    pub fn count_in(&self, bin: &DetectorBin, n: usize, seed: u64, stream_base: u64) -> u64 {
        Self::chunks(n)
            .map(|(c, len)| {
                let mut rng = Self::chunk_rng(seed, stream_base + c);
                (0..len).filter(|_| bin.contains(&self.draw(&mut rng))).count() as u64
            })
            .sum()
    }

    pub fn run(&self, bin: &DetectorBin, n: usize, seed: u64, stream_base: u64) -> RunResult {
        let count = self.count_in(bin, n, seed, stream_base);
        RunResult::from_counts(n as u64, count, self.particle_mass, bin.volume(), seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunResult {
    pub n_events: u64,
    pub in_bin_count: u64,
    /// Count fraction rescaled to a density of the physical mass.
    pub density_estimate: f64,
    /// Binomial standard error of `density_estimate`.
    pub standard_error: f64,
    pub seed: u64,
}

impl RunResult {
    pub fn from_counts(n_events: u64, in_bin_count: u64, mass: f64, bin_volume: f64, seed: u64) -> Self {
        let p = in_bin_count as f64 / n_events as f64;
        let scale = mass / bin_volume;
        Self {
            n_events,
            in_bin_count,
            density_estimate: scale * p,
            standard_error: scale * (p * (1.0 - p) / n_events as f64).sqrt(),
            seed,
        }
    }

    pub fn fraction(&self) -> f64 {
        self.in_bin_count as f64 / self.n_events as f64
    }
}

/// Draw `n` detection positions from `kind`'s density discretized on
/// `position_grid`; the pair's mode overlap uses the state's default mode grid.
pub fn sample_positions(
    kind: DensityKind<'_>,
    position_grid: &QuadratureGrid,
    n: usize,
    seed: u64,
) -> Result<Vec<Vector>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one event".into()));
    }
    let mode_grid = match kind {
        DensityKind::TwoParticle(state) => state.mode_grid()?,
        DensityKind::OneParticle(f, _) => crate::model::default_mode_grid(&[f])?,
    };
    Ok(DensitySampler::new(kind, position_grid, &mode_grid)?.sample(n, seed, 0))
}

/// Default sampling grid for a bin: the state's position box with cells no
/// wider than a twentieth of the narrowest bin half-width (capped per
/// dimension).
pub fn sampling_grid(state: &TwoParticleState, bin: &DetectorBin) -> Result<QuadratureGrid> {
    let base = state.position_grid()?;
    let d = base.dimension();
    let finest = bin.half_widths().as_slice().iter().fold(f64::INFINITY, |m, &h| m.min(h)) / 20.0;
    let longest = base.bounds().iter().map(|(lo, hi)| hi - lo).fold(0.0, f64::max);
    let cap = [40_001, 1_001, 161][d - 1];
    let nodes = ((longest / finest).ceil() as usize)
        .max(base.nodes_per_axis())
        .min(cap);
    base.with_nodes(nodes)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContrastEstimate {
    pub contrast: f64,
    pub standard_error: f64,
    pub pair: RunResult,
    pub f_only: RunResult,
    pub g_only: RunResult,
    /// |α_ff| = |α_gg| = 1/|⟨I|I⟩|, known from the preparation.
    pub alpha_abs: f64,
}

/// Largest relative spread of P, P_ff and P_gg across the bin.
pub fn bin_variation(model: &DetectionModel, bin: &DetectorBin) -> f64 {
    let probes = bin.probe_points();
    let mut worst = 0.0f64;
    let samples: Vec<[f64; 3]> = probes
        .iter()
        .map(|r| {
            let (pf, pg) = model.single_densities(r);
            [model.probability(r), pf, pg]
        })
        .collect();
    for k in 0..3 {
        let vals: Vec<f64> = samples.iter().map(|s| s[k]).collect();
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        if hi > 0.0 {
            worst = worst.max((hi - lo) / hi);
        }
    }
    worst
}

/// Three simulated experiments (both sources, f alone, g alone) of
/// `n_per_run` events each, combined with the prepared |α| into
/// Ĉ = P̂ / (|α_gg| P̂_ff + |α_ff| P̂_gg).
pub fn estimate_contrast(
    state: &TwoParticleState,
    bin: &DetectorBin,
    n_per_run: usize,
    seed: u64,
    position_grid: &QuadratureGrid,
    mode_grid: &QuadratureGrid,
) -> Result<ContrastEstimate> {
    if n_per_run == 0 {
        return Err(Error::InvalidParameter("need at least one event per run".into()));
    }
    bin.center().check_dim(state.config().dimension())?;
    if !bin.inside(position_grid) {
        return Err(Error::InvalidParameter("detector bin lies outside the sampling grid".into()));
    }
    let model = DetectionModel::new(state, mode_grid)?;
    let variation = bin_variation(&model, bin);
    if variation > MAX_BIN_VARIATION {
        return Err(Error::BinTooWide {
            variation,
            limit: MAX_BIN_VARIATION,
        });
    }
    let config = state.config();
    let pair = DensitySampler::new(DensityKind::TwoParticle(state), position_grid, mode_grid)?
        .run(bin, n_per_run, seed, PAIR_STREAM);
    let f_only = DensitySampler::new(DensityKind::OneParticle(state.f(), config), position_grid, mode_grid)?
        .run(bin, n_per_run, seed, F_STREAM);
    let g_only = DensitySampler::new(DensityKind::OneParticle(state.g(), config), position_grid, mode_grid)?
        .run(bin, n_per_run, seed, G_STREAM);
    if f_only.in_bin_count == 0 || g_only.in_bin_count == 0 {
        return Err(Error::InsufficientStatistics(format!(
            "single-source runs put {} and {} events in the bin",
            f_only.in_bin_count, g_only.in_bin_count
        )));
    }
    let alpha = 1.0 / model.inner_product().abs();
    let baseline = alpha * f_only.density_estimate + alpha * g_only.density_estimate;
    let c = pair.density_estimate / baseline;
    let var = pair.standard_error.powi(2)
        + c * c * alpha * alpha * (f_only.standard_error.powi(2) + g_only.standard_error.powi(2));
    Ok(ContrastEstimate {
        contrast: c,
        standard_error: var.sqrt() / baseline,
        pair,
        f_only,
        g_only,
        alpha_abs: alpha,
    })
}
