//! Mode distributions, two-particle states and the physical constants they
//! are evaluated with.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{QuadratureGrid, QuadratureRule};
use crate::vector::Vector;

/// Mode-grid truncation, in widths beyond the outermost component centre.
pub const TRUNCATION_WIDTHS: f64 = 6.0;

/// Per-axis centre range, smallest width, largest width.
type Extent = (Vec<(f64, f64)>, f64, f64);

/// Allowed deviation of ∫f² from 1 when building a state.
pub const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigRepr", into = "ConfigRepr")]
pub struct PhysicalConfig {
    hbar: f64,
    dimension: usize,
}

#[derive(Serialize, Deserialize)]
struct ConfigRepr {
    hbar: f64,
    dimension: usize,
}

impl TryFrom<ConfigRepr> for PhysicalConfig {
    type Error = Error;

    fn try_from(r: ConfigRepr) -> Result<Self> {
        PhysicalConfig::new(r.hbar, r.dimension)
    }
}

impl From<PhysicalConfig> for ConfigRepr {
    fn from(c: PhysicalConfig) -> Self {
        ConfigRepr {
            hbar: c.hbar,
            dimension: c.dimension,
        }
    }
}

impl PhysicalConfig {
    pub fn new(hbar: f64, dimension: usize) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        if !(1..=3).contains(&dimension) {
            return Err(Error::InvalidParameter(format!(
                "dimension must be 1, 2 or 3, got {dimension}"
            )));
        }
        Ok(Self { hbar, dimension })
    }

    /// ħ = 1 in `dimension` dimensions.
    pub fn natural(dimension: usize) -> Result<Self> {
        Self::new(1.0, dimension)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            dimension: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    /// +1 for bosons, −1 for fermions.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        }
    }
}

impl std::str::FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "boson" | "bosons" => Ok(Statistics::Boson),
            "fermion" | "fermions" => Ok(Statistics::Fermion),
            other => Err(Error::Parse(format!(
                "statistics must be \"boson\" or \"fermion\", got {other:?}"
            ))),
        }
    }
}

/// One term `weight · N(q) · exp(−|p − center|²/q²)` of a mixture; each term
/// is unit-normalized on its own so `weight` is its amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent {
    pub center: Vector,
    pub q: f64,
    pub weight: f64,
}

/// Real momentum-space amplitude f(p).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr", into = "DistributionRepr")]
pub enum ModeDistribution {
    IsotropicGaussian { center: Vector, q: f64 },
    GaussianMixture { components: Vec<GaussianComponent> },
    GridSampled { grid: QuadratureGrid, values: Vec<f64> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum DistributionRepr {
    Gaussian {
        center: Vector,
        q: f64,
    },
    Mixture {
        components: Vec<GaussianComponent>,
    },
    Grid {
        bounds: Vec<[f64; 2]>,
        nodes: usize,
        #[serde(default)]
        rule: QuadratureRule,
        values: Vec<f64>,
    },
}

impl TryFrom<DistributionRepr> for ModeDistribution {
    type Error = Error;

    fn try_from(r: DistributionRepr) -> Result<Self> {
        let dist = match r {
            DistributionRepr::Gaussian { center, q } => {
                ModeDistribution::IsotropicGaussian { center, q }
            }
            DistributionRepr::Mixture { components } => {
                ModeDistribution::GaussianMixture { components }
            }
            DistributionRepr::Grid {
                bounds,
                nodes,
                rule,
                values,
            } => ModeDistribution::GridSampled {
                grid: QuadratureGrid::new(
                    bounds.iter().map(|b| (b[0], b[1])).collect(),
                    nodes,
                    rule,
                )?,
                values,
            },
        };
        dist.check()?;
        Ok(dist)
    }
}

impl From<ModeDistribution> for DistributionRepr {
    fn from(d: ModeDistribution) -> Self {
        match d {
            ModeDistribution::IsotropicGaussian { center, q } => {
                DistributionRepr::Gaussian { center, q }
            }
            ModeDistribution::GaussianMixture { components } => {
                DistributionRepr::Mixture { components }
            }
            ModeDistribution::GridSampled { grid, values } => DistributionRepr::Grid {
                bounds: grid.bounds().iter().map(|&(lo, hi)| [lo, hi]).collect(),
                nodes: grid.nodes_per_axis(),
                rule: grid.rule(),
                values,
            },
        }
    }
}

/// N = (2/(πQ²))^{d/4}, the prefactor giving ∫f² = 1 for an isotropic Gaussian.
pub fn gaussian_norm(q: f64, dim: usize) -> f64 {
    (2.0 / (PI * q * q)).powf(dim as f64 / 4.0)
}

/// ∫ φ₁φ₂ dᵈp for two unit-normalized Gaussian components.
pub fn component_overlap(c1: &Vector, q1: f64, c2: &Vector, q2: f64) -> f64 {
    let s = q1 * q1 + q2 * q2;
    let per_axis = (2.0 * q1 * q2 / s).sqrt();
    per_axis.powi(c1.dim() as i32) * (-(*c1 - *c2).norm_sq() / s).exp()
}

fn check_width(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("width Q must be positive, got {q}")))
    }
}

impl ModeDistribution {
    pub fn mixture(components: Vec<GaussianComponent>) -> Result<Self> {
        let d = ModeDistribution::GaussianMixture { components };
        d.check()?;
        Ok(d)
    }

    pub fn grid_sampled(grid: QuadratureGrid, values: Vec<f64>) -> Result<Self> {
        let d = ModeDistribution::GridSampled { grid, values };
        d.check()?;
        Ok(d)
    }

    pub fn dimension(&self) -> usize {
        match self {
            ModeDistribution::IsotropicGaussian { center, .. } => center.dim(),
            ModeDistribution::GaussianMixture { components } => {
                components.first().map_or(0, |c| c.center.dim())
            }
            ModeDistribution::GridSampled { grid, .. } => grid.dimension(),
        }
    }

    /// Structural validity: finite parameters, positive widths, consistent
    /// dimensions. Sign and normalization are reported by
    /// [`validate_distribution`], not enforced here.
    pub fn check(&self) -> Result<()> {
        match self {
            ModeDistribution::IsotropicGaussian { q, .. } => check_width(*q),
            ModeDistribution::GaussianMixture { components } => {
                let first = components.first().ok_or_else(|| {
                    Error::InvalidParameter("mixture needs at least one component".into())
                })?;
                for c in components {
                    c.center.check_dim(first.center.dim())?;
                    check_width(c.q)?;
                    if !c.weight.is_finite() {
                        return Err(Error::InvalidParameter(format!(
                            "mixture weight {} is not finite",
                            c.weight
                        )));
                    }
                }
                Ok(())
            }
            ModeDistribution::GridSampled { grid, values } => {
                if values.len() != grid.total_nodes() {
                    return Err(Error::InvalidParameter(format!(
                        "grid distribution has {} values for {} nodes",
                        values.len(),
                        grid.total_nodes()
                    )));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidParameter(
                        "grid distribution has non-finite values".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Gaussian terms making up the distribution; `None` for grid samples.
    pub fn gaussian_components(&self) -> Option<Vec<GaussianComponent>> {
        match self {
            ModeDistribution::IsotropicGaussian { center, q } => Some(vec![GaussianComponent {
                center: *center,
                q: *q,
                weight: 1.0,
            }]),
            ModeDistribution::GaussianMixture { components } => Some(components.clone()),
            ModeDistribution::GridSampled { .. } => None,
        }
    }

    pub fn eval(&self, p: &Vector) -> f64 {
        match self {
            ModeDistribution::IsotropicGaussian { center, q } => {
                gaussian_norm(*q, p.dim()) * (-(*p - *center).norm_sq() / (q * q)).exp()
            }
            ModeDistribution::GaussianMixture { components } => components
                .iter()
                .map(|c| {
                    c.weight
                        * gaussian_norm(c.q, p.dim())
                        * (-(*p - c.center).norm_sq() / (c.q * c.q)).exp()
                })
                .sum(),
            ModeDistribution::GridSampled { grid, values } => interpolate(grid, values, p),
        }
    }

    /// Values at every node of `grid`, flat order. Exact copy when the
    /// distribution was sampled on this very grid.
    pub fn values_on(&self, grid: &QuadratureGrid) -> Vec<f64> {
        if let ModeDistribution::GridSampled { grid: own, values } = self {
            if own == grid {
                return values.clone();
            }
        }
        grid.points().iter().map(|p| self.eval(p)).collect()
    }

    /// ∫f² over all space, for the parametric variants.
    pub fn analytic_norm_sq(&self) -> Option<f64> {
        let comps = self.gaussian_components()?;
        let mut total = 0.0;
        for a in &comps {
            for b in &comps {
                total += a.weight * b.weight * component_overlap(&a.center, a.q, &b.center, b.q);
            }
        }
        Some(total)
    }

    /// ∫f²: exact for parametric variants, quadrature on the sampling grid otherwise.
    pub fn norm_sq(&self) -> f64 {
        match self {
            ModeDistribution::GridSampled { grid, values } => {
                let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
                grid.sum(&sq)
            }
            _ => self.analytic_norm_sq().expect("parametric"),
        }
    }

    /// Multiply the amplitude by `factor`.
    pub fn scaled(&self, factor: f64) -> ModeDistribution {
        match self {
            ModeDistribution::IsotropicGaussian { center, q } => {
                ModeDistribution::GaussianMixture {
                    components: vec![GaussianComponent {
                        center: *center,
                        q: *q,
                        weight: factor,
                    }],
                }
            }
            ModeDistribution::GaussianMixture { components } => ModeDistribution::GaussianMixture {
                components: components
                    .iter()
                    .map(|c| GaussianComponent {
                        weight: c.weight * factor,
                        ..*c
                    })
                    .collect(),
            },
            ModeDistribution::GridSampled { grid, values } => ModeDistribution::GridSampled {
                grid: grid.clone(),
                values: values.iter().map(|v| v * factor).collect(),
            },
        }
    }

    /// Translate in momentum space: p ↦ f(p − offset).
    pub fn shifted(&self, offset: &Vector) -> Result<ModeDistribution> {
        offset.check_dim(self.dimension())?;
        Ok(match self {
            ModeDistribution::IsotropicGaussian { center, q } => ModeDistribution::IsotropicGaussian {
                center: *center + *offset,
                q: *q,
            },
            ModeDistribution::GaussianMixture { components } => ModeDistribution::GaussianMixture {
                components: components
                    .iter()
                    .map(|c| GaussianComponent {
                        center: c.center + *offset,
                        ..*c
                    })
                    .collect(),
            },
            ModeDistribution::GridSampled { grid, values } => ModeDistribution::GridSampled {
                grid: QuadratureGrid::new(
                    grid.bounds()
                        .iter()
                        .zip(offset.as_slice())
                        .map(|(&(lo, hi), o)| (lo + o, hi + o))
                        .collect(),
                    grid.nodes_per_axis(),
                    grid.rule(),
                )?,
                values: values.clone(),
            },
        })
    }

    /// Per-axis (min, max) of component centres, plus (min, max) widths.
    fn parametric_extent(&self) -> Option<Extent> {
        let comps = self.gaussian_components()?;
        let d = self.dimension();
        let mut ext = vec![(f64::INFINITY, f64::NEG_INFINITY); d];
        let (mut qmin, mut qmax) = (f64::INFINITY, 0.0f64);
        for c in &comps {
            for (axis, e) in ext.iter_mut().enumerate() {
                e.0 = e.0.min(c.center.get(axis));
                e.1 = e.1.max(c.center.get(axis));
            }
            qmin = qmin.min(c.q);
            qmax = qmax.max(c.q);
        }
        Some((ext, qmin, qmax))
    }

    /// Momentum box holding the distribution, and (narrowest, widest)
    /// feature widths in momentum.
    fn momentum_support(&self) -> (Vec<(f64, f64)>, f64, f64) {
        if let Some((ext, qmin, qmax)) = self.parametric_extent() {
            let pad = TRUNCATION_WIDTHS * qmax;
            let bounds = ext.iter().map(|&(lo, hi)| (lo - pad, hi + pad)).collect();
            return (bounds, qmin, qmax);
        }
        let ModeDistribution::GridSampled { grid, values } = self else {
            unreachable!("non-parametric distributions are grid samples")
        };
        // Width estimate from the spread of f² on its own grid.
        let w = grid.weights();
        let pts = grid.points();
        let mass: f64 = values.iter().zip(&w).map(|(v, w)| v * v * w).sum();
        let d = grid.dimension();
        let mut spread = 0.0;
        if mass > 0.0 {
            let mut mean = Vector::zeros(d);
            for ((p, v), w) in pts.iter().zip(values).zip(&w) {
                mean = mean + p.scale(v * v * w / mass);
            }
            for ((p, v), w) in pts.iter().zip(values).zip(&w) {
                spread += (*p - mean).norm_sq() * v * v * w / mass;
            }
            spread = (spread / d as f64).sqrt();
        }
        let h = (0..d).map(|a| grid.spacing(a)).fold(f64::INFINITY, f64::min);
        let q = (2.0 * spread).max(2.0 * h);
        (grid.bounds().to_vec(), q, q)
    }
}

/// Multilinear interpolation; zero outside the grid box, constant between the
/// box edge and the outermost node.
fn interpolate(grid: &QuadratureGrid, values: &[f64], p: &Vector) -> f64 {
    let d = grid.dimension();
    if p.dim() != d || !grid.contains(p) {
        return 0.0;
    }
    let n = grid.nodes_per_axis();
    let mut base = [0usize; 3];
    let mut frac = [0.0f64; 3];
    for axis in 0..d {
        let first = grid.axis_points(axis)[0];
        let h = grid.spacing(axis);
        let t = ((p.get(axis) - first) / h).clamp(0.0, (n - 1) as f64);
        let i = (t.floor() as usize).min(n - 2);
        base[axis] = i;
        frac[axis] = t - i as f64;
    }
    let mut acc = 0.0;
    for corner in 0..(1usize << d) {
        let mut flat = 0;
        let mut weight = 1.0;
        for axis in 0..d {
            let bit = (corner >> axis) & 1;
            flat = flat * n + base[axis] + bit;
            weight *= if bit == 1 { frac[axis] } else { 1.0 - frac[axis] };
        }
        if weight != 0.0 {
            acc += weight * values[flat];
        }
    }
    acc
}

pub fn make_gaussian(center: Vector, q: f64, config: &PhysicalConfig) -> Result<ModeDistribution> {
    check_width(q)?;
    center.check_dim(config.dimension())?;
    Ok(ModeDistribution::IsotropicGaussian { center, q })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub is_nonnegative: bool,
    pub norm_value: f64,
    pub ok: bool,
}

pub fn validate_distribution(f: &ModeDistribution, grid: &QuadratureGrid, tol: f64) -> ValidationReport {
    let values = f.values_on(grid);
    let mut is_nonnegative = values.iter().all(|&v| v >= 0.0);
    match f {
        ModeDistribution::GaussianMixture { components } => {
            is_nonnegative &= components.iter().all(|c| c.weight >= 0.0);
        }
        ModeDistribution::GridSampled { values, .. } => {
            is_nonnegative &= values.iter().all(|&v| v >= 0.0);
        }
        ModeDistribution::IsotropicGaussian { .. } => {}
    }
    let squares: Vec<f64> = values.iter().map(|v| v * v).collect();
    let norm_value = grid.sum(&squares);
    ValidationReport {
        is_nonnegative,
        norm_value,
        ok: is_nonnegative && (norm_value - 1.0).abs() <= tol,
    }
}

/// Rescale so that ∫f² = 1. Parametric distributions use their exact norm;
/// grid samples use quadrature on `grid`.
pub fn renormalize(f: &ModeDistribution, grid: &QuadratureGrid) -> Result<ModeDistribution> {
    let norm_sq = match f.analytic_norm_sq() {
        Some(n) => n,
        None => {
            let v = f.values_on(grid);
            grid.sum(&v.iter().map(|x| x * x).collect::<Vec<_>>())
        }
    };
    if norm_sq.is_nan() || norm_sq <= f64::MIN_POSITIVE {
        return Err(Error::DegenerateDistribution(norm_sq));
    }
    if matches!(f, ModeDistribution::IsotropicGaussian { .. }) {
        return Ok(f.clone());
    }
    Ok(f.scaled(norm_sq.sqrt().recip()))
}

fn support_union(dists: &[&ModeDistribution]) -> (Vec<(f64, f64)>, f64, f64) {
    let mut bounds: Vec<(f64, f64)> = Vec::new();
    let (mut qmin, mut qmax) = (f64::INFINITY, 0.0f64);
    for d in dists {
        let (b, lo_q, hi_q) = d.momentum_support();
        if bounds.is_empty() {
            bounds = b;
        } else {
            for (acc, new) in bounds.iter_mut().zip(b) {
                acc.0 = acc.0.min(new.0);
                acc.1 = acc.1.max(new.1);
            }
        }
        qmin = qmin.min(lo_q);
        qmax = qmax.max(hi_q);
    }
    (bounds, qmin, qmax)
}

fn node_cap(dim: usize, caps: [usize; 3]) -> usize {
    caps[dim - 1]
}

/// Momentum grid extending [`TRUNCATION_WIDTHS`]·Q_max beyond every
/// component centre, spacing Q_min/6. Grid-sampled inputs that all share one
/// grid get that grid back unchanged.
pub fn default_mode_grid(dists: &[&ModeDistribution]) -> Result<QuadratureGrid> {
    let first = dists
        .first()
        .ok_or_else(|| Error::InvalidParameter("no distributions given".into()))?;
    if let ModeDistribution::GridSampled { grid, .. } = first {
        if dists
            .iter()
            .all(|d| matches!(d, ModeDistribution::GridSampled { grid: g, .. } if g == grid))
        {
            return Ok(grid.clone());
        }
    }
    let (bounds, qmin, _) = support_union(dists);
    let dim = bounds.len();
    let longest = bounds.iter().map(|(lo, hi)| hi - lo).fold(0.0, f64::max);
    let wanted = (longest / (qmin / 6.0)).ceil() as usize + 1;
    let nodes = wanted.clamp(33, node_cap(dim, [2001, 301, 81]));
    QuadratureGrid::new(bounds, nodes, QuadratureRule::Trapezoid)
}

/// Position grid centred on the origin, half-width 8ħ/Q_min, resolving both
/// the narrowest envelope and the fastest interference fringe.
pub fn default_position_grid(
    dists: &[&ModeDistribution],
    config: &PhysicalConfig,
) -> Result<QuadratureGrid> {
    if dists.is_empty() {
        return Err(Error::InvalidParameter("no distributions given".into()));
    }
    let hbar = config.hbar();
    let (bounds, qmin, qmax) = support_union(dists);
    let half = 8.0 * hbar / qmin;
    let mut spread = 0.0f64;
    for d in dists {
        if let Some(comps) = d.gaussian_components() {
            for a in dists.iter().filter_map(|e| e.gaussian_components()).flatten() {
                for b in &comps {
                    spread = spread.max((a.center - b.center).norm());
                }
            }
        } else {
            spread = spread.max(
                bounds
                    .iter()
                    .map(|(lo, hi)| (hi - lo).powi(2))
                    .sum::<f64>()
                    .sqrt(),
            );
        }
    }
    let fringe = 2.0 * std::f64::consts::PI * hbar / (8.0 * (spread + 4.0 * qmax));
    let envelope = hbar / (4.0 * qmax);
    let h = fringe.min(envelope);
    let dim = config.dimension();
    let nodes = ((2.0 * half / h).ceil() as usize + 1).clamp(33, node_cap(dim, [4001, 401, 101]));
    QuadratureGrid::cube(dim, -half, half, nodes, QuadratureRule::Trapezoid)
}

/// Pair of one-particle mode distributions with exchange statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct TwoParticleState {
    f: ModeDistribution,
    g: ModeDistribution,
    statistics: Statistics,
    config: PhysicalConfig,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    statistics: Statistics,
    #[serde(default = "one")]
    hbar: f64,
    #[serde(default = "three")]
    dimension: usize,
    f: ModeDistribution,
    g: ModeDistribution,
}

fn one() -> f64 {
    1.0
}

fn three() -> usize {
    3
}

impl TryFrom<StateRepr> for TwoParticleState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        TwoParticleState::new(r.f, r.g, r.statistics, PhysicalConfig::new(r.hbar, r.dimension)?)
    }
}

impl From<TwoParticleState> for StateRepr {
    fn from(s: TwoParticleState) -> Self {
        StateRepr {
            statistics: s.statistics,
            hbar: s.config.hbar(),
            dimension: s.config.dimension(),
            f: s.f,
            g: s.g,
        }
    }
}

impl TwoParticleState {
    pub fn new(
        f: ModeDistribution,
        g: ModeDistribution,
        statistics: Statistics,
        config: PhysicalConfig,
    ) -> Result<Self> {
        for (name, d) in [("f", &f), ("g", &g)] {
            d.check()?;
            if d.dimension() != config.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: config.dimension(),
                    found: d.dimension(),
                });
            }
            let norm = d.norm_sq();
            if norm.is_nan() || (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::InvalidParameter(format!(
                    "{name} is not normalized: integral of {name}^2 is {norm}; renormalize it first"
                )));
            }
        }
        Ok(Self {
            f,
            g,
            statistics,
            config,
        })
    }

    pub fn f(&self) -> &ModeDistribution {
        &self.f
    }

    pub fn g(&self) -> &ModeDistribution {
        &self.g
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn config(&self) -> &PhysicalConfig {
        &self.config
    }

    pub fn with_statistics(&self, statistics: Statistics) -> Self {
        Self {
            statistics,
            ..self.clone()
        }
    }

    pub fn mode_grid(&self) -> Result<QuadratureGrid> {
        default_mode_grid(&[&self.f, &self.g])
    }

    pub fn position_grid(&self) -> Result<QuadratureGrid> {
        default_position_grid(&[&self.f, &self.g], &self.config)
    }

    /// Parse a JSON or TOML description (TOML when `toml` is true).
    pub fn from_text(text: &str, toml: bool) -> Result<Self> {
        if toml {
            ::toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        } else {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serializes")
    }

    pub fn to_toml(&self) -> String {
        ::toml::to_string(self).expect("state serializes")
    }
}
