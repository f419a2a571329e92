//! The inequality battery: norm sign, probability positivity, amplitude and
//! C̃ bounds, and both complementarity bounds, swept over random mixture
//! families.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::families::{random_state, random_vector, FamilyParams};
use crate::interference::{norm_from_overlap, DetectionModel, INDETERMINATE_EPSILON};
use crate::measures::{assess, contrast_from_breakdown, distinguishability};
use crate::model::{Statistics, TwoParticleState};

/// Deliberate defects for exercising the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Evaluate the fermion norm with the boson sign.
    FlipFermionNormSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub families: usize,
    pub seed: u64,
    /// Fermion pairs with larger overlap are left out of the lower-bound check.
    pub fermion_beta_cap: f64,
    pub params: FamilyParams,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            families: 200,
            seed: 1,
            fermion_beta_cap: 0.999,
            params: FamilyParams::default(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    OverlapBound,
    FermionNorm,
    ProbabilityNonNegative,
    AmplitudeBound,
    CTildeBound,
    BosonComplementarity,
    BosonQuadratic,
    BosonEquality,
    FermionLowerBound,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::OverlapBound,
        Check::FermionNorm,
        Check::ProbabilityNonNegative,
        Check::AmplitudeBound,
        Check::CTildeBound,
        Check::BosonComplementarity,
        Check::BosonQuadratic,
        Check::BosonEquality,
        Check::FermionLowerBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::OverlapBound => "overlap_at_most_one",
            Check::FermionNorm => "fermion_norm_nonpositive",
            Check::ProbabilityNonNegative => "probability_nonnegative",
            Check::AmplitudeBound => "interference_amplitude_bound",
            Check::CTildeBound => "c_tilde_bound",
            Check::BosonComplementarity => "boson_d_plus_c_at_most_two",
            Check::BosonQuadratic => "boson_quadratic_form",
            Check::BosonEquality => "boson_identical_equality",
            Check::FermionLowerBound => "fermion_d_plus_c_lower_bound",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Check::BosonComplementarity | Check::BosonQuadratic | Check::FermionLowerBound => 1e-9,
            _ => 1e-12,
        }
    }
}

/// Outcome of one check across the sweep. `worst_margin` is the smallest
/// distance inside the bound; negative beyond tolerance means violated.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub check: Check,
    pub evaluated: usize,
    pub violations: usize,
    pub worst_margin: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

type Margins = Vec<(Check, f64)>;

fn family_margins(state: &TwoParticleState, r: &crate::vector::Vector, cfg: &SuiteConfig) -> Result<Margins> {
    let mut out = Vec::new();
    let grid = state.mode_grid()?;
    let boson = state.with_statistics(Statistics::Boson);
    let model = DetectionModel::new(&boson, &grid)?;
    let beta = model.beta();
    let d = distinguishability(state.f(), state.g(), &grid);
    out.push((Check::OverlapBound, 1.0 - beta));

    let b = model.at(r);
    out.push((Check::ProbabilityNonNegative, b.p));
    out.push((Check::AmplitudeBound, b.p_ff + b.p_gg - (2.0 * b.re_p_fg).abs()));
    if let Ok(c) = contrast_from_breakdown(&b) {
        out.push((Check::CTildeBound, 1.0 - c.c_tilde.abs()));
        let rep = assess(Statistics::Boson, d, &c, 0.0);
        out.push((Check::BosonComplementarity, rep.slack));
        let (dr, cr) = rep.root_measures();
        out.push((Check::BosonQuadratic, 2.0 - (dr * dr + cr * cr)));
    }

    let fermion_sign = match cfg.fault {
        Some(Fault::FlipFermionNormSign) => Statistics::Boson,
        None => Statistics::Fermion,
    };
    out.push((Check::FermionNorm, -norm_from_overlap(fermion_sign, beta)));
    if beta <= cfg.fermion_beta_cap && beta < 1.0 - INDETERMINATE_EPSILON {
        let fermion = state.with_statistics(Statistics::Fermion);
        let fb = DetectionModel::new(&fermion, &grid)?.at(r);
        out.push((Check::ProbabilityNonNegative, fb.p));
        if let Ok(c) = contrast_from_breakdown(&fb) {
            out.push((Check::CTildeBound, 1.0 - c.c_tilde.abs()));
            out.push((Check::FermionLowerBound, assess(Statistics::Fermion, d, &c, 0.0).slack));
        }
    }

    let same = TwoParticleState::new(state.f().clone(), state.f().clone(), Statistics::Boson, *state.config())?;
    let same_grid = same.mode_grid()?;
    if let Ok(c) = contrast_from_breakdown(&DetectionModel::new(&same, &same_grid)?.at(r)) {
        let dist = distinguishability(same.f(), same.g(), &same_grid);
        out.push((Check::BosonEquality, -(dist + c.c - 2.0).abs()));
    }
    Ok(out)
}

/// Run every check over `cfg.families` random (f, g, r) draws. Family `i`
/// uses RNG stream `i`, so results do not depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let per_family: Vec<Margins> = (0..cfg.families)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let state = random_state(&mut rng, Statistics::Boson, &cfg.params)?;
            let r = random_vector(&mut rng, cfg.params.dimension, cfg.params.r_range);
            family_margins(&state, &r, cfg)
        })
        .collect::<Result<_>>()?;

    Ok(Check::ALL
        .iter()
        .map(|&check| {
            let margins: Vec<f64> = per_family
                .iter()
                .flatten()
                .filter(|(c, _)| *c == check)
                .map(|(_, m)| *m)
                .collect();
            CheckResult {
                check,
                evaluated: margins.len(),
                violations: margins.iter().filter(|&&m| m < -check.tolerance()).count(),
                worst_margin: margins.iter().cloned().fold(f64::INFINITY, f64::min),
            }
        })
        .collect())
}
