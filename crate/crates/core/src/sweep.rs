//! Parameter sweeps over centre separation or detector position.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interference::DetectionModel;
use crate::measures::{assess, contrast_from_breakdown, distinguishability};
use crate::model::{Statistics, TwoParticleState};
use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepParameter {
    /// Shift g by Δ·direction in momentum, detector fixed.
    Separation { direction: Vector, detector: Vector },
    /// Move the detector to t·direction, state fixed.
    Position { direction: Vector },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Output {
    P,
    P0,
    D,
    C,
    CTilde,
    Bound,
    Slack,
}

impl Output {
    pub const ALL: [Output; 7] = [
        Output::P,
        Output::P0,
        Output::D,
        Output::C,
        Output::CTilde,
        Output::Bound,
        Output::Slack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Output::P => "P",
            Output::P0 => "P0",
            Output::D => "D",
            Output::C => "C",
            Output::CTilde => "c_tilde",
            Output::Bound => "bound",
            Output::Slack => "slack",
        }
    }
}

impl std::str::FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Output::ALL
            .iter()
            .copied()
            .find(|o| o.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown output column {s:?}; expected one of P, P0, D, C, c_tilde, bound, slack"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub state: TwoParticleState,
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub outputs: Vec<Output>,
}

impl SweepSpec {
    pub fn new(
        state: TwoParticleState,
        parameter: SweepParameter,
        start: f64,
        stop: f64,
        steps: usize,
        outputs: Vec<Output>,
    ) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidParameter(format!("steps must be at least 2, got {steps}")));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidParameter("sweep range must be finite".into()));
        }
        if outputs.is_empty() {
            return Err(Error::InvalidParameter("no output columns requested".into()));
        }
        let dim = state.config().dimension();
        let direction = match &parameter {
            SweepParameter::Separation { direction, detector } => {
                detector.check_dim(dim)?;
                direction
            }
            SweepParameter::Position { direction } => direction,
        };
        direction.check_dim(dim)?;
        if (direction.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "sweep direction must be a unit vector, |u| = {}",
                direction.norm()
            )));
        }
        Ok(Self {
            state,
            parameter,
            start,
            stop,
            steps,
            outputs,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / n as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// Fermion state with f ≈ g; detection quantities are undefined.
    Indeterminate,
    /// P₀ below the singular threshold; contrast quantities are undefined.
    Singular,
}

impl RowStatus {
    pub fn label(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Indeterminate => "indeterminate",
            RowStatus::Singular => "singular",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub status: RowStatus,
    /// One entry per requested output; `None` where `status` makes it undefined.
    pub values: Vec<Option<f64>>,
    pub truncation_warning: bool,
}

fn evaluate_row(spec: &SweepSpec, t: f64) -> Result<SweepRow> {
    let (state, r) = match &spec.parameter {
        SweepParameter::Separation { direction, detector } => {
            let g = spec.state.g().shifted(&direction.scale(t))?;
            let s = TwoParticleState::new(
                spec.state.f().clone(),
                g,
                spec.state.statistics(),
                *spec.state.config(),
            )?;
            (s, *detector)
        }
        SweepParameter::Position { direction } => (spec.state.clone(), direction.scale(t)),
    };
    let grid = state.mode_grid()?;
    let d = distinguishability(state.f(), state.g(), &grid);
    let mut status = RowStatus::Ok;
    let mut truncation_warning = false;
    let (mut p, mut p0, mut c, mut c_tilde, mut bound, mut slack) = (None, None, None, None, None, None);
    match DetectionModel::new(&state, &grid) {
        Ok(model) => {
            truncation_warning = model.truncation_warning();
            let b = model.at(&r);
            p = Some(b.p);
            p0 = Some(b.p0);
            bound = Some(match state.statistics() {
                Statistics::Boson => 2.0,
                Statistics::Fermion => 2.0 * (1.0 - b.beta_fg),
            });
            match contrast_from_breakdown(&b) {
                Ok(contrast) => {
                    let rep = assess(state.statistics(), d, &contrast, 0.0);
                    c = Some(contrast.c);
                    c_tilde = Some(contrast.c_tilde);
                    slack = Some(rep.slack);
                }
                Err(Error::SingularPoint { .. }) => status = RowStatus::Singular,
                Err(e) => return Err(e),
            }
        }
        Err(Error::IndeterminateState { .. }) => status = RowStatus::Indeterminate,
        Err(e) => return Err(e),
    }
    let values = spec
        .outputs
        .iter()
        .map(|o| match o {
            Output::P => p,
            Output::P0 => p0,
            Output::D => Some(d),
            Output::C => c,
            Output::CTilde => c_tilde,
            Output::Bound => bound,
            Output::Slack => slack,
        })
        .collect();
    Ok(SweepRow {
        parameter: t,
        status,
        values,
        truncation_warning,
    })
}

/// Rows in sweep order; evaluation may run in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.values().par_iter().map(|&t| evaluate_row(spec, t)).collect()
}
