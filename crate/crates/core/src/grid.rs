//! Truncated tensor-product lattices used for every numeric integral.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{Vector, MAX_DIMENSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureRule {
    /// Nodes on both bounds, half weight at the ends.
    #[default]
    Trapezoid,
    /// Nodes at cell centres, equal weights.
    Midpoint,
}

/// Uniform lattice over a box, the same node count on every axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct QuadratureGrid {
    bounds: Vec<(f64, f64)>,
    nodes: usize,
    rule: QuadratureRule,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct GridRepr {
    pub bounds: Vec<[f64; 2]>,
    pub nodes: usize,
    #[serde(default)]
    pub rule: QuadratureRule,
}

impl TryFrom<GridRepr> for QuadratureGrid {
    type Error = Error;

    fn try_from(r: GridRepr) -> Result<Self> {
        QuadratureGrid::new(r.bounds.iter().map(|b| (b[0], b[1])).collect(), r.nodes, r.rule)
    }
}

impl From<QuadratureGrid> for GridRepr {
    fn from(g: QuadratureGrid) -> Self {
        GridRepr {
            bounds: g.bounds.iter().map(|&(lo, hi)| [lo, hi]).collect(),
            nodes: g.nodes,
            rule: g.rule,
        }
    }
}

impl QuadratureGrid {
    pub fn new(bounds: Vec<(f64, f64)>, nodes: usize, rule: QuadratureRule) -> Result<Self> {
        if bounds.is_empty() || bounds.len() > MAX_DIMENSION {
            return Err(Error::InvalidParameter(format!(
                "grid needs 1..={MAX_DIMENSION} axes, got {}",
                bounds.len()
            )));
        }
        for (axis, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "axis {axis}: bounds [{lo}, {hi}] must be finite with lower < upper"
                )));
            }
        }
        if nodes < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 nodes per axis, got {nodes}"
            )));
        }
        Ok(Self { bounds, nodes, rule })
    }

    /// Same `[lo, hi]` interval on every axis.
    pub fn cube(dim: usize, lo: f64, hi: f64, nodes: usize, rule: QuadratureRule) -> Result<Self> {
        Self::new(vec![(lo, hi); dim], nodes, rule)
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn nodes_per_axis(&self) -> usize {
        self.nodes
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn total_nodes(&self) -> usize {
        self.nodes.pow(self.dimension() as u32)
    }

    /// Same box, different node count.
    pub fn with_nodes(&self, nodes: usize) -> Result<Self> {
        Self::new(self.bounds.clone(), nodes, self.rule)
    }

    pub fn with_rule(&self, rule: QuadratureRule) -> Self {
        Self {
            rule,
            ..self.clone()
        }
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        match self.rule {
            QuadratureRule::Trapezoid => (hi - lo) / (self.nodes - 1) as f64,
            QuadratureRule::Midpoint => (hi - lo) / self.nodes as f64,
        }
    }

    pub fn axis_points(&self, axis: usize) -> Vec<f64> {
        let (lo, _) = self.bounds[axis];
        let h = self.spacing(axis);
        let offset = match self.rule {
            QuadratureRule::Trapezoid => 0.0,
            QuadratureRule::Midpoint => 0.5,
        };
        (0..self.nodes).map(|i| lo + (i as f64 + offset) * h).collect()
    }

    pub fn axis_weights(&self, axis: usize) -> Vec<f64> {
        let h = self.spacing(axis);
        let mut w = vec![h; self.nodes];
        if self.rule == QuadratureRule::Trapezoid {
            w[0] *= 0.5;
            w[self.nodes - 1] *= 0.5;
        }
        w
    }

    /// Per-axis indices of flat node `index`; axis 0 varies slowest.
    pub fn multi_index(&self, mut index: usize) -> [usize; MAX_DIMENSION] {
        let mut idx = [0; MAX_DIMENSION];
        for axis in (0..self.dimension()).rev() {
            idx[axis] = index % self.nodes;
            index /= self.nodes;
        }
        idx
    }

    /// All node coordinates in flat order.
    pub fn points(&self) -> Vec<Vector> {
        let axes: Vec<Vec<f64>> = (0..self.dimension()).map(|a| self.axis_points(a)).collect();
        let d = self.dimension();
        (0..self.total_nodes())
            .map(|i| {
                let idx = self.multi_index(i);
                let mut c = [0.0; MAX_DIMENSION];
                for a in 0..d {
                    c[a] = axes[a][idx[a]];
                }
                Vector::new(&c[..d]).expect("grid coordinates are finite")
            })
            .collect()
    }

    /// Tensor-product weights in flat order.
    pub fn weights(&self) -> Vec<f64> {
        let axes: Vec<Vec<f64>> = (0..self.dimension()).map(|a| self.axis_weights(a)).collect();
        (0..self.total_nodes())
            .map(|i| {
                let idx = self.multi_index(i);
                (0..self.dimension()).map(|a| axes[a][idx[a]]).product()
            })
            .collect()
    }

    pub fn is_boundary(&self, index: usize) -> bool {
        let idx = self.multi_index(index);
        idx[..self.dimension()]
            .iter()
            .any(|&i| i == 0 || i == self.nodes - 1)
    }

    pub fn volume(&self) -> f64 {
        self.bounds.iter().map(|(lo, hi)| hi - lo).product()
    }

    pub fn contains(&self, p: &Vector) -> bool {
        p.dim() == self.dimension()
            && self
                .bounds
                .iter()
                .zip(p.as_slice())
                .all(|(&(lo, hi), &x)| lo <= x && x <= hi)
    }

    /// Weighted sum of `values` (one per node, flat order).
    pub fn sum(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.total_nodes());
        self.weights().iter().zip(values).map(|(w, v)| w * v).sum()
    }

    pub fn integrate<F: Fn(&Vector) -> f64>(&self, f: F) -> f64 {
        self.points()
            .iter()
            .zip(self.weights())
            .map(|(p, w)| w * f(p))
            .sum()
    }

    /// Largest `|coordinate|` reachable on the grid, per axis.
    pub fn max_abs(&self, axis: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        lo.abs().max(hi.abs())
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dimension() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dimension(),
            })
        }
    }
}
