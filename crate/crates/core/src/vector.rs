use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 3;

/// Momentum or position vector in 1, 2 or 3 dimensions.
///
/// Stored inline so it is `Copy`; unused trailing components are always zero.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector {
    comps: [f64; MAX_DIMENSION],
    dim: usize,
}

impl Vector {
    pub fn new(comps: &[f64]) -> Result<Self> {
        if comps.is_empty() || comps.len() > MAX_DIMENSION {
            return Err(Error::InvalidParameter(format!(
                "vector must have 1..={MAX_DIMENSION} components, got {}",
                comps.len()
            )));
        }
        if let Some(bad) = comps.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "vector component {bad} is not finite"
            )));
        }
        let mut data = [0.0; MAX_DIMENSION];
        data[..comps.len()].copy_from_slice(comps);
        Ok(Self {
            comps: data,
            dim: comps.len(),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIMENSION).contains(&dim), "dimension {dim}");
        Self {
            comps: [0.0; MAX_DIMENSION],
            dim,
        }
    }

    /// Unit vector along `axis`.
    pub fn axis(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "axis {axis} out of range for dimension {dim}");
        let mut v = Self::zeros(dim);
        v.comps[axis] = 1.0;
        v
    }

    /// Vector with every component equal to `value`.
    pub fn splat(dim: usize, value: f64) -> Self {
        let mut v = Self::zeros(dim);
        v.comps[..dim].fill(value);
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.comps[..self.dim]
    }

    pub fn get(&self, axis: usize) -> f64 {
        self.as_slice()[axis]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.comps.iter().zip(other.comps.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        out.comps.iter_mut().for_each(|c| *c *= factor);
        out
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(1.0 / n))
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            })
        }
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(&v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.as_slice().to_vec()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for Vector {
    type Output = Vector;

    fn add(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.comps.iter_mut().zip(rhs.comps) {
            *a += b;
        }
        self
    }
}

impl Sub for Vector {
    type Output = Vector;

    fn sub(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.comps.iter_mut().zip(rhs.comps) {
            *a -= b;
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl Mul<Vector> for f64 {
    type Output = Vector;

    fn mul(self, rhs: Vector) -> Vector {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_lengths_and_non_finite() {
        assert!(Vector::new(&[]).is_err());
        assert!(Vector::new(&[1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(Vector::new(&[f64::NAN]).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Vector::new(&[1.0, 2.0]).unwrap();
        let b = Vector::new(&[3.0, -1.0]).unwrap();
        assert_eq!((a + b).as_slice(), &[4.0, 1.0]);
        assert_eq!((a - b).as_slice(), &[-2.0, 3.0]);
        assert_eq!(a.dot(&b), 1.0);
        assert_eq!((2.0 * a).as_slice(), &[2.0, 4.0]);
        assert_eq!(Vector::axis(3, 1).as_slice(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn serde_as_plain_list() {
        let v = Vector::new(&[0.5, -2.0]).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[0.5,-2.0]");
        let back: Vector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
