use num_traits::Zero;

use super::matrix;
use super::{Tensor, Valence};
use crate::algebra::{ParameterSpace, Poly, Rational};
use crate::error::{Error, Result};

/// Inertia of a nondegenerate symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

/// Exact inverse of a constant symmetric `(0,2)` tensor, as a `(2,0)` tensor.
pub fn metric_invert(g: &Tensor) -> Result<Tensor> {
    if g.valence() != Valence::new(0, 2) {
        return Err(Error::Shape(format!("metric must be (0,2), got {}", g.valence())));
    }
    let m = g.to_matrix()?;
    for a in 0..m.len() {
        for b in 0..a {
            if m[a][b] != m[b][a] {
                return Err(Error::NotSymmetric(vec![a, b]));
            }
        }
    }
    let inv = matrix::invert(&m)?;
    Tensor::from_matrix(g.space(), Valence::new(2, 0), &inv)
}

/// A constant, symmetric, nondegenerate metric with its cached inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    g: Tensor,
    inverse: Tensor,
    signature: Signature,
}

impl Metric {
    pub fn new(g: Tensor) -> Result<Self> {
        let inverse = metric_invert(&g)?;
        let (plus, minus, _) = matrix::inertia(&g.to_matrix()?);
        Ok(Self {
            g,
            inverse,
            signature: Signature { plus, minus },
        })
    }

    pub fn from_rows(space: &ParameterSpace, rows: &[Vec<Rational>]) -> Result<Self> {
        Self::new(Tensor::from_matrix(space, Valence::new(0, 2), rows)?)
    }

    pub fn diagonal(space: &ParameterSpace, diag: &[Rational]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = (0..diag.len())
            .map(|i| {
                (0..diag.len())
                    .map(|j| if i == j { diag[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::from_rows(space, &rows)
    }

    pub fn tensor(&self) -> &Tensor {
        &self.g
    }

    pub fn inverse(&self) -> &Tensor {
        &self.inverse
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn space(&self) -> &ParameterSpace {
        self.g.space()
    }

    pub fn component(&self, a: usize, b: usize) -> &Poly {
        self.g.get(&[a, b])
    }

    pub fn inverse_component(&self, a: usize, b: usize) -> &Poly {
        self.inverse.get(&[a, b])
    }

    /// `g(x, y)` for component vectors.
    pub fn inner(&self, x: &[Poly], y: &[Poly]) -> Poly {
        let mut acc = Poly::zero(self.space());
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let w = self.component(a, b);
                if w.is_zero() || x[a].is_zero() || y[b].is_zero() {
                    continue;
                }
                acc += &(&(&x[a] * &y[b]) * w);
            }
        }
        acc
    }

    /// `g(J X_a, J X_b) + g(X_a, X_b)`; zero exactly when `g` is a Norden
    /// metric for the `(1,1)` tensor `j`.
    pub fn norden_residual(&self, j: &Tensor) -> Result<Tensor> {
        if j.valence() != Valence::new(1, 1) || j.dim() != self.dim() {
            return Err(Error::Shape("J must be a (1,1) tensor of matching dimension".into()));
        }
        let n = self.dim();
        Ok(Tensor::from_fn(self.space(), n, Valence::new(0, 2), |idx| {
            let ja: Vec<Poly> = (0..n).map(|k| j.get(&[idx[0], k]).clone()).collect();
            let jb: Vec<Poly> = (0..n).map(|k| j.get(&[idx[1], k]).clone()).collect();
            &self.inner(&ja, &jb) + self.component(idx[0], idx[1])
        }))
    }

    pub fn is_norden(&self, j: &Tensor) -> Result<bool> {
        Ok(self.norden_residual(j)?.is_zero() && self.signature.plus == self.signature.minus)
    }
}
