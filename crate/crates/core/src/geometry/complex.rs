use crate::algebra::{ParameterSpace, Poly, Rational};
use crate::error::{Error, Result};
use crate::tensor::{matrix, Metric, Tensor, Valence};

use super::Vector;

/// An almost complex structure `J` with constant components, stored as a
/// `(1,1)` tensor whose entry `[i, k]` is the `X_k` component of `J X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostComplexStructure {
    j: Tensor,
}

impl AlmostComplexStructure {
    pub fn new(j: Tensor) -> Result<Self> {
        if j.valence() != Valence::new(1, 1) {
            return Err(Error::Shape(format!("J must be (1,1), got {}", j.valence())));
        }
        j.to_matrix()?;
        let out = Self { j };
        let n = out.dim();
        for i in 0..n {
            let jj = out.apply(&out.image(i));
            for (k, p) in jj.iter().enumerate() {
                let want = if k == i { -1 } else { 0 };
                if *p != Poly::from_int(out.space(), want) {
                    return Err(Error::Invariant(format!("J^2 != -id on X{}", i + 1)));
                }
            }
        }
        Ok(out)
    }

    /// From the matrix acting on column vectors: `rows[k][i]` is the `X_k`
    /// component of `J X_i`.
    pub fn from_matrix(space: &ParameterSpace, rows: &[Vec<Rational>]) -> Result<Self> {
        Self::new(Tensor::from_matrix(
            space,
            Valence::new(1, 1),
            &matrix::transpose(rows),
        )?)
    }

    /// `J X_i = X_{i+n}`, `J X_{i+n} = -X_i`.
    pub fn standard(space: &ParameterSpace, dim: usize) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(Error::Dimension(
                dim,
                "almost complex structures need even dimension".into(),
            ));
        }
        let n = dim / 2;
        let mut entries = Vec::new();
        for i in 0..n {
            entries.push((vec![i, i + n], Poly::from_int(space, 1)));
            entries.push((vec![i + n, i], Poly::from_int(space, -1)));
        }
        Self::new(Tensor::build(space, dim, Valence::new(1, 1), entries)?)
    }

    pub fn tensor(&self) -> &Tensor {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn space(&self) -> &ParameterSpace {
        self.j.space()
    }

    /// Component `k` of `J X_i`.
    pub fn component(&self, i: usize, k: usize) -> &Poly {
        self.j.get(&[i, k])
    }

    /// `J X_i`.
    pub fn image(&self, i: usize) -> Vector {
        (0..self.dim()).map(|k| self.component(i, k).clone()).collect()
    }

    pub fn apply(&self, v: &[Poly]) -> Vector {
        let n = self.dim();
        let mut out = vec![Poly::zero(self.space()); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let c = self.component(i, k);
                if !c.is_zero() {
                    *o += &(c * vi);
                }
            }
        }
        out
    }

    pub fn change_basis(&self, basis: &matrix::Matrix) -> Result<Self> {
        Self::new(self.j.change_basis(basis)?)
    }
}

/// The associated metric `g~(X, Y) = g(X, J Y)`.
pub fn associated_metric(g: &Metric, j: &AlmostComplexStructure) -> Result<Metric> {
    if !g.norden_residual(j.tensor())?.is_zero() {
        return Err(Error::Invariant("g is not a Norden metric for J".into()));
    }
    let n = g.dim();
    let t = Tensor::from_fn(g.space(), n, Valence::new(0, 2), |idx| {
        let mut acc = Poly::zero(g.space());
        for m in 0..n {
            let jm = j.component(idx[1], m);
            if !jm.is_zero() {
                acc += &(g.component(idx[0], m) * jm);
            }
        }
        acc
    });
    Metric::new(t).map_err(|e| match e {
        Error::NotSymmetric(at) => Error::Invariant(format!("associated metric is not symmetric at {at:?}")),
        other => other,
    })
}
