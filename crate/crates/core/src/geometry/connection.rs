use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::tensor::{Metric, Tensor, Valence};

use super::{LieAlgebra, Vector};

/// A left-invariant linear connection: entry `[i, j, k]` of the `(1,2)`
/// tensor is the `X_k` component of `∇_{X_i} X_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
}

impl Connection {
    pub fn new(gamma: Tensor) -> Result<Self> {
        if gamma.valence() != Valence::new(1, 2) {
            return Err(Error::Shape(format!(
                "connection coefficients must be (1,2), got {}",
                gamma.valence()
            )));
        }
        Ok(Self { gamma })
    }

    pub fn coefficients(&self) -> &Tensor {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// `∇_{X_i} X_j`.
    pub fn covariant_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim()).map(|k| self.gamma.get(&[i, j, k]).clone()).collect()
    }

    /// `Γ^k_{ij} - Γ^k_{ji} - c^k_{ij}`; zero iff torsion-free for `algebra`.
    pub fn torsion_residual(&self, algebra: &LieAlgebra) -> Result<Tensor> {
        let swapped = self.gamma.permuted(&[1, 0, 2])?;
        self.gamma.checked_sub(&swapped)?.checked_sub(algebra.structure())
    }

    /// Covariant derivative of a left-invariant tensor. The new covariant
    /// slot (the direction) is placed first.
    pub fn covariant_derivative(&self, t: &Tensor) -> Result<Tensor> {
        if t.dim() != self.dim() || t.space() != self.gamma.space() {
            return Err(Error::Shape("tensor does not match the connection".into()));
        }
        let n = self.dim();
        let down = t.valence().down;
        let rank = t.rank();
        let valence = Valence::new(t.valence().up, down + 1);
        let space = t.space().clone();
        let mut src = vec![0; rank];
        Ok(Tensor::from_fn(&space, n, valence, |idx| {
            let a = idx[0];
            let rest = &idx[1..];
            let mut acc = Poly::zero(&space);
            for slot in 0..rank {
                src.copy_from_slice(rest);
                for m in 0..n {
                    // covariant: -Γ^m_{a, i_slot} T(.., m, ..)
                    // contravariant: +Γ^{i_slot}_{a, m} T(.., m, ..)
                    let coeff = if slot < down {
                        self.gamma.get(&[a, rest[slot], m])
                    } else {
                        self.gamma.get(&[a, m, rest[slot]])
                    };
                    if coeff.is_zero() {
                        continue;
                    }
                    src[slot] = m;
                    let v = t.get(&src);
                    if v.is_zero() {
                        continue;
                    }
                    if slot < down {
                        acc -= &(coeff * v);
                    } else {
                        acc += &(coeff * v);
                    }
                }
            }
            acc
        }))
    }

    /// Curvature `R(X_i, X_j) X_k = ∇_i ∇_j X_k - ∇_j ∇_i X_k - ∇_{[X_i, X_j]} X_k`
    /// as a `(1,3)` tensor with entry `[i, j, k, p]`.
    pub fn curvature(&self, algebra: &LieAlgebra) -> Result<Tensor> {
        if algebra.dim() != self.dim() {
            return Err(Error::Shape("algebra does not match the connection".into()));
        }
        let n = self.dim();
        let g = |a: usize, b: usize, c: usize| self.gamma.get(&[a, b, c]);
        let space = self.gamma.space().clone();
        Ok(Tensor::from_fn(&space, n, Valence::new(1, 3), |idx| {
            let (i, j, k, p) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = Poly::zero(&space);
            for m in 0..n {
                let (a, b) = (g(j, k, m), g(i, m, p));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
                let (a, b) = (g(i, k, m), g(j, m, p));
                if !a.is_zero() && !b.is_zero() {
                    acc -= &(a * b);
                }
                let (a, b) = (algebra.constant(i, j, m), g(m, k, p));
                if !a.is_zero() && !b.is_zero() {
                    acc -= &(a * b);
                }
            }
            acc
        }))
    }
}

/// Levi-Civita connection of a left-invariant metric from the Koszul formula
/// `2 g(∇_x y, z) = g([x,y],z) + g([z,x],y) + g([z,y],x)`, solved with the
/// exact inverse metric.
pub fn levi_civita(algebra: &LieAlgebra, g: &Metric) -> Result<Connection> {
    if g.dim() != algebra.dim() || g.space() != algebra.space() {
        return Err(Error::Shape("metric does not match the algebra".into()));
    }
    let n = algebra.dim();
    // c_low[x, y, z] = g([X_x, X_y], X_z)
    let c_low = algebra.structure().lower(2, g.tensor())?;
    let half = Rational::new(1.into(), 2.into());
    let koszul = Tensor::from_fn(algebra.space(), n, Valence::new(0, 3), |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        (&(c_low.get(&[x, y, z]) + c_low.get(&[z, x, y])) + c_low.get(&[z, y, x])).scale(&half)
    });
    Connection::new(koszul.raise(2, g.inverse())?)
}

/// `R(x, y, z, u) = m(R(x, y) z, u)`.
pub fn lower04(r: &Tensor, m: &Metric) -> Result<Tensor> {
    if r.valence() != Valence::new(1, 3) {
        return Err(Error::Shape(format!("curvature must be (1,3), got {}", r.valence())));
    }
    r.lower(3, m.tensor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ParameterSpace};
    use crate::family::{family_algebra, family_metric};

    #[test]
    fn family_connection_is_half_bracket() {
        let s = ParameterSpace::family();
        let alg = family_algebra(&s.vars());
        let nabla = levi_civita(&alg, &family_metric(&s)).unwrap();
        assert_eq!(nabla.coefficients(), &alg.structure().scale(&rat(1, 2)));
    }

    #[test]
    fn abelian_connection_vanishes() {
        let s = ParameterSpace::family();
        let alg = LieAlgebra::abelian(&s, 4).unwrap();
        let nabla = levi_civita(&alg, &family_metric(&s)).unwrap();
        assert!(nabla.coefficients().is_zero());
        assert!(nabla.curvature(&alg).unwrap().is_zero());
    }

    #[test]
    fn non_ad_invariant_instance() {
        // [X1, X2] = X2 with the identity metric. Brute-force Koszul oracle:
        // ∇_{X1} X1 = 0, ∇_{X1} X2 = 0, ∇_{X2} X1 = -X2, ∇_{X2} X2 = X1.
        let s = ParameterSpace::family();
        let (z, one) = (Poly::zero(&s), Poly::from_int(&s, 1));
        let alg = LieAlgebra::from_brackets(&s, 2, vec![(0, 1, vec![z.clone(), one.clone()])]).unwrap();
        let g = Metric::diagonal(&s, &[rat(1, 1), rat(1, 1)]).unwrap();
        let nabla = levi_civita(&alg, &g).unwrap();
        assert_eq!(nabla.covariant_basis(0, 0), vec![z.clone(), z.clone()]);
        assert_eq!(nabla.covariant_basis(0, 1), vec![z.clone(), z.clone()]);
        assert_eq!(nabla.covariant_basis(1, 0), vec![z.clone(), -&one]);
        assert_eq!(nabla.covariant_basis(1, 1), vec![one.clone(), z.clone()]);
        assert!(nabla.torsion_residual(&alg).unwrap().is_zero());
        assert!(nabla.covariant_derivative(g.tensor()).unwrap().is_zero());
    }

    #[test]
    fn metric_is_parallel() {
        let s = ParameterSpace::family();
        let alg = family_algebra(&s.vars());
        let g = family_metric(&s);
        let nabla = levi_civita(&alg, &g).unwrap();
        assert!(nabla.covariant_derivative(g.tensor()).unwrap().is_zero());
        assert!(nabla.covariant_derivative(g.inverse()).unwrap().is_zero());
    }
}
