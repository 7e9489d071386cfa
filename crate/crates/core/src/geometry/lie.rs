use crate::algebra::{ParameterSpace, Poly};
use crate::error::{Error, Result};
use crate::tensor::{matrix::Matrix, Metric, Tensor, Valence};

use super::Vector;

/// Lie algebra given by structure constants `[X_i, X_j] = c^k_{ij} X_k`,
/// stored as a `(1,2)` tensor with entry `[i, j, k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    structure: Tensor,
}

impl LieAlgebra {
    /// Wrap structure constants, checking shape and antisymmetry. The Jacobi
    /// identity is not enforced here; see [`LieAlgebra::jacobi_residual`].
    pub fn new(structure: Tensor) -> Result<Self> {
        if structure.valence() != Valence::new(1, 2) {
            return Err(Error::Shape(format!(
                "structure constants must be (1,2), got {}",
                structure.valence()
            )));
        }
        let dim = structure.dim();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::Dimension(dim, "expected an even positive dimension".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if *structure.get(&[i, j, k]) != -structure.get(&[j, i, k]) {
                        return Err(Error::Invariant(format!(
                            "structure constants not antisymmetric at [X{},X{}]",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { structure })
    }

    /// Build from bracket relations `(i, j, [X_i, X_j])` (0-based), filling
    /// in `[X_j, X_i] = -[X_i, X_j]`. Each unordered pair may appear once.
    pub fn from_brackets<I>(space: &ParameterSpace, dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        let mut c = Tensor::zeros(space, dim, Valence::new(1, 2));
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, value) in brackets {
            if i >= dim || j >= dim || value.len() != dim {
                return Err(Error::IndexOutOfRange { index: vec![i, j], dim });
            }
            if i == j {
                if value.iter().any(|p| !p.is_zero()) {
                    return Err(Error::Invariant(format!("[X{0},X{0}] must vanish", i + 1)));
                }
                continue;
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::DuplicateEntry(vec![i, j]));
            }
            for (k, p) in value.into_iter().enumerate() {
                c.set(&[j, i, k], -&p);
                c.set(&[i, j, k], p);
            }
        }
        Self::new(c)
    }

    pub fn abelian(space: &ParameterSpace, dim: usize) -> Result<Self> {
        Self::new(Tensor::zeros(space, dim, Valence::new(1, 2)))
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn space(&self) -> &ParameterSpace {
        self.structure.space()
    }

    pub fn structure(&self) -> &Tensor {
        &self.structure
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Poly {
        self.structure.get(&[i, j, k])
    }

    /// `[X_i, X_j]` as a component vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim()).map(|k| self.constant(i, j, k).clone()).collect()
    }

    /// `[x, y]^k = c^k_{ij} x^i y^j`.
    pub fn bracket(&self, x: &[Poly], y: &[Poly]) -> Result<Vector> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Shape(format!("bracket needs vectors of length {n}")));
        }
        let mut out = vec![Poly::zero(self.space()); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &(c * &xy);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]]`, entry `[i,j,k,m]`.
    pub fn jacobi_residual(&self) -> Tensor {
        let n = self.dim();
        let c = |a: usize, b: usize, d: usize| self.constant(a, b, d);
        Tensor::from_fn(self.space(), n, Valence::new(1, 3), |idx| {
            let (i, j, k, m) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = Poly::zero(self.space());
            for l in 0..n {
                for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = c(b, d, l);
                    let outer = c(a, l, m);
                    if !inner.is_zero() && !outer.is_zero() {
                        acc += &(inner * outer);
                    }
                }
            }
            acc
        })
    }

    /// `g([x,y],z) + g([x,z],y)` on basis vectors, entry `[x,y,z]`.
    pub fn ad_invariance_residual(&self, g: &Metric) -> Result<Tensor> {
        if g.dim() != self.dim() || g.space() != self.space() {
            return Err(Error::Shape("metric does not match the algebra".into()));
        }
        let n = self.dim();
        // lowered constants: c_{xyz} = g([X_x, X_y], X_z)
        let lowered = self.structure.lower(2, g.tensor())?;
        Ok(Tensor::from_fn(self.space(), n, Valence::new(0, 3), |i| {
            lowered.get(&[i[0], i[1], i[2]]) + lowered.get(&[i[0], i[2], i[1]])
        }))
    }

    pub fn change_basis(&self, basis: &Matrix) -> Result<Self> {
        Self::new(self.structure.change_basis(basis)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::family::{family_algebra, family_metric};

    #[test]
    fn family_bracket_and_antisymmetry() {
        let s = ParameterSpace::family();
        let l = s.vars();
        let alg = family_algebra(&l);
        let e = |i: usize| -> Vector { (0..4).map(|k| Poly::from_int(&s, (k == i) as i64)).collect() };
        let b13 = alg.bracket(&e(0), &e(2)).unwrap();
        assert_eq!(b13, vec![Poly::zero(&s), l[1].clone(), Poly::zero(&s), l[3].clone()]);
        let b31 = alg.bracket(&e(2), &e(0)).unwrap();
        assert_eq!(b31, b13.iter().map(|p| -p).collect::<Vec<_>>());
        let x: Vector = vec![l[0].clone(), Poly::from_int(&s, 2), l[2].clone(), Poly::zero(&s)];
        assert!(alg.bracket(&x, &x).unwrap().iter().all(Poly::is_zero));
        assert!(alg.bracket(&x[..3], &x).is_err());
    }

    #[test]
    fn jacobi_residuals() {
        let s = ParameterSpace::family();
        assert!(LieAlgebra::abelian(&s, 4).unwrap().jacobi_residual().is_zero());
        let l = s.vars();
        let alg = family_algebra(&l);
        assert!(alg.jacobi_residual().is_zero());

        // add l1*X1 to [X1,X3]
        let mut c = alg.structure().clone();
        c.set(&[0, 2, 0], l[0].clone());
        c.set(&[2, 0, 0], -&l[0]);
        let broken = LieAlgebra::new(c).unwrap();
        let res = broken.jacobi_residual();
        assert!(!res.is_zero());
        // [X1,[X3,X4]] + [X3,[X4,X1]] + [X4,[X1,X3]], X3 component, expanded by hand
        assert_eq!(*res.get(&[0, 2, 3, 2]), &l[0] * &l[3]);
    }

    #[test]
    fn ad_invariance() {
        let s = ParameterSpace::family();
        let l = s.vars();
        let g = family_metric(&s);
        assert!(family_algebra(&l).ad_invariance_residual(&g).unwrap().is_zero());
        assert!(LieAlgebra::abelian(&s, 4)
            .unwrap()
            .ad_invariance_residual(&g)
            .unwrap()
            .is_zero());

        let one = Poly::from_int(&s, 1);
        let z = Poly::zero(&s);
        let alg = LieAlgebra::from_brackets(&s, 2, vec![(0, 1, vec![z.clone(), one.clone()])]).unwrap();
        let id = Metric::diagonal(&s, &[rat(1, 1), rat(1, 1)]).unwrap();
        let r = alg.ad_invariance_residual(&id).unwrap();
        // g([X1,X2],X2) + g([X1,X2],X2) = 2
        assert_eq!(*r.get(&[0, 1, 1]), Poly::from_int(&s, 2));
    }

    #[test]
    fn rejects_non_antisymmetric_or_duplicate() {
        let s = ParameterSpace::family();
        let mut c = Tensor::zeros(&s, 2, Valence::new(1, 2));
        c.set(&[0, 1, 0], Poly::from_int(&s, 1));
        assert!(LieAlgebra::new(c).is_err());
        let one = vec![Poly::from_int(&s, 1), Poly::zero(&s)];
        assert!(LieAlgebra::from_brackets(&s, 2, vec![(0, 1, one.clone()), (1, 0, one)]).is_err());
        assert!(LieAlgebra::abelian(&s, 3).is_err());
    }
}
