//! Small Lie algebras and Norden data used as test inputs and in examples.

use num_traits::Zero;

use crate::algebra::{ParameterSpace, Poly, Rational};
use crate::error::Result;
use crate::tensor::{matrix, Metric};

use super::{AlmostComplexStructure, LieAlgebra};

fn unit_combo(space: &ParameterSpace, n: usize, terms: &[(usize, i64)]) -> Vec<Poly> {
    let mut v = vec![Poly::zero(space); n];
    for &(k, c) in terms {
        v[k] = Poly::from_int(space, c);
    }
    v
}

/// `h3 ⊕ R`: `[X1, X2] = X3`.
pub fn heisenberg_plus_line(space: &ParameterSpace) -> LieAlgebra {
    LieAlgebra::from_brackets(space, 4, vec![(0, 1, unit_combo(space, 4, &[(2, 1)]))]).expect("valid brackets")
}

/// `su(2) ⊕ R`: `[X1,X2] = X3`, `[X2,X3] = X1`, `[X3,X1] = X2`.
pub fn su2_plus_line(space: &ParameterSpace) -> LieAlgebra {
    LieAlgebra::from_brackets(
        space,
        4,
        vec![
            (0, 1, unit_combo(space, 4, &[(2, 1)])),
            (1, 2, unit_combo(space, 4, &[(0, 1)])),
            (2, 0, unit_combo(space, 4, &[(1, 1)])),
        ],
    )
    .expect("valid brackets")
}

/// `R ⋉_A R^3`: `[X4, X_i] = Σ_k a[k][i] X_k` for `i < 3`. Satisfies the
/// Jacobi identity for every 3×3 matrix `a`.
pub fn semidirect(space: &ParameterSpace, a: &[[Rational; 3]; 3]) -> LieAlgebra {
    let brackets = (0..3).map(|i| {
        let mut v = vec![Poly::zero(space); 4];
        for k in 0..3 {
            v[k] = Poly::constant(space, a[k][i].clone());
        }
        (3, i, v)
    });
    LieAlgebra::from_brackets(space, 4, brackets.collect::<Vec<_>>()).expect("valid brackets")
}

/// Symmetrise and project a constant matrix onto the Norden metrics of `j`:
/// `(h - J^t h J) / 2` with `h` the symmetric part. Fails when the result is
/// degenerate.
pub fn norden_projection(rows: &matrix::Matrix, j: &AlmostComplexStructure) -> Result<Metric> {
    let n = rows.len();
    let half = Rational::new(1.into(), 2.into());
    let sym: matrix::Matrix = (0..n)
        .map(|a| (0..n).map(|b| (&rows[a][b] + &rows[b][a]) * &half).collect())
        .collect();
    // jm[k][i] = component k of J X_i
    let jm: matrix::Matrix = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| j.component(i, k).as_constant().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let jtgj = matrix::mul(&matrix::transpose(&jm), &matrix::mul(&sym, &jm));
    let out: matrix::Matrix = (0..n)
        .map(|a| (0..n).map(|b| (&sym[a][b] - &jtgj[a][b]) * &half).collect())
        .collect();
    Metric::from_rows(j.space(), &out)
}

/// The same structure written in the basis `Y_a = Σ_b basis[b][a] X_b`.
pub fn change_basis(
    algebra: &LieAlgebra,
    g: &Metric,
    j: &AlmostComplexStructure,
    basis: &matrix::Matrix,
) -> Result<(LieAlgebra, Metric, AlmostComplexStructure)> {
    Ok((
        algebra.change_basis(basis)?,
        Metric::new(g.tensor().change_basis(basis)?)?,
        j.change_basis(basis)?,
    ))
}
