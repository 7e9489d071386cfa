//! Dense rational matrix helpers backing metric inversion and signature.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse over the rationals.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("matrix is not square".into()));
    }
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (ac, ic) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &f * ac;
                    inv[r][j] -= &f * ic;
                }
            }
        }
    }
    Ok(inv)
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rational::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<Rational>]) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Inertia `(plus, minus, zero)` of a symmetric matrix via congruence
/// diagonalization (Sylvester's law of inertia).
pub fn inertia(m: &Matrix) -> (usize, usize, usize) {
    let mut a = m.clone();
    let n = a.len();
    let (mut plus, mut minus, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonals vanish: add a row/column with a
                // nonzero off-diagonal entry to produce a nonzero pivot.
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                    None => {
                        zero += active.len();
                        break;
                    }
                }
            }
        };
        let pv = a[p][p].clone();
        if pv.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&i| i != p);
        for &r in &active {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] / &pv;
            for k in 0..n {
                let v = &f * &a[p][k];
                a[r][k] -= v;
            }
            for k in 0..n {
                let v = &f * &a[k][p];
                a[k][r] -= v;
            }
        }
    }
    (plus, minus, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = invert(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(3));
    }

    #[test]
    fn singular_detected() {
        let a = m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
        assert_eq!(invert(&a), Err(Error::Singular));
    }

    #[test]
    fn inertia_of_hyperbolic_forms() {
        let tg = m(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        assert_eq!(inertia(&tg), (2, 2, 0));
        assert_eq!(inertia(&m(&[&[1, 0], &[0, -1]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[1, 2], &[2, 4]])), (1, 0, 1));
        assert_eq!(inertia(&m(&[&[0, 0], &[0, 0]])), (0, 0, 2));
    }
}
