//! The transformation between the Levi-Civita connections of a Norden
//! metric `g` and its associated metric `g~`.

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::tensor::{Metric, Tensor, Valence};

use super::structure::{cyclic_sum, f_tensor, nabla_j, with_j_on_slot};
use super::{associated_metric, levi_civita, AlmostComplexStructure, Connection, LieAlgebra};

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `T(x, y) = (∇_x J) J y + (∇_y J) J x` from `∇J`, as a `(1,2)` tensor.
pub fn transfer_tensor(nabla_j: &Tensor, j: &AlmostComplexStructure) -> Result<Tensor> {
    if nabla_j.valence() != Valence::new(1, 2) {
        return Err(Error::Shape(format!("∇J must be (1,2), got {}", nabla_j.valence())));
    }
    // (∇_x J)(J y) = Σ_m J^m_y (∇_x J)(X_m)
    let dj_j = with_j_on_slot(nabla_j, 1, j)?;
    dj_j.checked_add(&dj_j.permuted(&[1, 0, 2])?)
}

/// Lowered view `T(y, z, u) = g(T(y, z), u)`.
pub fn transfer_lowered(t: &Tensor, g: &Metric) -> Result<Tensor> {
    t.lower(2, g.tensor())
}

/// The three independently computed candidates for `∇~`.
#[derive(Debug, Clone)]
pub struct TildePaths {
    /// Koszul formula for `g~`; the reference.
    pub koszul: Connection,
    /// `∇ + T`; computed only when `F` is cyclic-free.
    pub via_transfer: Option<Connection>,
    /// `½{[X_i,X_j] - J[X_i,JX_j] + J[JX_i,X_j]}`; computed only when `g` is
    /// ad-invariant and `F` is cyclic-free.
    pub via_brackets: Option<Connection>,
}

/// The bracket formula `½{[X_i,X_j] + J[X_i,JX_j] - J[JX_i,X_j]}` with the
/// signs as printed in the source table. It disagrees with the Koszul
/// reference and is kept only so reports can show the discrepancy.
pub fn tilde_printed_bracket_formula(algebra: &LieAlgebra, j: &AlmostComplexStructure) -> Result<Tensor> {
    bracket_formula(algebra, j, -1)
}

fn bracket_formula(algebra: &LieAlgebra, j: &AlmostComplexStructure, sign: i64) -> Result<Tensor> {
    let n = algebra.dim();
    let space = algebra.space().clone();
    let mut out = Tensor::zeros(&space, n, Valence::new(1, 2));
    let s = Rational::from_integer(sign.into()) * half();
    let h = half();
    for i in 0..n {
        let ei = unit(&space, n, i);
        let jei = j.image(i);
        for jj in 0..n {
            let ej = unit(&space, n, jj);
            let jej = j.image(jj);
            let plain = algebra.bracket(&ei, &ej)?;
            let a = j.apply(&algebra.bracket(&ei, &jej)?);
            let b = j.apply(&algebra.bracket(&jei, &ej)?);
            for k in 0..n {
                let v = &plain[k].scale(&h) + &(&b[k] - &a[k]).scale(&s);
                out.set(&[i, jj, k], v);
            }
        }
    }
    Ok(out)
}

fn unit(space: &crate::algebra::ParameterSpace, n: usize, i: usize) -> Vec<Poly> {
    (0..n).map(|k| Poly::from_int(space, (k == i) as i64)).collect()
}

pub fn tilde_connection_paths(algebra: &LieAlgebra, g: &Metric, j: &AlmostComplexStructure) -> Result<TildePaths> {
    let gt = associated_metric(g, j)?;
    let koszul = levi_civita(algebra, &gt)?;
    let nabla = levi_civita(algebra, g)?;
    let f = f_tensor(&nabla, j, g)?;
    let quasi_kaehler = cyclic_sum(&f)?.is_zero();
    let via_transfer = if quasi_kaehler {
        let t = transfer_tensor(&nabla_j(&nabla, j)?, j)?;
        Some(Connection::new(nabla.coefficients().checked_add(&t)?)?)
    } else {
        None
    };
    let via_brackets = if quasi_kaehler && algebra.ad_invariance_residual(g)?.is_zero() {
        Some(Connection::new(bracket_formula(algebra, j, 1)?)?)
    } else {
        None
    };
    Ok(TildePaths {
        koszul,
        via_transfer,
        via_brackets,
    })
}

/// Levi-Civita connection of `g~`, cross-checked against every applicable
/// alternative path; any disagreement is an error carrying the diff.
pub fn tilde_connection(algebra: &LieAlgebra, g: &Metric, j: &AlmostComplexStructure) -> Result<Connection> {
    let paths = tilde_connection_paths(algebra, g, j)?;
    let reference = paths.koszul.coefficients();
    for (name, alt) in [
        ("nabla + T", &paths.via_transfer),
        ("bracket formula", &paths.via_brackets),
    ] {
        if let Some(alt) = alt {
            let diff = reference.diff(alt.coefficients())?;
            if !diff.is_empty() {
                let shown: Vec<String> = diff
                    .iter()
                    .take(4)
                    .map(|(i, a, b)| format!("{:?}: {a} vs {b}", i.iter().map(|x| x + 1).collect::<Vec<_>>()))
                    .collect();
                return Err(Error::PathDisagreement {
                    path: name.into(),
                    diff: shown.join("; "),
                });
            }
        }
    }
    Ok(paths.koszul)
}

/// `½{F(Jz,x,y) - F(x,y,Jz) - F(y,x,Jz)}`, entry `[x, y, z]`.
pub fn difference_identity_rhs(f: &Tensor, j: &AlmostComplexStructure) -> Result<Tensor> {
    let f_jfirst = with_j_on_slot(f, 0, j)?; // F(Jz, x, y) read as [z, x, y]
    let f_jlast = with_j_on_slot(f, 2, j)?; // F(x, y, Jz)
    Ok(Tensor::from_fn(f.space(), f.dim(), Valence::new(0, 3), |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        (&(f_jfirst.get(&[z, x, y]) - f_jlast.get(&[x, y, z])) - f_jlast.get(&[y, x, z])).scale(&half())
    }))
}

/// `g(∇_x y - ∇~_x y, z)`, entry `[x, y, z]`.
pub fn connection_difference(nabla: &Connection, nabla_tilde: &Connection, g: &Metric) -> Result<Tensor> {
    nabla
        .coefficients()
        .checked_sub(nabla_tilde.coefficients())?
        .lower(2, g.tensor())
}

/// `g(∇~_x y - ∇_x y, z) - ½{F(Jz,x,y) - F(x,y,Jz) - F(y,x,Jz)}`; vanishes
/// for any Norden pair. Note the orientation: the difference is `∇~ - ∇`.
pub fn difference_identity_residual(
    nabla: &Connection,
    nabla_tilde: &Connection,
    f: &Tensor,
    g: &Metric,
    j: &AlmostComplexStructure,
) -> Result<Tensor> {
    let lhs = -&connection_difference(nabla, nabla_tilde, g)?;
    lhs.checked_sub(&difference_identity_rhs(f, j)?)
}

/// `½{F(Jy,z,x) + F(y,z,Jx) + F(z,Jx,y) + F(Jz,x,y)}`, the general expression
/// of `F~` through `F`.
pub fn ftilde_general_rhs(f: &Tensor, j: &AlmostComplexStructure) -> Result<Tensor> {
    let j0 = with_j_on_slot(f, 0, j)?;
    let j1 = with_j_on_slot(f, 1, j)?;
    let j2 = with_j_on_slot(f, 2, j)?;
    Ok(Tensor::from_fn(f.space(), f.dim(), Valence::new(0, 3), |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let sum = &(j0.get(&[y, z, x]) + j2.get(&[y, z, x])) + &(j1.get(&[z, x, y]) + j0.get(&[z, x, y]));
        sum.scale(&half())
    }))
}

/// `-F(Jx, y, z)`, the quasi-Kähler form of `F~`.
pub fn ftilde_w3_rhs(f: &Tensor, j: &AlmostComplexStructure) -> Result<Tensor> {
    Ok(-&with_j_on_slot(f, 0, j)?)
}

/// `-(∇_{Jx} J) J y` as a `(1,2)` tensor `[x, y, k]`.
pub fn nablatilde_rhs(nabla_j: &Tensor, j: &AlmostComplexStructure) -> Result<Tensor> {
    Ok(-&with_j_on_slot(&with_j_on_slot(nabla_j, 0, j)?, 1, j)?)
}

/// `Q(x,y)z = (∇_x T)(y,z) - (∇_y T)(x,z) + T(x,T(y,z)) - T(y,T(x,z))`,
/// entry `[x, y, z, p]`.
pub fn q_tensor(conn: &Connection, t: &Tensor) -> Result<Tensor> {
    if t.valence() != Valence::new(1, 2) {
        return Err(Error::Shape(format!("T must be (1,2), got {}", t.valence())));
    }
    let dt = conn.covariant_derivative(t)?;
    let n = t.dim();
    Ok(Tensor::from_fn(t.space(), n, Valence::new(1, 3), |i| {
        let (x, y, z, p) = (i[0], i[1], i[2], i[3]);
        let mut acc = dt.get(&[x, y, z, p]) - dt.get(&[y, x, z, p]);
        for m in 0..n {
            let (a, b) = (t.get(&[y, z, m]), t.get(&[x, m, p]));
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
            let (a, b) = (t.get(&[x, z, m]), t.get(&[y, m, p]));
            if !a.is_zero() && !b.is_zero() {
                acc -= &(a * b);
            }
        }
        acc
    }))
}

/// Right-hand side of the curvature transfer identity
///
/// ```text
/// R~(x,y,z,u) = R(x,y,z,Ju) - (∇_x F)(u,y,z) + (∇_y F)(u,x,z)
///             - g((∇_y J)z + (∇_z J)y, (∇_x J)Ju + (∇_u J)Jx)
///             + g((∇_x J)z + (∇_z J)x, (∇_y J)Ju + (∇_u J)Jy)
/// ```
pub fn curvature_transfer_rhs(
    r04: &Tensor,
    f: &Tensor,
    conn: &Connection,
    j: &AlmostComplexStructure,
    g: &Metric,
) -> Result<Tensor> {
    if r04.valence() != Valence::new(0, 4) {
        return Err(Error::Shape(format!("R must be (0,4), got {}", r04.valence())));
    }
    let n = r04.dim();
    let r_ju = with_j_on_slot(r04, 3, j)?;
    let df = conn.covariant_derivative(f)?; // [x, u, y, z] = (∇_x F)(u, y, z)
    let dj = conn.covariant_derivative(j.tensor())?;
    // A(a, b) = (∇_a J) b + (∇_b J) a
    let sym = dj.checked_add(&dj.permuted(&[1, 0, 2])?)?;
    // B(a, b) = (∇_a J) J b + (∇_b J) J a
    let bt = transfer_tensor(&dj, j)?;
    let sym_low = sym.lower(2, g.tensor())?; // g(A(a,b), X_k)
    let pair = |a: usize, b: usize, c: usize, d: usize| {
        let mut acc = Poly::zero(r04.space());
        for k in 0..n {
            let (p, q) = (sym_low.get(&[a, b, k]), bt.get(&[c, d, k]));
            if !p.is_zero() && !q.is_zero() {
                acc += &(p * q);
            }
        }
        acc
    };
    Ok(Tensor::from_fn(r04.space(), n, Valence::new(0, 4), |i| {
        let (x, y, z, u) = (i[0], i[1], i[2], i[3]);
        let mut acc = r_ju.get(&[x, y, z, u]) - df.get(&[x, u, y, z]);
        acc += df.get(&[y, u, x, z]);
        acc -= &pair(y, z, x, u);
        acc += &pair(x, z, y, u);
        acc
    }))
}

/// `S(x,y) = ∇_x y + ½T(x,y)` and `P(x,y)z = R(x,y)z + ½Q(x,y)z`.
pub fn invariants_s_p(conn: &Connection, t: &Tensor, r: &Tensor, q: &Tensor) -> Result<(Tensor, Tensor)> {
    let s = conn.coefficients().checked_add(&t.scale(&half()))?;
    let p = r.checked_add(&q.scale(&half()))?;
    Ok((s, p))
}
