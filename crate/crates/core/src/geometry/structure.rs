use std::collections::BTreeMap;

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::tensor::{Metric, Tensor, Valence};

use super::{AlmostComplexStructure, Connection};

/// `∇J` as a `(1,2)` tensor: entry `[a, i, k]` is the `X_k` component of
/// `(∇_{X_a} J) X_i`.
pub fn nabla_j(conn: &Connection, j: &AlmostComplexStructure) -> Result<Tensor> {
    conn.covariant_derivative(j.tensor())
}

/// Structure tensor `F(x, y, z) = g((∇_x J) y, z)`.
pub fn f_tensor(conn: &Connection, j: &AlmostComplexStructure, g: &Metric) -> Result<Tensor> {
    nabla_j(conn, j)?.lower(2, g.tensor())
}

/// Replace the argument in covariant `slot` by its image under `J`.
pub fn with_j_on_slot(t: &Tensor, slot: usize, j: &AlmostComplexStructure) -> Result<Tensor> {
    if slot >= t.valence().down {
        return Err(Error::Shape(format!("slot {slot} is not covariant")));
    }
    let n = t.dim();
    let mut src = vec![0; t.rank()];
    Ok(Tensor::from_fn(t.space(), n, t.valence(), |idx| {
        src.copy_from_slice(idx);
        let mut acc = Poly::zero(t.space());
        for m in 0..n {
            let c = j.component(idx[slot], m);
            if c.is_zero() {
                continue;
            }
            src[slot] = m;
            acc += &(c * t.get(&src));
        }
        acc
    }))
}

/// Residuals of `F(x,y,z) = F(x,z,y)` and `F(x,y,z) = F(x,Jy,Jz)`.
pub fn f_prop_residuals(f: &Tensor, j: &AlmostComplexStructure) -> Result<(Tensor, Tensor)> {
    check_03(f)?;
    let swap = f.checked_sub(&f.permuted(&[0, 2, 1])?)?;
    let jj = with_j_on_slot(&with_j_on_slot(f, 1, j)?, 2, j)?;
    Ok((swap, f.checked_sub(&jj)?))
}

fn check_03(t: &Tensor) -> Result<()> {
    if t.valence() != Valence::new(0, 3) {
        return Err(Error::Shape(format!("expected a (0,3) tensor, got {}", t.valence())));
    }
    Ok(())
}

/// Lie form `θ(z) = g^{ij} F(e_i, e_j, z)` as a `(0,1)` tensor.
pub fn lie_form(f: &Tensor, g: &Metric) -> Result<Tensor> {
    check_03(f)?;
    f.metric_contract(0, 1, g.inverse())
}

/// `T(x,y,z) + T(y,z,x) + T(z,x,y)`.
pub fn cyclic_sum(t: &Tensor) -> Result<Tensor> {
    check_03(t)?;
    t.checked_add(&t.permuted(&[1, 2, 0])?)?
        .checked_add(&t.permuted(&[2, 0, 1])?)
}

/// Right-hand side of the `W1` condition,
/// `c {g(x,y)θ(z) + g(x,z)θ(y) + g(x,Jy)θ(Jz) + g(x,Jz)θ(Jy)}`.
pub fn w1_rhs(theta: &Tensor, g: &Metric, j: &AlmostComplexStructure, coefficient: &Rational) -> Result<Tensor> {
    if theta.valence() != Valence::new(0, 1) {
        return Err(Error::Shape("θ must be a covector".into()));
    }
    let n = g.dim();
    let gj = with_j_on_slot(g.tensor(), 1, j)?; // g(x, Jy)
    let tj = with_j_on_slot(theta, 0, j)?; // θ(Jz)
    Ok(Tensor::from_fn(g.space(), n, Valence::new(0, 3), |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let sum = &(&(g.component(x, y) * theta.get(&[z])) + &(g.component(x, z) * theta.get(&[y])))
            + &(&(gj.get(&[x, y]) * tj.get(&[z])) + &(gj.get(&[x, z]) * tj.get(&[y])));
        sum.scale(coefficient)
    }))
}

/// Tunables for [`classify_with`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassifierConfig {
    /// Coefficient in the `W1` condition; `None` means `1/(2n)`.
    pub w1_coefficient: Option<Rational>,
}

/// Membership in the basic classes, decided symbolically. A flag is true
/// only when its residual is the zero polynomial tensor, so with free
/// parameters the flags describe generic parameter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFlags {
    pub w0: bool,
    pub w1: bool,
    pub w2: bool,
    pub w3: bool,
    /// Witness tensors for every flag that is false.
    pub residuals: BTreeMap<String, Tensor>,
}

pub fn classify(f: &Tensor, theta: &Tensor, g: &Metric, j: &AlmostComplexStructure) -> Result<ClassFlags> {
    classify_with(f, theta, g, j, &ClassifierConfig::default())
}

pub fn classify_with(
    f: &Tensor,
    theta: &Tensor,
    g: &Metric,
    j: &AlmostComplexStructure,
    config: &ClassifierConfig,
) -> Result<ClassFlags> {
    let (swap, jsym) = f_prop_residuals(f, j)?;
    if !swap.is_zero() || !jsym.is_zero() {
        return Err(Error::MalformedStructureTensor(
            "F must satisfy F(x,y,z) = F(x,z,y) = F(x,Jy,Jz)".into(),
        ));
    }
    let n = g.dim();
    let coefficient = config
        .w1_coefficient
        .clone()
        .unwrap_or_else(|| Rational::new(1.into(), (n as i64).into()));
    let mut residuals = BTreeMap::new();

    let w0 = f.is_zero();
    if !w0 {
        residuals.insert("w0".to_string(), f.clone());
    }

    let w1_res = f.checked_sub(&w1_rhs(theta, g, j, &coefficient)?)?;
    let w1 = w1_res.is_zero();
    if !w1 {
        residuals.insert("w1".to_string(), w1_res);
    }

    let cyc_j = cyclic_sum(&with_j_on_slot(f, 2, j)?)?;
    let w2 = cyc_j.is_zero() && theta.is_zero();
    if !w2 {
        residuals.insert("w2".to_string(), cyc_j);
        if !theta.is_zero() {
            residuals.insert("w2_theta".to_string(), theta.clone());
        }
    }

    let cyc = cyclic_sum(f)?;
    let w3 = cyc.is_zero();
    if !w3 {
        residuals.insert("w3".to_string(), cyc);
    }
    Ok(ClassFlags {
        w0,
        w1,
        w2,
        w3,
        residuals,
    })
}

/// `‖∇J‖ = g^{ij} g^{kl} g^{pq} F_{ikp} F_{jlq}`.
pub fn square_norm(f: &Tensor, g: &Metric) -> Result<Poly> {
    check_03(f)?;
    let inv = g.inverse();
    // raising each slot in turn moves it to the end, so after three raises
    // the slot order is restored
    let raised = f.raise(0, inv)?.raise(0, inv)?.raise(0, inv)?;
    let mut acc = Poly::zero(f.space());
    for (a, b) in f.data().iter().zip(raised.data()) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ParameterSpace};
    use crate::family::{family_algebra, family_complex_structure, family_metric};
    use crate::geometry::{associated_metric, levi_civita, LieAlgebra};

    fn family_f() -> (ParameterSpace, Tensor) {
        let s = ParameterSpace::family();
        let alg = family_algebra(&s.vars());
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let f = f_tensor(&levi_civita(&alg, &g).unwrap(), &j, &g).unwrap();
        (s, f)
    }

    #[test]
    fn family_f_entries() {
        let (s, f) = family_f();
        let l = s.vars();
        assert_eq!(*f.get(&[1, 0, 1]), l[0].scale(&rat(1, 2)));
        assert_eq!(*f.get(&[0, 1, 1]), -&l[0]);
    }

    #[test]
    fn nabla_j_component() {
        // (∇_{X1} J) X3 = ∇_{X1}(J X3) - J ∇_{X1} X3 = 1/2 l4 X2 - 1/2 l2 X4
        let s = ParameterSpace::family();
        let l = s.vars();
        let alg = family_algebra(&l);
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let dj = nabla_j(&levi_civita(&alg, &g).unwrap(), &j).unwrap();
        let got: Vec<Poly> = (0..4).map(|k| dj.get(&[0, 2, k]).clone()).collect();
        let h = rat(1, 2);
        assert_eq!(
            got,
            vec![Poly::zero(&s), l[3].scale(&h), Poly::zero(&s), l[1].scale(&-h)]
        );
    }

    #[test]
    fn family_is_quasi_kaehler() {
        let (s, f) = family_f();
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let theta = lie_form(&f, &g).unwrap();
        assert!(theta.is_zero());
        let flags = classify(&f, &theta, &g, &j).unwrap();
        assert!(flags.w3);
        assert!(!flags.w0 && !flags.w1 && !flags.w2);
        assert!(flags.residuals.contains_key("w0"));
        assert!(cyclic_sum(&f).unwrap().is_zero());
    }

    #[test]
    fn kaehler_when_abelian() {
        let s = ParameterSpace::family();
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let alg = LieAlgebra::abelian(&s, 4).unwrap();
        let f = f_tensor(&levi_civita(&alg, &g).unwrap(), &j, &g).unwrap();
        let theta = lie_form(&f, &g).unwrap();
        let flags = classify(&f, &theta, &g, &j).unwrap();
        assert!(flags.w0 && flags.w1 && flags.w2 && flags.w3);
        assert!(flags.residuals.is_empty());
        assert!(square_norm(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn cyclic_sum_of_symmetric_tensor() {
        let s = ParameterSpace::family();
        let l = s.vars();
        let t = Tensor::from_fn(&s, 4, Valence::new(0, 3), |i| {
            let mut v = i.to_vec();
            v.sort();
            l[v[0]].scale(&rat((v[1] + 3 * v[2]) as i64, 1))
        });
        assert_eq!(cyclic_sum(&t).unwrap(), t.scale(&rat(3, 1)));
    }

    #[test]
    fn w1_construction_recovers_theta() {
        // Synthetic W1-type F from θ = (l1, l2, 0, -l3); contracting it
        // gives back exactly θ with the 1/(2n) coefficient.
        let s = ParameterSpace::family();
        let l = s.vars();
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let theta = Tensor::build(
            &s,
            4,
            Valence::new(0, 1),
            vec![(vec![0], l[0].clone()), (vec![1], l[1].clone()), (vec![3], -&l[2])],
        )
        .unwrap();
        let f = w1_rhs(&theta, &g, &j, &rat(1, 4)).unwrap();
        assert_eq!(lie_form(&f, &g).unwrap(), theta);
        let flags = classify(&f, &theta, &g, &j).unwrap();
        assert!(flags.w1 && !flags.w0 && !flags.w2);
        let cfg = ClassifierConfig {
            w1_coefficient: Some(rat(1, 8)),
        };
        assert!(!classify_with(&f, &theta, &g, &j, &cfg).unwrap().w1);
    }

    #[test]
    fn malformed_f_rejected() {
        let s = ParameterSpace::family();
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let mut f = Tensor::zeros(&s, 4, Valence::new(0, 3));
        f.set(&[0, 1, 2], Poly::from_int(&s, 1));
        let theta = lie_form(&f, &g).unwrap();
        assert!(matches!(
            classify(&f, &theta, &g, &j),
            Err(Error::MalformedStructureTensor(_))
        ));
    }

    #[test]
    fn family_norms_match_brute_force() {
        // Six-fold sum oracle, independent of the raise-based contraction.
        let (s, f) = family_f();
        let g = family_metric(&s);
        let j = family_complex_structure(&s);
        let brute = |f: &Tensor, m: &Metric| {
            let mut acc = Poly::zero(&s);
            for idx in crate::tensor::MultiIndices::new(4, 6) {
                let (i, jj, k, l, p, q) = (idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]);
                let w = &(&(m.inverse_component(i, jj) * m.inverse_component(k, l)) * m.inverse_component(p, q));
                if w.is_zero() {
                    continue;
                }
                acc += &(&(w * f.get(&[i, k, p])) * f.get(&[jj, l, q]));
            }
            acc
        };
        let norm = square_norm(&f, &g).unwrap();
        assert_eq!(norm, brute(&f, &g));
        assert_eq!(norm, Poly::parse(&s, "4*l1^2 + 4*l2^2 - 4*l3^2 - 4*l4^2").unwrap());

        let alg = family_algebra(&s.vars());
        let gt = associated_metric(&g, &j).unwrap();
        let ft = f_tensor(&levi_civita(&alg, &gt).unwrap(), &j, &gt).unwrap();
        let nt = square_norm(&ft, &gt).unwrap();
        assert_eq!(nt, brute(&ft, &gt));
        assert_eq!(nt, Poly::parse(&s, "-8*l1*l3 - 8*l2*l4").unwrap());
    }
}
