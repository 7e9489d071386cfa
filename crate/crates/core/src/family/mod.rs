//! The 4-parametric family of 4-dimensional Lie algebras carrying a
//! quasi-Kähler structure with a pair of Norden metrics.

mod tables;
mod verify;

use std::collections::BTreeMap;

use crate::algebra::{format_rational, ParameterSpace, Poly, Rational};
use crate::geometry::{AlmostComplexStructure, LieAlgebra};
use crate::tensor::Metric;

pub use tables::{expected_tables, ExpectedTables, Table, TableErratum};
pub use verify::{verify_family, verify_model};

/// Structure constants of the family for parameters `l = [l1, l2, l3, l4]`.
///
/// # Panics
///
/// When `l` does not hold exactly four polynomials over one space.
pub fn family_algebra(l: &[Poly]) -> LieAlgebra {
    assert_eq!(l.len(), 4, "the family takes exactly four parameters");
    let space = l[0].space().clone();
    let zero = Poly::zero(&space);
    let v = |terms: &[(usize, Poly)]| {
        let mut out = vec![zero.clone(); 4];
        for (k, p) in terms {
            out[*k] = p.clone();
        }
        out
    };
    let [l1, l2, l3, l4] = [&l[0], &l[1], &l[2], &l[3]];
    let brackets = vec![
        (0, 2, v(&[(1, l2.clone()), (3, l4.clone())])),
        (1, 3, v(&[(0, l1.clone()), (2, l3.clone())])),
        (1, 2, v(&[(0, -l2), (3, -l3)])),
        (2, 3, v(&[(0, -l4), (1, l3.clone())])),
        (3, 0, v(&[(1, l1.clone()), (2, l4.clone())])),
        (1, 0, v(&[(2, -l2), (3, l1.clone())])),
    ];
    LieAlgebra::from_brackets(&space, 4, brackets).expect("family brackets are well formed")
}

/// `g = diag(1, 1, -1, -1)`.
pub fn family_metric(space: &ParameterSpace) -> Metric {
    let d: Vec<Rational> = [1, 1, -1, -1]
        .iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect();
    Metric::diagonal(space, &d).expect("diagonal metric is invertible")
}

/// `J X1 = X3`, `J X2 = X4`, `J X3 = -X1`, `J X4 = -X2`.
pub fn family_complex_structure(space: &ParameterSpace) -> AlmostComplexStructure {
    AlmostComplexStructure::standard(space, 4).expect("dimension 4 is even")
}

/// Parameters of the family: free symbols or exact rational values.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum FamilyParams {
    Symbolic,
    Numeric([Rational; 4]),
}

impl FamilyParams {
    pub fn numeric(values: [i64; 4]) -> Self {
        FamilyParams::Numeric(values.map(|x| Rational::from_integer(x.into())))
    }

    /// The four parameter values as polynomials over the family space.
    pub fn polys(&self, space: &ParameterSpace) -> Vec<Poly> {
        match self {
            FamilyParams::Symbolic => space.vars(),
            FamilyParams::Numeric(v) => v.iter().map(|x| Poly::constant(space, x.clone())).collect(),
        }
    }

    /// Human readable description, e.g. `symbolic` or `l = (1, 0, 1, 0)`.
    pub fn describe(&self) -> String {
        match self {
            FamilyParams::Symbolic => "symbolic".into(),
            FamilyParams::Numeric(v) => {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                format!("l = ({})", parts.join(", "))
            }
        }
    }

    /// Substitute these parameters into a polynomial over the family space.
    pub fn apply(&self, p: &Poly) -> Poly {
        match self {
            FamilyParams::Symbolic => p.clone(),
            FamilyParams::Numeric(v) => p.substitute(v).expect("family space has four parameters"),
        }
    }
}

/// The algebra, metric and complex structure of the family.
pub fn build_family(params: &FamilyParams) -> (LieAlgebra, Metric, AlmostComplexStructure) {
    let space = ParameterSpace::family();
    let alg = family_algebra(&params.polys(&space));
    (alg, family_metric(&space), family_complex_structure(&space))
}

/// `l1^2 + l2^2 - l3^2 - l4^2`, vanishing exactly when `g` is isotropic Kähler.
pub fn g_condition(space: &ParameterSpace) -> Poly {
    let l = space.vars();
    &(&(&l[0] * &l[0]) + &(&l[1] * &l[1])) - &(&(&l[2] * &l[2]) + &(&l[3] * &l[3]))
}

/// `l1 l3 + l2 l4`, vanishing exactly when the associated metric is
/// isotropic Kähler.
pub fn gtilde_condition(space: &ParameterSpace) -> Poly {
    let l = space.vars();
    &(&l[0] * &l[2]) + &(&l[1] * &l[3])
}

/// Isotropic-Kähler status of either side: decided for numeric parameters,
/// or the vanishing condition in symbolic mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropicFlag {
    Decided(bool),
    Condition(Poly),
}

pub fn isotropic_flags(params: &FamilyParams) -> (IsotropicFlag, IsotropicFlag) {
    let space = ParameterSpace::family();
    let (cg, ct) = (g_condition(&space), gtilde_condition(&space));
    match params {
        FamilyParams::Symbolic => (IsotropicFlag::Condition(cg), IsotropicFlag::Condition(ct)),
        FamilyParams::Numeric(_) => (
            IsotropicFlag::Decided(params.apply(&cg).is_zero()),
            IsotropicFlag::Decided(params.apply(&ct).is_zero()),
        ),
    }
}

/// Assignment map for [`Poly::eval`].
pub fn assignment(values: &[Rational; 4]) -> BTreeMap<String, Rational> {
    ParameterSpace::family()
        .names()
        .iter()
        .cloned()
        .zip(values.iter().cloned())
        .collect()
}
