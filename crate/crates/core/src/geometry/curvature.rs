use std::fmt;
use std::str::FromStr;

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::tensor::{Metric, Tensor, Valence};

/// Ricci tensor `ρ(y,z) = g^{ij} R(e_i,y,z,e_j)` and scalar curvature
/// `τ = g^{ij} ρ(e_i,e_j)` from a `(0,4)` curvature tensor.
pub fn ricci_and_scalar(r04: &Tensor, m: &Metric) -> Result<(Tensor, Poly)> {
    if r04.valence() != Valence::new(0, 4) {
        return Err(Error::Shape(format!("curvature must be (0,4), got {}", r04.valence())));
    }
    let rho = r04.metric_contract(0, 3, m.inverse())?;
    let tau = rho.metric_contract(0, 1, m.inverse())?;
    Ok((rho, tau.data()[0].clone()))
}

/// `ψ1(h)(x,y,z,u) = g(y,z)h(x,u) - g(x,z)h(y,u) + h(y,z)g(x,u) - h(x,z)g(y,u)`.
pub fn psi1(h: &Tensor, g: &Metric) -> Result<Tensor> {
    if h.valence() != Valence::new(0, 2) || h.dim() != g.dim() {
        return Err(Error::Shape("ψ1 needs a (0,2) tensor of matching dimension".into()));
    }
    let gc = |a: usize, b: usize| g.component(a, b);
    let hc = |a: usize, b: usize| h.get(&[a, b]);
    Ok(Tensor::from_fn(g.space(), g.dim(), Valence::new(0, 4), |i| {
        let (x, y, z, u) = (i[0], i[1], i[2], i[3]);
        &(&(gc(y, z) * hc(x, u)) - &(gc(x, z) * hc(y, u))) + &(&(hc(y, z) * gc(x, u)) - &(hc(x, z) * gc(y, u)))
    }))
}

/// `π1 = ½ ψ1(g)`.
pub fn pi1(g: &Metric) -> Tensor {
    psi1(g.tensor(), g)
        .expect("metric shape is valid")
        .scale(&Rational::new(1.into(), 2.into()))
}

/// Sign and normalisation of the scalar-curvature term in the Weyl tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeylConvention {
    /// `W = R - ψ1(ρ)/(2n-2) + τ π1/((2n-1)(2n-2))`: the totally trace-free part.
    #[default]
    Standard,
    /// `W = R - ψ1(ρ)/(2n-2) - τ π1/(2n-1)`, kept for comparison with the
    /// printed formula; it does not annihilate constant-curvature tensors.
    Printed,
}

impl WeylConvention {
    pub fn name(self) -> &'static str {
        match self {
            WeylConvention::Standard => "standard",
            WeylConvention::Printed => "printed",
        }
    }
}

impl fmt::Display for WeylConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeylConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(WeylConvention::Standard),
            "printed" => Ok(WeylConvention::Printed),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown Weyl convention `{other}`"),
            }),
        }
    }
}

pub fn weyl(r04: &Tensor, rho: &Tensor, tau: &Poly, g: &Metric, convention: WeylConvention) -> Result<Tensor> {
    let dim = g.dim();
    if dim < 4 {
        return Err(Error::Dimension(
            dim,
            "the Weyl tensor needs dimension at least 4".into(),
        ));
    }
    let d = dim as i64;
    let ricci_part = psi1(rho, g)?.scale(&Rational::new(1.into(), (d - 2).into()));
    let tau_coeff = match convention {
        WeylConvention::Standard => Rational::new(1.into(), ((d - 1) * (d - 2)).into()),
        WeylConvention::Printed => Rational::new((-1).into(), (d - 1).into()),
    };
    let p = pi1(g);
    let scalar_part = p.map(|c| c * tau).scale(&tau_coeff);
    r04.checked_sub(&ricci_part)?.checked_add(&scalar_part)
}

/// Residuals of the algebraic curvature identities on a `(0,4)` tensor,
/// keyed by name: antisymmetry in each pair, pair exchange, and the first
/// Bianchi identity.
pub fn curvature_symmetry_residuals(r04: &Tensor) -> Result<Vec<(&'static str, Tensor)>> {
    if r04.valence() != Valence::new(0, 4) {
        return Err(Error::Shape(format!("expected a (0,4) tensor, got {}", r04.valence())));
    }
    let anti12 = r04.checked_add(&r04.permuted(&[1, 0, 2, 3])?)?;
    let anti34 = r04.checked_add(&r04.permuted(&[0, 1, 3, 2])?)?;
    let pair = r04.checked_sub(&r04.permuted(&[2, 3, 0, 1])?)?;
    // R(x,y,z,u) + R(y,z,x,u) + R(z,x,y,u)
    let bianchi = r04
        .checked_add(&r04.permuted(&[1, 2, 0, 3])?)?
        .checked_add(&r04.permuted(&[2, 0, 1, 3])?)?;
    Ok(vec![
        ("antisymmetry_12", anti12),
        ("antisymmetry_34", anti34),
        ("pair_exchange", pair),
        ("bianchi", bianchi),
    ])
}
