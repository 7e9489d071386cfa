use crate::algebra::Poly;
use crate::error::Result;
use crate::tensor::{Metric, Tensor};

use super::structure::{classify, f_tensor, lie_form, nabla_j, square_norm, ClassFlags};
use super::transfer::{
    curvature_transfer_rhs, invariants_s_p, q_tensor, tilde_connection_paths, transfer_tensor, TildePaths,
};
use super::{
    associated_metric, levi_civita, lower04, ricci_and_scalar, weyl, AlmostComplexStructure, Connection, LieAlgebra,
    WeylConvention,
};

/// Every quantity of the pipeline for one metric of the Norden pair.
#[derive(Debug, Clone)]
pub struct SideGeometry {
    pub metric: Metric,
    pub connection: Connection,
    pub nabla_j: Tensor,
    pub f: Tensor,
    pub theta: Tensor,
    pub flags: ClassFlags,
    /// `T(x,y) = (∇_x J)Jy + (∇_y J)Jx` built from this side's connection.
    pub transfer: Tensor,
    /// `Q` built from this side's connection and `transfer`.
    pub q: Tensor,
    pub curvature: Tensor,
    pub curvature04: Tensor,
    pub ricci: Tensor,
    pub scalar: Poly,
    pub norm: Poly,
    /// `None` below dimension 4.
    pub weyl: Option<Tensor>,
}

impl SideGeometry {
    pub fn compute(
        algebra: &LieAlgebra,
        metric: &Metric,
        j: &AlmostComplexStructure,
        convention: WeylConvention,
    ) -> Result<Self> {
        let connection = levi_civita(algebra, metric)?;
        let dj = nabla_j(&connection, j)?;
        let f = f_tensor(&connection, j, metric)?;
        let theta = lie_form(&f, metric)?;
        let flags = classify(&f, &theta, metric, j)?;
        let transfer = transfer_tensor(&dj, j)?;
        let q = q_tensor(&connection, &transfer)?;
        let curvature = connection.curvature(algebra)?;
        let curvature04 = lower04(&curvature, metric)?;
        let (ricci, scalar) = ricci_and_scalar(&curvature04, metric)?;
        let norm = square_norm(&f, metric)?;
        let weyl = if metric.dim() >= 4 {
            Some(weyl(&curvature04, &ricci, &scalar, metric, convention)?)
        } else {
            None
        };
        Ok(Self {
            metric: metric.clone(),
            connection,
            nabla_j: dj,
            f,
            theta,
            flags,
            transfer,
            q,
            curvature,
            curvature04,
            ricci,
            scalar,
            norm,
            weyl,
        })
    }
}

/// Both sides of the pair `(g, g~)` plus the transfer quantities linking them.
#[derive(Debug, Clone)]
pub struct PairGeometry {
    pub algebra: LieAlgebra,
    pub j: AlmostComplexStructure,
    pub convention: WeylConvention,
    pub base: SideGeometry,
    pub tilde: SideGeometry,
    pub paths: TildePaths,
    /// Right-hand side of the curvature transfer identity, to compare with
    /// `tilde.curvature04`.
    pub curvature_rhs: Tensor,
    pub s: Tensor,
    pub p: Tensor,
    pub s_tilde: Tensor,
    pub p_tilde: Tensor,
}

impl PairGeometry {
    pub fn compute(
        algebra: &LieAlgebra,
        g: &Metric,
        j: &AlmostComplexStructure,
        convention: WeylConvention,
    ) -> Result<Self> {
        let gt = associated_metric(g, j)?;
        let base = SideGeometry::compute(algebra, g, j, convention)?;
        let tilde = SideGeometry::compute(algebra, &gt, j, convention)?;
        let paths = tilde_connection_paths(algebra, g, j)?;
        let curvature_rhs = curvature_transfer_rhs(&base.curvature04, &base.f, &base.connection, j, g)?;
        let (s, p) = invariants_s_p(&base.connection, &base.transfer, &base.curvature, &base.q)?;
        let (s_tilde, p_tilde) = invariants_s_p(&tilde.connection, &tilde.transfer, &tilde.curvature, &tilde.q)?;
        Ok(Self {
            algebra: algebra.clone(),
            j: j.clone(),
            convention,
            base,
            tilde,
            paths,
            curvature_rhs,
            s,
            p,
            s_tilde,
            p_tilde,
        })
    }
}
