//! Exact symbolic tensor calculus for almost complex manifolds with a pair
//! of Norden metrics, built from left-invariant data on Lie groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact rationals and sparse multivariate polynomials.
//! * [`tensor`]: dense polynomial tensors, contractions and metrics.
//! * [`geometry`]: Lie algebras, Levi-Civita connections, the structure
//!   tensor `F`, classification, curvature, Weyl tensor and the transfer
//!   between the Levi-Civita connections of `g` and its associated metric.
//! * [`family`]: the 4-parametric quasi-Kähler family, its reference tables
//!   and the erratum-aware verification run.
//! * [`report`]: text and JSON rendering of verification reports.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod family;
pub mod geometry;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
