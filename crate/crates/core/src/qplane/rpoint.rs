//! Matrix points of the quantum plane.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{is_negligible, validate_tol, Real, Scalar};

/// A pair `(U, V)` of square matrices together with a numeric `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct RPointCandidate<R: Real> {
    pub u: SquareMatrix<R>,
    pub v: SquareMatrix<R>,
    pub q: Scalar<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RPointVerdict<R: Real> {
    RPoint,
    /// Carries `VU − q UV`.
    NotRPoint(SquareMatrix<R>),
}

impl<R: Real> RPointVerdict<R> {
    pub fn is_rpoint(&self) -> bool {
        matches!(self, RPointVerdict::RPoint)
    }
}

/// Checks `VU − q UV = 0`, i.e. that `u ↦ U, v ↦ V` is an algebra map.
pub fn rpoint_check<R: Real>(c: &RPointCandidate<R>, tol: f64) -> Result<RPointVerdict<R>> {
    validate_tol::<R>(tol)?;
    if c.u.dim() != c.v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "U is {0}x{0}, V is {1}x{1}",
            c.u.dim(),
            c.v.dim()
        )));
    }
    let vu = c.v.matmul(&c.u)?;
    let quv = c.u.matmul(&c.v)?.scale(&c.q);
    let residual = vu.sub(&quv)?;
    if residual.entries().iter().all(|x| is_negligible(x, tol)) {
        Ok(RPointVerdict::RPoint)
    } else {
        Ok(RPointVerdict::NotRPoint(residual))
    }
}
