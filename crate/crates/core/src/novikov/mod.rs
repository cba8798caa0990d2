//! The Novikov field Λ = ℂ((T^ℝ)), modeled by truncated series with
//! Gaussian-rational coefficients and either exact-rational or float
//! exponents.

mod gaussian;
mod projective;
mod rational;
mod scalar;
mod series;

pub use gaussian::GaussRat;
pub use projective::ProjValue;
pub use rational::{ParseRationalError, Rational};
pub use scalar::{Approx, ExtScalar, Mode, Scalar, FLOAT_TOL};
pub use series::{NovikovNum, ParseSeriesError, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("indeterminate valuation")]
    IndeterminateValuation,
    #[error("indeterminate form (+inf) + (-inf)")]
    IndeterminateForm,
    #[error("inversion of a non-monomial needs a finite order")]
    UnboundedInversion,
    #[error("[0 : 0] is not a point of the projective line")]
    NotAProjectivePoint,
}

/// `val(a)` as a free function.
pub fn nov_val<S: Scalar>(a: &NovikovNum<S>) -> Result<ExtScalar<S>, NovikovError> {
    a.val()
}

/// Extended valuation of a projective value.
pub fn proj_val<S: Scalar>(z: &ProjValue<S>) -> Result<ExtScalar<S>, NovikovError> {
    z.val()
}
