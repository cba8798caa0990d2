//! The base B = ℝ³: walls, the singular locus Δ, the three-chart atlas,
//! the embedding j into ℝ⁵ and the integral-affine bookkeeping.

mod atlas;
mod embedding;
mod lattice;
mod psi;

pub use atlas::{ChartAtlas, CHARTS};
pub use embedding::{BrokenLine, Segment};
pub use lattice::{monodromy, transition, AffineMap, DiskCheck, DiskLattice, LoopStep, Matrix3, Side};
pub use psi::{ExpPsi, PsiModel, RationalPsi};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::novikov::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not in image of j")]
    NotInImage,
    #[error("invalid transition {0}")]
    InvalidTransition(String),
    #[error("loop is not composable: {0}")]
    NonComposable(String),
    #[error("invalid wall configuration: {0}")]
    InvalidWalls(String),
}

/// A point `q = (q₁, q₂, q₃)` of the base.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct BasePoint<S> {
    pub q1: S,
    pub q2: S,
    pub q3: S,
}

impl<S: Scalar> BasePoint<S> {
    pub fn new(q1: S, q2: S, q3: S) -> Self {
        BasePoint { q1, q2, q3 }
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.q1.clone(), self.q2.clone(), self.q3.clone()]
    }

    /// `m = min{0,q₁} + min{0,q₂}`.
    pub fn m(&self) -> S {
        self.q1.min0() + self.q2.min0()
    }
}

impl BasePoint<Rational> {
    pub fn ints(q1: i64, q2: i64, q3: i64) -> Self {
        BasePoint::new(Rational::from_integer(q1), Rational::from_integer(q2), Rational::from_integer(q3))
    }
}

impl<S: fmt::Display> fmt::Display for BasePoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.q1, self.q2, self.q3)
    }
}

impl<S: fmt::Display> fmt::Debug for BasePoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wall heights `w₁ = log c₁ > w₂ = log c₂` and the tube half-width δ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallConfig<S> {
    pub w1: S,
    pub w2: S,
    pub delta: S,
}

impl<S: Scalar> WallConfig<S> {
    pub fn new(w1: S, w2: S, delta: S) -> Result<Self, GeometryError> {
        if !(w1 > w2) {
            return Err(GeometryError::InvalidWalls(format!("need w1 > w2, got w1 = {w1}, w2 = {w2}")));
        }
        let half = (w1.clone() - w2.clone()) / S::from_int(2);
        if !(delta > S::zero() && delta < half) {
            return Err(GeometryError::InvalidWalls(format!(
                "need 0 < delta < (w1 - w2)/2 = {half}, got {delta}"
            )));
        }
        Ok(WallConfig { w1, w2, delta })
    }

    /// `w₁ = 1, w₂ = 0, δ = 1/4`.
    pub fn standard() -> Self {
        WallConfig { w1: S::one(), w2: S::zero(), delta: S::from_ratio(1, 4) }
    }

    pub fn wall(&self, i: usize) -> &S {
        if i == 1 {
            &self.w1
        } else {
            &self.w2
        }
    }
}

/// Component of Δ containing a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaComponent {
    Delta1,
    Delta2,
}

impl fmt::Display for DeltaComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaComponent::Delta1 => "Delta1",
            DeltaComponent::Delta2 => "Delta2",
        })
    }
}

/// Membership in Δ₁ = {q₁ = 0, q₃ = w₁} or Δ₂ = {q₂ = 0, q₃ = w₂}.
pub fn delta_contains<S: Scalar>(walls: &WallConfig<S>, q: &BasePoint<S>) -> Option<DeltaComponent> {
    if q.q1.is_zero_s() && q.q3 == walls.w1 {
        Some(DeltaComponent::Delta1)
    } else if q.q2.is_zero_s() && q.q3 == walls.w2 {
        Some(DeltaComponent::Delta2)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: &str, b: &str, c: &str) -> BasePoint<Rational> {
        BasePoint::new(a.parse().unwrap(), b.parse().unwrap(), c.parse().unwrap())
    }

    #[test]
    fn delta_membership() {
        let w = WallConfig::<Rational>::standard();
        assert_eq!(delta_contains(&w, &q("0", "7", "1")), Some(DeltaComponent::Delta1));
        assert_eq!(delta_contains(&w, &q("7", "0", "0")), Some(DeltaComponent::Delta2));
        assert_eq!(delta_contains(&w, &q("0", "0", "1/2")), None);
    }

    #[test]
    fn wall_validation() {
        let r = |s: &str| s.parse::<Rational>().unwrap();
        assert!(WallConfig::new(r("1"), r("0"), r("1/4")).is_ok());
        assert!(WallConfig::new(r("0"), r("1"), r("1/4")).is_err());
        assert!(WallConfig::new(r("1"), r("0"), r("1/2")).is_err());
        assert!(WallConfig::new(r("1"), r("0"), r("0")).is_err());
    }
}
