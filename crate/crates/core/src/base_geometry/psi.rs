use crate::novikov::{Approx, Scalar};

use super::{BasePoint, GeometryError};

/// A monotone model of ψ: for fixed (q₁, q₂), q₃ ↦ ψ is an increasing
/// bijection ℝ → (0, ∞).
pub trait PsiModel<S: Scalar>: Send + Sync {
    fn name(&self) -> &'static str;

    fn sigma(&self, q: &BasePoint<S>) -> S;

    fn sigma_inv(&self, q1: &S, q2: &S, v: &S) -> Result<S, GeometryError>;
}

fn require_positive<S: Scalar>(v: &S) -> Result<(), GeometryError> {
    if *v > S::zero() {
        Ok(())
    } else {
        Err(GeometryError::Domain(format!("psi_inv needs v > 0, got {v}")))
    }
}

/// `σ(q₃) = q₃ + 1` for `q₃ ≥ 0`, `1/(1 − q₃)` for `q₃ < 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalPsi;

impl<S: Scalar> PsiModel<S> for RationalPsi {
    fn name(&self) -> &'static str {
        "rational"
    }

    fn sigma(&self, q: &BasePoint<S>) -> S {
        let x = q.q3.clone();
        if x >= S::zero() {
            x + S::one()
        } else {
            S::one() / (S::one() - x)
        }
    }

    fn sigma_inv(&self, _q1: &S, _q2: &S, v: &S) -> Result<S, GeometryError> {
        require_positive(v)?;
        if *v >= S::one() {
            Ok(v.clone() - S::one())
        } else {
            Ok(S::one() - S::one() / v.clone())
        }
    }
}

/// `σ(q₃) = e^{q₃}`; float mode only.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExpPsi;

impl PsiModel<Approx> for ExpPsi {
    fn name(&self) -> &'static str {
        "exp"
    }

    fn sigma(&self, q: &BasePoint<Approx>) -> Approx {
        q.q3.exp()
    }

    fn sigma_inv(&self, _q1: &Approx, _q2: &Approx, v: &Approx) -> Result<Approx, GeometryError> {
        // Strict positivity, not the tolerant comparison.
        if v.0 > 0.0 {
            Ok(v.ln())
        } else {
            Err(GeometryError::Domain(format!("psi_inv needs v > 0, got {v}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_model_examples() {
        let m = RationalPsi;
        let at = |x: &str| PsiModel::<Rational>::sigma(&m, &BasePoint::new(r("0"), r("0"), r(x)));
        assert_eq!(at("3"), r("4"));
        assert_eq!(at("-1"), r("1/2"));
        assert_eq!(m.sigma_inv(&r("0"), &r("0"), &r("2")).unwrap(), r("1"));
        assert_eq!(m.sigma_inv(&r("0"), &r("0"), &r("1/2")).unwrap(), r("-1"));
        assert!(m.sigma_inv(&r("0"), &r("0"), &r("0")).is_err());
    }

    #[test]
    fn exp_model_round_trips() {
        let m = ExpPsi;
        for x in [-3.0, -0.5, 0.0, 1.0, 2.5] {
            let v = m.sigma(&BasePoint::new(Approx(0.0), Approx(0.0), Approx(x)));
            assert_eq!(m.sigma_inv(&Approx(0.0), &Approx(0.0), &v).unwrap(), Approx(x));
        }
        assert!(m.sigma_inv(&Approx(0.0), &Approx(0.0), &Approx(-1.0)).is_err());
    }
}
