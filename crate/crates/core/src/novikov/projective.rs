use super::scalar::{ExtScalar, Scalar};
use super::series::NovikovNum;
use super::NovikovError;

/// A point `[num : den]` of the projective line over Λ.
///
/// `den = 0` is the point ∞, whose extended valuation is −∞.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjValue<S: Scalar> {
    pub num: NovikovNum<S>,
    pub den: NovikovNum<S>,
}

impl<S: Scalar> ProjValue<S> {
    pub fn new(num: NovikovNum<S>, den: NovikovNum<S>) -> Self {
        ProjValue { num, den }
    }

    /// The affine point `value = [value : 1]`.
    pub fn affine(value: NovikovNum<S>) -> Self {
        ProjValue { num: value, den: NovikovNum::one() }
    }

    pub fn infinity() -> Self {
        ProjValue { num: NovikovNum::one(), den: NovikovNum::zero() }
    }

    pub fn zero() -> Self {
        Self::affine(NovikovNum::zero())
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_exact_zero() && !self.num.is_zero_to_trunc()
    }

    /// `val(num) − val(den)` in [−∞, +∞].
    pub fn val(&self) -> Result<ExtScalar<S>, NovikovError> {
        let n = self.num.val()?;
        let d = self.den.val()?;
        match (&n, &d) {
            (ExtScalar::PosInf, ExtScalar::PosInf) => Err(NovikovError::NotAProjectivePoint),
            (_, ExtScalar::PosInf) => Ok(ExtScalar::NegInf),
            _ => n.checked_sub(&d),
        }
    }

    /// Projective equality by cross-multiplication, up to truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        (&lhs - &rhs).is_zero_to_trunc()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::Rational;

    type N = NovikovNum<Rational>;

    #[test]
    fn valuation_examples() {
        let z = ProjValue::new(N::one(), N::t_pow(Rational::one()));
        assert_eq!(z.val().unwrap(), ExtScalar::Finite(Rational::from_integer(-1)));
        let inf = ProjValue::new(N::t_pow(Rational::one()), N::zero());
        assert_eq!(inf.val().unwrap(), ExtScalar::NegInf);
        assert_eq!(ProjValue::<Rational>::zero().val().unwrap(), ExtScalar::PosInf);
        let bad = ProjValue::new(N::zero(), N::zero());
        assert_eq!(bad.val(), Err(NovikovError::NotAProjectivePoint));
    }

    #[test]
    fn cross_multiplication_equality() {
        let t = N::t_pow(Rational::one());
        let a = ProjValue::new(t.clone(), N::one());
        let b = ProjValue::new(&t * &t, t.clone());
        assert!(a.agrees_with(&b));
        assert!(!a.agrees_with(&ProjValue::infinity()));
    }
}
