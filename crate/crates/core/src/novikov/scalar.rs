//! Exponent scalars and the extended reals built on top of them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::NovikovError;

/// Comparison tolerance for float-mode scalars.
pub const FLOAT_TOL: f64 = 1e-9;

/// How exponents (and everything derived from valuations) are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// A real-number carrier for exponents, valuations and base coordinates.
///
/// `PartialEq`/`PartialOrd` are the *semantic* comparisons: exact for
/// [`Rational`], tolerant (`FLOAT_TOL`) for [`Approx`]. `total_cmp` is a
/// strict total order used only for sorting.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn total_cmp(&self, other: &Self) -> Ordering;

    fn zero() -> Self {
        Self::from_rational(&Rational::zero())
    }

    fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(n, d))
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `min{0, self}`, the ubiquitous wall correction.
    fn min0(&self) -> Self {
        self.clone().min_of(Self::zero())
    }

    fn is_zero_s(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// A 64-bit float compared with tolerance [`FLOAT_TOL`].
#[derive(Clone, Copy, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Approx(pub f64);

impl Approx {
    pub fn exp(self) -> Approx {
        Approx(self.0.exp())
    }

    pub fn ln(self) -> Approx {
        Approx(self.0.ln())
    }
}

impl std::str::FromStr for Approx {
    type Err = std::num::ParseFloatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse().map(Approx)
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).abs() <= FLOAT_TOL
    }
}

impl PartialOrd for Approx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else {
            self.0.partial_cmp(&other.0)
        }
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

macro_rules! approx_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Approx {
            type Output = Approx;
            fn $method(self, rhs: Approx) -> Approx {
                Approx(self.0 $op rhs.0)
            }
        }
    };
}

approx_binop!(Add, add, +);
approx_binop!(Sub, sub, -);
approx_binop!(Mul, mul, *);
approx_binop!(Div, div, /);

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    const MODE: Mode = Mode::Float;

    fn from_rational(r: &Rational) -> Self {
        Approx(r.to_f64())
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// An element of ℝ ∪ {−∞, +∞}.
///
/// `(+∞) + (−∞)` is never a value; [`ExtScalar::checked_add`] reports it as
/// [`NovikovError::IndeterminateForm`].
#[derive(Clone, PartialEq, PartialOrd, Serialize, Deserialize)]
pub enum ExtScalar<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Eq> Eq for ExtScalar<S> {}

impl<S: Scalar> ExtScalar<S> {
    pub fn finite(s: S) -> Self {
        ExtScalar::Finite(s)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtScalar::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            ExtScalar::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            ExtScalar::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NovikovError> {
        use ExtScalar::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(NovikovError::IndeterminateForm),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(Finite(a.clone() + b.clone())),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NovikovError> {
        self.checked_add(&other.neg())
    }

    /// Adds a finite amount; never indeterminate.
    pub fn add_finite(&self, s: &S) -> Self {
        match self {
            ExtScalar::Finite(a) => ExtScalar::Finite(a.clone() + s.clone()),
            other => other.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtScalar::NegInf => ExtScalar::PosInf,
            ExtScalar::PosInf => ExtScalar::NegInf,
            ExtScalar::Finite(a) => ExtScalar::Finite(-a.clone()),
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// The middle value of three under the extended-real order.
    pub fn median(a: Self, b: Self, c: Self) -> Self {
        let lo = a.clone().min(b.clone());
        let hi = a.max(b);
        lo.max(hi.min(c))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtScalar::NegInf => f64::NEG_INFINITY,
            ExtScalar::PosInf => f64::INFINITY,
            ExtScalar::Finite(s) => s.to_f64(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl FnOnce(&S) -> T) -> ExtScalar<T> {
        match self {
            ExtScalar::NegInf => ExtScalar::NegInf,
            ExtScalar::PosInf => ExtScalar::PosInf,
            ExtScalar::Finite(s) => ExtScalar::Finite(f(s)),
        }
    }
}

impl<S: Scalar> From<S> for ExtScalar<S> {
    fn from(s: S) -> Self {
        ExtScalar::Finite(s)
    }
}

impl<S: fmt::Display> fmt::Display for ExtScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::NegInf => f.write_str("-inf"),
            ExtScalar::PosInf => f.write_str("+inf"),
            ExtScalar::Finite(s) => write!(f, "{s}"),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for ExtScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::NegInf => f.write_str("-inf"),
            ExtScalar::PosInf => f.write_str("+inf"),
            ExtScalar::Finite(s) => write!(f, "{s:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExtScalar<Rational>;

    fn fin(n: i64) -> E {
        ExtScalar::Finite(Rational::from_integer(n))
    }

    #[test]
    fn infinities_absorb_under_min() {
        assert_eq!(E::PosInf.min(fin(3)), fin(3));
        assert_eq!(E::NegInf.min(fin(3)), E::NegInf);
        assert_eq!(fin(-2).min(E::PosInf), fin(-2));
    }

    #[test]
    fn addition_conventions() {
        assert_eq!(E::PosInf.checked_add(&fin(5)).unwrap(), E::PosInf);
        assert_eq!(E::NegInf.checked_add(&fin(5)).unwrap(), E::NegInf);
        assert_eq!(
            E::PosInf.checked_add(&E::NegInf),
            Err(NovikovError::IndeterminateForm)
        );
    }

    #[test]
    fn median_of_three() {
        assert_eq!(E::median(fin(1), fin(2), fin(3)), fin(2));
        assert_eq!(E::median(fin(3), fin(1), fin(2)), fin(2));
        assert_eq!(E::median(E::PosInf, fin(2), fin(1)), fin(2));
        assert_eq!(E::median(E::NegInf, fin(2), fin(1)), fin(1));
    }

    #[test]
    fn approx_compares_with_tolerance() {
        assert_eq!(Approx(1.0), Approx(1.0 + 1e-12));
        assert!(Approx(1.0) < Approx(1.0 + 1e-6));
        assert_eq!(
            Approx(1.0).partial_cmp(&Approx(1.0 + 5e-10)),
            Some(Ordering::Equal)
        );
    }
}
