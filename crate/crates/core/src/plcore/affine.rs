use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::novikov::{ExtScalar, NovikovError, Rational, Scalar};

use super::PlError;

pub type Ext = ExtScalar<Rational>;

/// `Σ cᵥ·v + constant`. A constant of ±∞ absorbs every variable.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineForm {
    coeffs: BTreeMap<String, Rational>,
    constant: Ext,
}

impl AffineForm {
    pub fn constant(c: Rational) -> Self {
        AffineForm { coeffs: BTreeMap::new(), constant: ExtScalar::Finite(c) }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn pos_inf() -> Self {
        AffineForm { coeffs: BTreeMap::new(), constant: ExtScalar::PosInf }
    }

    pub fn neg_inf() -> Self {
        AffineForm { coeffs: BTreeMap::new(), constant: ExtScalar::NegInf }
    }

    pub fn var(name: &str) -> Self {
        Self::term(Rational::one(), name)
    }

    pub fn term(c: Rational, name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(name.to_string(), c);
        }
        AffineForm { coeffs, constant: ExtScalar::Finite(Rational::zero()) }
    }

    pub fn from_ext(e: Ext) -> Self {
        AffineForm { coeffs: BTreeMap::new(), constant: e }
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_part(&self) -> &Ext {
        &self.constant
    }

    pub fn is_finite(&self) -> bool {
        self.constant.is_finite()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PlError> {
        let constant = self.constant.checked_add(&other.constant)?;
        if !constant.is_finite() {
            return Ok(Self::from_ext(constant));
        }
        let mut coeffs = self.coeffs.clone();
        for (v, c) in &other.coeffs {
            let entry = coeffs.entry(v.clone()).or_insert_with(Rational::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                coeffs.remove(v);
            }
        }
        Ok(AffineForm { coeffs, constant })
    }

    pub fn neg(&self) -> Self {
        AffineForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), -c)).collect(),
            constant: self.constant.neg(),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PlError> {
        self.checked_add(&other.neg())
    }

    /// Multiplication by a rational; `0·(±∞)` is taken to be 0.
    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let constant = match &self.constant {
            ExtScalar::Finite(c) => ExtScalar::Finite(c * k),
            inf if k.signum() > 0 => inf.clone(),
            inf => inf.neg(),
        };
        AffineForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
            constant,
        }
    }

    /// Replaces every variable of `inf` by +∞.
    pub fn substitute_inf(&self, inf: &BTreeSet<String>) -> Result<Self, PlError> {
        if !self.coeffs.keys().any(|v| inf.contains(v)) {
            return Ok(self.clone());
        }
        let mut acc = AffineForm::from_ext(self.constant.clone());
        for (v, c) in &self.coeffs {
            let piece = if inf.contains(v) {
                if c.signum() > 0 {
                    Self::pos_inf()
                } else {
                    Self::neg_inf()
                }
            } else {
                Self::term(c.clone(), v)
            };
            acc = acc.checked_add(&piece)?;
        }
        Ok(acc)
    }

    /// Replaces finitely valued variables by constants.
    pub fn substitute(&self, values: &BTreeMap<String, Rational>) -> Self {
        let ExtScalar::Finite(mut constant) = self.constant.clone() else {
            return self.clone();
        };
        let mut coeffs = BTreeMap::new();
        for (v, c) in &self.coeffs {
            match values.get(v) {
                Some(x) => constant = constant + c * x,
                None => {
                    coeffs.insert(v.clone(), c.clone());
                }
            }
        }
        AffineForm { coeffs, constant: ExtScalar::Finite(constant) }
    }

    pub fn eval<S: Scalar>(&self, assignment: &BTreeMap<String, ExtScalar<S>>) -> Result<ExtScalar<S>, PlError> {
        let mut acc = self.constant.map(S::from_rational);
        for (v, c) in &self.coeffs {
            let x = assignment.get(v).ok_or_else(|| PlError::Unassigned(v.clone()))?;
            let term = match x {
                ExtScalar::Finite(x) => ExtScalar::Finite(S::from_rational(c) * x.clone()),
                inf if c.signum() > 0 => inf.clone(),
                inf => inf.neg(),
            };
            acc = acc.checked_add(&term).map_err(PlError::from)?;
        }
        Ok(acc)
    }
}

impl From<NovikovError> for PlError {
    fn from(e: NovikovError) -> Self {
        PlError::Indeterminate(e)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match &self.constant {
            ExtScalar::Finite(c) => c,
            inf => return write!(f, "{inf}"),
        };
        let mut first = true;
        for (v, k) in &self.coeffs {
            let neg = k.signum() < 0;
            let mag = k.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag == Rational::one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{c}")
        } else if c.is_zero() {
            Ok(())
        } else if c.signum() < 0 {
            write!(f, " - {}", c.abs())
        } else {
            write!(f, " + {c}")
        }
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
