//! Truncated Novikov series `Σ a_k T^{λ_k}` with exact ℚ(i) coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::gaussian::GaussRat;
use super::scalar::{ExtScalar, Scalar};
use super::NovikovError;

#[derive(Clone, PartialEq)]
pub struct Term<S> {
    pub exp: S,
    pub coeff: GaussRat,
}

impl<S: Scalar> Term<S> {
    pub fn new(coeff: GaussRat, exp: S) -> Self {
        Term { exp, coeff }
    }
}

/// An element of Λ known below the exponent `trunc`.
///
/// Terms are sorted by strictly increasing exponent, carry nonzero
/// coefficients, and all lie below `trunc`. `trunc` is finite or `+∞`
/// (an exact series); it is never `−∞`.
#[derive(Clone, PartialEq)]
pub struct NovikovNum<S> {
    terms: Vec<Term<S>>,
    trunc: ExtScalar<S>,
}

fn below<S: Scalar>(e: &S, trunc: &ExtScalar<S>) -> bool {
    match trunc {
        ExtScalar::PosInf => true,
        ExtScalar::Finite(t) => e < t,
        ExtScalar::NegInf => false,
    }
}

/// Merges two sorted term lists, summing coefficients of equal exponents and
/// dropping zeros and anything at or above `trunc`.
fn merge_sorted<S: Scalar>(a: &[Term<S>], b: &[Term<S>], trunc: &ExtScalar<S>) -> Vec<Term<S>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.exp == y.exp => {
                i += 1;
                j += 1;
                Term { exp: x.exp.clone(), coeff: &x.coeff + &y.coeff }
            }
            (Some(x), Some(y)) if x.exp.total_cmp(&y.exp) == Ordering::Less => {
                i += 1;
                x.clone()
            }
            (Some(_), Some(y)) => {
                j += 1;
                y.clone()
            }
            (Some(x), None) => {
                i += 1;
                x.clone()
            }
            (None, Some(y)) => {
                j += 1;
                y.clone()
            }
            (None, None) => unreachable!(),
        };
        if !below(&next.exp, trunc) {
            // Both inputs are sorted, so nothing later is below trunc either.
            break;
        }
        if !next.coeff.is_zero() {
            out.push(next);
        }
    }
    out
}

impl<S: Scalar> NovikovNum<S> {
    /// Builds a normalized series from arbitrary terms.
    pub fn from_terms(terms: impl IntoIterator<Item = Term<S>>, trunc: ExtScalar<S>) -> Self {
        assert!(!matches!(trunc, ExtScalar::NegInf), "truncation order cannot be -inf");
        let mut raw: Vec<Term<S>> = terms.into_iter().filter(|t| below(&t.exp, &trunc)).collect();
        raw.sort_by(|x, y| x.exp.total_cmp(&y.exp));
        let mut terms: Vec<Term<S>> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.exp == t.exp => last.coeff = &last.coeff + &t.coeff,
                _ => terms.push(t),
            }
            if terms.last().is_some_and(|l| l.coeff.is_zero()) {
                terms.pop();
            }
        }
        NovikovNum { terms, trunc }
    }

    pub fn zero() -> Self {
        NovikovNum { terms: Vec::new(), trunc: ExtScalar::PosInf }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(c, S::zero())
    }

    pub fn monomial(c: GaussRat, exp: S) -> Self {
        Self::from_terms([Term::new(c, exp)], ExtScalar::PosInf)
    }

    /// `T^exp`.
    pub fn t_pow(exp: S) -> Self {
        Self::monomial(GaussRat::one(), exp)
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    pub fn trunc(&self) -> &ExtScalar<S> {
        &self.trunc
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.trunc, ExtScalar::PosInf)
    }

    /// True when no term survives below the truncation order.
    pub fn is_zero_to_trunc(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn leading(&self) -> Option<&Term<S>> {
        self.terms.first()
    }

    /// Lowers the truncation order to `t` (never raises it).
    pub fn truncate(&self, t: ExtScalar<S>) -> Self {
        let trunc = self.trunc.clone().min(t);
        let terms = self.terms.iter().filter(|x| below(&x.exp, &trunc)).cloned().collect();
        NovikovNum { terms, trunc }
    }

    /// The valuation, when it is provable from the known terms.
    pub fn val(&self) -> Result<ExtScalar<S>, NovikovError> {
        match (self.terms.first(), &self.trunc) {
            (Some(t), _) => Ok(ExtScalar::Finite(t.exp.clone())),
            (None, ExtScalar::PosInf) => Ok(ExtScalar::PosInf),
            (None, _) => Err(NovikovError::IndeterminateValuation),
        }
    }

    /// A certain lower bound for the valuation: the leading exponent, or
    /// `trunc` when nothing is known.
    pub fn val_lower_bound(&self) -> ExtScalar<S> {
        match self.terms.first() {
            Some(t) => ExtScalar::Finite(t.exp.clone()),
            None => self.trunc.clone(),
        }
    }

    /// `1 + self`.
    pub fn one_plus(&self) -> Self {
        &Self::one() + self
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return NovikovNum { terms: Vec::new(), trunc: self.trunc.clone() };
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exp: t.exp.clone(), coeff: &t.coeff * c })
            .collect();
        NovikovNum { terms, trunc: self.trunc.clone() }
    }

    fn shifted_scaled(&self, shift: &S, c: &GaussRat, limit: &ExtScalar<S>) -> Vec<Term<S>> {
        self.terms
            .iter()
            .map(|t| Term { exp: t.exp.clone() + shift.clone(), coeff: &t.coeff * c })
            .take_while(|t| below(&t.exp, limit))
            .collect()
    }

    /// Inverse such that `self · inv − 1` has no term of exponent `< order`.
    ///
    /// A monomial with exact truncation inverts exactly regardless of
    /// `order`.
    pub fn inv(&self, order: &ExtScalar<S>) -> Result<Self, NovikovError> {
        let lead = self.terms.first().ok_or(NovikovError::IndeterminateValuation)?;
        let v = lead.exp.clone();
        let c_inv = lead.coeff.inv().expect("leading coefficients are nonzero");
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Self::monomial(c_inv, -v));
        }
        let mut target = order.checked_sub(&ExtScalar::Finite(v.clone()))?;
        if let ExtScalar::Finite(t) = &self.trunc {
            target = target.min(ExtScalar::Finite(t.clone() - v.clone() - v.clone()));
        }
        let limit = match &target {
            ExtScalar::Finite(t) => ExtScalar::Finite(t.clone() + v.clone()),
            _ => return Err(NovikovError::UnboundedInversion),
        };

        // Long division of 1 by self, keeping the remainder below `limit`.
        let mut remainder = vec![Term::new(GaussRat::one(), S::zero())];
        remainder.retain(|t| below(&t.exp, &limit));
        let mut quotient = Vec::new();
        while let Some(head) = remainder.first() {
            let q_exp = head.exp.clone() - v.clone();
            let q_coeff = &head.coeff * &c_inv;
            let sub = self.shifted_scaled(&q_exp, &-&q_coeff, &limit);
            let mut next = merge_sorted(&remainder, &sub, &limit);
            // The head cancels by construction; drop float-mode residue.
            if next.first().is_some_and(|t| t.exp == head.exp) {
                next.remove(0);
            }
            quotient.push(Term::new(q_coeff, q_exp));
            remainder = next;
        }
        Ok(NovikovNum { terms: quotient, trunc: target })
    }

    /// Maps exponents into another scalar representation.
    pub fn map_exp<T: Scalar>(&self, f: impl Fn(&S) -> T) -> NovikovNum<T> {
        NovikovNum::from_terms(
            self.terms.iter().map(|t| Term::new(t.coeff.clone(), f(&t.exp))),
            self.trunc.map(|s| f(s)),
        )
    }
}

impl<'a, 'b, S: Scalar> Add<&'b NovikovNum<S>> for &'a NovikovNum<S> {
    type Output = NovikovNum<S>;
    fn add(self, rhs: &'b NovikovNum<S>) -> NovikovNum<S> {
        let trunc = self.trunc.clone().min(rhs.trunc.clone());
        NovikovNum { terms: merge_sorted(&self.terms, &rhs.terms, &trunc), trunc }
    }
}

impl<'a, S: Scalar> Neg for &'a NovikovNum<S> {
    type Output = NovikovNum<S>;
    fn neg(self) -> NovikovNum<S> {
        self.scale(&GaussRat::from_int(-1))
    }
}

impl<'a, 'b, S: Scalar> Sub<&'b NovikovNum<S>> for &'a NovikovNum<S> {
    type Output = NovikovNum<S>;
    fn sub(self, rhs: &'b NovikovNum<S>) -> NovikovNum<S> {
        self + &(-rhs)
    }
}

impl<'a, 'b, S: Scalar> Mul<&'b NovikovNum<S>> for &'a NovikovNum<S> {
    type Output = NovikovNum<S>;
    fn mul(self, rhs: &'b NovikovNum<S>) -> NovikovNum<S> {
        // Neither truncation order is -inf, so these sums are never indeterminate.
        let left = self.trunc.checked_add(&rhs.val_lower_bound()).expect("no -inf");
        let right = rhs.trunc.checked_add(&self.val_lower_bound()).expect("no -inf");
        let trunc = left.min(right);
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let exp = a.exp.clone() + b.exp.clone();
                if !below(&exp, &trunc) {
                    break;
                }
                raw.push(Term { exp, coeff: &a.coeff * &b.coeff });
            }
        }
        NovikovNum::from_terms(raw, trunc)
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl<S: Scalar> $trait<NovikovNum<S>> for NovikovNum<S> {
            type Output = NovikovNum<S>;
            fn $method(self, rhs: NovikovNum<S>) -> NovikovNum<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<S: Scalar> fmt::Display for NovikovNum<S> {
    /// Sorted `coeff*T^expo` terms, e.g. `1 - 1*T^1 + 1*T^2 (trunc 3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative_real = t.coeff.is_real() && t.coeff.re.signum() < 0;
            let c = if negative_real && k > 0 { -&t.coeff } else { t.coeff.clone() };
            if k > 0 {
                f.write_str(if negative_real { " - " } else { " + " })?;
            }
            let coeff = if c.is_real() { c.to_string() } else { format!("({c})") };
            if t.exp.is_zero_s() {
                f.write_str(&coeff)?;
            } else {
                write!(f, "{coeff}*T^{}", t.exp)?;
            }
        }
        if let ExtScalar::Finite(t) = &self.trunc {
            write!(f, " (trunc {t})")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for NovikovNum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse series `{0}`")]
pub struct ParseSeriesError(pub String);

impl<S: Scalar + FromStr> FromStr for NovikovNum<S> {
    type Err = ParseSeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSeriesError(s.to_string());
        let mut body = s.trim();
        let mut trunc = ExtScalar::PosInf;
        if let Some(open) = body.rfind("(trunc ") {
            let inner = body[open + 7..].strip_suffix(')').ok_or_else(err)?;
            trunc = ExtScalar::Finite(inner.trim().parse().map_err(|_| err())?);
            body = body[..open].trim_end();
        }
        if body == "0" {
            return Ok(NovikovNum::from_terms([], trunc));
        }
        // Split at top-level " + " / " - ".
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let bytes = body.as_bytes();
        let (mut depth, mut start, mut negative) = (0i32, 0usize, false);
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b' ' if depth == 0
                    && i + 2 < bytes.len()
                    && (bytes[i + 1] == b'+' || bytes[i + 1] == b'-')
                    && bytes[i + 2] == b' ' =>
                {
                    pieces.push((negative, &body[start..i]));
                    negative = bytes[i + 1] == b'-';
                    start = i + 3;
                    i += 3;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
        pieces.push((negative, &body[start..]));
        let mut terms = Vec::with_capacity(pieces.len());
        for (neg, piece) in pieces {
            let (coeff_str, exp) = match piece.split_once("*T^") {
                Some((c, e)) => (c, e.parse::<S>().map_err(|_| err())?),
                None => (piece, S::zero()),
            };
            let coeff_str = coeff_str.trim();
            let coeff_str = coeff_str
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coeff_str);
            let mut coeff: GaussRat = coeff_str.parse().map_err(|_| err())?;
            if neg {
                coeff = -coeff;
            }
            terms.push(Term::new(coeff, exp));
        }
        Ok(NovikovNum::from_terms(terms, trunc))
    }
}
