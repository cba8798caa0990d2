use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::rational::{ParseRationalError, Rational};

/// An element of ℚ(i), the coefficient field of every series in this crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr().recip();
        Some(GaussRat { re: &self.re * &n, im: -(&self.im * &n) })
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a, 'b> Add<&'b GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &'b GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a, 'b> Sub<&'b GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &'b GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a, 'b> Mul<&'b GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &'b GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re * &rhs.re);
        }
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Neg for &'a GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl From<Rational> for GaussRat {
    fn from(r: Rational) -> Self {
        GaussRat::real(r)
    }
}

impl fmt::Display for GaussRat {
    /// `a`, `c*i`, or `a+c*i` with `a`, `c` printed as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.signum() < 0 {
                    write!(f, "{}-{}*i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseRationalError(s.to_string());
        let Some(body) = t.strip_suffix("*i").or_else(|| t.strip_suffix('i')) else {
            return Ok(GaussRat::real(t.parse()?));
        };
        // Split `a+c` / `a-c` at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let re: Rational = body[..i].parse()?;
                let im_str = &body[i..];
                let im: Rational = im_str.trim_start_matches('+').parse()?;
                Ok(GaussRat::new(re, im))
            }
            None if body.is_empty() => Err(err()),
            None => Ok(GaussRat::new(Rational::zero(), body.parse()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        let z: GaussRat = "1/2+3*i".parse().unwrap();
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn display_and_parse() {
        for s in ["3/4", "-1", "2*i", "1-1*i", "-1/2+3/5*i"] {
            let z: GaussRat = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }
}
