use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::novikov::{ExtScalar, Rational, Scalar};

use super::affine::AffineForm;
use super::PlError;

/// A piecewise-linear expression over the extended reals.
#[derive(Clone, PartialEq, Eq)]
pub enum PLExpr {
    Affine(AffineForm),
    Min(Vec<PLExpr>),
    Max(Vec<PLExpr>),
    Median(Box<[PLExpr; 3]>),
    Sum(Vec<PLExpr>),
}

impl PLExpr {
    pub fn var(name: &str) -> Self {
        PLExpr::Affine(AffineForm::var(name))
    }

    pub fn int(n: i64) -> Self {
        PLExpr::Affine(AffineForm::int(n))
    }

    pub fn constant(c: Rational) -> Self {
        PLExpr::Affine(AffineForm::constant(c))
    }

    pub fn pos_inf() -> Self {
        PLExpr::Affine(AffineForm::pos_inf())
    }

    pub fn neg_inf() -> Self {
        PLExpr::Affine(AffineForm::neg_inf())
    }

    pub fn min(args: Vec<PLExpr>) -> Self {
        assert!(!args.is_empty(), "min of nothing");
        PLExpr::Min(args)
    }

    pub fn max(args: Vec<PLExpr>) -> Self {
        assert!(!args.is_empty(), "max of nothing");
        PLExpr::Max(args)
    }

    pub fn min2(a: PLExpr, b: PLExpr) -> Self {
        PLExpr::Min(vec![a, b])
    }

    pub fn median(a: PLExpr, b: PLExpr, c: PLExpr) -> Self {
        PLExpr::Median(Box::new([a, b, c]))
    }

    pub fn sum(args: Vec<PLExpr>) -> Self {
        PLExpr::Sum(args)
    }

    /// Multiplication by a rational, pushed through min/max/median.
    pub fn scale(&self, k: &Rational) -> Self {
        if k.signum() < 0 {
            return self.neg_inner().scale(&-k);
        }
        match self {
            PLExpr::Affine(f) => PLExpr::Affine(f.scale(k)),
            PLExpr::Min(v) => PLExpr::Min(v.iter().map(|e| e.scale(k)).collect()),
            PLExpr::Max(v) => PLExpr::Max(v.iter().map(|e| e.scale(k)).collect()),
            PLExpr::Sum(v) => PLExpr::Sum(v.iter().map(|e| e.scale(k)).collect()),
            PLExpr::Median(m) => {
                let [a, b, c] = &**m;
                PLExpr::median(a.scale(k), b.scale(k), c.scale(k))
            }
        }
    }

    fn neg_inner(&self) -> Self {
        match self {
            PLExpr::Affine(f) => PLExpr::Affine(f.neg()),
            PLExpr::Min(v) => PLExpr::Max(v.iter().map(Self::neg_inner).collect()),
            PLExpr::Max(v) => PLExpr::Min(v.iter().map(Self::neg_inner).collect()),
            PLExpr::Sum(v) => PLExpr::Sum(v.iter().map(Self::neg_inner).collect()),
            PLExpr::Median(m) => {
                let [a, b, c] = &**m;
                PLExpr::median(a.neg_inner(), b.neg_inner(), c.neg_inner())
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            PLExpr::Affine(f) => out.extend(f.vars().map(str::to_string)),
            PLExpr::Min(v) | PLExpr::Max(v) | PLExpr::Sum(v) => {
                v.iter().for_each(|e| e.collect_vars(out))
            }
            PLExpr::Median(m) => m.iter().for_each(|e| e.collect_vars(out)),
        }
    }

    /// Bottom-up evaluation under the extended-real conventions.
    pub fn eval<S: Scalar>(&self, assignment: &BTreeMap<String, ExtScalar<S>>) -> Result<ExtScalar<S>, PlError> {
        match self {
            PLExpr::Affine(f) => f.eval(assignment),
            PLExpr::Min(v) => fold(v, assignment, |a, b| Ok(a.min(b))),
            PLExpr::Max(v) => fold(v, assignment, |a, b| Ok(a.max(b))),
            PLExpr::Sum(v) => {
                let mut acc = ExtScalar::Finite(S::zero());
                for e in v {
                    acc = acc.checked_add(&e.eval(assignment)?)?;
                }
                Ok(acc)
            }
            PLExpr::Median(m) => {
                let [a, b, c] = &**m;
                Ok(ExtScalar::median(a.eval(assignment)?, b.eval(assignment)?, c.eval(assignment)?))
            }
        }
    }
}

fn fold<S: Scalar>(
    v: &[PLExpr],
    assignment: &BTreeMap<String, ExtScalar<S>>,
    op: impl Fn(ExtScalar<S>, ExtScalar<S>) -> Result<ExtScalar<S>, PlError>,
) -> Result<ExtScalar<S>, PlError> {
    let mut it = v.iter();
    let first = it.next().ok_or_else(|| PlError::Parse("empty min/max".into()))?;
    let mut acc = first.eval(assignment)?;
    for e in it {
        acc = op(acc, e.eval(assignment)?)?;
    }
    Ok(acc)
}

/// Evaluates `e` at `assignment`.
pub fn pl_eval<S: Scalar>(e: &PLExpr, assignment: &BTreeMap<String, ExtScalar<S>>) -> Result<ExtScalar<S>, PlError> {
    e.eval(assignment)
}

impl Add for PLExpr {
    type Output = PLExpr;
    fn add(self, rhs: PLExpr) -> PLExpr {
        match (self, rhs) {
            (PLExpr::Affine(a), PLExpr::Affine(b)) if a.is_finite() && b.is_finite() => {
                PLExpr::Affine(a.checked_add(&b).expect("finite forms add"))
            }
            (PLExpr::Sum(mut a), PLExpr::Sum(b)) => {
                a.extend(b);
                PLExpr::Sum(a)
            }
            (PLExpr::Sum(mut a), b) => {
                a.push(b);
                PLExpr::Sum(a)
            }
            (a, b) => PLExpr::Sum(vec![a, b]),
        }
    }
}

impl Neg for PLExpr {
    type Output = PLExpr;
    fn neg(self) -> PLExpr {
        self.neg_inner()
    }
}

impl Sub for PLExpr {
    type Output = PLExpr;
    fn sub(self, rhs: PLExpr) -> PLExpr {
        self + rhs.neg_inner()
    }
}

impl From<AffineForm> for PLExpr {
    fn from(f: AffineForm) -> Self {
        PLExpr::Affine(f)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, v: &[PLExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, e) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

impl fmt::Display for PLExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PLExpr::Affine(a) => write!(f, "{a}"),
            PLExpr::Min(v) => write_list(f, "min", v),
            PLExpr::Max(v) => write_list(f, "max", v),
            PLExpr::Median(m) => write_list(f, "median", &m[..]),
            PLExpr::Sum(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match e {
                        PLExpr::Affine(a) => write!(f, "({a})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for PLExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Recursive-descent parser for `min(q1, 0) - 2*P + median(P, P1, P2)`.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Inf,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
}

fn lex(s: &str) -> Result<Vec<Tok>, PlError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let r: Rational = text.parse().map_err(|_| PlError::Parse(format!("bad number {text}")))?;
                out.push(Tok::Num(r));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                if text == "inf" {
                    out.push(Tok::Inf);
                } else {
                    out.push(Tok::Ident(text));
                }
            }
            other => return Err(PlError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), PlError> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(PlError::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<PLExpr, PlError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PLExpr, PlError> {
        if let Some(Tok::Num(r)) = self.peek().cloned() {
            self.pos += 1;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                return Ok(self.atom()?.scale(&r));
            }
            return Ok(PLExpr::constant(r));
        }
        self.atom()
    }

    fn args(&mut self) -> Result<Vec<PLExpr>, PlError> {
        self.expect(Tok::LParen)?;
        let mut v = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            v.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(v)
    }

    fn atom(&mut self) -> Result<PLExpr, PlError> {
        match self.next() {
            Some(Tok::Inf) => Ok(PLExpr::pos_inf()),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "min" => Ok(PLExpr::Min(self.args()?)),
                "max" => Ok(PLExpr::Max(self.args()?)),
                "median" => {
                    let v = self.args()?;
                    let n = v.len();
                    let arr: [PLExpr; 3] = v.try_into().map_err(|_| PlError::MedianArity(n))?;
                    Ok(PLExpr::Median(Box::new(arr)))
                }
                _ => Ok(PLExpr::var(&name)),
            },
            got => Err(PlError::Parse(format!("unexpected token {got:?}"))),
        }
    }
}

impl FromStr for PLExpr {
    type Err = PlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { toks: lex(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(PlError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> ExtScalar<Rational> {
        ExtScalar::Finite(Rational::from_integer(n))
    }

    fn eval(s: &str, pairs: &[(&str, ExtScalar<Rational>)]) -> Result<ExtScalar<Rational>, PlError> {
        let e: PLExpr = s.parse().unwrap();
        let a: BTreeMap<String, ExtScalar<Rational>> =
            pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        pl_eval(&e, &a)
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval("median(1, 2, 3)", &[]).unwrap(), r(2));
        assert_eq!(eval("median(x, 2, 1)", &[("x", ExtScalar::PosInf)]).unwrap(), r(2));
        assert_eq!(eval("min(+inf, -2)", &[]).unwrap(), r(-2));
        assert_eq!(eval("min(x, 1)", &[("x", ExtScalar::NegInf)]).unwrap(), ExtScalar::NegInf);
    }

    #[test]
    fn indeterminate_sum_is_an_error() {
        let got = eval("x - y", &[("x", ExtScalar::PosInf), ("y", ExtScalar::PosInf)]);
        assert!(matches!(got, Err(PlError::Indeterminate(_))));
        assert!(matches!(eval("x", &[]), Err(PlError::Unassigned(_))));
    }

    #[test]
    fn parse_and_display() {
        let e: PLExpr = "min(q1, 0) + median(P, P1, P2) - 1/2*P".parse().unwrap();
        assert_eq!(e.to_string(), "min(q1, 0) + median(P, P1, P2) + (-1/2*P)");
        let n: PLExpr = "-min(t, c)".parse().unwrap();
        assert_eq!(n.to_string(), "max(-t, -c)");
        assert!("median(1, 2)".parse::<PLExpr>().is_err());
        assert!("min(1,".parse::<PLExpr>().is_err());
    }
}
