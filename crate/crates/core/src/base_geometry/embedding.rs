use serde::Serialize;

use crate::novikov::{ExtScalar, Scalar};

use super::atlas::ChartAtlas;
use super::{BasePoint, GeometryError};

fn median<S: Scalar>(a: S, b: S, c: S) -> S {
    let lo = a.clone().min_of(b.clone());
    let hi = a.max_of(b);
    lo.max_of(hi.min_of(c))
}

impl<S: Scalar> ChartAtlas<S> {
    /// j(q) = (min{−ψ, −ψ⁽¹⁾} + m, min{ψ, ψ⁽²⁾}, median{ψ, ψ⁽¹⁾, ψ⁽²⁾}, q₁, q₂).
    pub fn j_embed(&self, q: &BasePoint<S>) -> [S; 5] {
        let psi = self.psi_eval(q);
        let (p1, p2) = (self.p1().clone(), self.p2().clone());
        [
            (-psi.clone()).min_of(-p1.clone()) + q.m(),
            psi.clone().min_of(p2.clone()),
            median(psi, p1, p2),
            q.q1.clone(),
            q.q2.clone(),
        ]
    }

    pub fn j_inverse(&self, p: &[S; 5]) -> Result<BasePoint<S>, GeometryError> {
        let [t1, t2, v, q1, q2] = p.clone();
        let (p1, p2) = (self.p1().clone(), self.p2().clone());
        let m = q1.min0() + q2.min0();
        let psi = if t2 < p2 {
            t2
        } else if p2 < v && v < p1 {
            v
        } else if t1 < -p1.clone() + m.clone() {
            m - t1
        } else if v == p2 {
            p2
        } else if v == p1 {
            p1
        } else {
            return Err(GeometryError::NotInImage);
        };
        let q3 = self.psi_inv(&q1, &q2, &psi).map_err(|_| GeometryError::NotInImage)?;
        let q = BasePoint::new(q1, q2, q3);
        let back = self.j_embed(&q);
        if back.iter().zip(p.iter()).all(|(a, b)| a == b) {
            Ok(q)
        } else {
            Err(GeometryError::NotInImage)
        }
    }

    pub fn broken_line(&self, q1: S, q2: S) -> BrokenLine<S> {
        let m = q1.min0() + q2.min0();
        BrokenLine { q1, q2, p1: self.p1().clone(), p2: self.p2().clone(), m }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Segment {
    /// t ∈ (0, ψ⁽²⁾]
    First,
    /// t ∈ [ψ⁽²⁾, ψ⁽¹⁾]
    Middle,
    /// t ∈ [ψ⁽¹⁾, ∞)
    Last,
}

/// The image slice R_{q₁,q₂}: the broken line r(t), t > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct BrokenLine<S> {
    pub q1: S,
    pub q2: S,
    pub p1: S,
    pub p2: S,
    pub m: S,
}

impl<S: Scalar> BrokenLine<S> {
    /// r(t) = (min{−t, −ψ⁽¹⁾} + m, min{t, ψ⁽²⁾}, median{t, ψ⁽¹⁾, ψ⁽²⁾}).
    pub fn eval(&self, t: &S) -> Result<[S; 3], GeometryError> {
        if !(*t > S::zero()) {
            return Err(GeometryError::Domain(format!("broken line needs t > 0, got {t}")));
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: &S) -> [S; 3] {
        let (p1, p2) = (self.p1.clone(), self.p2.clone());
        [
            (-t.clone()).min_of(-p1.clone()) + self.m.clone(),
            t.clone().min_of(p2.clone()),
            median(t.clone(), p1, p2),
        ]
    }

    /// The segment formula, without the min/median selection.
    pub fn segment_eval(&self, seg: Segment, t: &S) -> [S; 3] {
        let base = -self.p1.clone() + self.m.clone();
        match seg {
            Segment::First => [base, t.clone(), self.p2.clone()],
            Segment::Middle => [base, self.p2.clone(), t.clone()],
            Segment::Last => [-t.clone() + self.m.clone(), self.p2.clone(), self.p1.clone()],
        }
    }

    /// Corner A = (−ψ⁽¹⁾ + m, ψ⁽²⁾, ψ⁽²⁾).
    pub fn corner_a(&self) -> [S; 3] {
        [-self.p1.clone() + self.m.clone(), self.p2.clone(), self.p2.clone()]
    }

    /// Corner A′ = (−ψ⁽¹⁾ + m, ψ⁽²⁾, ψ⁽¹⁾).
    pub fn corner_a_prime(&self) -> [S; 3] {
        [-self.p1.clone() + self.m.clone(), self.p2.clone(), self.p1.clone()]
    }

    /// r(t) for any real t; the slice S_{q₁,q₂} is r(ℝ).
    pub fn eval_real(&self, t: &S) -> [S; 3] {
        self.eval_unchecked(t)
    }

    /// The segment and parameter of a point of r((0, ∞)), if it lies there.
    pub fn locate(&self, u: &[S; 3]) -> Option<(Segment, S)> {
        self.locate_real(u).filter(|(_, t)| *t > S::zero())
    }

    /// Like [`BrokenLine::locate`] but over all of r(ℝ).
    pub fn locate_real(&self, u: &[S; 3]) -> Option<(Segment, S)> {
        let base = -self.p1.clone() + self.m.clone();
        let [u1, u2, v] = u;
        if *u1 == base && *v == self.p2 && *u2 <= self.p2 {
            return Some((Segment::First, u2.clone()));
        }
        if *u1 == base && *u2 == self.p2 && *v >= self.p2 && *v <= self.p1 {
            return Some((Segment::Middle, v.clone()));
        }
        if *u2 == self.p2 && *v == self.p1 && *u1 <= base {
            return Some((Segment::Last, self.m.clone() - u1.clone()));
        }
        None
    }

    pub fn contains(&self, u: &[S; 3]) -> bool {
        self.locate(u).is_some()
    }

    /// Extended-real endpoints of the three segments, for emission.
    pub fn segments(&self) -> [(Segment, ExtScalar<S>, ExtScalar<S>); 3] {
        let f = |s: &S| ExtScalar::Finite(s.clone());
        [
            (Segment::First, f(&S::zero()), f(&self.p2)),
            (Segment::Middle, f(&self.p2), f(&self.p1)),
            (Segment::Last, f(&self.p1), ExtScalar::PosInf),
        ]
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base_geometry::{RationalPsi, WallConfig};
    use crate::novikov::Rational;

    fn atlas() -> ChartAtlas<Rational> {
        ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn v5(xs: [i64; 5]) -> [Rational; 5] {
        xs.map(Rational::from_integer)
    }

    #[test]
    fn j_examples() {
        let a = atlas();
        assert_eq!(a.j_embed(&BasePoint::ints(-1, 2, 3)), v5([-5, 1, 2, -1, 2]));
        assert_eq!(a.j_embed(&BasePoint::ints(0, -1, 1)), v5([-3, 1, 2, 0, -1]));
        assert_eq!(a.j_embed(&BasePoint::ints(0, 0, 0)), v5([-2, 1, 1, 0, 0]));
    }

    #[test]
    fn j_inverse_examples() {
        let a = atlas();
        assert_eq!(a.j_inverse(&v5([-5, 1, 2, -1, 2])).unwrap(), BasePoint::ints(-1, 2, 3));
        assert_eq!(a.j_inverse(&v5([-2, 1, 1, 0, 0])).unwrap(), BasePoint::ints(0, 0, 0));
        assert_eq!(a.j_inverse(&v5([0, 0, 0, 0, 0])), Err(GeometryError::NotInImage));
        assert_eq!(a.j_inverse(&v5([-2, 1, 2, 0, 0])).unwrap(), BasePoint::ints(0, 0, 1));
    }

    #[test]
    fn broken_line_examples() {
        let bl = atlas().broken_line(r("0"), r("0"));
        assert_eq!(bl.eval(&r("1/2")).unwrap(), [r("-2"), r("1/2"), r("1")]);
        assert_eq!(bl.eval(&r("3/2")).unwrap(), [r("-2"), r("1"), r("3/2")]);
        assert_eq!(bl.eval(&r("3")).unwrap(), [r("-3"), r("1"), r("2")]);
        assert!(bl.eval(&r("0")).is_err());
        assert_eq!(bl.corner_a(), [r("-2"), r("1"), r("1")]);
        assert_eq!(bl.corner_a_prime(), [r("-2"), r("1"), r("2")]);
    }

    #[test]
    fn corners_are_continuous() {
        let bl = atlas().broken_line(r("-1/2"), r("3"));
        assert_eq!(bl.segment_eval(Segment::First, &bl.p2), bl.segment_eval(Segment::Middle, &bl.p2));
        assert_eq!(bl.segment_eval(Segment::Middle, &bl.p1), bl.segment_eval(Segment::Last, &bl.p1));
        assert_eq!(bl.locate(&bl.corner_a_prime()), Some((Segment::Middle, r("2"))));
        assert_eq!(bl.locate(&[r("-9"), r("1"), r("2")]), Some((Segment::Last, r("17/2"))));
        assert_eq!(bl.locate(&[r("-9"), r("1"), r("3/2")]), None);
        let neg = bl.eval_real(&r("-1"));
        assert_eq!(bl.locate(&neg), None);
        assert_eq!(bl.locate_real(&neg), Some((Segment::First, r("-1"))));
    }
}
