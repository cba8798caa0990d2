use std::fmt;

use crate::base_geometry::{BasePoint, ChartAtlas};
use crate::novikov::{ExtScalar, NovikovNum, ProjValue, Scalar};

use super::{BsideError, YPoint};

pub type Triple<S> = [NovikovNum<S>; 3];

/// A point of the mirror chart T_k = trop⁻¹(χ_k(U_k)).
#[derive(Clone, PartialEq)]
pub struct MirrorPoint<S: Scalar> {
    pub chart: usize,
    pub y: Triple<S>,
}

impl<S: Scalar> fmt::Debug for MirrorPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{} ({}; {}; {})", self.chart, self.y[0], self.y[1], self.y[2])
    }
}

/// Coordinatewise valuation.
pub fn trop<S: Scalar>(y: &Triple<S>) -> Result<[S; 3], BsideError> {
    let v = |x: &NovikovNum<S>| {
        x.val()?
            .into_finite()
            .ok_or_else(|| BsideError::Domain("mirror coordinates must be units".into()))
    };
    Ok([v(&y[0])?, v(&y[1])?, v(&y[2])?])
}

/// π₀∨: χ_k⁻¹ ∘ trop.
pub fn tau_base<S: Scalar>(atlas: &ChartAtlas<S>, m: &MirrorPoint<S>) -> Result<BasePoint<S>, BsideError> {
    Ok(atlas.chart_unmap(m.chart, &trop(&m.y)?)?)
}

/// Φ₁₂(y) = (y₁, y₂, y₃(1+y₁)).
pub fn phi12<S: Scalar>(y: &Triple<S>) -> Triple<S> {
    [y[0].clone(), y[1].clone(), &y[2] * &y[0].one_plus()]
}

/// Φ₂₃(y) = (y₁, y₂, y₃(1+y₂)).
pub fn phi23<S: Scalar>(y: &Triple<S>) -> Triple<S> {
    [y[0].clone(), y[1].clone(), &y[2] * &y[1].one_plus()]
}

/// 𝒲₁ = y₃(1+y₁)(1+y₂), 𝒲₂ = y₃(1+y₂), 𝒲₃ = y₃.
pub fn superpotential<S: Scalar>(k: usize, y: &Triple<S>) -> NovikovNum<S> {
    match k {
        1 => &(&y[2] * &y[0].one_plus()) * &y[1].one_plus(),
        2 => &y[2] * &y[1].one_plus(),
        _ => y[2].clone(),
    }
}

/// The embedding g_k: T_k → Y. `order` bounds the inversion of y₃.
pub fn g_k<S: Scalar>(k: usize, y: &Triple<S>, order: &ExtScalar<S>) -> Result<YPoint<S>, BsideError> {
    let [y1, y2, y3] = y;
    let a = y1.one_plus();
    let b = y2.one_plus();
    let inv3 = y3.inv(order)?;
    let one = NovikovNum::one();
    let (x1, x2, z) = match k {
        1 => (inv3, &(y3 * &a) * &b, ProjValue::new(y3 * &a, one)),
        2 => (&a * &inv3, y3 * &b, ProjValue::new(y3.clone(), one)),
        3 => (&(&a * &b) * &inv3, y3.clone(), ProjValue::new(y3.clone(), b.clone())),
        _ => return Err(BsideError::Domain(format!("no chart T{k}"))),
    };
    Ok(YPoint { x1, x2, z, y1: y1.clone(), y2: y2.clone() })
}

pub fn g_glued<S: Scalar>(m: &MirrorPoint<S>, order: &ExtScalar<S>) -> Result<YPoint<S>, BsideError> {
    g_k(m.chart, &m.y, order)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base_geometry::{RationalPsi, WallConfig};
    use crate::mirror_bside::y_membership;
    use crate::novikov::Rational;

    type N = NovikovNum<Rational>;

    fn s(x: &str) -> N {
        x.parse().unwrap()
    }

    fn t3(a: &str, b: &str, c: &str) -> Triple<Rational> {
        [s(a), s(b), s(c)]
    }

    fn order() -> ExtScalar<Rational> {
        ExtScalar::Finite(Rational::from_integer(12))
    }

    fn same_y(a: &YPoint<Rational>, b: &YPoint<Rational>) -> bool {
        (&a.x1 - &b.x1).is_zero_to_trunc()
            && (&a.x2 - &b.x2).is_zero_to_trunc()
            && a.z.agrees_with(&b.z)
            && a.y1 == b.y1
            && a.y2 == b.y2
    }

    #[test]
    fn phi_examples() {
        let y = t3("1*T^2", "1*T^1", "1*T^1");
        assert_eq!(phi12(&y)[2], s("1*T^1 + 1*T^3"));
        assert_eq!(phi23(&y)[2], s("1*T^1 + 1*T^2"));
        let y0 = t3("0", "1*T^1", "1*T^1 + 3*T^2");
        assert_eq!(phi12(&y0)[2], y0[2]);
    }

    #[test]
    fn superpotential_examples() {
        let t = t3("1*T^1", "1*T^1", "1*T^1");
        assert_eq!(superpotential(1, &t), s("1*T^1 + 2*T^2 + 1*T^3"));
        assert_eq!(superpotential(3, &t3("1", "1", "1*T^5")), s("1*T^5"));
        assert_eq!(superpotential(2, &t3("7", "1*T^1", "1*T^1")), s("1*T^1 + 1*T^2"));
    }

    #[test]
    fn g_examples() {
        let g1 = g_k(1, &t3("1*T^1", "1*T^1", "1*T^5"), &order()).unwrap();
        assert_eq!(g1.x1, s("1*T^-5"));
        assert_eq!(g1.x2, s("1*T^5 + 2*T^6 + 1*T^7"));
        assert_eq!(g1.z.num, s("1*T^5 + 1*T^6"));
        assert!(y_membership(&g1).unwrap());

        let g2 = g_k(2, &t3("-1 + 1*T^1", "1*T^1", "1*T^1"), &order()).unwrap();
        assert_eq!(g2.x1, s("1"));
        assert!(y_membership(&g2).unwrap());

        let g3 = g_k(3, &t3("1*T^1", "1*T^1", "1"), &order()).unwrap();
        assert_eq!(g3.x1, s("1 + 2*T^1 + 1*T^2"));
        assert_eq!(g3.z.den, s("1 + 1*T^1"));
        assert!(y_membership(&g3).unwrap());
    }

    #[test]
    fn g_glues_along_phi() {
        let y = t3("1*T^1", "1*T^1", "1*T^5");
        let lhs = g_k(2, &phi12(&y), &order()).unwrap();
        assert!(same_y(&lhs, &g_k(1, &y, &order()).unwrap()));
        let y = t3("1*T^2", "1*T^1", "1*T^1");
        let lhs = g_k(3, &phi23(&y), &order()).unwrap();
        assert!(same_y(&lhs, &g_k(2, &y, &order()).unwrap()));
    }

    #[test]
    fn tau_examples() {
        let a = ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi));
        let m = MirrorPoint { chart: 3, y: t3("1", "1", "1*T^1/2") };
        assert_eq!(tau_base(&a, &m).unwrap(), BasePoint::ints(0, 0, -1));
        let m = MirrorPoint { chart: 2, y: t3("1*T^1", "1*T^-2", "1*T^7/2") };
        let want = BasePoint::new(Rational::one(), Rational::from_integer(-2), Rational::new(1, 2));
        assert_eq!(tau_base(&a, &m).unwrap(), want);
        let m = MirrorPoint { chart: 1, y: t3("1*T^-1", "1*T^2", "1*T^5") };
        assert_eq!(tau_base(&a, &m).unwrap(), BasePoint::ints(-1, 2, 3));
    }
}
