//! The B-side: the resolved conifold Y over Λ, the map F, the mirror charts
//! with their gluing, the embeddings g_k and the checks tying F∘g to j∘π₀∨.

mod charts;
mod diagram;
mod sampling;
mod slices;
mod symbolic;

pub use charts::{g_glued, g_k, phi12, phi23, superpotential, tau_base, trop, MirrorPoint, Triple};
pub use diagram::{check_diagram_point, verify_diagram, DiagramOutcome};
pub use sampling::{random_coeff, sample_c, sample_chart_point, sample_q, sample_unit_series};
pub use slices::{image_slice_check, preimage_of_base_point, sample_y_point, slice_preimage, CaseLabel, SliceCase};
pub use symbolic::{
    chart_facts, diagram_exprs, verify_diagram_symbolic, verify_diagram_symbolic_with, SYMBOLIC_VARS,
};

use std::fmt;

use serde::Serialize;

use crate::base_geometry::{BasePoint, ChartAtlas, GeometryError};
use crate::novikov::{ExtScalar, NovikovError, NovikovNum, ProjValue, Scalar};
use crate::plcore::PlError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BsideError {
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// A point (x₁, x₂, z, y₁, y₂) of Y with z on the projective line.
#[derive(Clone, PartialEq)]
pub struct YPoint<S: Scalar> {
    pub x1: NovikovNum<S>,
    pub x2: NovikovNum<S>,
    pub z: ProjValue<S>,
    pub y1: NovikovNum<S>,
    pub y2: NovikovNum<S>,
}

impl<S: Scalar> fmt::Debug for YPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "YPoint {{ x1: {}, x2: {}, z: [{} : {}], y1: {}, y2: {} }}",
            self.x1, self.x2, self.z.num, self.z.den, self.y1, self.y2
        )
    }
}

impl<S: Scalar> YPoint<S> {
    /// Equality up to the truncation of each coordinate, z projectively.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (&self.x1 - &other.x1).is_zero_to_trunc()
            && (&self.x2 - &other.x2).is_zero_to_trunc()
            && self.z.agrees_with(&other.z)
            && (&self.y1 - &other.y1).is_zero_to_trunc()
            && (&self.y2 - &other.y2).is_zero_to_trunc()
    }
}

/// A point (u₁, u₂, v, q₁, q₂) of F(Y) ⊂ ℝ⁵.
pub type FImagePoint<S> = [S; 5];

fn residual_decides<S: Scalar>(
    residual: &NovikovNum<S>,
    sides: [&NovikovNum<S>; 2],
) -> Result<bool, BsideError> {
    if !residual.is_zero_to_trunc() {
        return Ok(false);
    }
    let floor = sides
        .iter()
        .map(|s| s.val_lower_bound())
        .fold(ExtScalar::PosInf, ExtScalar::min);
    if residual.trunc().is_finite() && *residual.trunc() <= floor {
        return Err(BsideError::Indeterminate("truncation too coarse to decide membership".into()));
    }
    Ok(true)
}

/// Whether x₁·z_num = (1+y₁)·z_den and x₂·z_den = (1+y₂)·z_num hold to
/// every representable order.
pub fn y_membership<S: Scalar>(p: &YPoint<S>) -> Result<bool, BsideError> {
    let a = &p.x1 * &p.z.num;
    let b = &p.y1.one_plus() * &p.z.den;
    let first = residual_decides(&(&a - &b), [&a, &b])?;
    let c = &p.x2 * &p.z.den;
    let d = &p.y2.one_plus() * &p.z.num;
    let second = residual_decides(&(&c - &d), [&c, &d])?;
    Ok(first && second)
}

fn finite_val<S: Scalar>(x: &NovikovNum<S>, what: &str) -> Result<S, BsideError> {
    x.val()?
        .into_finite()
        .ok_or_else(|| BsideError::Domain(format!("{what} must lie in the units of the Novikov field")))
}

fn median3<S: Scalar>(a: ExtScalar<S>, b: S, c: S) -> ExtScalar<S> {
    ExtScalar::median(a, ExtScalar::Finite(b), ExtScalar::Finite(c))
}

/// F = (F₁, F₂, G, val y₁, val y₂).
pub fn f_image<S: Scalar>(atlas: &ChartAtlas<S>, p: &YPoint<S>) -> Result<FImagePoint<S>, BsideError> {
    let q1 = finite_val(&p.y1, "y1")?;
    let q2 = finite_val(&p.y2, "y2")?;
    let at = |w: &S| atlas.psi_eval(&BasePoint::new(q1.clone(), q2.clone(), w.clone()));
    let p1 = at(&atlas.walls().w1);
    let p2 = at(&atlas.walls().w2);
    let m = q1.min0() + q2.min0();
    let f1 = p.x1.val()?.min(ExtScalar::Finite(-p1.clone() + m));
    let f2 = p.x2.val()?.min(ExtScalar::Finite(p2.clone()));
    let g = median3(p.z.val()?.add_finite(&q2.min0()), p1, p2);
    let fin = |e: ExtScalar<S>| e.into_finite().ok_or_else(|| BsideError::Domain("F is not finite".into()));
    Ok([fin(f1)?, fin(f2)?, fin(g)?, q1, q2])
}

/// f = j⁻¹ ∘ F on 𝒴 = {val x₂ > 0}.
pub fn f_map<S: Scalar>(atlas: &ChartAtlas<S>, p: &YPoint<S>) -> Result<BasePoint<S>, BsideError> {
    if !(p.x2.val()? > ExtScalar::Finite(S::zero())) {
        return Err(GeometryError::NotInImage.into());
    }
    Ok(atlas.j_inverse(&f_image(atlas, p)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothness {
    Smooth,
    Singular,
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothness::Smooth => "smooth",
            Smoothness::Singular => "singular",
        })
    }
}

/// Singular exactly on Δ̂ = {(A′(0,q₂), 0, q₂)} ∪ {(A(q₁,0), q₁, 0)}.
pub fn classify_smooth<S: Scalar>(atlas: &ChartAtlas<S>, p: &FImagePoint<S>) -> Result<Smoothness, BsideError> {
    let [u1, u2, v, q1, q2] = p.clone();
    let line = atlas.broken_line(q1.clone(), q2.clone());
    let u = [u1, u2, v];
    if line.locate_real(&u).is_none() {
        return Err(BsideError::Domain("point is not on the broken line of its slice".into()));
    }
    let on_a_prime = q1.is_zero_s() && u == line.corner_a_prime();
    let on_a = q2.is_zero_s() && u == line.corner_a();
    Ok(if on_a_prime || on_a { Smoothness::Singular } else { Smoothness::Smooth })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base_geometry::{RationalPsi, WallConfig};
    use crate::novikov::{GaussRat, Rational};

    type N = NovikovNum<Rational>;

    fn atlas() -> ChartAtlas<Rational> {
        ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn s(x: &str) -> N {
        x.parse().unwrap()
    }

    fn c1_point(y2: N) -> YPoint<Rational> {
        YPoint {
            x1: N::zero(),
            x2: N::zero(),
            z: ProjValue::zero(),
            y1: N::constant(GaussRat::from_int(-1)),
            y2,
        }
    }

    fn c2_point(y1: N) -> YPoint<Rational> {
        YPoint {
            x1: N::zero(),
            x2: N::zero(),
            z: ProjValue::infinity(),
            y1,
            y2: N::constant(GaussRat::from_int(-1)),
        }
    }

    fn five(xs: [i64; 5]) -> [Rational; 5] {
        xs.map(Rational::from_integer)
    }

    #[test]
    fn membership() {
        assert!(y_membership(&c1_point(s("1*T^-1"))).unwrap());
        let mut off = c1_point(s("1*T^-1"));
        off.y1 = s("-1 + 1*T^1");
        assert!(!y_membership(&off).unwrap());
        let generic = YPoint {
            x1: s("1 + 1*T^1"),
            x2: s("2*T^1"),
            z: ProjValue::affine(N::one()),
            y1: s("1*T^1"),
            y2: s("-1 + 2*T^1"),
        };
        assert!(y_membership(&generic).unwrap());
    }

    #[test]
    fn f_examples() {
        let a = atlas();
        assert_eq!(f_image(&a, &c1_point(s("1*T^-1"))).unwrap(), five([-3, 1, 2, 0, -1]));
        assert_eq!(f_image(&a, &c2_point(s("1*T^3"))).unwrap(), five([-2, 1, 1, 3, 0]));
        let generic = YPoint {
            x1: s("1*T^-1/2 + 1*T^3/2"),
            x2: s("1*T^1/2 + 1*T^7/2"),
            z: ProjValue::affine(s("1*T^1/2")),
            y1: s("1*T^2"),
            y2: s("1*T^3"),
        };
        assert!(y_membership(&generic).unwrap());
        let got = f_image(&a, &generic).unwrap();
        assert_eq!(got, [r("-2"), r("1/2"), r("1"), r("2"), r("3")]);
        let line = a.broken_line(r("2"), r("3"));
        assert_eq!(line.eval(&r("1/2")).unwrap(), [got[0].clone(), got[1].clone(), got[2].clone()]);
    }

    #[test]
    fn f_map_examples() {
        let a = atlas();
        assert_eq!(f_map(&a, &c1_point(s("1*T^-1"))).unwrap(), BasePoint::ints(0, -1, 1));
        assert_eq!(f_map(&a, &c2_point(s("1*T^3"))).unwrap(), BasePoint::ints(3, 0, 0));
        let outside = YPoint {
            x1: s("1"),
            x2: s("1"),
            z: ProjValue::affine(N::one()),
            y1: N::zero(),
            y2: N::zero(),
        };
        assert_eq!(f_map(&a, &outside), Err(BsideError::Geometry(GeometryError::NotInImage)));
    }

    #[test]
    fn classify_examples() {
        let a = atlas();
        assert_eq!(classify_smooth(&a, &five([-3, 1, 2, 0, -1])).unwrap(), Smoothness::Singular);
        assert_eq!(classify_smooth(&a, &five([-2, 1, 1, 3, 0])).unwrap(), Smoothness::Singular);
        assert_eq!(classify_smooth(&a, &five([-3, 1, 1, 0, -1])).unwrap(), Smoothness::Smooth);
        assert!(classify_smooth(&a, &five([-2, 1, 1, 0, -1])).is_err());
        assert_eq!(
            classify_smooth(&a, &[r("-2"), r("1/2"), r("1"), r("2"), r("3")]).unwrap(),
            Smoothness::Smooth
        );
    }
}
