use std::sync::Arc;

use crate::novikov::Scalar;

use super::lattice::Side;
use super::psi::PsiModel;
use super::{delta_contains, BasePoint, DeltaComponent, GeometryError, WallConfig};

pub const CHARTS: [usize; 3] = [1, 2, 3];

/// The atlas U₁, U₂, U₃ of B₀ = ℝ³ ∖ Δ with coordinates χ_k.
///
/// Tubes around the walls are wedges
/// 𝒩_{i±} = {|q₃ − w_i| < δ, ±q_i > |q₃ − w_i|}, which reach the wall
/// everywhere off Δ.
#[derive(Clone)]
pub struct ChartAtlas<S: Scalar> {
    walls: WallConfig<S>,
    psi: Arc<dyn PsiModel<S>>,
    p1: S,
    p2: S,
}

impl<S: Scalar> ChartAtlas<S> {
    pub fn new(walls: WallConfig<S>, psi: Arc<dyn PsiModel<S>>) -> Self {
        let at = |w: &S| psi.sigma(&BasePoint::new(S::zero(), S::zero(), w.clone()));
        let p1 = at(&walls.w1);
        let p2 = at(&walls.w2);
        ChartAtlas { walls, psi, p1, p2 }
    }

    pub fn walls(&self) -> &WallConfig<S> {
        &self.walls
    }

    pub fn psi_model_name(&self) -> &'static str {
        self.psi.name()
    }

    /// ψ^{(1)} = ψ(·, ·, w₁).
    pub fn p1(&self) -> &S {
        &self.p1
    }

    /// ψ^{(2)} = ψ(·, ·, w₂).
    pub fn p2(&self) -> &S {
        &self.p2
    }

    pub fn psi_eval(&self, q: &BasePoint<S>) -> S {
        self.psi.sigma(q)
    }

    pub fn psi_inv(&self, q1: &S, q2: &S, v: &S) -> Result<S, GeometryError> {
        self.psi.sigma_inv(q1, q2, v)
    }

    pub fn delta_contains(&self, q: &BasePoint<S>) -> Option<DeltaComponent> {
        delta_contains(&self.walls, q)
    }

    /// The side of the tube 𝒩_{i±} containing `q`, if any.
    pub fn tube_side(&self, i: usize, q: &BasePoint<S>) -> Option<Side> {
        let (w, qi) = if i == 1 { (&self.walls.w1, &q.q1) } else { (&self.walls.w2, &q.q2) };
        let d = q.q3.clone() - w.clone();
        let ad = if d < S::zero() { -d } else { d };
        if !(ad < self.walls.delta) {
            return None;
        }
        if *qi > ad {
            Some(Side::Plus)
        } else if *qi < -ad {
            Some(Side::Minus)
        } else {
            None
        }
    }

    pub fn contains(&self, k: usize, q: &BasePoint<S>) -> bool {
        let w = &self.walls;
        match k {
            1 => q.q3 > w.w1 || self.tube_side(1, q).is_some(),
            2 => (q.q3 > w.w2 && q.q3 < w.w1) || self.tube_side(2, q).is_some(),
            3 => q.q3 < w.w2,
            _ => false,
        }
    }

    /// Charts containing `q`, in increasing order.
    pub fn charts_of(&self, q: &BasePoint<S>) -> Vec<usize> {
        super::CHARTS.into_iter().filter(|&k| self.contains(k, q)).collect()
    }

    /// The amount subtracted from ψ in chart k: ψ_k = ψ − correction.
    fn correction(k: usize, q1: &S, q2: &S) -> S {
        match k {
            1 => q1.min0() + q2.min0(),
            2 => q2.min0(),
            _ => S::zero(),
        }
    }

    fn check_chart(k: usize) -> Result<(), GeometryError> {
        if (1..=3).contains(&k) {
            Ok(())
        } else {
            Err(GeometryError::Domain(format!("no chart U{k}")))
        }
    }

    /// χ_k(q) = (q₁, q₂, ψ_k(q)).
    pub fn chart_map(&self, k: usize, q: &BasePoint<S>) -> Result<[S; 3], GeometryError> {
        Self::check_chart(k)?;
        if !self.contains(k, q) {
            return Err(GeometryError::Domain(format!("{q} is not in U{k}")));
        }
        let psi_k = self.psi_eval(q) - Self::correction(k, &q.q1, &q.q2);
        Ok([q.q1.clone(), q.q2.clone(), psi_k])
    }

    pub fn chart_unmap(&self, k: usize, c: &[S; 3]) -> Result<BasePoint<S>, GeometryError> {
        Self::check_chart(k)?;
        let [q1, q2, s] = c.clone();
        let psi = s + Self::correction(k, &q1, &q2);
        let q3 = self
            .psi_inv(&q1, &q2, &psi)
            .map_err(|_| GeometryError::Domain(format!("({}, {}, {}) is not in chi_{k}(U{k})", c[0], c[1], c[2])))?;
        let q = BasePoint::new(q1, q2, q3);
        if !self.contains(k, &q) {
            return Err(GeometryError::Domain(format!(
                "({}, {}, {}) is not in chi_{k}(U{k})",
                c[0], c[1], c[2]
            )));
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_geometry::RationalPsi;
    use crate::novikov::Rational;

    fn atlas() -> ChartAtlas<Rational> {
        ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
    }

    fn q(a: &str, b: &str, c: &str) -> BasePoint<Rational> {
        BasePoint::new(a.parse().unwrap(), b.parse().unwrap(), c.parse().unwrap())
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn chart_map_examples() {
        let a = atlas();
        assert_eq!(a.chart_map(3, &q("0", "0", "-1")).unwrap(), [r("0"), r("0"), r("1/2")]);
        assert_eq!(a.chart_map(2, &q("1", "-2", "1/2")).unwrap(), [r("1"), r("-2"), r("7/2")]);
        assert_eq!(a.chart_map(1, &q("-1", "2", "3")).unwrap(), [r("-1"), r("2"), r("5")]);
        assert!(a.chart_map(3, &q("0", "0", "1")).is_err());
    }

    #[test]
    fn unmap_inverts() {
        let a = atlas();
        assert_eq!(a.chart_unmap(3, &[r("0"), r("0"), r("1/2")]).unwrap(), q("0", "0", "-1"));
        assert_eq!(a.chart_unmap(2, &[r("1"), r("-2"), r("7/2")]).unwrap(), q("1", "-2", "1/2"));
        assert_eq!(a.chart_unmap(1, &[r("-1"), r("2"), r("5")]).unwrap(), q("-1", "2", "3"));
        assert!(a.chart_unmap(3, &[r("0"), r("0"), r("2")]).is_err());
    }

    #[test]
    fn wall_points_off_delta_are_covered() {
        let a = atlas();
        assert!(a.contains(1, &q("1/100", "0", "1")));
        assert!(a.contains(2, &q("5", "-1/100", "0")));
        assert!(a.charts_of(&q("0", "3", "1")).is_empty());
        assert!(a.charts_of(&q("3", "0", "0")).is_empty());
        assert_eq!(a.charts_of(&q("1", "1", "9/10")), vec![1, 2]);
        assert_eq!(a.tube_side(1, &q("-1", "1", "9/10")), Some(Side::Minus));
    }

    #[test]
    fn psi_ordering() {
        let a = atlas();
        assert_eq!(*a.p1(), r("2"));
        assert_eq!(*a.p2(), r("1"));
    }
}
