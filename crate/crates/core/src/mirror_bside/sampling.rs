use rand::seq::index::sample as sample_indices;
use rand::Rng;

use crate::base_geometry::{BasePoint, ChartAtlas};
use crate::novikov::{GaussRat, NovikovNum, ProjValue, Rational, Scalar, Term};

use super::charts::MirrorPoint;
use super::YPoint;

/// Half-width of the sampling box, in eighths.
const BOX_EIGHTHS: i64 = 24;

/// A coefficient from {±1, ±1±i, 2, 1/2}.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R) -> GaussRat {
    let r = |n: i64, d: i64| Rational::new(n, d);
    let (re, im) = match rng.gen_range(0..8) {
        0 => (r(1, 1), r(0, 1)),
        1 => (r(-1, 1), r(0, 1)),
        2 => (r(1, 1), r(1, 1)),
        3 => (r(1, 1), r(-1, 1)),
        4 => (r(-1, 1), r(1, 1)),
        5 => (r(-1, 1), r(-1, 1)),
        6 => (r(2, 1), r(0, 1)),
        _ => (r(1, 2), r(0, 1)),
    };
    GaussRat::new(re, im)
}

/// An exact series `lead·T^val + (0–3 tail terms at val + k/4, 1 ≤ k ≤ 12)`.
pub fn sample_unit_series<S: Scalar, R: Rng + ?Sized>(rng: &mut R, val: &S, lead: GaussRat) -> NovikovNum<S> {
    let tail = rng.gen_range(0..=3);
    let mut terms = vec![Term::new(lead, val.clone())];
    for k in sample_indices(rng, 12, tail) {
        let offset = S::from_ratio(k as i64 + 1, 4);
        terms.push(Term::new(random_coeff(rng), val.clone() + offset));
    }
    NovikovNum::from_terms(terms, crate::novikov::ExtScalar::PosInf)
}

fn grid<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    S::from_ratio(rng.gen_range(-BOX_EIGHTHS..=BOX_EIGHTHS), 8)
}

/// A base point of U_k on the 1/8-grid, with q₁ = 0 and q₂ = 0 each forced
/// with probability 1/4.
pub fn sample_q<S: Scalar, R: Rng + ?Sized>(k: usize, rng: &mut R, atlas: &ChartAtlas<S>) -> BasePoint<S> {
    loop {
        let q1 = if rng.gen_bool(0.25) { S::zero() } else { grid(rng) };
        let q2 = if rng.gen_bool(0.25) { S::zero() } else { grid(rng) };
        let q = BasePoint::new(q1, q2, grid(rng));
        if atlas.contains(k, &q) {
            return q;
        }
    }
}

fn lead_for<S: Scalar, R: Rng + ?Sized>(rng: &mut R, q: &S) -> GaussRat {
    if q.is_zero_s() && rng.gen_bool(0.5) {
        GaussRat::from_int(-1)
    } else {
        random_coeff(rng)
    }
}

/// A random point of T_k with trop(y) = χ_k(q) for a sampled q ∈ U_k.
pub fn sample_chart_point<S: Scalar, R: Rng + ?Sized>(k: usize, rng: &mut R, atlas: &ChartAtlas<S>) -> MirrorPoint<S> {
    let q = sample_q(k, rng, atlas);
    let c = atlas.chart_map(k, &q).expect("sampled inside the chart");
    let l1 = lead_for(rng, &c[0]);
    let y1 = sample_unit_series(rng, &c[0], l1);
    let l2 = lead_for(rng, &c[1]);
    let y2 = sample_unit_series(rng, &c[1], l2);
    let l3 = random_coeff(rng);
    let y3 = sample_unit_series(rng, &c[2], l3);
    MirrorPoint { chart: k, y: [y1, y2, y3] }
}

/// A point of C₁ = {x = 0, z = 0, y₁ = −1} or C₂ = {x = 0, z = ∞, y₂ = −1}
/// with the free coordinate of grid valuation.
pub fn sample_c<S: Scalar, R: Rng + ?Sized>(i: usize, rng: &mut R) -> YPoint<S> {
    let v: S = grid(rng);
    let lead = random_coeff(rng);
    let free = sample_unit_series(rng, &v, lead);
    let minus_one = NovikovNum::constant(GaussRat::from_int(-1));
    let (z, y1, y2) = if i == 1 {
        (ProjValue::zero(), minus_one, free)
    } else {
        (ProjValue::infinity(), free, minus_one)
    };
    YPoint { x1: NovikovNum::zero(), x2: NovikovNum::zero(), z, y1, y2 }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::base_geometry::{RationalPsi, WallConfig};
    use crate::mirror_bside::{f_image, tau_base, y_membership};

    fn atlas() -> ChartAtlas<Rational> {
        ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
    }

    #[test]
    fn chart_samples_respect_charts() {
        let a = atlas();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in [1, 2, 3] {
            for _ in 0..300 {
                let m = sample_chart_point(k, &mut rng, &a);
                let q = tau_base(&a, &m).unwrap();
                assert!(a.contains(k, &q));
                if k == 3 {
                    assert!(q.q3 < Rational::zero());
                }
                if k == 1 && q.q1.is_zero() {
                    assert!(q.q3 > Rational::one());
                }
            }
        }
    }

    #[test]
    fn c_samples_map_to_corners() {
        let a = atlas();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let p: YPoint<Rational> = sample_c(1, &mut rng);
            assert!(y_membership(&p).unwrap());
            let f = f_image(&a, &p).unwrap();
            let line = a.broken_line(f[3].clone(), f[4].clone());
            assert_eq!(line.corner_a_prime().to_vec(), f[..3].to_vec());
        }
        let mut p: YPoint<Rational> = sample_c(1, &mut rng);
        p.y2 = "1*T^-1".parse().unwrap();
        let want = [-3, 1, 2, 0, -1].map(Rational::from_integer);
        assert_eq!(f_image(&a, &p).unwrap(), want);
    }
}
