use rand::Rng;

use crate::base_geometry::ChartAtlas;
use crate::novikov::{ExtScalar, Scalar};
use crate::report::{SuiteReport, Tally};

use super::charts::{g_glued, tau_base, MirrorPoint};
use super::sampling::sample_chart_point;
use super::{f_image, y_membership, BsideError, FImagePoint};

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramOutcome<S> {
    pub membership: bool,
    pub lhs: FImagePoint<S>,
    pub rhs: FImagePoint<S>,
}

impl<S: PartialEq> DiagramOutcome<S> {
    pub fn ok(&self) -> bool {
        self.membership && self.lhs == self.rhs
    }
}

/// Evaluates both composites F∘g and j∘π₀∨ at one mirror point.
pub fn check_diagram_point<S: Scalar>(
    atlas: &ChartAtlas<S>,
    m: &MirrorPoint<S>,
    order: &ExtScalar<S>,
) -> Result<DiagramOutcome<S>, BsideError> {
    let y = g_glued(m, order)?;
    let membership = y_membership(&y)?;
    let lhs = f_image(atlas, &y)?;
    let rhs = atlas.j_embed(&tau_base(atlas, m)?);
    Ok(DiagramOutcome { membership, lhs, rhs })
}

fn show<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// F∘g = j∘π₀∨ on `samples` random points of chart `k`.
pub fn verify_diagram<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    k: usize,
    samples: usize,
    order: &ExtScalar<S>,
    rng: &mut R,
) -> SuiteReport {
    let mut tally = Tally::new("diagram", Some(k));
    let (mut forced_q1, mut forced_q2, mut minus_one) = (0, 0, 0);
    for _ in 0..samples {
        let m = sample_chart_point(k, rng, atlas);
        let lead_minus_one = |i: usize| {
            m.y[i].leading().is_some_and(|t| t.exp.is_zero_s() && t.coeff == crate::novikov::GaussRat::from_int(-1))
        };
        if m.y[0].leading().is_some_and(|t| t.exp.is_zero_s()) {
            forced_q1 += 1;
        }
        if m.y[1].leading().is_some_and(|t| t.exp.is_zero_s()) {
            forced_q2 += 1;
        }
        if lead_minus_one(0) || lead_minus_one(1) {
            minus_one += 1;
        }
        match check_diagram_point(atlas, &m, order) {
            Ok(out) => tally.record(out.ok(), || {
                format!(
                    "{m:?}: membership {}, F(g) = {}, j(tau) = {}",
                    out.membership,
                    show(&out.lhs),
                    show(&out.rhs)
                )
            }),
            Err(e) => tally.fail(format!("{m:?}: {e}")),
        }
    }
    tally.note(format!("q1 = 0 samples: {forced_q1}, q2 = 0 samples: {forced_q2}, leading -1 samples: {minus_one}"));
    tally.finish()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::base_geometry::{RationalPsi, WallConfig};
    use crate::novikov::{NovikovNum, Rational};

    fn atlas() -> ChartAtlas<Rational> {
        ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
    }

    fn order() -> ExtScalar<Rational> {
        ExtScalar::Finite(Rational::from_integer(12))
    }

    fn mp(k: usize, ys: [&str; 3]) -> MirrorPoint<Rational> {
        MirrorPoint { chart: k, y: ys.map(|s| s.parse::<NovikovNum<Rational>>().unwrap()) }
    }

    #[test]
    fn hand_examples() {
        let a = atlas();
        let out = check_diagram_point(&a, &mp(3, ["1*T^1", "1*T^1", "1*T^1/2"]), &order()).unwrap();
        let want = ["-2", "1/2", "1", "1", "1"].map(|s| s.parse::<Rational>().unwrap());
        assert_eq!(out.lhs, want);
        assert!(out.ok());
        assert!(check_diagram_point(&a, &mp(1, ["1*T^-1", "1*T^2", "1*T^5"]), &order()).unwrap().ok());
        let out = check_diagram_point(&a, &mp(2, ["1*T^1", "-1 + 1*T^1/2", "1*T^3/2"]), &order()).unwrap();
        assert!(out.ok(), "{out:?}");
    }

    #[test]
    fn random_points_pass() {
        let a = atlas();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in [1, 2, 3] {
            let r = verify_diagram(&a, k, 500, &order(), &mut rng);
            assert!(r.success(), "{:?}", r.first_failures);
        }
    }
}
