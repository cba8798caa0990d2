use std::sync::Arc;

use proptest::prelude::*;

use conifold_syz::base_geometry::{transition, BasePoint, ChartAtlas, RationalPsi, Side, WallConfig, CHARTS};
use conifold_syz::mirror_bside::{classify_smooth, Smoothness};
use conifold_syz::novikov::Rational;

fn atlas() -> ChartAtlas<Rational> {
    ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
}

fn coord() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(Rational::zero()),
        Just(Rational::one()),
        (-400i64..400, 1i64..60).prop_map(|(n, d)| Rational::new(n, d)),
    ]
}

fn base() -> impl Strategy<Value = BasePoint<Rational>> {
    (coord(), coord(), coord()).prop_map(|(a, b, c)| BasePoint::new(a, b, c))
}

proptest! {
    #[test]
    fn j_round_trips(q in base()) {
        let a = atlas();
        prop_assert_eq!(a.j_inverse(&a.j_embed(&q)).unwrap(), q);
    }

    #[test]
    fn j_is_injective(p in base(), q in base()) {
        let a = atlas();
        prop_assert_eq!(a.j_embed(&p) == a.j_embed(&q), p == q);
    }

    #[test]
    fn charts_cover_and_invert(q in base()) {
        let a = atlas();
        let charts = a.charts_of(&q);
        if a.delta_contains(&q).is_none() {
            prop_assert!(!charts.is_empty());
        }
        for k in charts {
            let c = a.chart_map(k, &q).unwrap();
            prop_assert_eq!(a.chart_unmap(k, &c).unwrap(), q.clone());
        }
    }

    #[test]
    fn transitions_match_chart_maps(q in base()) {
        let a = atlas();
        for from in CHARTS {
            for to in CHARTS {
                let (Ok(x), Ok(y)) = (a.chart_map(from, &q), a.chart_map(to, &q)) else { continue };
                if from == to || from.abs_diff(to) != 1 {
                    continue;
                }
                let side = a.tube_side(from.min(to), &q).unwrap_or(Side::Plus);
                prop_assert_eq!(transition(from, to, side).unwrap().apply(&x), y);
            }
        }
    }

    #[test]
    fn singular_exactly_on_delta(q in base()) {
        let a = atlas();
        let want = if a.delta_contains(&q).is_some() { Smoothness::Singular } else { Smoothness::Smooth };
        prop_assert_eq!(classify_smooth(&a, &a.j_embed(&q)).unwrap(), want);
    }
}
