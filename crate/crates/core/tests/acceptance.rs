//! Acceptance criteria 1–9. Run with
//! `cargo test -p conifold-syz --test acceptance -- --nocapture`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use conifold_syz::base_geometry::{ChartAtlas, DiskLattice, ExpPsi, RationalPsi, Side, WallConfig, CHARTS};
use conifold_syz::mirror_bside::{chart_facts, verify_diagram, verify_diagram_symbolic, verify_diagram_symbolic_with};
use conifold_syz::novikov::{Approx, ExtScalar, Rational, Scalar};
use conifold_syz::plcore::{AffineForm, Constraint};
use conifold_syz::report::SuiteReport;
use conifold_syz::suites::{
    aside_curves, aside_fibers, base_identities, classify_check, curves_to_delta, gluing_identities,
    image_slices, j_of_b, lattice_checks, novikov_laws, suite_rng,
};
use conifold_syz::aside::ASide;

const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;

fn require(r: &SuiteReport, at_least: usize) -> Outcome {
    if !r.success() {
        return Err(format!("{}: {:?}", r.summary(), r.first_failures));
    }
    if r.samples_or_cells < at_least {
        return Err(format!("{}: only {} checks, need {at_least}", r.suite, r.samples_or_cells));
    }
    Ok(format!("{} {}", r.suite, r.samples_or_cells))
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join(", "))
}

fn exact_atlas() -> ChartAtlas<Rational> {
    ChartAtlas::new(WallConfig::standard(), Arc::new(RationalPsi))
}

fn exp_atlas() -> ChartAtlas<Approx> {
    ChartAtlas::new(WallConfig::standard(), Arc::new(ExpPsi))
}

fn order<S: Scalar>() -> ExtScalar<S> {
    ExtScalar::Finite(S::from_int(12))
}

fn criterion_3<S: Scalar>(atlas: &ChartAtlas<S>, samples: usize) -> Outcome {
    let mut parts = Vec::new();
    for k in CHARTS {
        let r = verify_diagram(atlas, k, samples, &order(), &mut suite_rng(SEED, "diagram", k));
        let forced = r.notes.iter().any(|n| !n.contains(": 0"));
        parts.push(if forced { require(&r, samples) } else { Err(format!("chart {k}: no forced samples: {:?}", r.notes)) });
    }
    all(parts)
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for k in CHARTS {
        let r = verify_diagram_symbolic(k).map_err(|e| e.to_string())?;
        if !r.success() || !r.warnings.is_empty() || r.cells_checked < 9 {
            return Err(format!("chart {k}: {} cells, failures {:?}, warnings {:?}", r.cells_checked, r.failures, r.warnings));
        }
        parts.push(Ok(format!("chart {k} {} cells", r.cells_checked)));
    }
    let p = AffineForm::var("P");
    let p2 = AffineForm::var("P2");
    let vacuous = move |k: usize, a: bool, b: bool| {
        let mut f = chart_facts(k, a, b);
        f.push(Constraint::lt(&p, &p2));
        f
    };
    let r = verify_diagram_symbolic_with(1, &vacuous).map_err(|e| e.to_string())?;
    if r.warnings.iter().all(|w| w != "no feasible cells") {
        return Err("injected contradiction was not flagged".into());
    }
    let (p, p2) = (AffineForm::var("P"), AffineForm::var("P2"));
    let flipped = move |k: usize, a: bool, b: bool| {
        let mut f = chart_facts(k, a, false);
        if b {
            f.push(Constraint::lt(&p, &p2));
        }
        f
    };
    let r = verify_diagram_symbolic_with(2, &flipped).map_err(|e| e.to_string())?;
    if r.success() {
        return Err("corrupted chart-2 fact went undetected".into());
    }
    parts.push(Ok("negative controls detected".into()));
    all(parts)
}

fn criterion_5<S: Scalar>(atlas: &ChartAtlas<S>) -> Outcome {
    let slices = image_slices(atlas, 1200, &order(), &mut suite_rng(SEED, "slices", 0));
    let classify = classify_check(atlas, 10_000, &mut suite_rng(SEED, "classify", 0));
    let singular_seen = classify.notes.iter().any(|n| !n.starts_with("singular samples: 0"));
    let jb = j_of_b(atlas, 10_000, &order(), &mut suite_rng(SEED, "j-of-b", 0));
    all(vec![
        require(&slices, 1200),
        if singular_seen { require(&classify, 10_000) } else { Err("no singular samples".into()) },
        require(&jb, 20_000),
    ])
}

fn criterion_6<S: Scalar>(atlas: &ChartAtlas<S>) -> Outcome {
    let curves = curves_to_delta(atlas, 1000, &mut suite_rng(SEED, "curves", 0));
    let side = ASide::from_walls(atlas.walls());
    let chat = aside_curves(&side, 1000, &mut suite_rng(SEED, "chat", 0));
    all(vec![require(&curves, 2000), require(&chat, 2000)])
}

fn criterion_8() -> Outcome {
    let atlas = exact_atlas();
    let base = base_identities(&atlas, 100_000, &mut suite_rng(SEED, "base", 0));
    let lattice = lattice_checks(&atlas, 1000, &mut suite_rng(SEED, "lattice", 0));
    let corrupted = DiskLattice::standard().with_transition(1, 2, Side::Minus, [[1, 0, 0], [0, 1, 0], [0, 1, 1]]).check();
    let control = if corrupted.ok { Err("corrupted transition passed the disk lattice".into()) } else { Ok("corrupted lattice rejected".into()) };
    all(vec![require(&base, 200_000), require(&lattice, 1000), control])
}

#[test]
fn acceptance_criteria() {
    let exact = exact_atlas();
    let float = exp_atlas();
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 novikov arithmetic laws", 5, Box::new(|| require(&novikov_laws::<Rational, _>(10_000, &order(), &mut suite_rng(SEED, "novikov", 0)), 30_000))),
        ("2 gluing identities", 5, Box::new(|| require(&gluing_identities::<Rational, _>(1000, &order(), &mut suite_rng(SEED, "gluing", 0)), 4000))),
        ("3 randomized diagram", 60, Box::new(|| criterion_3(&exact, 100_000))),
        ("4 symbolic diagram", 10, Box::new(criterion_4)),
        ("5 image slices and classification", 30, Box::new(|| criterion_5(&exact))),
        ("6 curves onto the discriminant", 10, Box::new(|| criterion_6(&exact))),
        ("7 A-side fibration", 10, Box::new(|| require(&aside_fibers(&ASide::new(1.0, 0.0), 10_000, &mut suite_rng(SEED, "aside", 0)), 40_000))),
        ("8 base geometry", 10, Box::new(criterion_8)),
        ("9 exp model in float mode", 90, Box::new(|| {
            all(vec![criterion_3(&float, 100_000), criterion_4(), criterion_5(&float), criterion_6(&float)])
        })),
    ];
    let mut failed = Vec::new();
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match (&outcome, took <= Duration::from_secs(*budget)) {
            (Ok(_), true) => "PASS",
            _ => "FAIL",
        };
        let detail = match &outcome {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!("{verdict} criterion {name} ({:.2} s of {budget} s): {detail}", took.as_secs_f64());
        if verdict == "FAIL" {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
