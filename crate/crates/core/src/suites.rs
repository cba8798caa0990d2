//! The verification suites behind `verify` and the acceptance tests.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aside::{max_abs_diff, rotate, ASide, EXACT_TOL, TOL};
use crate::base_geometry::{
    monodromy, transition, BasePoint, ChartAtlas, DeltaComponent, DiskLattice, Segment, Side, CHARTS,
};
use crate::config::{ConfigError, RunConfig};
use crate::mirror_bside::{
    classify_smooth, f_image, f_map, g_k, image_slice_check, phi12, phi23, preimage_of_base_point, random_coeff,
    sample_c, sample_unit_series, sample_y_point, superpotential, verify_diagram, verify_diagram_symbolic,
    y_membership, Smoothness, Triple,
};
use crate::novikov::{ExtScalar, Mode, NovikovNum, Scalar};
use crate::report::{SuiteReport, Tally, MAX_FAILURES, SCHEMA};

pub const SUITES: [&str; 7] = ["novikov", "gluing", "diagram", "symbolic", "aside", "images", "locus"];

/// Representative (q₁, q₂) for the four slice cases, plus a negative pair.
pub const SLICE_REPS: [(i64, i64); 6] = [(2, 3), (-1, 2), (0, -1), (3, 0), (0, 0), (-2, -1)];

/// The generator for one suite and chart, derived from the run seed.
pub fn suite_rng(seed: u64, suite: &str, chart: usize) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes().chain(std::iter::once(chart as u8)) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Runs one named suite (or `all`) under `cfg`.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<SuiteReport>, ConfigError> {
    cfg.validate()?;
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(ConfigError(format!("unknown suite `{s}`"))),
    };
    let mut out = Vec::new();
    for n in names {
        out.extend(match cfg.mode {
            Mode::Exact => run_in(n, &cfg.exact_atlas()?, cfg),
            Mode::Float => run_in(n, &cfg.float_atlas()?, cfg),
        });
    }
    Ok(out)
}

fn run_in<S: Scalar>(name: &str, atlas: &ChartAtlas<S>, cfg: &RunConfig) -> Vec<SuiteReport> {
    let n = cfg.samples;
    let order = cfg.order::<S>();
    let rng = |chart: usize| suite_rng(cfg.seed, name, chart);
    match name {
        "novikov" => vec![novikov_laws::<S, _>(n, &order, &mut rng(0))],
        "gluing" => vec![gluing_identities::<S, _>(n, &order, &mut rng(0))],
        "diagram" => CHARTS.iter().map(|&k| verify_diagram(atlas, k, n, &order, &mut rng(k))).collect(),
        "symbolic" => CHARTS.iter().map(|&k| symbolic_report(k)).collect(),
        "aside" => vec![aside_fibers(&ASide::from_walls(atlas.walls()), n, &mut rng(0))],
        "images" => images(atlas, n, &order, &mut rng(0)),
        "locus" => locus(atlas, n, &mut rng(0)),
        _ => unreachable!("suite names are checked by run_suite"),
    }
}

fn grid<S: Scalar, R: Rng + ?Sized>(rng: &mut R, eighths: i64) -> S {
    S::from_ratio(rng.gen_range(-eighths..=eighths), 8)
}

/// A base point on the 1/8 grid in [−3, 3]³ that lands on q_i = 0 and on
/// the wall heights more often than chance.
pub fn sample_base<S: Scalar, R: Rng + ?Sized>(atlas: &ChartAtlas<S>, rng: &mut R) -> BasePoint<S> {
    let coord = |rng: &mut R| if rng.gen_bool(0.25) { S::zero() } else { grid(rng, 24) };
    let q1 = coord(rng);
    let q2 = coord(rng);
    let q3 = match rng.gen_range(0..6) {
        0 => atlas.walls().w1.clone(),
        1 => atlas.walls().w2.clone(),
        _ => grid(rng, 24),
    };
    BasePoint::new(q1, q2, q3)
}

fn random_series<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> NovikovNum<S> {
    let v = grid(rng, 24);
    let lead = random_coeff(rng);
    sample_unit_series(rng, &v, lead)
}

/// val(ab) = val a + val b, the ultrametric inequality and inversion.
pub fn novikov_laws<S: Scalar, R: Rng + ?Sized>(samples: usize, order: &ExtScalar<S>, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("novikov", None);
    for _ in 0..samples {
        let a: NovikovNum<S> = random_series(rng);
        let mut b: NovikovNum<S> = random_series(rng);
        if rng.gen_bool(0.1) {
            b = -&a;
        }
        let (va, vb) = (a.val().unwrap(), b.val().unwrap());
        let prod = (&a * &b).val();
        tally.record(prod.as_ref().ok() == va.checked_add(&vb).ok().as_ref(), || {
            format!("val({a} * {b}) = {prod:?}, expected {va:?} + {vb:?}")
        });
        let sum = (&a + &b).val().unwrap();
        let lo = va.clone().min(vb.clone());
        let ok = if va != vb { sum == lo } else { sum >= lo };
        tally.record(ok, || format!("val({a} + {b}) = {sum:?}, min = {lo:?}"));
        let inv = a.inv(order);
        let ok = inv.as_ref().is_ok_and(|i| {
            let r = &(&a * i) - &NovikovNum::one();
            r.is_zero_to_trunc() && r.trunc() >= order
        });
        tally.record(ok, || format!("{a} * inv - 1 has terms below {order:?}"));
    }
    tally.finish()
}

fn random_triple<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Triple<S> {
    let y = |rng: &mut R| loop {
        let v = if rng.gen_bool(0.3) { S::zero() } else { grid(rng, 24) };
        let lead = if v.is_zero_s() && rng.gen_bool(0.5) { crate::novikov::GaussRat::from_int(-1) } else { random_coeff(rng) };
        let s = sample_unit_series(rng, &v, lead);
        if !s.one_plus().is_exact_zero() {
            return s;
        }
    };
    [y(rng), y(rng), y(rng)]
}

/// 𝒲₁ = 𝒲₂∘Φ₁₂, 𝒲₂ = 𝒲₃∘Φ₂₃, g₂∘Φ₁₂ = g₁ and g₃∘Φ₂₃ = g₂.
pub fn gluing_identities<S: Scalar, R: Rng + ?Sized>(samples: usize, order: &ExtScalar<S>, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("gluing", None);
    for _ in 0..samples {
        let y = random_triple::<S, _>(rng);
        let (a, b) = (phi12(&y), phi23(&y));
        tally.record(superpotential(1, &y) == superpotential(2, &a), || format!("W1 != W2 o Phi12 at {y:?}"));
        tally.record(superpotential(2, &y) == superpotential(3, &b), || format!("W2 != W3 o Phi23 at {y:?}"));
        for (lhs, rhs, what) in [(g_k(2, &a, order), g_k(1, &y, order), "g2 o Phi12 != g1"), (g_k(3, &b, order), g_k(2, &y, order), "g3 o Phi23 != g2")] {
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l.agrees_with(r));
            tally.record(ok, || format!("{what} at {y:?}"));
        }
    }
    tally.finish()
}

/// The symbolic proof of F∘g_k = j∘π₀∨ as a suite report.
pub fn symbolic_report(chart: usize) -> SuiteReport {
    let start = Instant::now();
    let (checked, passed, mut failures, mut notes) = match verify_diagram_symbolic(chart) {
        Ok(r) => {
            let fails: Vec<String> = r
                .failures
                .iter()
                .map(|f| format!("{}: {} != {}", f.cell.join(", "), f.lhs, f.rhs))
                .chain(r.warnings.iter().cloned())
                .collect();
            (r.cells_checked, r.cells_passed, fails, vec![format!("feasible cells: {}", r.cells_checked)])
        }
        Err(e) => (0, 0, vec![e.to_string()], Vec::new()),
    };
    let failed = checked - passed + usize::from(checked == 0);
    failures.truncate(MAX_FAILURES);
    notes.retain(|_| checked > 0);
    SuiteReport {
        schema: SCHEMA,
        suite: "symbolic".into(),
        chart: Some(chart),
        samples_or_cells: checked,
        passed,
        failed,
        first_failures: failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        notes,
    }
}

fn angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..2.0 * PI)
}

/// Fiber parameterization, π-roundtrip, T²-invariance and divisor images.
pub fn aside_fibers<R: Rng + ?Sized>(side: &ASide, samples: usize, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("aside", None);
    for _ in 0..samples {
        let q = [0, 1, 2].map(|_| rng.gen_range(-3.0..3.0));
        let p = side.fiber_point(q, angle(rng), angle(rng), angle(rng));
        let (r1, r2) = side.residuals(&p);
        tally.record(r1.max(r2) <= TOL, || format!("fiber over {q:?}: residuals ({r1:e}, {r2:e})"));
        match side.pi_map(&p) {
            Ok(back) => {
                let err = max_abs_diff(&back, &q);
                tally.record(err <= TOL, || format!("pi(fiber({q:?})) off by {err:e}"));
                let rot = side.pi_map(&rotate(&p, angle(rng), angle(rng)));
                let drift = rot.map(|r| max_abs_diff(&r, &back)).unwrap_or(f64::INFINITY);
                tally.record(drift <= EXACT_TOL, || format!("T2 action moves pi by {drift:e} over {q:?}"));
            }
            Err(e) => tally.fail(format!("pi(fiber({q:?})): {e}")),
        }
        let i = rng.gen_range(1..=2);
        let s = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
        let t = num_complex::Complex64::from_polar(rng.gen_range(0.1..3.0), angle(rng));
        let d = side.divisor_point(i, s, t, rng.gen_range(0.2..3.0), angle(rng));
        let ok = side.pi_map(&d).is_ok_and(|q| {
            let sign = if s == Side::Plus { 1.0 } else { -1.0 };
            (q[2] - side.w(i)).abs() <= TOL && sign * q[i - 1] >= -TOL
        });
        tally.record(ok, || format!("D{i}{s} point does not map into the closed wall"));
    }
    tally.finish()
}

/// Image slices, smooth/singular classification, j(B) = F(𝒴) and the
/// base-geometry identities of j.
pub fn images<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    samples: usize,
    order: &ExtScalar<S>,
    rng: &mut R,
) -> Vec<SuiteReport> {
    let mut out = vec![image_slices(atlas, samples, order, rng)];
    out.push(classify_check(atlas, samples, rng));
    out.push(j_of_b(atlas, samples, order, rng));
    out.push(base_identities(atlas, samples, rng));
    out
}

/// Both inclusions F(Y_{q₁,q₂}) = S_{q₁,q₂} over the slice representatives.
pub fn image_slices<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    samples: usize,
    order: &ExtScalar<S>,
    rng: &mut R,
) -> SuiteReport {
    let mut merged = Tally::new("images-slices", None).finish();
    let start = Instant::now();
    let per = samples.div_ceil(SLICE_REPS.len()).max(1);
    for (q1, q2) in SLICE_REPS {
        let r = image_slice_check(atlas, &S::from_int(q1), &S::from_int(q2), per, rng, order);
        merged.samples_or_cells += r.samples_or_cells;
        merged.passed += r.passed;
        merged.failed += r.failed;
        merged.first_failures.extend(r.first_failures);
        merged.notes.extend(r.notes);
    }
    merged.first_failures.truncate(MAX_FAILURES);
    merged.elapsed_ms = start.elapsed().as_millis() as u64;
    merged
}

/// Singular exactly on ĵ(Δ), smooth elsewhere on j(B).
pub fn classify_check<S: Scalar, R: Rng + ?Sized>(atlas: &ChartAtlas<S>, samples: usize, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("images-classify", None);
    let (mut singular, mut smooth) = (0, 0);
    for n in 0..samples {
        let mut q = sample_base(atlas, rng);
        if n % 10 == 0 {
            q = if rng.gen_bool(0.5) {
                BasePoint::new(S::zero(), grid(rng, 24), atlas.walls().w1.clone())
            } else {
                BasePoint::new(grid(rng, 24), S::zero(), atlas.walls().w2.clone())
            };
        }
        let want = if atlas.delta_contains(&q).is_some() { Smoothness::Singular } else { Smoothness::Smooth };
        let got = classify_smooth(atlas, &atlas.j_embed(&q));
        if want == Smoothness::Singular {
            singular += 1;
        } else {
            smooth += 1;
        }
        tally.record(got.as_ref() == Ok(&want), || format!("classify(j({q:?})) = {got:?}, expected {want}"));
    }
    tally.note(format!("singular samples: {singular}, smooth samples: {smooth}"));
    tally.finish()
}

/// j(B) ⊂ F(𝒴) through explicit preimages and F(𝒴) ⊂ j(B) on samples of 𝒴.
pub fn j_of_b<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    samples: usize,
    order: &ExtScalar<S>,
    rng: &mut R,
) -> SuiteReport {
    let mut tally = Tally::new("images-j-of-b", None);
    for _ in 0..samples {
        let q = sample_base(atlas, rng);
        let ok = preimage_of_base_point(atlas, &q, rng, order)
            .and_then(|p| Ok(y_membership(&p)? && f_image(atlas, &p)? == atlas.j_embed(&q)));
        tally.record(matches!(ok, Ok(true)), || format!("j({q:?}) has no preimage in Y: {ok:?}"));

        let (q1, q2) = (sample_base(atlas, rng).q1, sample_base(atlas, rng).q2);
        let ok = (|| loop {
            let p = sample_y_point(&q1, &q2, rng, order)?;
            if p.x2.val()? > ExtScalar::Finite(S::zero()) {
                let f = f_image(atlas, &p)?;
                let q = f_map(atlas, &p)?;
                return Ok::<_, crate::mirror_bside::BsideError>(y_membership(&p)? && atlas.j_embed(&q) == f);
            }
        })();
        tally.record(matches!(ok, Ok(true)), || format!("F(Y) point over ({q1}, {q2}) not in j(B): {ok:?}"));
    }
    tally.finish()
}

/// j⁻¹∘j = id, corner continuity of the broken lines, chart coverage.
pub fn base_identities<S: Scalar, R: Rng + ?Sized>(atlas: &ChartAtlas<S>, samples: usize, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("images-base", None);
    for _ in 0..samples {
        let q = sample_base(atlas, rng);
        let back = atlas.j_inverse(&atlas.j_embed(&q));
        tally.record(back.as_ref() == Ok(&q), || format!("j_inverse(j({q:?})) = {back:?}"));

        let line = atlas.broken_line(q.q1.clone(), q.q2.clone());
        let (p1, p2) = (line.p1.clone(), line.p2.clone());
        let ok = line.segment_eval(Segment::First, &p2) == line.segment_eval(Segment::Middle, &p2)
            && line.segment_eval(Segment::Middle, &p1) == line.segment_eval(Segment::Last, &p1)
            && line.eval_real(&p2) == line.corner_a()
            && line.eval_real(&p1) == line.corner_a_prime();
        tally.record(ok, || format!("broken line over ({}, {}) is discontinuous", q.q1, q.q2));

        if atlas.delta_contains(&q).is_none() {
            let charts = atlas.charts_of(&q);
            let ok = !charts.is_empty()
                && charts.iter().all(|&k| {
                    atlas.chart_map(k, &q).and_then(|c| atlas.chart_unmap(k, &c)).as_ref() == Ok(&q)
                });
            tally.record(ok, || format!("{q:?} is not covered by the atlas: {charts:?}"));
        }
    }
    tally.finish()
}

/// Base points of U_a ∩ U_b on the given side of the tube.
fn overlap_point<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    a: usize,
    b: usize,
    side: Side,
    rng: &mut R,
) -> BasePoint<S> {
    let i = a.min(b);
    loop {
        let w = atlas.walls().wall(i).clone();
        let d = atlas.walls().delta.clone() * S::from_ratio(rng.gen_range(-7..=7), 8);
        let qi = S::from_ratio(rng.gen_range(1..=24), 8) * if side == Side::Plus { S::one() } else { -S::one() };
        let other = grid(rng, 24);
        let q = if i == 1 { BasePoint::new(qi, other, w + d) } else { BasePoint::new(other, qi, w + d) };
        if atlas.contains(a, &q) && atlas.contains(b, &q) && atlas.tube_side(i, &q) == Some(side) {
            return q;
        }
    }
}

/// f(C_i) = Δ_i, π(Ĉ_i) ⊂ Δ_i with coverage, j(Δ), transitions,
/// monodromy and the disk-class lattice.
pub fn locus<S: Scalar, R: Rng + ?Sized>(atlas: &ChartAtlas<S>, samples: usize, rng: &mut R) -> Vec<SuiteReport> {
    vec![
        curves_to_delta(atlas, samples, rng),
        aside_curves(&ASide::from_walls(atlas.walls()), samples, rng),
        lattice_checks(atlas, samples, rng),
    ]
}

/// f(C₁) = Δ₁ and f(C₂) = Δ₂, each point hitting the chosen parameter.
pub fn curves_to_delta<S: Scalar, R: Rng + ?Sized>(atlas: &ChartAtlas<S>, samples: usize, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("locus-curves", None);
    for i in [1, 2] {
        for _ in 0..samples {
            let p = sample_c::<S, _>(i, rng);
            let want = if i == 1 {
                let s = p.y2.val().ok().and_then(ExtScalar::into_finite).expect("unit");
                BasePoint::new(S::zero(), s, atlas.walls().w1.clone())
            } else {
                let s = p.y1.val().ok().and_then(ExtScalar::into_finite).expect("unit");
                BasePoint::new(s, S::zero(), atlas.walls().w2.clone())
            };
            let got = f_map(atlas, &p);
            let comp = if i == 1 { DeltaComponent::Delta1 } else { DeltaComponent::Delta2 };
            let ok = y_membership(&p) == Ok(true)
                && got.as_ref() == Ok(&want)
                && atlas.delta_contains(&want) == Some(comp);
            tally.record(ok, || format!("f({p:?}) = {got:?}, expected {want:?}"));
        }
    }
    tally.finish()
}

/// π(Ĉ_i) ⊂ Δ_i, sweeping the Δ_i parameter over [−2, 2] stratified into
/// 100 bins; at least one sample per bin.
pub fn aside_curves<R: Rng + ?Sized>(side: &ASide, samples: usize, rng: &mut R) -> SuiteReport {
    const BINS: usize = 100;
    let mut tally = Tally::new("locus-aside", None);
    for i in [1, 2] {
        let mut hit = [false; BINS];
        let d = (side.c(3 - i) - side.c(i)).abs();
        for n in 0..samples.max(BINS) {
            let s = -2.0 + 4.0 * ((n % BINS) as f64 + rng.gen_range(0.0..1.0)) / BINS as f64;
            let r = (s + s.hypot(d)).sqrt();
            let (u, v) = side.chat_param(i, r, angle(rng));
            let got = side.chat_point(i, u, v).map_err(|e| e.to_string()).and_then(|p| side.pi_map(&p).map_err(|e| e.to_string()));
            match got {
                Ok(q) => {
                    let param = q[2 - i];
                    let ok = side.in_delta(i, &q, TOL) && (param - s).abs() <= TOL;
                    if ok && (-2.0..2.0).contains(&param) {
                        hit[(((param + 2.0) / 4.0) * BINS as f64) as usize % BINS] = true;
                    }
                    tally.record(ok, || format!("pi(C{i} point) = {q:?} is not on Delta{i} at parameter {s}"));
                }
                Err(e) => tally.fail(format!("C{i} sample at parameter {s}: {e}")),
            }
        }
        let covered = hit.iter().filter(|&&h| h).count();
        tally.record(covered == BINS, || format!("pi(C{i}) covers {covered}/{BINS} bins of [-2, 2]"));
        tally.note(format!("Delta{i} coverage: {covered}/{BINS} bins"));
    }
    tally.finish()
}

/// Transitions agree with the chart maps on overlaps, j(Δ_i) sits at the
/// corners, the monodromies are the two shears, and the disk lattice holds.
pub fn lattice_checks<S: Scalar, R: Rng + ?Sized>(atlas: &ChartAtlas<S>, samples: usize, rng: &mut R) -> SuiteReport {
    let mut tally = Tally::new("locus-monodromy", None);
    for _ in 0..samples {
        let (a, b) = if rng.gen_bool(0.5) { (1, 2) } else { (2, 3) };
        let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
        let (from, to) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let q = overlap_point(atlas, a, b, side, rng);
        let ok = match (atlas.chart_map(from, &q), atlas.chart_map(to, &q), transition(from, to, side)) {
            (Ok(x), Ok(y), Ok(t)) => t.apply(&x) == y,
            _ => false,
        };
        tally.record(ok, || format!("transition ({from}, {to}, {side}) disagrees with the charts at {q:?}"));

        let s = grid::<S, _>(rng, 24);
        let d1 = BasePoint::new(S::zero(), s.clone(), atlas.walls().w1.clone());
        let d2 = BasePoint::new(s.clone(), S::zero(), atlas.walls().w2.clone());
        let line1 = atlas.broken_line(S::zero(), s.clone());
        let line2 = atlas.broken_line(s, S::zero());
        let (j1, j2) = (atlas.j_embed(&d1), atlas.j_embed(&d2));
        tally.record(j1[..3] == line1.corner_a_prime()[..], || format!("j({d1:?}) is not A'"));
        tally.record(j2[..3] == line2.corner_a()[..], || format!("j({d2:?}) is not A"));
    }
    let shear = |c: usize| {
        let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        m[2][c] = 1;
        m
    };
    let loops = [
        ("Delta1", [(1, 2, Side::Minus), (2, 1, Side::Plus)], shear(0)),
        ("Delta2", [(2, 3, Side::Minus), (3, 2, Side::Plus)], shear(1)),
    ];
    for (name, word, want) in loops {
        let got = monodromy(&word);
        let ok = got.as_ref().is_ok_and(|m| m.linear == want && m.is_unimodular());
        tally.record(ok, || format!("monodromy around {name} = {got:?}, expected {want:?}"));
    }
    let disks = DiskLattice::standard().check();
    tally.record(disks.ok, || disks.diagnostics.join("; "));
    tally.note(format!("disk-lattice relations checked: {}", disks.checked));
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_defaults() {
        let cfg = RunConfig { samples: 60, ..RunConfig::default() };
        let reports = run_suite("all", &cfg).unwrap();
        for r in &reports {
            assert!(r.success(), "{}: {:?}", r.summary(), r.first_failures);
        }
        assert_eq!(reports.iter().filter(|r| r.suite == "symbolic").count(), 3);
    }

    #[test]
    fn float_exp_suites_pass() {
        let cfg = RunConfig {
            samples: 40,
            mode: Mode::Float,
            psi_model: crate::config::PsiChoice::Exp,
            ..RunConfig::default()
        };
        for r in run_suite("all", &cfg).unwrap() {
            assert!(r.success(), "{}: {:?}", r.summary(), r.first_failures);
        }
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(run_suite("nope", &RunConfig::default()).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = RunConfig { samples: 20, ..RunConfig::default() };
        let strip = |mut v: Vec<SuiteReport>| {
            v.iter_mut().for_each(|r| r.elapsed_ms = 0);
            v
        };
        assert_eq!(strip(run_suite("images", &cfg).unwrap()), strip(run_suite("images", &cfg).unwrap()));
    }
}
