use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::base_geometry::{BasePoint, BrokenLine, ChartAtlas};
use crate::novikov::{ExtScalar, GaussRat, NovikovNum, ProjValue, Scalar};
use crate::report::{SuiteReport, Tally};

use super::sampling::{random_coeff, sample_unit_series};
use super::{f_image, y_membership, BsideError, YPoint};

/// Which of q₁, q₂ vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SliceCase {
    /// q₁ ≠ 0, q₂ ≠ 0
    Generic,
    /// q₁ = 0, q₂ ≠ 0
    FirstZero,
    /// q₁ ≠ 0, q₂ = 0
    SecondZero,
    /// q₁ = q₂ = 0
    BothZero,
}

impl SliceCase {
    pub fn of<S: Scalar>(q1: &S, q2: &S) -> Self {
        match (q1.is_zero_s(), q2.is_zero_s()) {
            (false, false) => SliceCase::Generic,
            (true, false) => SliceCase::FirstZero,
            (false, true) => SliceCase::SecondZero,
            (true, true) => SliceCase::BothZero,
        }
    }
}

/// The construction used to hit a point r(t) of a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    C1,
    C2a,
    C2b,
    C2c,
    C3a,
    C3b,
    C3c,
    C4a,
    C4b,
    C4c,
    C4d,
    C4e,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{self:?}");
        f.write_str(&s[1..])
    }
}

impl CaseLabel {
    /// The branch that produces r(t) on the given slice.
    pub fn for_t<S: Scalar>(line: &BrokenLine<S>, t: &S) -> Self {
        use CaseLabel::*;
        let (p1, p2) = (&line.p1, &line.p2);
        match SliceCase::of(&line.q1, &line.q2) {
            SliceCase::Generic => C1,
            SliceCase::FirstZero if t < p1 => C2a,
            SliceCase::FirstZero if t > p1 => C2b,
            SliceCase::FirstZero => C2c,
            SliceCase::SecondZero if t < p2 => C3a,
            SliceCase::SecondZero if t > p2 => C3b,
            SliceCase::SecondZero => C3c,
            SliceCase::BothZero if t < p2 => C4a,
            SliceCase::BothZero if t > p1 => C4b,
            SliceCase::BothZero if t == p1 => C4d,
            SliceCase::BothZero if t == p2 => C4e,
            SliceCase::BothZero => C4c,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Near {
    /// lead coefficient ≠ −1, so val(1 + y) = 0
    Unit,
    /// y = −1 + higher terms, so val(1 + y) > 0
    Close,
    /// y = −1 exactly
    Exact,
}

fn minus_one() -> GaussRat {
    GaussRat::from_int(-1)
}

fn unit_lead<R: Rng + ?Sized>(rng: &mut R) -> GaussRat {
    loop {
        let c = random_coeff(rng);
        if c != minus_one() {
            return c;
        }
    }
}

/// A y with val y = q; for q = 0 the approach to −1 is controlled by `near`.
fn sample_y<S: Scalar, R: Rng + ?Sized>(q: &S, near: Near, rng: &mut R) -> NovikovNum<S> {
    if !q.is_zero_s() {
        let lead = random_coeff(rng);
        return sample_unit_series(rng, q, lead);
    }
    match near {
        Near::Unit => {
            let lead = unit_lead(rng);
            sample_unit_series(rng, q, lead)
        }
        Near::Exact => NovikovNum::constant(minus_one()),
        Near::Close => {
            let k = rng.gen_range(1..=12);
            let lead = random_coeff(rng);
            let tail = sample_unit_series(rng, &S::from_ratio(k, 4), lead);
            &NovikovNum::constant(minus_one()) + &tail
        }
    }
}

fn random_near<R: Rng + ?Sized>(rng: &mut R) -> Near {
    match rng.gen_range(0..3) {
        0 => Near::Unit,
        1 => Near::Close,
        _ => Near::Exact,
    }
}

/// A unit series or, half the time, a monomial.
fn series_of_val<S: Scalar, R: Rng + ?Sized>(rng: &mut R, v: &S) -> NovikovNum<S> {
    let lead = random_coeff(rng);
    if rng.gen_bool(0.5) {
        NovikovNum::monomial(lead, v.clone())
    } else {
        sample_unit_series(rng, v, lead)
    }
}

/// A series of valuation ≥ v, or zero.
fn series_at_least<S: Scalar, R: Rng + ?Sized>(rng: &mut R, v: &S) -> NovikovNum<S> {
    if rng.gen_bool(0.2) {
        return NovikovNum::zero();
    }
    let k = rng.gen_range(0..=4);
    series_of_val(rng, &(v.clone() + S::from_ratio(k, 4)))
}

fn generic_z<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    y1: NovikovNum<S>,
    y2: NovikovNum<S>,
    val_z: &S,
    order: &ExtScalar<S>,
) -> Result<YPoint<S>, BsideError> {
    let z = series_of_val(rng, val_z);
    let x1 = &y1.one_plus() * &z.inv(order)?;
    let x2 = &y2.one_plus() * &z;
    Ok(YPoint { x1, x2, z: ProjValue::affine(z), y1, y2 })
}

fn z_zero<S: Scalar>(x1: NovikovNum<S>, y2: NovikovNum<S>) -> YPoint<S> {
    YPoint { x1, x2: NovikovNum::zero(), z: ProjValue::zero(), y1: NovikovNum::constant(minus_one()), y2 }
}

fn z_infinity<S: Scalar>(x2: NovikovNum<S>, y1: NovikovNum<S>) -> YPoint<S> {
    YPoint { x1: NovikovNum::zero(), x2, z: ProjValue::infinity(), y1, y2: NovikovNum::constant(minus_one()) }
}

fn e_of<S: Scalar>(y: &NovikovNum<S>) -> Result<ExtScalar<S>, BsideError> {
    Ok(y.one_plus().val()?)
}

fn fin<S: Scalar>(e: ExtScalar<S>) -> Result<S, BsideError> {
    e.into_finite().ok_or_else(|| BsideError::Domain("expected a finite valuation".into()))
}

/// A random point of Y over (q₁, q₂), covering the loci z = 0 and z = ∞.
pub fn sample_y_point<S: Scalar, R: Rng + ?Sized>(
    q1: &S,
    q2: &S,
    rng: &mut R,
    order: &ExtScalar<S>,
) -> Result<YPoint<S>, BsideError> {
    let y1 = sample_y(q1, random_near(rng), rng);
    let y2 = sample_y(q2, random_near(rng), rng);
    let exact = |y: &NovikovNum<S>| y.one_plus().is_exact_zero();
    if exact(&y1) && rng.gen_bool(0.5) {
        let v = S::from_ratio(rng.gen_range(-48..=48), 8);
        let x1 = if rng.gen_bool(0.2) { NovikovNum::zero() } else { series_of_val(rng, &v) };
        return Ok(z_zero(x1, y2));
    }
    if exact(&y2) && rng.gen_bool(0.5) {
        let v = S::from_ratio(rng.gen_range(-48..=48), 8);
        let x2 = if rng.gen_bool(0.2) { NovikovNum::zero() } else { series_of_val(rng, &v) };
        return Ok(z_infinity(x2, y1));
    }
    let v = S::from_ratio(rng.gen_range(-48..=48), 8);
    generic_z(rng, y1, y2, &v, order)
}

/// A point of Y over (q₁, q₂) with (F₁, F₂, G) = r(t).
pub fn slice_preimage<S: Scalar, R: Rng + ?Sized>(
    line: &BrokenLine<S>,
    t: &S,
    rng: &mut R,
    order: &ExtScalar<S>,
) -> Result<(CaseLabel, YPoint<S>), BsideError> {
    use CaseLabel::*;
    let (q1, q2) = (&line.q1, &line.q2);
    let (p1, p2, m) = (&line.p1, &line.p2, &line.m);
    let label = CaseLabel::for_t(line, t);
    let nonexact = |rng: &mut R| if rng.gen_bool(0.5) { Near::Unit } else { Near::Close };
    let point = match label {
        C1 | C3a | C4a => {
            let y1 = sample_y(q1, nonexact(rng), rng);
            let y2 = sample_y(q2, nonexact(rng), rng);
            let vz = t.clone() - fin(e_of(&y2)?)?;
            generic_z(rng, y1, y2, &vz, order)?
        }
        C2a => {
            let y1 = sample_y(q1, nonexact(rng), rng);
            let y2 = sample_y(q2, Near::Unit, rng);
            let vz = t.clone() - q2.min0();
            generic_z(rng, y1, y2, &vz, order)?
        }
        C2b | C3b | C4b => {
            let y1 = sample_y(q1, nonexact(rng), rng);
            let y2 = sample_y(q2, nonexact(rng), rng);
            let s = m.clone() - t.clone();
            let vz = fin(e_of(&y1)?)? - s;
            generic_z(rng, y1, y2, &vz, order)?
        }
        C4c => {
            let y1 = sample_y(q1, nonexact(rng), rng);
            let y2 = sample_y(q2, nonexact(rng), rng);
            generic_z(rng, y1, y2, t, order)?
        }
        C2c | C4d => {
            let y2 = sample_y(q2, nonexact(rng), rng);
            if label == C4d && rng.gen_bool(0.5) {
                let k = rng.gen_range(0..=4);
                let vz = p1.clone() + S::from_ratio(k, 4);
                generic_z(rng, NovikovNum::constant(minus_one()), y2, &vz, order)?
            } else {
                let x1 = series_at_least(rng, &(-p1.clone() + m.clone()));
                z_zero(x1, y2)
            }
        }
        C3c | C4e => {
            let y1 = sample_y(q1, if label == C4e { Near::Unit } else { nonexact(rng) }, rng);
            if label == C4e && rng.gen_bool(0.5) {
                let k = rng.gen_range(0..=4);
                let vz = p2.clone() - S::from_ratio(k, 4);
                generic_z(rng, y1, NovikovNum::constant(minus_one()), &vz, order)?
            } else {
                let x2 = series_at_least(rng, p2);
                z_infinity(x2, y1)
            }
        }
    };
    Ok((label, point))
}

/// A point of 𝒴 = {val x₂ > 0} with F = j(q).
pub fn preimage_of_base_point<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    q: &BasePoint<S>,
    rng: &mut R,
    order: &ExtScalar<S>,
) -> Result<YPoint<S>, BsideError> {
    let line = atlas.broken_line(q.q1.clone(), q.q2.clone());
    let t = atlas.psi_eval(q);
    for _ in 0..64 {
        let (_, p) = slice_preimage(&line, &t, rng, order)?;
        if p.x2.val()? > ExtScalar::Finite(S::zero()) {
            return Ok(p);
        }
    }
    Err(BsideError::Domain(format!("no preimage with val x2 > 0 found over {q:?}")))
}

fn t_sample<S: Scalar, R: Rng + ?Sized>(line: &BrokenLine<S>, rng: &mut R) -> S {
    match rng.gen_range(0..10) {
        0 | 1 => line.p1.clone(),
        2 | 3 => line.p2.clone(),
        4 => {
            let w = S::from_ratio(rng.gen_range(1..8), 8);
            line.p2.clone() + (line.p1.clone() - line.p2.clone()) * w
        }
        _ => S::from_ratio(rng.gen_range(-32..=48), 8),
    }
}

/// Checks F(Y_{q₁,q₂}) = S_{q₁,q₂} in both directions.
pub fn image_slice_check<S: Scalar, R: Rng + ?Sized>(
    atlas: &ChartAtlas<S>,
    q1: &S,
    q2: &S,
    samples: usize,
    rng: &mut R,
    order: &ExtScalar<S>,
) -> SuiteReport {
    let mut tally = Tally::new("image-slices", None);
    let line = atlas.broken_line(q1.clone(), q2.clone());
    let mut labels: BTreeMap<CaseLabel, usize> = BTreeMap::new();
    for _ in 0..samples {
        let forward = (|| -> Result<bool, BsideError> {
            let p = sample_y_point(q1, q2, rng, order)?;
            let f = f_image(atlas, &p)?;
            Ok(y_membership(&p)? && line.locate_real(&[f[0].clone(), f[1].clone(), f[2].clone()]).is_some())
        })();
        tally.record(matches!(forward, Ok(true)), || format!("F(Y) ⊄ S at ({q1}, {q2}): {forward:?}"));

        let t = t_sample(&line, rng);
        let backward = (|| -> Result<(CaseLabel, bool), BsideError> {
            let (label, p) = slice_preimage(&line, &t, rng, order)?;
            let f = f_image(atlas, &p)?;
            let want = line.eval_real(&t);
            let ok = y_membership(&p)? && f[..3] == want[..] && f[3] == *q1 && f[4] == *q2;
            Ok((label, ok))
        })();
        match backward {
            Ok((label, ok)) => {
                *labels.entry(label).or_default() += 1;
                tally.record(ok, || format!("r({t}) not hit by branch {label} at ({q1}, {q2})"));
            }
            Err(e) => tally.fail(format!("r({t}) at ({q1}, {q2}): {e}")),
        }
    }
    let summary: Vec<String> = labels.iter().map(|(l, n)| format!("{l}:{n}")).collect();
    tally.note(format!("slice ({q1}, {q2}) branches {}", summary.join(" ")));
    tally.finish()
}
