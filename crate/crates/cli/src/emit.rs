use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, Write};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::Serialize;

use conifold_syz::aside::ASide;
use conifold_syz::base_geometry::{BasePoint, ChartAtlas};
use conifold_syz::config::RunConfig;
use conifold_syz::mirror_bside::{f_image, sample_y_point};
use conifold_syz::novikov::{Approx, ExtScalar, Mode, Scalar};
use conifold_syz::suites::suite_rng;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    BrokenLine,
    Locus,
    Walls,
    FImage,
    Fiber,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[arg(value_enum)]
    target: Target,
    /// Slice coordinate q1 (broken-line, f-image).
    #[arg(long, allow_negative_numbers = true)]
    q1: Option<String>,
    /// Slice coordinate q2 (broken-line, f-image).
    #[arg(long, allow_negative_numbers = true)]
    q2: Option<String>,
    /// Base point `q1,q2,q3` (fiber).
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Number of rows to emit.
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Serialize)]
struct LineRow {
    kind: &'static str,
    label: String,
    t: Option<f64>,
    u1: f64,
    u2: f64,
    v: f64,
}

#[derive(Serialize)]
struct Segment {
    segment: String,
    t_from: f64,
    t_to: Option<f64>,
    from: [f64; 3],
    to: Option<[f64; 3]>,
    direction: [f64; 3],
}

#[derive(Serialize)]
struct LineJson {
    q1: f64,
    q2: f64,
    p1: f64,
    p2: f64,
    segments: Vec<Segment>,
    corner_a: [f64; 3],
    corner_a_prime: [f64; 3],
}

#[derive(Serialize)]
struct LocusRow {
    component: &'static str,
    s: f64,
    q1: f64,
    q2: f64,
    q3: f64,
    u1: f64,
    u2: f64,
    v: f64,
}

#[derive(Serialize)]
struct WallRow {
    wall: String,
    q1: f64,
    q2: f64,
    q3: f64,
}

#[derive(Serialize)]
struct FImageRow {
    u1: f64,
    u2: f64,
    v: f64,
    q1: f64,
    q2: f64,
    segment: String,
}

#[derive(Serialize)]
struct FiberRow {
    phi: f64,
    alpha1: f64,
    alpha2: f64,
    u1_re: f64,
    u1_im: f64,
    v1_re: f64,
    v1_im: f64,
    u2_re: f64,
    u2_im: f64,
    v2_re: f64,
    v2_im: f64,
    z_re: f64,
    z_im: f64,
    residual: f64,
}

fn f3<S: Scalar>(x: &[S; 3]) -> [f64; 3] {
    [x[0].to_f64(), x[1].to_f64(), x[2].to_f64()]
}

fn sink(cfg: &RunConfig) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_rows<T: Serialize>(rows: &[T], format: Format, cfg: &RunConfig) -> anyhow::Result<()> {
    let mut out = sink(cfg)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn scalar<S: Scalar + std::str::FromStr>(raw: &Option<String>, name: &str) -> anyhow::Result<S> {
    let Some(s) = raw else { bail!("--{name} is required for this target") };
    s.parse().ok().with_context(|| format!("--{name}: not a number: {s}"))
}

pub fn run(args: &EmitArgs, cfg: &RunConfig) -> anyhow::Result<u8> {
    if args.n == 0 {
        bail!("--n must be at least 1");
    }
    match args.target {
        Target::Fiber => fiber(args, cfg)?,
        _ => match cfg.mode {
            Mode::Exact => emit_in(&cfg.exact_atlas()?, args, cfg)?,
            Mode::Float => emit_in(&cfg.float_atlas()?, args, cfg)?,
        },
    }
    Ok(0)
}

fn emit_in<S: Scalar + std::str::FromStr>(atlas: &ChartAtlas<S>, args: &EmitArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    match args.target {
        Target::BrokenLine => {
            let (q1, q2) = (scalar::<S>(&args.q1, "q1")?, scalar::<S>(&args.q2, "q2")?);
            broken_line(atlas, q1, q2, args.format, cfg)
        }
        Target::Locus => write_rows(&locus(atlas, args.n), args.format, cfg),
        Target::Walls => write_rows(&walls(atlas, args.n), args.format, cfg),
        Target::FImage => {
            let (q1, q2) = (scalar::<S>(&args.q1, "q1")?, scalar::<S>(&args.q2, "q2")?);
            write_rows(&f_images(atlas, &q1, &q2, args.n, cfg)?, args.format, cfg)
        }
        Target::Fiber => unreachable!("handled in float"),
    }
}

fn broken_line<S: Scalar>(atlas: &ChartAtlas<S>, q1: S, q2: S, format: Format, cfg: &RunConfig) -> anyhow::Result<()> {
    let line = atlas.broken_line(q1, q2);
    let zero = S::zero();
    let segs = line.segments();
    let mut segments = Vec::new();
    for (seg, from, to) in &segs {
        let t0 = from.as_finite().cloned().unwrap_or_else(|| zero.clone());
        let start = line.eval_real(&t0);
        let (t_to, end, direction) = match to {
            ExtScalar::Finite(t1) => {
                let end = line.eval_real(t1);
                let d = [0, 1, 2].map(|i| end[i].to_f64() - start[i].to_f64());
                (Some(t1.to_f64()), Some(f3(&end)), d)
            }
            _ => (None, None, [-1.0, 0.0, 0.0]),
        };
        segments.push(Segment { segment: format!("{seg:?}").to_lowercase(), t_from: t0.to_f64(), t_to, from: f3(&start), to: end, direction });
    }
    let (a, a_prime) = (f3(&line.corner_a()), f3(&line.corner_a_prime()));
    match format {
        Format::Json => {
            let doc = LineJson {
                q1: line.q1.to_f64(),
                q2: line.q2.to_f64(),
                p1: line.p1.to_f64(),
                p2: line.p2.to_f64(),
                segments,
                corner_a: a,
                corner_a_prime: a_prime,
            };
            let mut out = sink(cfg)?;
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
            Ok(())
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for s in &segments {
                rows.push(LineRow { kind: "start", label: s.segment.clone(), t: Some(s.t_from), u1: s.from[0], u2: s.from[1], v: s.from[2] });
                match s.to {
                    Some(p) => rows.push(LineRow { kind: "end", label: s.segment.clone(), t: s.t_to, u1: p[0], u2: p[1], v: p[2] }),
                    None => {
                        let d = s.direction;
                        rows.push(LineRow { kind: "direction", label: s.segment.clone(), t: None, u1: d[0], u2: d[1], v: d[2] })
                    }
                }
            }
            rows.push(LineRow { kind: "corner", label: "A".into(), t: Some(line.p2.to_f64()), u1: a[0], u2: a[1], v: a[2] });
            rows.push(LineRow { kind: "corner", label: "A'".into(), t: Some(line.p1.to_f64()), u1: a_prime[0], u2: a_prime[1], v: a_prime[2] });
            write_rows(&rows, Format::Csv, cfg)
        }
    }
}

fn param<S: Scalar>(k: usize, n: usize) -> S {
    if n == 1 {
        return S::zero();
    }
    S::from_ratio(6 * k as i64, (n - 1) as i64) - S::from_int(3)
}

/// Δ₁ = {q₁ = 0, q₃ = w₁} and Δ₂ = {q₂ = 0, q₃ = w₂} over s ∈ [−3, 3], with j.
fn locus<S: Scalar>(atlas: &ChartAtlas<S>, n: usize) -> Vec<LocusRow> {
    let mut rows = Vec::new();
    for (component, i) in [("Delta1", 1), ("Delta2", 2)] {
        for k in 0..n {
            let s: S = param(k, n);
            let w = atlas.walls().wall(i).clone();
            let q = if i == 1 { BasePoint::new(S::zero(), s.clone(), w) } else { BasePoint::new(s.clone(), S::zero(), w) };
            let j = atlas.j_embed(&q);
            rows.push(LocusRow {
                component,
                s: s.to_f64(),
                q1: q.q1.to_f64(),
                q2: q.q2.to_f64(),
                q3: q.q3.to_f64(),
                u1: j[0].to_f64(),
                u2: j[1].to_f64(),
                v: j[2].to_f64(),
            });
        }
    }
    rows
}

/// Sample points of the half-planes H_{i±} = {q₃ = w_i, ±q_i > 0}.
fn walls<S: Scalar>(atlas: &ChartAtlas<S>, n: usize) -> Vec<WallRow> {
    let mut rows = Vec::new();
    for i in [1, 2] {
        for (sign, label) in [(1i64, "+"), (-1, "-")] {
            for k in 0..n {
                let qi = S::from_ratio(3 * sign * (k as i64 + 1), n as i64);
                let other: S = param(k, n);
                let (q1, q2) = if i == 1 { (qi, other) } else { (other, qi) };
                let q3 = atlas.walls().wall(i).clone();
                rows.push(WallRow { wall: format!("H{i}{label}"), q1: q1.to_f64(), q2: q2.to_f64(), q3: q3.to_f64() });
            }
        }
    }
    rows
}

fn f_images<S: Scalar>(atlas: &ChartAtlas<S>, q1: &S, q2: &S, n: usize, cfg: &RunConfig) -> anyhow::Result<Vec<FImageRow>> {
    let mut rng = suite_rng(cfg.seed, "emit-f-image", 0);
    let order = cfg.order::<S>();
    let line = atlas.broken_line(q1.clone(), q2.clone());
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let p = sample_y_point(q1, q2, &mut rng, &order)?;
        let f = f_image(atlas, &p)?;
        let u = [f[0].clone(), f[1].clone(), f[2].clone()];
        let segment = line.locate_real(&u).map(|(s, _)| format!("{s:?}").to_lowercase()).unwrap_or_else(|| "none".into());
        rows.push(FImageRow { u1: f[0].to_f64(), u2: f[1].to_f64(), v: f[2].to_f64(), q1: f[3].to_f64(), q2: f[4].to_f64(), segment });
    }
    Ok(rows)
}

fn fiber(args: &EmitArgs, cfg: &RunConfig) -> anyhow::Result<()> {
    let Some(raw) = &args.q else { bail!("--q q1,q2,q3 is required for the fiber target") };
    let parts: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse::<Approx>().map(|a| a.0))
        .collect::<Result<_, _>>()
        .with_context(|| format!("--q: expected three numbers, got {raw}"))?;
    let q: [f64; 3] = parts.try_into().map_err(|_| anyhow::anyhow!("--q: expected three numbers, got {raw}"))?;
    let side = ASide::from_walls(&cfg.walls::<Approx>()?);
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let rows: Vec<FiberRow> = (0..args.n)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / args.n as f64;
            let a1 = 2.0 * PI * (k as f64 * golden).fract();
            let a2 = 2.0 * PI * (k as f64 * std::f64::consts::SQRT_2).fract();
            let p = side.fiber_point(q, phi, a1, a2);
            let (r1, r2) = side.residuals(&p);
            FiberRow {
                phi,
                alpha1: a1,
                alpha2: a2,
                u1_re: p.u1.re,
                u1_im: p.u1.im,
                v1_re: p.v1.re,
                v1_im: p.v1.im,
                u2_re: p.u2.re,
                u2_im: p.u2.im,
                v2_re: p.v2.re,
                v2_im: p.v2.im,
                z_re: p.z.re,
                z_im: p.z.im,
                residual: r1.max(r2),
            }
        })
        .collect();
    write_rows(&rows, args.format, cfg)
}
