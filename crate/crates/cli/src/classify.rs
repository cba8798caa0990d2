use anyhow::{bail, Context};
use conifold_syz::base_geometry::ChartAtlas;
use conifold_syz::config::RunConfig;
use conifold_syz::mirror_bside::{classify_smooth, Smoothness};
use conifold_syz::novikov::{Approx, Mode, Scalar};

/// `smooth`, `singular` or `not-in-image` for a point of ℝ⁵.
pub fn verdict<S: Scalar>(atlas: &ChartAtlas<S>, p: &[S; 5]) -> &'static str {
    if atlas.j_inverse(p).is_err() {
        return "not-in-image";
    }
    match classify_smooth(atlas, p) {
        Ok(Smoothness::Singular) => "singular",
        Ok(_) => "smooth",
        Err(_) => "not-in-image",
    }
}

fn parse<S: Scalar + std::str::FromStr>(raw: &[String]) -> anyhow::Result<[S; 5]> {
    if raw.len() != 5 {
        bail!("expected 5 coordinates, got {}", raw.len());
    }
    let mut out = Vec::with_capacity(5);
    for s in raw {
        out.push(s.parse::<S>().ok().with_context(|| format!("not a number: {s}"))?);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

pub fn run(raw: &[String], cfg: &RunConfig) -> anyhow::Result<u8> {
    let v = match cfg.mode {
        Mode::Exact => verdict(&cfg.exact_atlas()?, &parse(raw)?),
        Mode::Float => verdict(&cfg.float_atlas()?, &parse::<Approx>(raw)?),
    };
    println!("{v}");
    Ok(0)
}
