//! The run configuration shared by every suite and the command line.

use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base_geometry::{ChartAtlas, ExpPsi, RationalPsi, WallConfig};
use crate::novikov::{Approx, ExtScalar, Mode, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiChoice {
    Rational,
    Exp,
}

impl std::str::FromStr for PsiChoice {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(PsiChoice::Rational),
            "exp" => Ok(PsiChoice::Exp),
            _ => Err(ConfigError(format!("unknown psi model `{s}` (expected rational or exp)"))),
        }
    }
}

/// Defaults: w1 = 1, w2 = 0, delta = 1/4, rational ψ, exact mode,
/// truncation order 12, 1000 samples, seed 7.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub w1: Rational,
    pub w2: Rational,
    pub delta: Rational,
    pub psi_model: PsiChoice,
    pub mode: Mode,
    pub trunc_order: Rational,
    pub samples: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            w1: Rational::one(),
            w2: Rational::zero(),
            delta: Rational::new(1, 4),
            psi_model: PsiChoice::Rational,
            mode: Mode::Exact,
            trunc_order: Rational::from_integer(12),
            samples: 1000,
            seed: 7,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.w1 <= self.w2 {
            return Err(ConfigError(format!("need w1 > w2, got w1 = {}, w2 = {}", self.w1, self.w2)));
        }
        let half_gap = (&self.w1 - &self.w2) * Rational::new(1, 2);
        if self.delta <= Rational::zero() || self.delta >= half_gap {
            return Err(ConfigError(format!("need 0 < delta < (w1 - w2)/2, got delta = {}", self.delta)));
        }
        if self.samples == 0 {
            return Err(ConfigError("samples must be at least 1".into()));
        }
        if self.trunc_order <= Rational::zero() {
            return Err(ConfigError("trunc_order must be positive".into()));
        }
        if self.mode == Mode::Exact && self.psi_model == PsiChoice::Exp {
            return Err(ConfigError("the exp psi model needs float mode".into()));
        }
        Ok(())
    }

    pub fn walls<S: Scalar>(&self) -> Result<WallConfig<S>, ConfigError> {
        let c = S::from_rational;
        WallConfig::new(c(&self.w1), c(&self.w2), c(&self.delta)).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn order<S: Scalar>(&self) -> ExtScalar<S> {
        ExtScalar::Finite(S::from_rational(&self.trunc_order))
    }

    pub fn exact_atlas(&self) -> Result<ChartAtlas<Rational>, ConfigError> {
        self.validate()?;
        if self.psi_model != PsiChoice::Rational {
            return Err(ConfigError("exact mode supports only the rational psi model".into()));
        }
        Ok(ChartAtlas::new(self.walls()?, Arc::new(RationalPsi)))
    }

    pub fn float_atlas(&self) -> Result<ChartAtlas<Approx>, ConfigError> {
        self.validate()?;
        let walls = self.walls()?;
        Ok(match self.psi_model {
            PsiChoice::Rational => ChartAtlas::new(walls, Arc::new(RationalPsi)),
            PsiChoice::Exp => ChartAtlas::new(walls, Arc::new(ExpPsi)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RunConfig::default();
        c.validate().unwrap();
        let a = c.exact_atlas().unwrap();
        assert_eq!(*a.p1(), Rational::from_integer(2));
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |f: fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.w2 = Rational::from_integer(2)));
        assert!(bad(|c| c.delta = Rational::new(1, 2)));
        assert!(bad(|c| c.delta = Rational::zero()));
        assert!(bad(|c| c.samples = 0));
        assert!(bad(|c| c.psi_model = PsiChoice::Exp));
        let mut c = RunConfig { psi_model: PsiChoice::Exp, mode: Mode::Float, ..RunConfig::default() };
        c.validate().unwrap();
        assert!(c.float_atlas().is_ok());
        c.mode = Mode::Exact;
        assert!(c.exact_atlas().is_err());
    }
}
