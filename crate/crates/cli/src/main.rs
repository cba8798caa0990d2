//! `conifold`: run the verification suites, emit geometry, classify points.

mod classify;
mod emit;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conifold_syz::config::{PsiChoice, RunConfig};
use conifold_syz::novikov::{Mode, Rational};

#[derive(Parser, Debug)]
#[command(name = "conifold", version, about = "SYZ T-duality on the conifold: verification and geometry emission")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Height of the first wall.
    #[arg(long, global = true, env = "CONIFOLD_W1", default_value = "1")]
    w1: Rational,
    /// Height of the second wall.
    #[arg(long, global = true, env = "CONIFOLD_W2", default_value = "0")]
    w2: Rational,
    /// Tube radius around the walls.
    #[arg(long, global = true, env = "CONIFOLD_DELTA", default_value = "1/4")]
    delta: Rational,
    #[arg(long, global = true, env = "CONIFOLD_PSI_MODEL", value_enum, default_value_t = PsiArg::Rational)]
    psi_model: PsiArg,
    #[arg(long, global = true, env = "CONIFOLD_MODE", value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Truncation order for series inversion.
    #[arg(long, global = true, env = "CONIFOLD_TRUNC", default_value = "12")]
    trunc: Rational,
    #[arg(long, global = true, env = "CONIFOLD_SAMPLES", default_value_t = 1000)]
    samples: usize,
    #[arg(long, global = true, env = "CONIFOLD_SEED", default_value_t = 7)]
    seed: u64,
    /// Where to write the report or emitted file; standard output if absent.
    #[arg(short, long, global = true, env = "CONIFOLD_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PsiArg {
    Rational,
    Exp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl ConfigArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            w1: self.w1.clone(),
            w2: self.w2.clone(),
            delta: self.delta.clone(),
            psi_model: match self.psi_model {
                PsiArg::Rational => PsiChoice::Rational,
                PsiArg::Exp => PsiChoice::Exp,
            },
            mode: match self.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Float => Mode::Float,
            },
            trunc_order: self.trunc.clone(),
            samples: self.samples,
            seed: self.seed,
            output: self.output.clone(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites; exit 0 iff every check passes.
    Verify {
        #[arg(value_enum, default_value_t = verify::SuiteArg::All)]
        suite: verify::SuiteArg,
    },
    /// Write geometry as CSV or JSON for plotting.
    Emit(emit::EmitArgs),
    /// Classify a point (u1, u2, v, q1, q2) as smooth, singular or not-in-image.
    Classify {
        #[arg(num_args = 5, allow_negative_numbers = true, value_names = ["U1", "U2", "V", "Q1", "Q2"])]
        point: Vec<String>,
    },
}

/// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config.to_config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Verify { suite } => verify::run(*suite, &cfg),
        Command::Emit(args) => emit::run(args, &cfg),
        Command::Classify { point } => classify::run(point, &cfg),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
