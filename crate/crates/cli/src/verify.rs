use std::fs;

use anyhow::Context;
use clap::ValueEnum;
use conifold_syz::config::RunConfig;
use conifold_syz::report::RunReport;
use conifold_syz::suites::run_suite;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    All,
    Novikov,
    Gluing,
    Diagram,
    Symbolic,
    Aside,
    Images,
    Locus,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            SuiteArg::Novikov => "novikov",
            SuiteArg::Gluing => "gluing",
            SuiteArg::Diagram => "diagram",
            SuiteArg::Symbolic => "symbolic",
            SuiteArg::Aside => "aside",
            SuiteArg::Images => "images",
            SuiteArg::Locus => "locus",
        }
    }
}

pub fn run(suite: SuiteArg, cfg: &RunConfig) -> anyhow::Result<u8> {
    let reports = run_suite(suite.name(), cfg)?;
    for r in &reports {
        println!("{}", r.summary());
        for note in &r.notes {
            println!("  {note}");
        }
    }
    let report = RunReport::new(reports);
    if let Some(path) = &cfg.output {
        fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.success { 0 } else { 1 })
}
