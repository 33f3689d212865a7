use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use ogfiber_core::gitmodel::CycleType;
use ogfiber_core::invariants::{character_of, format_character, CaseGenerators};
use ogfiber_core::presentations::{presentation_report, PresentationReport};
use ogfiber_core::report::{summarize, Check, CheckStatus};
use ogfiber_core::stability::{stability_suite, StabilitySuite};

use crate::{load_case, CliError, RunConfig, Section};

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub definition: String,
    /// Character in determinant units: `det_V; factor, ...`.
    pub weight: String,
    /// Multiple of `chi` when the weight is one.
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub seed: u64,
    pub status: CheckStatus,
    pub character: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilitySuite>,
    /// Checks not belonging to a section.
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn all_checks(&self) -> Vec<&Check> {
        let mut out: Vec<&Check> = self.checks.iter().collect();
        if let Some(p) = &self.presentation {
            out.extend(&p.checks);
        }
        if let Some(s) = &self.stability {
            out.extend(&s.checks);
        }
        out
    }

    fn refresh_status(&mut self) {
        let all: Vec<Check> = self.all_checks().into_iter().cloned().collect();
        self.status = summarize(&all);
    }
}

/// Wall-clock time per section, kept out of the reports.
#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub case: String,
    pub sections: Vec<(String, Duration)>,
}

impl Timings {
    pub fn total(&self) -> Duration {
        self.sections.iter().map(|(_, d)| *d).sum()
    }
}

pub fn generator_table(gens: &CaseGenerators) -> Result<Vec<GeneratorRow>, CliError> {
    gens.generators
        .iter()
        .map(|g| {
            Ok(GeneratorRow {
                name: g.name.clone(),
                definition: g.definition.clone(),
                weight: format_character(&character_of(&gens.problem, g)?),
                degree: g.degree,
            })
        })
        .collect()
}

/// Report of one case from its generators.
pub fn case_report(gens: &CaseGenerators, config: &RunConfig) -> Result<(CaseReport, Timings), CliError> {
    let problem = &gens.problem;
    let csv = problem.cycle().csv();
    let mut t = Timings {
        case: csv.clone(),
        ..Timings::default()
    };
    let generators = if config.wants(Section::Generators) {
        generator_table(gens)?
    } else {
        Vec::new()
    };
    let mut checks = Vec::new();
    let presentation = if config.wants(Section::Relations) {
        let start = Instant::now();
        let p = presentation_report(gens, config.verify_options())?;
        t.sections.push(("relations".into(), start.elapsed()));
        if csv == "4" && !config.unsafe_full_elimination {
            checks.push(Check::capped(
                "full-elimination",
                format!("not run without --unsafe-full-elimination; relations verified through degree {}",
                    config.verify_options().degree_for(problem.cycle())),
            ));
        }
        Some(p)
    } else {
        None
    };
    let stability = if config.wants(Section::Stability) {
        let start = Instant::now();
        let s = stability_suite(gens, config.suite_options())?;
        t.sections.push(("stability".into(), start.elapsed()));
        Some(s)
    } else {
        None
    };
    let mut report = CaseReport {
        case: problem.cycle().to_string(),
        seed: config.seed,
        status: CheckStatus::Pass,
        character: format_character(&problem.det_units(problem.chi())),
        generators,
        presentation,
        stability,
        checks,
    };
    report.refresh_status();
    Ok((report, t))
}

fn one_case(case: &CycleType, config: &RunConfig) -> Result<(CaseReport, Timings), CliError> {
    let start = Instant::now();
    let gens = load_case(case)?;
    let setup = start.elapsed();
    let (r, mut t) = case_report(&gens, config)?;
    t.sections.insert(0, ("generators".into(), setup));
    Ok((r, t))
}

/// Reports for the selected cases, run concurrently, in selection order.
pub fn cmd_case(config: &RunConfig) -> Result<(Vec<CaseReport>, Vec<Timings>), CliError> {
    config.validate()?;
    let out = config.in_pool(|| {
        config
            .cases
            .par_iter()
            .map(|c| one_case(c, config))
            .collect::<Result<Vec<_>, CliError>>()
    })??;
    Ok(out.into_iter().unzip())
}
