//! Report pipeline behind the `ogfiber` command: per-case reports, point
//! checks and the reproduction run over every length-four case.

pub mod case;
pub mod config;
pub mod criteria;
pub mod point;

use std::sync::Arc;

use thiserror::Error;

use ogfiber_core::exactpoly::PolyError;
use ogfiber_core::gitmodel::{build_problem, CycleType, ModelError};
use ogfiber_core::groebner::GbError;
use ogfiber_core::invariants::{case_generators, CaseGenerators, InvariantError};
use ogfiber_core::presentations::PresentationError;
use ogfiber_core::report::CheckStatus;
use ogfiber_core::stability::StabilityError;

pub use case::{cmd_case, CaseReport, GeneratorRow};
pub use config::{parse_cases, RunConfig, Section};
pub use criteria::{cmd_reproduce, Criterion, ReproduceReport};
pub use point::{cmd_check_point, PointReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("invalid point: {0}")]
    Point(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Point(_) | CliError::Io(_) => 2,
            CliError::Presentation(PresentationError::RequiresOverride(_))
            | CliError::Presentation(PresentationError::DegreeTooSmall(_)) => 2,
            CliError::Presentation(PresentationError::Capped(_)) => 3,
            _ => 1,
        }
    }
}

/// 0 on pass, 1 on failure, 3 when something was capped and nothing failed.
pub fn exit_code(status: CheckStatus) -> i32 {
    match status {
        CheckStatus::Pass => 0,
        CheckStatus::Fail => 1,
        CheckStatus::Capped => 3,
    }
}

pub fn load_case(case: &CycleType) -> Result<CaseGenerators, CliError> {
    let problem = Arc::new(build_problem(case)?);
    Ok(case_generators(&problem)?)
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
