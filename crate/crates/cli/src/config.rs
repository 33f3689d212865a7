use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use ogfiber_core::gitmodel::CycleType;
use ogfiber_core::groebner::Caps;
use ogfiber_core::presentations::{KernelOptions, VerifyOptions};
use ogfiber_core::stability::{SearchOptions, SuiteOptions};

use crate::CliError;

/// Parts of a case report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    /// Generator table with characters.
    Generators,
    /// Relations, Hilbert values, quadric and scroll analysis.
    Relations,
    /// Sampled stability suite and strata.
    Stability,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cases: Vec<CycleType>,
    pub degree_cap: Option<u32>,
    pub timeout_sec: Option<u64>,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    pub json: Option<PathBuf>,
    pub unsafe_full_elimination: bool,
    /// Empty means every section.
    pub only: Vec<Section>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cases: CycleType::length_four(),
            degree_cap: None,
            timeout_sec: None,
            samples: 200,
            seed: 0,
            jobs: None,
            json: None,
            unsafe_full_elimination: false,
            only: Vec::new(),
        }
    }
}

/// The parts of the configuration that determine report contents.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub cases: Vec<String>,
    pub degree_cap: Option<u32>,
    pub timeout_sec: Option<u64>,
    pub samples: usize,
    pub seed: u64,
    pub unsafe_full_elimination: bool,
    pub only: Vec<Section>,
}

impl RunConfig {
    pub fn wants(&self, s: Section) -> bool {
        self.only.is_empty() || self.only.contains(&s)
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            cases: self.cases.iter().map(|c| c.csv()).collect(),
            degree_cap: self.degree_cap,
            timeout_sec: self.timeout_sec,
            samples: self.samples,
            seed: self.seed,
            unsafe_full_elimination: self.unsafe_full_elimination,
            only: self.only.clone(),
        }
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            degree_cap: self.degree_cap,
            kernel: KernelOptions {
                caps: Caps {
                    max_degree: None,
                    max_seconds: self.timeout_sec,
                },
                unsafe_full_elimination: self.unsafe_full_elimination,
            },
        }
    }

    pub fn suite_options(&self) -> SuiteOptions {
        SuiteOptions {
            samples: self.samples,
            seed: self.seed,
            search: SearchOptions {
                seed: self.seed,
                ..SearchOptions::default()
            },
            ..SuiteOptions::default()
        }
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            seed: self.seed,
            ..SearchOptions::default()
        }
    }

    /// Rejects combinations that cannot run.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.cases.is_empty() {
            return Err(CliError::Config("no case selected".into()));
        }
        if let Some(d) = self.degree_cap {
            if d < 2 {
                return Err(CliError::Config(format!("--degree-cap must be at least 2, got {d}")));
            }
        }
        if self.samples == 0 {
            return Err(CliError::Config("--samples must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        if self.unsafe_full_elimination && self.timeout_sec.is_none() {
            return Err(CliError::Config(
                "--unsafe-full-elimination needs --timeout-sec".into(),
            ));
        }
        Ok(())
    }

    /// Runs `f` on a pool sized by `jobs`.
    pub fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            b = b.num_threads(j);
        }
        let pool = b.build().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(pool.install(f))
    }
}

/// Parses a case selector: `1,1,2`, `1^2,2`, `[2^2]`, or `all`.
pub fn parse_cases(s: &str) -> Result<Vec<CycleType>, CliError> {
    let s = s.trim();
    let s = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    if s == "all" {
        return Ok(CycleType::length_four());
    }
    let mut mults = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        let (m, e) = match tok.split_once('^') {
            Some((m, e)) => (m, e),
            None => (tok, "1"),
        };
        let bad = || CliError::Config(format!("invalid case selector '{s}'"));
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let e: usize = e.trim().parse().map_err(|_| bad())?;
        mults.extend(std::iter::repeat(m).take(e));
    }
    let cycle = CycleType::new(mults).map_err(|e| CliError::Config(e.to_string()))?;
    if cycle.total_length() != 4 {
        return Err(CliError::Config(format!("case '{s}' does not have length four")));
    }
    Ok(vec![cycle])
}
