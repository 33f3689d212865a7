use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ogfiber_cli::case::Timings;
use ogfiber_cli::criteria::{over_limit, render_matrix, status_word};
use ogfiber_cli::{
    cmd_case, cmd_check_point, cmd_reproduce, exit_code, parse_cases, to_json, CliError, RunConfig, Section,
};
use ogfiber_core::report::{summarize, Check};

/// Presentations and stability of the GIT fibers over length-four cycles.
#[derive(Parser)]
#[command(name = "ogfiber", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the selected cases.
    Case(Common),
    /// Decide the stability of the point in a JSON file.
    CheckPoint {
        /// Object from variable name to value, optionally wrapped as
        /// `{"case": ..., "values": {...}}`.
        point: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every acceptance criterion and print the pass/fail matrix.
    Reproduce(Common),
}

#[derive(Args)]
struct Common {
    /// Cycle type such as `1,1,2` or `1^2,2`, or `all`; repeatable.
    #[arg(long = "case", value_name = "m1,m2,...")]
    cases: Vec<String>,
    /// Degree of the graded relation computations.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Wall-clock cap for each elimination.
    #[arg(long)]
    timeout_sec: Option<u64>,
    /// Sampled points per stability suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, env = "OGFIBER_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; every core by default.
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Allow the full elimination of the quadruple-point case.
    #[arg(long)]
    unsafe_full_elimination: bool,
    /// Restrict to report sections.
    #[arg(long, value_enum, value_delimiter = ',')]
    only: Vec<Section>,
}

impl Common {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut cases = Vec::new();
        for s in &self.cases {
            for c in parse_cases(s)? {
                if !cases.contains(&c) {
                    cases.push(c);
                }
            }
        }
        let mut config = RunConfig {
            degree_cap: self.degree_cap,
            timeout_sec: self.timeout_sec,
            samples: self.samples,
            seed: self.seed,
            jobs: self.jobs,
            json: self.json.clone(),
            unsafe_full_elimination: self.unsafe_full_elimination,
            only: self.only.clone(),
            ..RunConfig::default()
        };
        if !cases.is_empty() {
            config.cases = cases;
        }
        config.validate()?;
        Ok(config)
    }
}

fn emit(config: &RunConfig, json: &str) -> Result<(), CliError> {
    print!("{json}");
    if let Some(path) = &config.json {
        std::fs::write(path, json)?;
    }
    Ok(())
}

fn report_timings(timings: &[Timings]) {
    for t in timings {
        let parts: Vec<String> = t
            .sections
            .iter()
            .map(|(s, d)| format!("{s} {:.2} s", d.as_secs_f64()))
            .collect();
        eprintln!("case {}: {}", t.case, parts.join(", "));
    }
}

fn list_failures<'a>(checks: impl IntoIterator<Item = &'a Check>) {
    for c in checks.into_iter().filter(|c| !c.passed()) {
        eprintln!("{} {}: {}", status_word(c.status), c.id, c.details);
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Case(common) => {
            let config = common.config()?;
            let (reports, timings) = cmd_case(&config)?;
            let json = if reports.len() == 1 { to_json(&reports[0]) } else { to_json(&reports) };
            emit(&config, &json)?;
            report_timings(&timings);
            let all: Vec<Check> = reports.iter().flat_map(|r| r.all_checks()).cloned().collect();
            list_failures(&all);
            Ok(exit_code(summarize(&all)))
        }
        Command::CheckPoint { point, common } => {
            let explicit = !common.cases.is_empty();
            let config = common.config()?;
            let text = std::fs::read_to_string(&point)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", point.display())))?;
            let report = cmd_check_point(&config, &text, explicit)?;
            emit(&config, &to_json(&report))?;
            list_failures(&report.checks);
            Ok(exit_code(report.status))
        }
        Command::Reproduce(common) => {
            let config = common.config()?;
            let (report, times) = cmd_reproduce(&config)?;
            let json = to_json(&report);
            if let Some(path) = &config.json {
                std::fs::write(path, &json)?;
            }
            print!("{}", render_matrix(&report, Some(&times)));
            report_timings(&times.cases);
            let slow = over_limit(&times);
            for (n, d, l) in &slow {
                eprintln!("criterion {n} took {:.1} s, limit {} s", d.as_secs_f64(), l.as_secs());
            }
            let code = exit_code(report.status);
            Ok(if code == 0 && !slow.is_empty() { 1 } else { code })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
