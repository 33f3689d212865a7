use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use ogfiber_core::exactpoly::{parse_scalar, Scalar};
use ogfiber_core::gitmodel::{nilpotency_violations, CycleType, GITProblem, PointY};
use ogfiber_core::report::{summarize, Check, CheckStatus};
use ogfiber_core::stability::{check_point, StabilityReport, Verdict};

use crate::{load_case, parse_cases, CliError, RunConfig};

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub case: String,
    pub seed: u64,
    pub status: CheckStatus,
    pub report: StabilityReport,
    pub checks: Vec<Check>,
}

/// Splits a point file into its case (when given) and its value map.
///
/// Accepted layouts: a flat object from variable name to value, or
/// `{"case": "1,1,2", "values": {...}}`. Values are integers or strings
/// such as `"-3/4"`.
pub fn parse_point_file(text: &str) -> Result<(Option<CycleType>, BTreeMap<String, Scalar>), CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Point(e.to_string()))?;
    let Value::Object(obj) = v else {
        return Err(CliError::Point("point file must hold a JSON object".into()));
    };
    let (case, values) = match obj.get("values") {
        Some(Value::Object(vals)) => {
            let case = match obj.get("case") {
                Some(Value::String(s)) => Some(parse_cases(s)?.remove(0)),
                Some(other) => return Err(CliError::Point(format!("case must be a string, got {other}"))),
                None => None,
            };
            (case, vals.clone())
        }
        _ => (None, obj),
    };
    let mut out = BTreeMap::new();
    for (k, v) in values {
        let s = match v {
            Value::String(s) => s,
            Value::Number(n) => n.to_string(),
            other => return Err(CliError::Point(format!("value of '{k}' is not a rational: {other}"))),
        };
        let x = parse_scalar(&s).map_err(|e| CliError::Point(format!("{k}: {e}")))?;
        out.insert(k, x);
    }
    Ok((case, out))
}

/// Builds the point, listing every violated nilpotency generator.
pub fn assemble_point(problem: &GITProblem, values: &BTreeMap<String, Scalar>) -> Result<PointY, CliError> {
    let vars = problem.ring().vars();
    let unknown: Vec<&str> = values.keys().filter(|k| vars.index_of(k).is_none()).map(|k| k.as_str()).collect();
    if !unknown.is_empty() {
        return Err(CliError::Point(format!(
            "unknown variables {}; expected names from {}",
            unknown.join(", "),
            vars.names().join(", ")
        )));
    }
    let full: Vec<Scalar> = vars
        .names()
        .iter()
        .map(|n| values.get(n).cloned().unwrap_or_else(Scalar::zero))
        .collect();
    let bad = nilpotency_violations(problem, &full);
    if !bad.is_empty() {
        return Err(CliError::Point(format!(
            "{} nilpotency generators do not vanish:\n  {}",
            bad.len(),
            bad.join("\n  ")
        )));
    }
    Ok(PointY::new(problem, full)?)
}

/// Consistency of a point report: the certificate must agree with the
/// verdict, and a strictly semistable point must lie on its locus.
fn report_checks(r: &StabilityReport) -> Vec<Check> {
    let mut out = Vec::new();
    if let Some(d) = &r.destabilizer {
        let ok = match r.verdict {
            Verdict::Stable => false,
            Verdict::StrictlySemistable => !d.refutes_semistability(),
            Verdict::Unstable => true,
        };
        out.push(Check::new(
            "certificate-consistent",
            ok,
            format!("r = {:?} with pairing {} for a {} point", d.r.0, d.pairing, r.verdict),
        ));
    }
    if let Some(s) = &r.stratum {
        out.push(Check::new("stratum-on-locus", s.on_locus, s.locus.clone()));
    }
    out
}

pub fn cmd_check_point(config: &RunConfig, text: &str, explicit_case: bool) -> Result<PointReport, CliError> {
    let (file_case, values) = parse_point_file(text)?;
    let case = match (file_case, explicit_case) {
        (Some(c), false) => c,
        (Some(c), true) if c != config.cases[0] => {
            return Err(CliError::Config(format!(
                "point file is for {} but --case selects {}",
                c, config.cases[0]
            )))
        }
        (_, true) => config.cases[0].clone(),
        (None, false) => return Err(CliError::Config("point file names no case; pass --case".into())),
    };
    if explicit_case && config.cases.len() != 1 {
        return Err(CliError::Config("check-point takes a single case".into()));
    }
    let gens = load_case(&case)?;
    let p = assemble_point(&gens.problem, &values)?;
    let report = check_point(&gens, &p, config.search_options())?;
    let checks = report_checks(&report);
    Ok(PointReport {
        case: case.to_string(),
        seed: config.seed,
        status: summarize(&checks),
        report,
        checks,
    })
}
