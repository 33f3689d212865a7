//! Strata of strictly semistable points in the case coordinates.

use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::{format_scalar, Scalar};
use crate::gitmodel::PointY;
use crate::invariants::CaseGenerators;
use crate::presentations::homogeneous_definitions;

use super::{semistability_status, StabilityError, StabilityReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stratum {
    /// `[I_Z + I_W]` with `Z != W`.
    #[serde(rename = "sigma0")]
    Sigma0,
    /// `[I_Z^2]`.
    #[serde(rename = "sigma1")]
    Sigma1,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumReport {
    pub stratum: Stratum,
    /// Component of the strictly semistable locus containing the point.
    pub locus: String,
    /// The case's homogeneous coordinates at the point.
    pub coordinates: Vec<(String, String)>,
    /// Whether those coordinates satisfy the case's locus equations.
    pub on_locus: bool,
    /// Binary form vanishing on the lines `W` of minimal image.
    pub destabilizing_lines: String,
}

/// Generator values at `p`, combined into the case's homogeneous coordinates.
pub fn homogeneous_values(gens: &CaseGenerators, p: &PointY) -> Result<Vec<(String, Scalar)>, StabilityError> {
    let case = gens.problem.cycle().csv();
    let defs = homogeneous_definitions(&case).ok_or_else(|| StabilityError::Unsupported(case.clone()))?;
    let ring = gens.weighted_slice().tag_ring()?;
    let problem = &gens.problem;
    let values: Vec<Scalar> = if p.on_slice(problem) {
        let coords = p.slice_coords(problem)?;
        gens.generators.iter().map(|g| g.slice_expr.eval(&coords)).collect()
    } else {
        gens.generators.iter().map(|g| p.eval(&g.expr)).collect()
    };
    defs.into_iter()
        .map(|(name, def)| Ok((name.to_string(), ring.parse(def)?.eval(&values))))
        .collect()
}

/// Locus component and stratum from the coordinates, or `None` off the
/// strictly semistable locus.
pub fn strict_locus(case: &str, coords: &[(String, Scalar)]) -> Option<(String, Stratum)> {
    let v: Vec<&Scalar> = coords.iter().map(|(_, x)| x).collect();
    let zero = |idx: &[usize]| idx.iter().all(|&i| v[i].is_zero());
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    match case {
        "1,1,1,1" => {
            let zeros: Vec<usize> = (0..3).filter(|&i| v[i].is_zero()).collect();
            (zeros.len() == 1).then(|| (format!("u_{} = 0", zeros[0]), Stratum::Sigma0))
        }
        "1,1,2" if zero(&[0]) => Some(("u_0 = 0 (line)".into(), Stratum::Sigma0)),
        "1,1,2" if zero(&[1, 2]) => Some(("u_1 = u_2 = 0 (point)".into(), Stratum::Sigma0)),
        "2,2" if zero(&[1, 2, 3, 4]) => Some(("u_1 = u_2 = u_3 = u_4 = 0 (vertex)".into(), Stratum::Sigma1)),
        "2,2" if zero(&[0]) => Some(("u_0 = 0 (section)".into(), Stratum::Sigma0)),
        "1,3" if zero(&[2, 3, 4]) => Some(("xi_3 = xi_4 = xi_5 = 0 (vertex line)".into(), Stratum::Sigma0)),
        "4" if zero(&[3, 4, 5, 6, 7, 8, 9]) => {
            if (v[0] * v[2] - v[1] * v[1]).is_zero() {
                Some(("xi_1*xi_3 - xi_2^2 = 0 (conic)".into(), Stratum::Sigma1))
            } else {
                Some(("xi_4 = ... = xi_10 = 0 (plane)".into(), Stratum::Sigma0))
            }
        }
        _ => None,
    }
}

pub(super) fn stratum_of(gens: &CaseGenerators, p: &PointY, report: &StabilityReport) -> Result<StratumReport, StabilityError> {
    if report.verdict != Verdict::StrictlySemistable {
        return Err(StabilityError::NotStrictlySemistable(report.verdict));
    }
    let case = gens.problem.cycle().csv();
    let coords = homogeneous_values(gens, p)?;
    let hit = strict_locus(&case, &coords);
    let (locus, stratum, on_locus) = match hit {
        Some((l, s)) => (l, s, true),
        None => ("off the predicted locus".to_string(), Stratum::Sigma0, false),
    };
    Ok(StratumReport {
        stratum,
        locus,
        coordinates: coords.iter().map(|(n, x)| (n.clone(), format_scalar(x))).collect(),
        on_locus,
        destabilizing_lines: report.gcd3.clone(),
    })
}

/// Stratum of a strictly semistable point.
pub fn classify_stratum(gens: &CaseGenerators, p: &PointY) -> Result<StratumReport, StabilityError> {
    let report = semistability_status(&gens.problem, p)?;
    stratum_of(gens, p, &report)
}
