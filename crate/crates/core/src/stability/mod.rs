//! GIT (semi)stability of explicit points.
//!
//! The verdict is decided by the image-dimension criterion: for every line
//! `W = C w` in `V`, the submodule generated by `psi(w)` must have length at
//! least half the total length (strictly more for stability). The length is
//! the rank of `M(w)`, whose columns are `A^i B^j psi_k w` per factor; a rank
//! bound for all `w` is a statement about the common roots of the minors of
//! `M(w)`, which are binary forms.

mod search;
mod strata;
mod suite;
#[cfg(test)]
mod tests;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{binary_form_gcd, binary_ring, PolyError, PolyMatrix, Polynomial, QMatrix};
use crate::groebner::GbError;
use crate::gitmodel::{enumerate_words, GITProblem, ModelError, PointY, Which};
use crate::invariants::{CaseGenerators, InvariantError};

pub use search::{destabilizer_search, verify_certificate, BaseChange, CertificateCheck, Destabilizer, SearchOptions};
pub use strata::{classify_stratum, homogeneous_values, strict_locus, Stratum, StratumReport};
pub use suite::{
    special_point, stability_suite, suite_points, tabulated_cases, tabulated_destabilizers, with_values, StabilitySuite,
    SuiteOptions,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error("point is {0}, not strictly semistable")]
    NotStrictlySemistable(Verdict),
    #[error("no stratum description for case {0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "stable",
            Verdict::StrictlySemistable => "strictly-semistable",
            Verdict::Unstable => "unstable",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub surjective: bool,
    /// gcd of the minors at the semistability threshold (2x2 in length four);
    /// `"0"` when every minor vanishes.
    pub gcd2: String,
    /// gcd of the minors at the stability threshold (3x3 in length four).
    pub gcd3: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub destabilizer: Option<Destabilizer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<StratumReport>,
}

/// Minimal rank of `M(w)` for semistability and for stability.
pub fn rank_thresholds(problem: &GITProblem) -> (usize, usize) {
    let n = problem.cycle().total_length() as usize;
    (n.div_ceil(2), n / 2 + 1)
}

fn word(a: &QMatrix, b: &QMatrix, i: u32, j: u32) -> QMatrix {
    let mut out = QMatrix::identity(a.rows());
    for _ in 0..i {
        out = out.mul(a);
    }
    for _ in 0..j {
        out = out.mul(b);
    }
    out
}

/// For each factor, `A^i B^j psi_k` over the identity and the nonzero words.
fn orbit_blocks(problem: &GITProblem, p: &PointY) -> Vec<Vec<QMatrix>> {
    problem
        .factors()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let a = p.nil(problem, k, Which::A);
            let b = p.nil(problem, k, Which::B);
            let psi = p.psi(problem, k);
            std::iter::once((0, 0))
                .chain(enumerate_words(f.m as u32))
                .map(|(i, j)| word(&a, &b, i, j).mul(&psi))
                .collect()
        })
        .collect()
}

/// Whether `psi` generates every factor as a module over its word algebra.
pub fn is_surjective(problem: &GITProblem, p: &PointY) -> bool {
    orbit_blocks(problem, p).iter().zip(problem.factors()).all(|(mats, f)| {
        let rows = (0..f.m)
            .map(|r| mats.iter().flat_map(|m| [m[(r, 0)].clone(), m[(r, 1)].clone()]).collect())
            .collect();
        QMatrix::from_rows(rows).rank() == f.m
    })
}

/// `M(w)` over `Q[w1, w2]`, block diagonal with one block per factor.
pub fn module_matrix(problem: &GITProblem, p: &PointY) -> PolyMatrix {
    let ring = binary_ring();
    let w = ring.gens();
    let blocks = orbit_blocks(problem, p);
    let nrows: usize = problem.factors().iter().map(|f| f.m).sum();
    let ncols: usize = blocks.iter().map(Vec::len).sum();
    let mut out = PolyMatrix::zeros(&ring, nrows, ncols);
    let (mut r0, mut c0) = (0, 0);
    for (mats, f) in blocks.iter().zip(problem.factors()) {
        for (c, m) in mats.iter().enumerate() {
            for r in 0..f.m {
                let e = &(&w[0] * &Polynomial::constant(&ring, m[(r, 0)].clone()))
                    + &(&w[1] * &Polynomial::constant(&ring, m[(r, 1)].clone()));
                out.set(r0 + r, c0 + c, e);
            }
        }
        r0 += f.m;
        c0 += mats.len();
    }
    out
}

/// gcd of all `k x k` minors; zero when they all vanish.
fn minor_gcd(m: &PolyMatrix, k: usize) -> Result<Polynomial, PolyError> {
    let ring = binary_ring();
    if k > m.rows().min(m.cols()) {
        return Ok(Polynomial::zero(&ring));
    }
    let minors: Vec<Polynomial> = m.minors(k)?.into_iter().filter(|f| !f.is_zero()).collect();
    if minors.is_empty() {
        return Ok(Polynomial::zero(&ring));
    }
    binary_form_gcd(&minors, 0, 1)
}

fn is_unit(f: &Polynomial) -> bool {
    !f.is_zero() && f.is_constant()
}

/// Verdict by the image-dimension criterion, with the gcd certificates.
pub fn semistability_status(problem: &GITProblem, p: &PointY) -> Result<StabilityReport, StabilityError> {
    let surjective = is_surjective(problem, p);
    let m = module_matrix(problem, p);
    let (kss, ks) = rank_thresholds(problem);
    let g_ss = minor_gcd(&m, kss)?;
    let g_s = minor_gcd(&m, ks)?;
    let verdict = if !surjective || !is_unit(&g_ss) {
        Verdict::Unstable
    } else if !is_unit(&g_s) {
        Verdict::StrictlySemistable
    } else {
        Verdict::Stable
    };
    Ok(StabilityReport {
        verdict,
        surjective,
        gcd2: g_ss.to_string(),
        gcd3: g_s.to_string(),
        destabilizer: None,
        stratum: None,
    })
}

/// Verdict, a destabilizing subgroup when one is found, and the stratum of a
/// strictly semistable point.
pub fn check_point(gens: &CaseGenerators, p: &PointY, opts: SearchOptions) -> Result<StabilityReport, StabilityError> {
    let problem = &gens.problem;
    let mut report = semistability_status(problem, p)?;
    if report.verdict != Verdict::Stable {
        report.destabilizer = destabilizer_search(problem, p, opts);
    }
    if report.verdict == Verdict::StrictlySemistable {
        report.stratum = Some(strata::stratum_of(gens, p, &report)?);
    }
    Ok(report)
}
