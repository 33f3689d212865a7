//! Randomized consistency suites for the stability machinery.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactpoly::{int, Scalar};
use crate::gitmodel::{GITProblem, GroupElement, OnePS, PointY, SliceSampler};
use crate::invariants::CaseGenerators;
use crate::report::Check;

use super::{
    destabilizer_search, homogeneous_values, semistability_status, strict_locus, verify_certificate, SearchOptions,
    StabilityError, Stratum, Verdict,
};

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub samples: usize,
    pub base_changes: usize,
    pub seed: u64,
    pub search: SearchOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 200,
            base_changes: 100,
            seed: 0,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilitySuite {
    pub case: String,
    pub seed: u64,
    pub samples: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub strata: BTreeMap<String, usize>,
    pub certificates: usize,
    pub checks: Vec<Check>,
}

/// Copy of `p` with some named coordinates replaced.
pub fn with_values(problem: &GITProblem, p: &PointY, changes: &[(&str, Scalar)]) -> Result<PointY, StabilityError> {
    let mut values = p.values().to_vec();
    for (name, x) in changes {
        let i = problem
            .ring()
            .vars()
            .index_of(name)
            .ok_or_else(|| crate::exactpoly::PolyError::UnknownVariable(name.to_string()))?;
        values[i] = x.clone();
    }
    Ok(PointY::new(problem, values)?)
}

/// Slice point on one of the case's strictly semistable families, chosen by
/// `variant`.
pub fn special_point(problem: &GITProblem, rng: &mut ChaCha8Rng, variant: usize) -> Result<PointY, StabilityError> {
    let p = SliceSampler::new(rng.gen()).sample(problem);
    let val = |n: &str| p.value(problem, n).cloned().unwrap_or_else(Scalar::zero);
    let c = int(rng.gen_range(1..=4));
    let zero = Scalar::zero;
    let changes: Vec<(&str, Scalar)> = match problem.cycle().csv().as_str() {
        "1,1,1,1" => vec![("y1", &c * &val("x1")), ("y2", &c * &val("x2"))],
        "1,1,2" => match variant % 3 {
            0 => vec![("z12", zero()), ("z22", zero())],
            1 => vec![("x2", zero()), ("z12", zero())],
            _ => vec![("x2", zero()), ("y2", zero())],
        },
        "2,2" => match variant % 2 {
            0 => vec![("y11", &c * &val("x11")), ("y12", &c * &val("x12"))],
            _ => vec![("x21", &c * &val("x11")), ("x22", &c * &val("x12"))],
        },
        "1,3" => match variant % 2 {
            0 => vec![("y12", zero()), ("y22", zero())],
            _ => vec![("x2", zero()), ("y12", zero())],
        },
        "4" => vec![
            ("x11", int(1)),
            ("x12", zero()),
            ("x21", zero()),
            ("x22", zero()),
            ("x31", zero()),
            ("x32", int(1)),
            ("x41", zero()),
            ("x42", zero()),
        ],
        _ => vec![],
    };
    with_values(problem, &p, &changes)
}

/// Generic, sparse and special points in a fixed interleaving.
pub fn suite_points(problem: &GITProblem, seed: u64, count: usize) -> Result<Vec<PointY>, StabilityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 4 {
            0 => Ok(SliceSampler::new(rng.gen()).sample(problem)),
            1 => Ok(SliceSampler::new(rng.gen()).with_zero_bias(0.3).sample(problem)),
            2 => Ok(SliceSampler::new(rng.gen()).with_zero_bias(0.6).sample(problem)),
            _ => special_point(problem, &mut rng, i / 4),
        })
        .collect()
}

struct Sampled {
    verdict: Verdict,
    nullcone: bool,
    locus: Option<(String, Stratum)>,
    certificate: Option<i64>,
}

pub fn stability_suite(gens: &CaseGenerators, opts: SuiteOptions) -> Result<StabilitySuite, StabilityError> {
    let problem = &gens.problem;
    let case = problem.cycle().csv();
    let points = suite_points(problem, opts.seed, opts.samples)?;
    let sampled: Vec<Sampled> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let report = semistability_status(problem, p)?;
            let coords = homogeneous_values(gens, p)?;
            let search = SearchOptions {
                seed: opts.search.seed ^ (opts.seed.wrapping_mul(1_000_003) + i as u64),
                ..opts.search
            };
            Ok(Sampled {
                verdict: report.verdict,
                nullcone: coords.iter().all(|(_, x)| x.is_zero()),
                locus: strict_locus(&case, &coords),
                certificate: destabilizer_search(problem, p, search).map(|d| d.pairing),
            })
        })
        .collect::<Result<_, StabilityError>>()?;

    let mut verdicts = BTreeMap::new();
    let mut strata = BTreeMap::new();
    for s in &sampled {
        *verdicts.entry(s.verdict.to_string()).or_insert(0) += 1;
        if s.verdict == Verdict::StrictlySemistable {
            if let Some((_, st)) = &s.locus {
                let key = match st {
                    Stratum::Sigma0 => "sigma0",
                    Stratum::Sigma1 => "sigma1",
                };
                *strata.entry(key.to_string()).or_insert(0) += 1;
            }
        }
    }
    let mut checks = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(17));
    let pairs: Vec<(usize, GroupElement)> = (0..opts.base_changes)
        .map(|i| (i % points.len().max(1), GroupElement::random(problem, &mut rng, 3)))
        .collect();
    let agree = pairs
        .par_iter()
        .map(|(i, g)| {
            let q = g.act(problem, &points[*i])?;
            Ok(semistability_status(problem, &q)?.verdict == sampled[*i].verdict)
        })
        .collect::<Result<Vec<bool>, StabilityError>>()?;
    let n_agree = agree.iter().filter(|&&b| b).count();
    checks.push(Check::new(
        "base-change-invariance",
        n_agree == pairs.len(),
        format!("{n_agree}/{} base changes keep the verdict", pairs.len()),
    ));

    let found = sampled.iter().filter(|s| s.certificate.is_some()).count();
    let violations = sampled
        .iter()
        .filter(|s| match s.certificate {
            Some(pr) => s.verdict == Verdict::Stable || (pr < 0 && s.verdict != Verdict::Unstable),
            None => false,
        })
        .count();
    let unrefuted = sampled
        .iter()
        .filter(|s| s.verdict != Verdict::Stable && s.certificate.is_none())
        .count();
    checks.push(Check::new(
        "search-soundness",
        violations == 0,
        format!(
            "{violations} violations; {found} certificates on {} points; {unrefuted} non-stable points without a certificate in the box",
            sampled.len()
        ),
    ));

    let null_bad = sampled
        .iter()
        .filter(|s| (s.verdict == Verdict::Unstable) != s.nullcone)
        .count();
    checks.push(Check::new(
        "nullcone-agreement",
        null_bad == 0,
        format!("{null_bad} points where instability and vanishing of all coordinates disagree"),
    ));

    let locus_bad = sampled
        .iter()
        .filter(|s| (s.verdict == Verdict::StrictlySemistable) != s.locus.is_some())
        .count();
    checks.push(Check::new(
        "strict-locus-agreement",
        locus_bad == 0,
        format!("{locus_bad} points where strict semistability and the locus equations disagree"),
    ));

    let needed: &[&str] = match case.as_str() {
        "2,2" | "4" => &["sigma0", "sigma1"],
        _ => &["sigma0"],
    };
    let reached = needed.iter().all(|k| strata.get(*k).copied().unwrap_or(0) > 0);
    checks.push(Check::new(
        "strata-reached",
        reached,
        format!("strictly semistable samples per stratum: {strata:?}"),
    ));

    if case == "1,1,2" {
        checks.extend(tabulated_destabilizers(problem)?);
    }

    Ok(StabilitySuite {
        case: problem.cycle().to_string(),
        seed: opts.seed,
        samples: sampled.len(),
        verdicts,
        strata,
        certificates: found,
        checks,
    })
}

fn q(v: i64) -> Scalar {
    int(v)
}

/// Hypothesis-matching points for the destabilizing vectors of the
/// `[1^2, 2]` analysis, with the expected verdict.
pub fn tabulated_cases(problem: &GITProblem) -> Result<Vec<([i64; 6], Verdict, PointY)>, StabilityError> {
    let base: Vec<(&str, i64)> = vec![
        ("x1", 1),
        ("x2", 2),
        ("y1", 3),
        ("y2", -1),
        ("z11", 2),
        ("z12", 1),
        ("z21", 1),
        ("z22", 3),
        ("a11", 1),
        ("a12", 1),
        ("a21", -1),
        ("b11", 2),
        ("b12", 2),
        ("b21", -2),
    ];
    let lower = [("a11", 0), ("a12", 0), ("a21", 1), ("b11", 0), ("b12", 0), ("b21", 2)];
    let build = |changes: &[(&str, i64)]| -> Result<PointY, StabilityError> {
        let mut m: std::collections::HashMap<String, Scalar> = base.iter().map(|(n, v)| (n.to_string(), q(*v))).collect();
        for (n, v) in changes {
            m.insert(n.to_string(), q(*v));
        }
        Ok(PointY::from_map(problem, &m)?)
    };
    let cat = |a: &[(&'static str, i64)], b: &[(&'static str, i64)]| [a, b].concat();
    Ok(vec![
        ([0, 0, -1, 0, 0, 0], Verdict::Unstable, build(&[("x1", 0), ("x2", 0)])?),
        (
            [0, 0, 0, 0, -1, -1],
            Verdict::Unstable,
            build(&[("z11", 0), ("z12", 0), ("z21", 0), ("z22", 0)])?,
        ),
        (
            [0, 0, 0, 0, -1, 0],
            Verdict::Unstable,
            build(&cat(&[("z11", 0), ("z12", 0), ("z21", 1), ("z22", 0)], &lower))?,
        ),
        ([0, 1, 0, 1, 0, 0], Verdict::Unstable, build(&[("x2", 0), ("z12", 0), ("z22", 0)])?),
        (
            [0, 1, 0, 0, 0, 1],
            Verdict::Unstable,
            build(&cat(&[("x2", 0), ("y2", 0), ("z12", 0), ("z22", 1)], &lower))?,
        ),
        ([0, 1, 1, 1, 0, 0], Verdict::StrictlySemistable, build(&[("z12", 0), ("z22", 0)])?),
        ([0, 1, 0, 0, 1, 1], Verdict::StrictlySemistable, build(&[("x2", 0), ("y2", 0)])?),
        (
            [0, 1, 0, 1, 0, 1],
            Verdict::StrictlySemistable,
            build(&cat(&[("x2", 0), ("z12", 0)], &lower))?,
        ),
    ])
}

/// Each tabulated vector certifies its point, the search recovers it in the
/// given basis, and the verdict matches.
pub fn tabulated_destabilizers(problem: &GITProblem) -> Result<Vec<Check>, StabilityError> {
    let mut out = Vec::new();
    for (r, expected, p) in tabulated_cases(problem)? {
        let ps = OnePS::new(problem, r.to_vec())?;
        let cert = verify_certificate(problem, &p, &ps)?;
        let verdict = semistability_status(problem, &p)?.verdict;
        let found = destabilizer_search(problem, &p, SearchOptions { radius: 3, trials: 0, seed: 0 });
        let sign_ok = match expected {
            Verdict::Unstable => cert.destabilizing(),
            _ => cert.refutes_stability() && cert.pairing == 0,
        };
        let recovered = found.as_ref().map(|d| d.r.0.as_slice() == r.as_slice()).unwrap_or(false);
        out.push(Check::new(
            format!("tabulated-vector-{}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            sign_ok && recovered && verdict == expected,
            format!(
                "pairing {}, limit {}, verdict {verdict}, search found {:?}",
                cert.pairing,
                cert.limit_exists,
                found.map(|d| d.r.0)
            ),
        ));
    }
    Ok(out)
}
