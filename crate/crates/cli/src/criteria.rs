//! The reproduction run: every case report, regrouped into the seven
//! acceptance criteria, plus the exact checks that only the criteria need.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use ogfiber_core::exactpoly::{format_scalar, rat, Monomial, MonomialOrder, PolyRing, Polynomial, QMatrix, Scalar};
use ogfiber_core::gitmodel::{CycleType, SliceSampler};
use ogfiber_core::invariants::{
    character_of, format_character, semiinvariant_basis, systematic_survey, CaseGenerators, Novelty,
};
use ogfiber_core::presentations::{quadruple_degree_two, SAMPLE_FIBERS};
use ogfiber_core::report::{summarize, Check, CheckStatus};

use crate::case::{case_report, Timings};
use crate::config::ConfigEcho;
use crate::{load_case, CaseReport, CliError, RunConfig, Section};

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub number: u32,
    pub title: String,
    pub status: CheckStatus,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceReport {
    pub config: ConfigEcho,
    pub status: CheckStatus,
    pub criteria: Vec<Criterion>,
    pub cases: Vec<CaseReport>,
}

/// Wall-clock data of a run, kept out of the report.
#[derive(Clone, Debug, Default)]
pub struct RunTimes {
    pub cases: Vec<Timings>,
    /// Seconds per criterion number.
    pub criteria: Vec<(u32, Duration)>,
}

impl RunTimes {
    pub fn of(&self, number: u32) -> Option<Duration> {
        self.criteria.iter().find(|(n, _)| *n == number).map(|(_, d)| *d)
    }
}

/// Runtime limits in seconds.
pub const RUNTIME_LIMITS: [(u32, u64); 6] = [(1, 10), (2, 60), (3, 60), (4, 300), (5, 600), (6, 300)];

pub fn runtime_limit(number: u32) -> Option<Duration> {
    RUNTIME_LIMITS
        .iter()
        .find(|(n, _)| *n == number)
        .map(|(_, s)| Duration::from_secs(*s))
}

fn criterion_of(case: &str) -> u32 {
    match case {
        "1,1,1,1" => 1,
        "1,1,2" => 2,
        "2,2" => 3,
        "1,3" => 4,
        _ => 5,
    }
}

fn title_of(number: u32) -> &'static str {
    match number {
        1 => "four simple points [1^4]",
        2 => "double point [1^2,2]",
        3 => "two double points [2^2]",
        4 => "triple point [1,3]",
        5 => "quadruple point [4]",
        6 => "stability machinery",
        _ => "determinism",
    }
}

type Tagged = Vec<(Section, Check)>;

fn check(section: Section, id: &str, ok: bool, details: impl Into<String>) -> (Section, Check) {
    (section, Check::new(id, ok, details))
}

fn find<'a>(checks: &'a [Check], id: &str) -> Option<&'a Check> {
    checks.iter().find(|c| c.id == id)
}

fn missing(id: &str) -> Check {
    Check::new(id, false, "check was not produced")
}

fn hilbert_check(report: &CaseReport, expect: &[usize]) -> Option<(Section, Check)> {
    let p = report.presentation.as_ref()?;
    Some(check(
        Section::Relations,
        "hilbert-values",
        p.hilbert == expect,
        format!("{:?}, expected {:?}", p.hilbert, expect),
    ))
}

/// Determinant-unit rows of the generator table.
fn weight_rows(gens: &CaseGenerators) -> Result<Vec<(String, String)>, CliError> {
    gens.generators
        .iter()
        .map(|g| Ok((g.name.clone(), format_character(&character_of(&gens.problem, g)?))))
        .collect()
}

fn table_check(
    id: &str,
    rows: &[(String, String)],
    chi: &str,
    expect: impl Fn(&str) -> Option<&'static str>,
    expect_chi: &str,
) -> (Section, Check) {
    let mut bad = Vec::new();
    for (name, row) in rows {
        match expect(name) {
            Some(e) if e == row => {}
            Some(e) => bad.push(format!("{name}: {row}, table {e}")),
            None => bad.push(format!("{name}: not in the table")),
        }
    }
    if chi != expect_chi {
        bad.push(format!("chi: {chi}, table {expect_chi}"));
    }
    check(
        Section::Generators,
        id,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} rows and chi = {chi} match", rows.len())
        } else {
            bad.join("; ")
        },
    )
}

/// Whether `f - closed` reduces to zero modulo the slice ideal.
fn slice_identity(gens: &CaseGenerators, name: &str, closed: &Polynomial) -> Result<bool, CliError> {
    let f = &gens.get(name).expect("named generator").slice_expr;
    let gb = gens.problem.slice_basis();
    Ok(gb.normal_form(&(f - closed))?.is_zero())
}

fn sp(gens: &CaseGenerators, s: &str) -> Result<Polynomial, CliError> {
    Ok(gens.problem.slice_ring().parse(s)?)
}

fn four_points(gens: &CaseGenerators, report: &CaseReport) -> Result<Tagged, CliError> {
    let mut out = Vec::new();
    let names = ["p_12", "p_13", "p_14", "p_23", "p_24", "p_34"];
    let got = gens.names();
    out.push(check(
        Section::Generators,
        "plucker-generators",
        got == names,
        got.join(", "),
    ));
    let rows = weight_rows(gens)?;
    let chi = format_character(&gens.problem.det_units(gens.problem.chi()));
    out.push(table_check(
        "weight-table",
        &rows,
        &chi,
        |n| {
            Some(match n {
                "p_12" => "-1; 1, 1, 0, 0",
                "p_13" => "-1; 1, 0, 1, 0",
                "p_14" => "-1; 1, 0, 0, 1",
                "p_23" => "-1; 0, 1, 1, 0",
                "p_24" => "-1; 0, 1, 0, 1",
                "p_34" => "-1; 0, 0, 1, 1",
                _ => return None,
            })
        },
        "-2; 1, 1, 1, 1",
    ));
    let dim = semiinvariant_basis(gens, 1)?.dimension();
    out.push(check(
        Section::Relations,
        "degree-one-dimension",
        dim == 2,
        format!("degree-1 semi-invariants span dimension {dim}"),
    ));
    if let Some(c) = hilbert_check(report, &[1, 2, 3, 4]) {
        out.push(c);
    }
    if let Some(p) = &report.presentation {
        out.push((Section::Relations, strict_points(&p.relations)?));
    }
    Ok(out)
}

/// Points of the line cut out by the single linear relation where exactly
/// one coordinate vanishes.
fn strict_points(relations: &[String]) -> Result<Check, CliError> {
    let id = "strict-locus-three-points";
    let ring = PolyRing::from_names(["u_0", "u_1", "u_2"], MonomialOrder::DegRevLex)?;
    let [rel] = relations else {
        return Ok(Check::new(id, false, format!("expected one relation, got {}", relations.len())));
    };
    let l = ring.parse(rel)?;
    let c: Vec<Scalar> = (0..3)
        .map(|i| {
            let mut e = vec![0u16; 3];
            e[i] = 1;
            l.coefficient_of(&Monomial::from_exps(e))
        })
        .collect();
    let linear = l.is_homogeneous() && l.total_degree() == Some(1);
    if !linear || c.iter().any(|x| x.is_zero()) {
        return Ok(Check::new(id, false, format!("relation {rel} is not a linear form in all three coordinates")));
    }
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let mut p = vec![Scalar::zero(); 3];
        p[i] = c[j].clone();
        p[j] = -c[i].clone();
        points.push(p);
    }
    let proportional = |a: &[Scalar], b: &[Scalar]| {
        (0..3).all(|i| (0..3).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
    };
    let distinct = (0..3).all(|a| (a + 1..3).all(|b| !proportional(&points[a], &points[b])));
    let text: Vec<String> = points
        .iter()
        .map(|p| {
            let s: Vec<String> = p.iter().map(format_scalar).collect();
            format!("[{}]", s.join(":"))
        })
        .collect();
    Ok(Check::new(
        id,
        distinct,
        format!("u_0*u_1*u_2 = 0 on {rel} = 0: {}", text.join(", ")),
    ))
}

fn double_point(report: &CaseReport) -> Tagged {
    let mut out = Vec::new();
    if let Some(p) = &report.presentation {
        out.push(check(
            Section::Relations,
            "homogeneous-ring-free",
            p.relations.is_empty(),
            format!("{} relations among u_0, u_1, u_2", p.relations.len()),
        ));
    }
    out.extend(hilbert_check(report, &[1, 3, 6, 10]));
    out
}

fn two_double_points(report: &CaseReport) -> Result<Tagged, CliError> {
    let mut out = Vec::new();
    if let Some(p) = &report.presentation {
        let ring = PolyRing::from_names((0..5).map(|i| format!("u_{i}")), MonomialOrder::DegRevLex)?;
        let want = ring.parse("u_1*u_4 - u_2*u_3")?;
        let mut ok = p.relations.len() == 1;
        if ok {
            let got = ring.parse(&p.relations[0])?;
            ok = (&got - &want).is_zero() || (&got + &want).is_zero();
        }
        out.push(check(
            Section::Relations,
            "single-relation",
            ok,
            format!("relations: {}", p.relations.join("; ")),
        ));
        let q = p.quadric.as_ref();
        out.push(check(
            Section::Relations,
            "quadric-rank-four",
            q.is_some_and(|q| q.rank == 4 && q.singular_dim == 0 && q.section_smooth == Some(true)),
            format!("{q:?}"),
        ));
    }
    out.extend(hilbert_check(report, &[1, 5, 14]));
    Ok(out)
}

fn triple_point(gens: &CaseGenerators, config: &RunConfig) -> Result<Tagged, CliError> {
    let mut out = Vec::new();
    let rows = weight_rows(gens)?;
    let chi = format_character(&gens.problem.det_units(gens.problem.chi()));
    let class = |n: &str| -> &'static str {
        match &n[..2] {
            "xi" => "xi",
            "up" => "upsilon",
            _ => "zeta",
        }
    };
    out.push(table_check(
        "weight-table",
        &rows,
        &chi,
        |n| {
            Some(match class(n) {
                "xi" => "-2; 1, 1",
                "upsilon" => "-3; 1, 3",
                _ => "-3; 2, 0",
            })
        },
        "-2; 1, 1",
    ));
    out.push(table_check(
        "weight-table-exchanged-columns",
        &rows,
        &chi,
        |n| {
            Some(match class(n) {
                "xi" => "-2; 1, 1",
                "upsilon" => "-3; 3, 1",
                _ => "-3; 0, 2",
            })
        },
        "-2; 1, 1",
    ));

    let survey = systematic_survey(gens)?;
    let mut counts = [0usize; 3];
    for e in survey.entries.iter().filter(|e| e.novelty == Novelty::New) {
        let k = rows.iter().find(|(_, r)| *r == e.character).map(|(n, _)| class(n));
        match k {
            Some("xi") => counts[0] += 1,
            Some("upsilon") => counts[1] += 1,
            Some(_) => counts[2] += 1,
            None => {}
        }
    }
    out.push(check(
        Section::Generators,
        "survey-count",
        counts == [5, 7, 7],
        format!(
            "{} independent candidates: {} xi, {} upsilon, {} zeta; expected 5, 7, 7",
            survey.new_count, counts[0], counts[1], counts[2]
        ),
    ));
    out.push(check(
        Section::Generators,
        "survey-covers-generators",
        survey.uncovered.is_empty(),
        if survey.uncovered.is_empty() {
            "every named generator is a polynomial in the independent candidates".to_string()
        } else {
            format!("not covered: {}", survey.uncovered.join(", "))
        },
    ));
    let mut same = Vec::new();
    for (a, b) in [("upsilon_5", "upsilon_3"), ("upsilon_6", "upsilon_4"), ("zeta_5", "zeta_3"), ("zeta_6", "zeta_4")] {
        let other = gens.get(b).expect("named generator").slice_expr.clone();
        if slice_identity(gens, a, &other)? {
            same.push(format!("{a} = {b}"));
        }
    }
    out.push(check(
        Section::Generators,
        "corner-word-coincidences",
        same.len() == 4 && counts == [5, 5, 5],
        format!("on the slice {}; so 5 + 5 + 5 are independent", same.join(", ")),
    ));

    let f1 = sp(gens, "x1*y12 - x2*y11")?;
    let g1 = sp(gens, "y11*y22 - y12*y21")?;
    let fg = &f1 * &g1;
    let mut bad = Vec::new();
    for (name, c) in [("xi_3", "a21*a32"), ("xi_4", "a21*b32"), ("xi_5", "b21*b32")] {
        if !slice_identity(gens, name, &(&sp(gens, c)? * &fg))? {
            bad.push(name);
        }
    }
    out.push(check(
        Section::Relations,
        "claim-cross-identities",
        bad.is_empty(),
        if bad.is_empty() {
            "xi_3, xi_4, xi_5 = a_1 a_3, a_1 b_3, b_1 b_3 times f_1 g_1 on the slice".to_string()
        } else {
            format!("fails for {}", bad.join(", "))
        },
    ));
    out.push(samples_check(config, 100));
    Ok(out)
}

fn samples_check(config: &RunConfig, need: usize) -> (Section, Check) {
    check(
        Section::Stability,
        "sample-count",
        config.samples >= need,
        format!("{} sampled slice points, at least {need} required", config.samples),
    )
}

/// Rank deficiency of the evaluations of all degree-two monomials in the
/// generators at random slice points.
pub fn evaluation_kernel_dimension(gens: &CaseGenerators, seed: u64, points: usize) -> Result<usize, CliError> {
    let problem = &gens.problem;
    let n = gens.generators.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            pairs.push((i, j));
        }
    }
    let mut sampler = SliceSampler::new(seed);
    let mut rows = Vec::with_capacity(points);
    for _ in 0..points {
        let p = sampler.sample(problem);
        let coords = p.slice_coords(problem)?;
        let v: Vec<Scalar> = gens.generators.iter().map(|g| g.slice_expr.eval(&coords)).collect();
        rows.push(pairs.iter().map(|&(i, j)| &v[i] * &v[j]).collect());
    }
    Ok(pairs.len() - QMatrix::from_rows(rows).rank())
}

fn quadruple_point(gens: &CaseGenerators, config: &RunConfig) -> Result<Tagged, CliError> {
    let mut out = Vec::new();
    let rows = weight_rows(gens)?;
    let chi = format_character(&gens.problem.det_units(gens.problem.chi()));
    let uniform = rows.len() == 10 && gens.generators.iter().all(|g| g.degree == Some(1));
    out.push(check(
        Section::Generators,
        "uniform-weight",
        uniform && rows.iter().all(|(_, r)| *r == chi),
        format!("{} generators, chi = {chi}", rows.len()),
    ));

    let (graded, _) = quadruple_degree_two(gens)?;
    let seeds = [config.seed, config.seed.wrapping_add(1), config.seed.wrapping_add(2)];
    let dims = seeds
        .iter()
        .map(|&s| evaluation_kernel_dimension(gens, s, 80))
        .collect::<Result<Vec<_>, _>>()?;
    out.push(check(
        Section::Relations,
        "degree-two-oracle",
        dims.iter().all(|&d| d == graded),
        format!("graded kernel dimension {graded}; evaluation oracle {dims:?} at seeds {seeds:?}"),
    ));

    let want = [[1, 0], [0, 1], [1, 1], [1, 2], [2, 1]];
    out.push(check(
        Section::Relations,
        "sample-fibers",
        want.iter().all(|t| SAMPLE_FIBERS.contains(t)),
        format!("fibers {SAMPLE_FIBERS:?}"),
    ));

    let p12 = sp(gens, "x11*x22 - x12*x21")?;
    let p13 = sp(gens, "x11*x32 - x12*x31")?;
    let q = &p12 * &p12;
    let r = &p12 * &p13;
    let form = |a: &str, b: Option<&str>| -> Result<Polynomial, CliError> {
        let mut f = &sp(gens, a)? * &q;
        if let Some(b) = b {
            f = &f + &(&sp(gens, b)? * &r);
        }
        Ok(f)
    };
    let xi9 = (
        "a42*b21*b32 - a32*b21*b42 - a32*b31*b43 + a31*b32*b43",
        Some("a43*b21*b32 - a21*b32*b43"),
    );
    let xi10 = (
        "a32*a43*b31 - a21*a42*b32 - a31*a43*b32 + a21*a32*b42",
        Some("a21*a32*b43 - a32*a43*b21"),
    );
    let verbatim = [
        ("xi_4", ("2*a21*a32^2*a43", None)),
        ("xi_5", ("2*a21*a32*a43*b32", None)),
        ("xi_6", ("2*a21*a32*b32*b43 + 2*a32*a43*b21*b32", None)),
        ("xi_7", ("2*a32*b21*b32*b43", None)),
        ("xi_8", ("2*b21*b32^2*b43", None)),
        ("xi_9", xi9),
        ("xi_10", xi10),
    ];
    let mut forms = Vec::new();
    for (name, (a, b)) in verbatim {
        let f = form(a, b)?;
        let ok = slice_identity(gens, name, &f)?;
        let text = match b {
            Some(b) => format!("({a})*p_12^2 + ({b})*p_12*p_13"),
            None => format!("({a})*p_12^2"),
        };
        out.push(check(
            Section::Relations,
            &format!("claim-{name}"),
            ok,
            format!("{name} = {text} on the slice: {ok}"),
        ));
        forms.push((name, f));
    }
    let half = Polynomial::constant(gens.problem.slice_ring(), rat(1, 2));
    let halved = &forms[2].1 * &half;
    let ok6 = slice_identity(gens, "xi_6", &halved)?;
    out.push(check(
        Section::Relations,
        "claim-xi_6-halved",
        ok6,
        format!("xi_6 = (a21*a32*b32*b43 + a32*a43*b21*b32)*p_12^2 on the slice: {ok6}"),
    ));
    let ok910 = slice_identity(gens, "xi_9", &forms[6].1)? && slice_identity(gens, "xi_10", &forms[5].1)?;
    out.push(check(
        Section::Relations,
        "claim-xi_9-xi_10-exchanged",
        ok910,
        format!("xi_9 and xi_10 equal each other's stated forms: {ok910}"),
    ));

    out.push((Section::Relations, special_family(gens)?));
    out.push(samples_check(config, 100));
    Ok(out)
}

/// `psi` with rows `e_1, 0, e_2, 0` and only `A21, A43, B21, B43` nonzero.
fn special_family(gens: &CaseGenerators) -> Result<Check, CliError> {
    let s = gens.problem.slice_ring();
    let mut img: Vec<Polynomial> = s.gens();
    for (v, name) in s.vars().names().iter().enumerate() {
        img[v] = match name.as_str() {
            "x11" | "x32" => Polynomial::one(s),
            "a21" | "a43" | "b21" | "b43" => img[v].clone(),
            _ => Polynomial::zero(s),
        };
    }
    let at = |name: &str| gens.get(name).expect("named generator").slice_expr.substitute(s, &img);
    let mut bad = Vec::new();
    for (name, c) in [
        ("xi_1", "-2*a21*a43"),
        ("xi_2", "-a21*b43 - a43*b21"),
        ("xi_3", "-2*b21*b43"),
    ] {
        if at(name) != s.parse(c)? {
            bad.push(format!("{name} = {}", at(name)));
        }
    }
    for k in 4..=10 {
        let f = at(&format!("xi_{k}"));
        if !f.is_zero() {
            bad.push(format!("xi_{k} = {f}"));
        }
    }
    Ok(Check::new(
        "claim-special-family",
        bad.is_empty(),
        if bad.is_empty() {
            "xi_1 = -2 a_1 a_6, xi_2 = -a_1 b_6 - a_6 b_1, xi_3 = -2 b_1 b_6, xi_4..xi_10 = 0".to_string()
        } else {
            bad.join("; ")
        },
    ))
}

/// Checks of one case criterion and its stability-machinery share.
fn case_criteria(gens: &CaseGenerators, report: &CaseReport, config: &RunConfig) -> Result<(Tagged, Tagged), CliError> {
    let csv = gens.problem.cycle().csv();
    let mut own: Tagged = Vec::new();
    let mut machinery: Tagged = Vec::new();
    if let Some(p) = &report.presentation {
        own.extend(p.checks.iter().map(|c| (Section::Relations, c.clone())));
    }
    let extras = match csv.as_str() {
        "1,1,1,1" => four_points(gens, report)?,
        "1,1,2" => double_point(report),
        "2,2" => two_double_points(report)?,
        "1,3" => triple_point(gens, config)?,
        _ => quadruple_point(gens, config)?,
    };
    own.extend(extras);
    if let Some(s) = &report.stability {
        for id in ["strict-locus-agreement", "strata-reached"] {
            own.push((Section::Stability, find(&s.checks, id).cloned().unwrap_or_else(|| missing(id))));
        }
        let prefix = report.case.as_str();
        for c in &s.checks {
            if c.id.starts_with("strict-locus") || c.id == "strata-reached" {
                continue;
            }
            machinery.push((
                Section::Stability,
                Check {
                    id: format!("{prefix} {}", c.id),
                    ..c.clone()
                },
            ));
        }
        machinery.push((
            Section::Stability,
            Check::new(
                &format!("{prefix} sample-count"),
                s.samples >= 200,
                format!("{} points, at least 200 required", s.samples),
            ),
        ));
    }
    Ok((own, machinery))
}

struct CaseOutcome {
    report: CaseReport,
    own: Tagged,
    machinery: Tagged,
    timings: Timings,
}

fn run_case(case: &CycleType, config: &RunConfig) -> Result<CaseOutcome, CliError> {
    let start = Instant::now();
    let gens = load_case(case)?;
    let setup = start.elapsed();
    let (report, mut timings) = case_report(&gens, config)?;
    timings.sections.insert(0, ("generators".into(), setup));
    let start = Instant::now();
    let (own, machinery) = case_criteria(&gens, &report, config)?;
    timings.sections.push(("criteria".into(), start.elapsed()));
    Ok(CaseOutcome { report, own, machinery, timings })
}

fn close(number: u32, tagged: Tagged, config: &RunConfig) -> Option<Criterion> {
    let checks: Vec<Check> = tagged
        .into_iter()
        .filter(|(s, _)| config.wants(*s))
        .map(|(_, c)| c)
        .collect();
    (!checks.is_empty()).then(|| Criterion {
        number,
        title: title_of(number).to_string(),
        status: summarize(&checks),
        checks,
    })
}

/// Criteria 1 to 6 and the case reports.
fn run_once(config: &RunConfig) -> Result<(Vec<Criterion>, Vec<CaseReport>, RunTimes), CliError> {
    let outcomes = config.in_pool(|| {
        config
            .cases
            .par_iter()
            .map(|c| run_case(c, config))
            .collect::<Result<Vec<_>, CliError>>()
    })??;
    let mut criteria = Vec::new();
    let mut times = RunTimes::default();
    let mut machinery = Vec::new();
    let mut stability_time = Duration::ZERO;
    let mut ordered: Vec<&CaseOutcome> = outcomes.iter().collect();
    ordered.sort_by_key(|o| criterion_of(&o.timings.case));
    for o in ordered {
        let n = criterion_of(&o.timings.case);
        if let Some(c) = close(n, o.own.clone(), config) {
            criteria.push(c);
        }
        times.criteria.push((n, o.timings.total()));
        machinery.extend(o.machinery.iter().cloned());
        stability_time += o
            .timings
            .sections
            .iter()
            .filter(|(s, _)| s == "stability")
            .map(|(_, d)| *d)
            .sum::<Duration>();
    }
    if let Some(c) = close(6, machinery, config) {
        criteria.push(c);
        times.criteria.push((6, stability_time));
    }
    times.cases = outcomes.iter().map(|o| o.timings.clone()).collect();
    let reports = outcomes.into_iter().map(|o| o.report).collect();
    Ok((criteria, reports, times))
}

/// Runs every criterion for the selected cases; criterion 7 repeats the run
/// and compares the serialized reports byte for byte.
pub fn cmd_reproduce(config: &RunConfig) -> Result<(ReproduceReport, RunTimes), CliError> {
    config.validate()?;
    let (mut criteria, cases, mut times) = run_once(config)?;
    let first = crate::to_json(&(&criteria, &cases));
    let again = Instant::now();
    let (criteria2, cases2, _) = run_once(config)?;
    let second = crate::to_json(&(&criteria2, &cases2));
    let same = first == second;
    let diff_at = first
        .bytes()
        .zip(second.bytes())
        .position(|(a, b)| a != b)
        .unwrap_or(first.len().min(second.len()));
    criteria.push(Criterion {
        number: 7,
        title: title_of(7).to_string(),
        status: if same { CheckStatus::Pass } else { CheckStatus::Fail },
        checks: vec![Check::new(
            "repeat-run-identical",
            same,
            if same {
                format!("two runs serialize to the same {} bytes", first.len())
            } else {
                format!("reports differ from byte {diff_at}")
            },
        )],
    });
    times.criteria.push((7, again.elapsed()));
    let status = summarize(&criteria.iter().flat_map(|c| c.checks.clone()).collect::<Vec<_>>());
    Ok((
        ReproduceReport {
            config: config.echo(),
            status,
            criteria,
            cases,
        },
        times,
    ))
}

/// Pass/fail matrix rendered from a report.
pub fn render_matrix(report: &ReproduceReport, times: Option<&RunTimes>) -> String {
    let mut out = String::new();
    for c in &report.criteria {
        let time = times.and_then(|t| t.of(c.number)).map(|d| {
            let limit = runtime_limit(c.number)
                .map(|l| format!(" / {} s", l.as_secs()))
                .unwrap_or_default();
            format!("  ({:.1} s{limit})", d.as_secs_f64())
        });
        out.push_str(&format!(
            "criterion {} {:<28} {}{}\n",
            c.number,
            c.title,
            status_word(c.status),
            time.unwrap_or_default()
        ));
        for k in c.checks.iter().filter(|k| !k.passed()) {
            out.push_str(&format!("    {} {}: {}\n", status_word(k.status), k.id, k.details));
        }
    }
    out
}

pub fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Capped => "CAPPED",
    }
}

/// Criteria whose measured runtime exceeds the limit.
pub fn over_limit(times: &RunTimes) -> Vec<(u32, Duration, Duration)> {
    times
        .criteria
        .iter()
        .filter_map(|&(n, d)| runtime_limit(n).filter(|l| d > *l).map(|l| (n, d, l)))
        .collect()
}
