//! Presentations of the homogeneous invariant rings: relation ideals among
//! the chosen generators, comparison with the stated relations, Hilbert
//! values, quadric analysis and the scroll model of the quadruple-point
//! case.

mod quadric;
mod scroll;

pub use quadric::{quadric_report, same_span, QuadricReport};
pub use scroll::{scroll_check, FiberCheck, PullbackCheck, ScrollModel, SAMPLE_FIBERS};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{int, Monomial, PolyError, PolyMatrix, PolyRing, Polynomial, QMatrix, Scalar};
use crate::gitmodel::CycleType;
use crate::groebner::{
    graded_kernel_upto, groebner_basis, ring_map_kernel, Caps, ElimOptions, GbError, GradedKernel,
    Ideal, Membership, Subalgebra, WeightedGenerators,
};
use crate::invariants::{CaseGenerators, InvariantError};
use crate::report::Check;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(GbError),
    #[error("computation capped: {0}")]
    Capped(String),
    #[error("full elimination for {0} is not run without the explicit override and a timeout")]
    RequiresOverride(String),
    #[error("verification degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("presentation is verified to degree {have}, degree {need} requested")]
    InsufficientDegree { have: u32, need: u32 },
    #[error("'{0}' is not a homogeneous quadric")]
    NotQuadratic(String),
    #[error("'{0}' is not a linear form")]
    NotLinear(String),
    #[error("cycle type {0} has no presentation data")]
    Unsupported(String),
}

impl From<GbError> for PresentationError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::Capped { .. } | GbError::BeyondCap { .. } => PresentationError::Capped(e.to_string()),
            other => PresentationError::Gb(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Full,
    VerifiedToDegree(u32),
}

impl Completeness {
    fn covers(&self, n: u32) -> bool {
        match self {
            Completeness::Full => true,
            Completeness::VerifiedToDegree(d) => n <= *d,
        }
    }
}

/// Which generator system a presentation is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TagSet {
    /// Degree-one elements generating the homogeneous ring (`u_i`, or the
    /// `xi_i` when those already have weight `chi`).
    Homogeneous,
    /// The named generators of the invariant ring.
    Generators,
}

#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub case: CycleType,
    pub tags: WeightedGenerators,
    pub tag_ring: Arc<PolyRing>,
    pub relations: Vec<Polynomial>,
    pub status: Completeness,
}

impl RingPresentation {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.to_string()).collect()
    }
}

/// Degree-one tags as `(name, definition)` over the named generators.
pub(crate) fn homogeneous_definitions(case: &str) -> Option<Vec<(&'static str, &'static str)>> {
    Some(match case {
        "1,1,1,1" => vec![("u_0", "p_12*p_34"), ("u_1", "p_13*p_24"), ("u_2", "p_14*p_23")],
        "1,1,2" => vec![("u_0", "xi_1*xi_2"), ("u_1", "xi_5"), ("u_2", "xi_6")],
        "2,2" => vec![
            ("u_0", "zeta_1*zeta_2"),
            ("u_1", "zeta_3"),
            ("u_2", "zeta_4"),
            ("u_3", "zeta_5"),
            ("u_4", "zeta_6"),
        ],
        "1,3" => vec![("xi_1", "xi_1"), ("xi_2", "xi_2"), ("xi_3", "xi_3"), ("xi_4", "xi_4"), ("xi_5", "xi_5")],
        "4" => vec![
            ("xi_1", "xi_1"),
            ("xi_2", "xi_2"),
            ("xi_3", "xi_3"),
            ("xi_4", "xi_4"),
            ("xi_5", "xi_5"),
            ("xi_6", "xi_6"),
            ("xi_7", "xi_7"),
            ("xi_8", "xi_8"),
            ("xi_9", "xi_9"),
            ("xi_10", "xi_10"),
        ],
        _ => return None,
    })
}

fn csv(gens: &CaseGenerators) -> String {
    gens.problem.cycle().csv()
}

/// Tags with slice images, weights and `chi`.
pub fn tag_system(gens: &CaseGenerators, set: TagSet) -> Result<WeightedGenerators, PresentationError> {
    let case = csv(gens);
    let all = gens.weighted_slice();
    let chosen: Vec<(String, String)> = match (set, case.as_str()) {
        (TagSet::Generators, "1,3") => homogeneous_definitions("1,3")
            .unwrap()
            .into_iter()
            .map(|(n, d)| (n.to_string(), d.to_string()))
            .collect(),
        (TagSet::Generators, _) => return Ok(all),
        (TagSet::Homogeneous, c) => homogeneous_definitions(c)
            .ok_or_else(|| PresentationError::Unsupported(c.to_string()))?
            .into_iter()
            .map(|(n, d)| (n.to_string(), d.to_string()))
            .collect(),
    };
    let gen_ring = all.tag_ring()?;
    let sring = gens.problem.slice_ring();
    let images: Vec<Polynomial> = all.polys.iter().map(|p| p.to_ring(sring)).collect::<Result<_, _>>()?;
    let mut names = Vec::new();
    let mut polys = Vec::new();
    let mut weights = Vec::new();
    for (name, def) in chosen {
        let expr = gen_ring.parse(&def)?;
        let image = expr.substitute(sring, &images);
        let (m, _) = expr.leading_term().expect("nonzero definition");
        let w = m
            .exps()
            .iter()
            .zip(&all.weights)
            .fold(vec![0i64; all.chi.len()], |acc, (&e, w)| {
                acc.iter().zip(w).map(|(a, x)| a + e as i64 * x).collect()
            });
        names.push(name);
        polys.push(image);
        weights.push(w);
    }
    Ok(WeightedGenerators {
        names,
        polys,
        weights,
        chi: all.chi.clone(),
    })
}

/// Relations printed for the case, in the tag ring of `set`.
pub fn stated_relations(gens: &CaseGenerators, set: TagSet) -> Result<Vec<Polynomial>, PresentationError> {
    let tags = tag_system(gens, set)?;
    let r = tags.tag_ring()?;
    let parse = |v: &[&str]| -> Result<Vec<Polynomial>, PresentationError> {
        v.iter().map(|s| r.parse(s).map_err(PresentationError::from)).collect()
    };
    match (csv(gens).as_str(), set) {
        ("1,1,1,1", TagSet::Generators) => parse(&["p_12*p_34 - p_13*p_24 + p_14*p_23"]),
        ("1,1,1,1", TagSet::Homogeneous) => parse(&["u_0 - u_1 + u_2"]),
        ("1,1,2", TagSet::Generators) => parse(&[
            "xi_4*xi_5 - xi_3*xi_6",
            "xi_6*xi_7 - xi_5*xi_8",
            "xi_5*xi_6 - xi_3*xi_8",
            "xi_4*xi_7 - xi_3*xi_8",
            "xi_5^2 - xi_3*xi_7",
            "xi_6^2 - xi_4*xi_8",
        ]),
        ("1,1,2", TagSet::Homogeneous) => Ok(Vec::new()),
        ("2,2", TagSet::Generators) => parse(&["zeta_4*zeta_5 - zeta_3*zeta_6"]),
        ("2,2", TagSet::Homogeneous) => parse(&["u_1*u_4 - u_2*u_3"]),
        ("1,3", _) => parse(&["xi_4^2 - xi_3*xi_5"]),
        ("4", _) => {
            let (minors, forms) = stated_quadruple_forms()?;
            let mut out = minors;
            out.extend(forms);
            out.iter().map(|f| f.to_ring(&r).map_err(PresentationError::from)).collect()
        }
        (c, _) => Err(PresentationError::Unsupported(c.to_string())),
    }
}

fn quadruple_ring() -> Result<Arc<PolyRing>, PresentationError> {
    Ok(PolyRing::from_names(
        (1..=10).map(|i| format!("xi_{i}")),
        crate::exactpoly::MonomialOrder::DegRevLex,
    )?)
}

/// The ten 2x2 minors of the two-row scroll matrix and the three further
/// quadrics of the quadruple-point case.
pub fn stated_quadruple_forms() -> Result<(Vec<Polynomial>, Vec<Polynomial>), PresentationError> {
    let r = quadruple_ring()?;
    let v = |i: usize| r.gen(i - 1);
    let m = PolyMatrix::from_rows(vec![
        vec![v(4), v(5), v(6), v(7), v(9)],
        vec![v(5), v(6), v(7), v(8), -&v(10)],
    ]);
    let minors = m.minors(2)?;
    let forms = [
        "xi_3*xi_6 - 2*xi_2*xi_7 + xi_1*xi_8 - xi_10^2",
        "xi_3*xi_5 - 2*xi_2*xi_6 + xi_1*xi_7 + xi_9*xi_10",
        "xi_3*xi_4 - 2*xi_2*xi_5 + xi_1*xi_6 - xi_9^2",
    ]
    .iter()
    .map(|s| r.parse(s))
    .collect::<Result<Vec<_>, _>>()?;
    Ok((minors, forms))
}

/// Multiple of `chi` carried by a tag monomial.
fn chi_degree(tags: &WeightedGenerators, exps: &[u16]) -> Option<u32> {
    let w = exps
        .iter()
        .zip(&tags.weights)
        .fold(vec![0i64; tags.chi.len()], |acc, (&e, w)| {
            acc.iter().zip(w).map(|(a, x)| a + e as i64 * x).collect()
        });
    let c = tags.chi.iter().position(|&x| x != 0)?;
    let n = w[c] / tags.chi[c];
    (n >= 0 && w.iter().zip(&tags.chi).all(|(a, b)| *a == n * b)).then_some(n as u32)
}

fn relation_degree(tags: &WeightedGenerators, f: &Polynomial) -> Option<u32> {
    f.leading_monomial().and_then(|m| chi_degree(tags, m.exps()))
}

/// Relations among the tags of `set` through degree `d`, by exact linear
/// algebra modulo the slice ideal.
pub fn relations_upto_degree(
    gens: &CaseGenerators,
    set: TagSet,
    d: u32,
) -> Result<(RingPresentation, GradedKernel), PresentationError> {
    if d < 2 {
        return Err(PresentationError::DegreeTooSmall(d));
    }
    let tags = tag_system(gens, set)?;
    let kernel = graded_kernel_upto(&tags, d, &gens.problem.slice_basis())?;
    let tag_ring = tags.tag_ring()?;
    let relations = kernel
        .minimal_relations()
        .iter()
        .map(|r| r.to_ring(&tag_ring))
        .collect::<Result<_, _>>()?;
    Ok((
        RingPresentation {
            case: gens.problem.cycle().clone(),
            tags,
            tag_ring,
            relations,
            status: Completeness::VerifiedToDegree(d),
        },
        kernel,
    ))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KernelOptions {
    pub caps: Caps,
    /// Allows the elimination for the quadruple-point case.
    pub unsafe_full_elimination: bool,
}

/// Complete relation ideal of the tags by elimination.
pub fn full_kernel(
    gens: &CaseGenerators,
    set: TagSet,
    opts: KernelOptions,
) -> Result<RingPresentation, PresentationError> {
    let case = csv(gens);
    if case == "4" && !(opts.unsafe_full_elimination && opts.caps.max_seconds.is_some()) {
        return Err(PresentationError::RequiresOverride(gens.problem.cycle().to_string()));
    }
    let tags = tag_system(gens, set)?;
    let images: Vec<(String, Polynomial)> = tags.names.iter().cloned().zip(tags.polys.iter().cloned()).collect();
    let eo = ElimOptions {
        caps: opts.caps,
        ..ElimOptions::default()
    };
    let kernel = ring_map_kernel(&images, gens.problem.slice_ideal(), eo)?;
    let tag_ring = tags.tag_ring()?;
    let relations = kernel
        .gens()
        .iter()
        .map(|r| r.to_ring(&tag_ring))
        .collect::<Result<_, _>>()?;
    Ok(RingPresentation {
        case: gens.problem.cycle().clone(),
        tags,
        tag_ring,
        relations,
        status: Completeness::Full,
    })
}

fn all_tag_monomials(tags: &WeightedGenerators, n: u32) -> Result<Vec<Vec<u16>>, PresentationError> {
    if n == 0 {
        Ok(vec![vec![0u16; tags.names.len()]])
    } else {
        Ok(tags.monomials_of_degree(n)?)
    }
}

/// Graded dimensions of `Q[tags]/(relations)` for `n = 0..=n_max`.
pub fn hilbert_values(p: &RingPresentation, n_max: u32) -> Result<Vec<usize>, PresentationError> {
    if !p.status.covers(n_max) {
        let have = match p.status {
            Completeness::VerifiedToDegree(d) => d,
            Completeness::Full => unreachable!(),
        };
        return Err(PresentationError::InsufficientDegree { have, need: n_max });
    }
    let mut out = Vec::new();
    let rel_deg: Vec<Option<u32>> = p.relations.iter().map(|r| relation_degree(&p.tags, r)).collect();
    for n in 0..=n_max {
        let mons = all_tag_monomials(&p.tags, n)?;
        let index: std::collections::HashMap<Vec<u16>, usize> =
            mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (r, k) in p.relations.iter().zip(&rel_deg) {
            let Some(k) = *k else { continue };
            if k > n {
                continue;
            }
            for m in all_tag_monomials(&p.tags, n - k)? {
                let prod = r.mul_term(&Monomial::from_exps(m), &int(1));
                let mut row = vec![Scalar::from_integer(0.into()); mons.len()];
                for (mm, c) in prod.terms() {
                    if let Some(&i) = index.get(mm.exps()) {
                        row[i] = c.clone();
                    }
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() || mons.is_empty() {
            0
        } else {
            QMatrix::from_rows(rows).rank()
        };
        out.push(mons.len() - rank);
    }
    Ok(out)
}

/// Normal form of a tag polynomial after substituting the slice images.
fn on_slice(gens: &CaseGenerators, tags: &WeightedGenerators, f: &Polynomial) -> Result<Polynomial, PresentationError> {
    let sring = gens.problem.slice_ring();
    let img = f.substitute(sring, &tags.polys);
    Ok(gens.problem.slice_basis().normal_form(&img)?)
}

/// Mutual membership of two ideals of the same tag ring.
fn ideals_equal(a: &[Polynomial], b: &[Polynomial], ring: &Arc<PolyRing>) -> Result<(bool, Vec<String>), PresentationError> {
    let ga = groebner_basis(&Ideal::new(ring, a.to_vec())?, ring.order(), Caps::none());
    let gb = groebner_basis(&Ideal::new(ring, b.to_vec())?, ring.order(), Caps::none());
    let mut bad = Vec::new();
    for f in b {
        if !ga.normal_form(f)?.is_zero() {
            bad.push(f.to_string());
        }
    }
    for f in a {
        if !gb.normal_form(f)?.is_zero() {
            bad.push(f.to_string());
        }
    }
    Ok((bad.is_empty(), bad))
}

fn join(v: &[String]) -> String {
    v.join("; ")
}

fn substitution_check(gens: &CaseGenerators, set: TagSet) -> Result<Check, PresentationError> {
    let tags = tag_system(gens, set)?;
    let stated = stated_relations(gens, set)?;
    let mut bad = Vec::new();
    for f in &stated {
        let nf = on_slice(gens, &tags, f)?;
        if !nf.is_zero() {
            bad.push(format!("{f} -> {nf}"));
        }
    }
    let id = match set {
        TagSet::Generators => "stated-relations-vanish",
        TagSet::Homogeneous => "stated-homogeneous-relations-vanish",
    };
    Ok(Check::new(
        id,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} relations reduce to 0 on the slice", stated.len())
        } else {
            join(&bad)
        },
    ))
}

fn kernel_check(gens: &CaseGenerators, set: TagSet, opts: KernelOptions) -> Result<Check, PresentationError> {
    let id = match set {
        TagSet::Generators => "kernel-equals-stated",
        TagSet::Homogeneous => "homogeneous-kernel-equals-stated",
    };
    let full = match full_kernel(gens, set, opts) {
        Ok(p) => p,
        Err(PresentationError::Capped(s)) => return Ok(Check::capped(id, s)),
        Err(e) => return Err(e),
    };
    let stated = stated_relations(gens, set)?;
    let (ok, bad) = ideals_equal(&full.relations, &stated, &full.tag_ring)?;
    Ok(Check::new(
        id,
        ok,
        if ok {
            format!("kernel = ({})", join(&full.relation_strings()))
        } else {
            format!("kernel ({}) differs from stated on: {}", join(&full.relation_strings()), join(&bad))
        },
    ))
}

fn graded_agreement_check(gens: &CaseGenerators, d: u32, opts: KernelOptions) -> Result<Check, PresentationError> {
    let id = "graded-agrees-with-full";
    let (graded, _) = relations_upto_degree(gens, TagSet::Homogeneous, d)?;
    let full = match full_kernel(gens, TagSet::Homogeneous, opts) {
        Ok(p) => p,
        Err(PresentationError::Capped(s)) => return Ok(Check::capped(id, s)),
        Err(e) => return Err(e),
    };
    let low: Vec<Polynomial> = full
        .relations
        .iter()
        .filter(|r| relation_degree(&full.tags, r).is_some_and(|k| k <= d))
        .cloned()
        .collect();
    let (ok, bad) = ideals_equal(&graded.relations, &low, &full.tag_ring)?;
    Ok(Check::new(
        id,
        ok,
        if ok {
            format!("{} minimal relations through degree {d}", graded.relations.len())
        } else {
            join(&bad)
        },
    ))
}

fn one_one_two_products(gens: &CaseGenerators) -> Result<Check, PresentationError> {
    let tags = tag_system(gens, TagSet::Generators)?;
    let r = tags.tag_ring()?;
    let stated = stated_relations(gens, TagSet::Generators)?;
    let gb = groebner_basis(&Ideal::new(&r, stated)?, r.order(), Caps::none());
    let pairs = [
        ("xi_3*xi_7", "xi_5^2"),
        ("xi_3*xi_8", "xi_5*xi_6"),
        ("xi_4*xi_7", "xi_5*xi_6"),
        ("xi_4*xi_8", "xi_6^2"),
    ];
    let mut bad = Vec::new();
    for (a, b) in pairs {
        let d = &r.parse(a)? - &r.parse(b)?;
        if !gb.normal_form(&d)?.is_zero() {
            bad.push(format!("{a} != {b}"));
        }
    }
    Ok(Check::new(
        "degree-two-products-redundant",
        bad.is_empty(),
        if bad.is_empty() {
            "xi_3*xi_7 = u_1^2, xi_3*xi_8 = xi_4*xi_7 = u_1*u_2, xi_4*xi_8 = u_2^2".to_string()
        } else {
            join(&bad)
        },
    ))
}

fn two_two_squares(gens: &CaseGenerators) -> Result<Check, PresentationError> {
    let gb = gens.problem.nilpotency_basis(Caps::none());
    let x1 = gens.helper("X_1").expect("helper X_1");
    let x2 = gens.helper("X_2").expect("helper X_2");
    let mut bad = Vec::new();
    for (name, m) in [("X_1^2", x1.mul(x1)), ("X_1*X_2", x1.mul(x2)), ("X_2*X_1", x2.mul(x1)), ("X_2^2", x2.mul(x2))] {
        for e in m.entries() {
            if !gb.normal_form(e)?.is_zero() {
                bad.push(name.to_string());
                break;
            }
        }
    }
    Ok(Check::new(
        "x-products-vanish",
        bad.is_empty(),
        if bad.is_empty() { "X_1^2 = X_1 X_2 = X_2^2 = 0 modulo I_N".to_string() } else { join(&bad) },
    ))
}

/// Membership of every `upsilon_i zeta_j` in the subalgebra generated by
/// the `xi`, with witnesses in the `xi` tags.
pub fn one_three_products(gens: &CaseGenerators) -> Result<Vec<(String, Option<Polynomial>)>, PresentationError> {
    let xi: Vec<Polynomial> = (1..=5)
        .map(|i| gens.get(&format!("xi_{i}")).expect("xi").slice_expr.clone())
        .collect();
    let sub = Subalgebra::new(&xi, gens.problem.slice_ideal(), ElimOptions::default())?;
    let tags = tag_system(gens, TagSet::Homogeneous)?;
    let xr = tags.tag_ring()?;
    let mut out = Vec::new();
    for i in 1..=7 {
        for j in 1..=7 {
            let u = &gens.get(&format!("upsilon_{i}")).expect("upsilon").slice_expr;
            let z = &gens.get(&format!("zeta_{j}")).expect("zeta").slice_expr;
            let w = match sub.member(&(u * z))? {
                Membership::Yes { witness } => Some(witness.substitute(&xr, &xr.gens())),
                Membership::No => None,
            };
            out.push((format!("upsilon_{i}*zeta_{j}"), w));
        }
    }
    Ok(out)
}

fn one_three_check(gens: &CaseGenerators) -> Result<Check, PresentationError> {
    let res = one_three_products(gens)?;
    let bad: Vec<String> = res.iter().filter(|(_, w)| w.is_none()).map(|(n, _)| n.clone()).collect();
    let sample = res
        .iter()
        .find(|(n, _)| n == "upsilon_2*zeta_5")
        .and_then(|(_, w)| w.as_ref())
        .map(|w| format!("upsilon_2*zeta_5 = {w}"))
        .unwrap_or_default();
    Ok(Check::new(
        "products-in-xi-subalgebra",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all {} products are members; {sample}", res.len())
        } else {
            format!("not members: {}", join(&bad))
        },
    ))
}

/// Dimension of the degree-two relation space of the quadruple-point case
/// and the rank of the stated quadrics inside it.
pub fn quadruple_degree_two(gens: &CaseGenerators) -> Result<(usize, usize), PresentationError> {
    let (_, kernel) = relations_upto_degree(gens, TagSet::Homogeneous, 2)?;
    let dim = kernel.piece(2).map_or(0, |p| p.relations.len());
    let stated = stated_relations(gens, TagSet::Homogeneous)?;
    let tags = tag_system(gens, TagSet::Homogeneous)?;
    let mons = tags.monomials_of_degree(2)?;
    let rows: Vec<Vec<Scalar>> = stated
        .iter()
        .map(|f| {
            mons.iter()
                .map(|e| f.coefficient_of(&Monomial::from_exps(e.clone())))
                .collect()
        })
        .collect();
    Ok((dim, QMatrix::from_rows(rows).rank()))
}

fn quadruple_check(gens: &CaseGenerators) -> Result<Check, PresentationError> {
    let (dim, rank) = quadruple_degree_two(gens)?;
    Ok(Check::new(
        "degree-two-kernel-spanned-by-stated",
        dim == rank,
        format!("degree-2 kernel dimension {dim}; stated quadrics span {rank}"),
    ))
}

/// The case's quadric with its ambient constraints and optional section.
pub fn case_quadric(gens: &CaseGenerators) -> Result<Option<(QuadricReport, Option<QuadricReport>)>, PresentationError> {
    let tags = tag_system(gens, TagSet::Homogeneous)?;
    let r = tags.tag_ring()?;
    Ok(match csv(gens).as_str() {
        "2,2" => {
            let f = r.parse("u_1*u_4 - u_2*u_3")?;
            let section = quadric_report(&f, &[r.parse("u_0")?])?;
            Some((quadric_report(&f, &[])?, Some(section)))
        }
        "1,3" => Some((quadric_report(&r.parse("xi_4^2 - xi_3*xi_5")?, &[])?, None)),
        "4" => {
            let plane: Vec<Polynomial> = (4..=10).map(|i| r.gen(i - 1)).collect();
            Some((quadric_report(&r.parse("xi_1*xi_3 - xi_2^2")?, &plane)?, None))
        }
        _ => None,
    })
}

fn quadric_check(gens: &CaseGenerators) -> Result<Option<Check>, PresentationError> {
    let Some((q, section)) = case_quadric(gens)? else {
        return Ok(None);
    };
    let (rank, sing) = match csv(gens).as_str() {
        "2,2" => (4, 0),
        "1,3" => (3, 1),
        _ => (3, -1),
    };
    let mut ok = q.rank == rank && q.singular_dim == sing;
    let mut details = format!("rank {}, singular locus dimension {}", q.rank, q.singular_dim);
    if let Some(s) = section {
        ok &= s.is_smooth();
        details.push_str(&format!("; section u_0 = 0 smooth: {}", s.is_smooth()));
    }
    Ok(Some(Check::new("quadric", ok, details)))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Degree of the graded computations; `None` uses the case default.
    pub degree_cap: Option<u32>,
    pub kernel: KernelOptions,
}

impl VerifyOptions {
    pub fn degree_for(&self, case: &CycleType) -> u32 {
        self.degree_cap
            .unwrap_or(if case.csv() == "4" { 2 } else { 3 })
            .max(2)
    }
}

/// Runs substitution, ideal-equality and auxiliary checks for the case.
pub fn verify_case(gens: &CaseGenerators, opts: VerifyOptions) -> Result<Vec<Check>, PresentationError> {
    let case = csv(gens);
    let mut checks = vec![substitution_check(gens, TagSet::Generators)?];
    if case == "1,1,1,1" || case == "2,2" || case == "1,1,2" {
        checks.push(substitution_check(gens, TagSet::Homogeneous)?);
    }
    if case == "4" {
        checks.push(quadruple_check(gens)?);
        if opts.kernel.unsafe_full_elimination {
            checks.push(kernel_check(gens, TagSet::Generators, opts.kernel)?);
        }
    } else {
        checks.push(kernel_check(gens, TagSet::Generators, opts.kernel)?);
        if case != "1,3" {
            checks.push(kernel_check(gens, TagSet::Homogeneous, opts.kernel)?);
        }
        checks.push(graded_agreement_check(gens, opts.degree_for(gens.problem.cycle()), opts.kernel)?);
    }
    match case.as_str() {
        "1,1,2" => checks.push(one_one_two_products(gens)?),
        "2,2" => checks.push(two_two_squares(gens)?),
        "1,3" => checks.push(one_three_check(gens)?),
        _ => {}
    }
    if let Some(c) = quadric_check(gens)? {
        checks.push(c);
    }
    if case == "4" {
        let s = scroll_check()?;
        checks.push(Check::new(
            "scroll-pullbacks",
            s.pullback_ok,
            s.pullbacks
                .iter()
                .map(|p| format!("{} = ({})*strict", p.form, p.cofactor.as_deref().unwrap_or("none")))
                .collect::<Vec<_>>()
                .join("; "),
        ));
        checks.push(Check::new(
            "scroll-fibers",
            s.fibers.iter().all(|f| f.ok),
            s.fibers
                .iter()
                .map(|f| format!("[{}:{}] {}", f.t[0], f.t[1], f.vertex_line))
                .collect::<Vec<_>>()
                .join("; "),
        ));
        checks.push(Check::new("scroll-envelope", s.envelope_ok, format!("envelope ({})", s.envelope)));
    }
    Ok(checks)
}

/// Degree through which Hilbert values are reported by default.
pub fn default_hilbert_degree(case: &CycleType) -> u32 {
    match case.csv().as_str() {
        "2,2" | "4" => 2,
        _ => 3,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadricSummary {
    pub rank: usize,
    pub singular_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section_smooth: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScrollSummary {
    pub pullback_ok: bool,
    pub fibers: Vec<FiberCheck>,
    pub envelope: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub case: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub status: Completeness,
    pub hilbert: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadric: Option<QuadricSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scroll: Option<ScrollSummary>,
    pub checks: Vec<Check>,
}

/// Presentation of the homogeneous ring with all verification data.
pub fn presentation_report(gens: &CaseGenerators, opts: VerifyOptions) -> Result<PresentationReport, PresentationError> {
    let case = gens.problem.cycle();
    let quadruple = case.csv() == "4";
    let pres = if quadruple && !opts.kernel.unsafe_full_elimination {
        relations_upto_degree(gens, TagSet::Homogeneous, opts.degree_for(case))?.0
    } else {
        full_kernel(gens, TagSet::Homogeneous, opts.kernel)?
    };
    let hilbert = hilbert_values(&pres, default_hilbert_degree(case).min(match pres.status {
        Completeness::Full => u32::MAX,
        Completeness::VerifiedToDegree(d) => d,
    }))?;
    let quadric = case_quadric(gens)?.map(|(q, s)| QuadricSummary {
        rank: q.rank,
        singular_dim: q.singular_dim,
        section_smooth: s.map(|s| s.is_smooth()),
    });
    let scroll = if quadruple {
        let s = scroll_check()?;
        Some(ScrollSummary {
            pullback_ok: s.pullback_ok,
            fibers: s.fibers,
            envelope: s.envelope,
        })
    } else {
        None
    };
    let checks = verify_case(gens, opts)?;
    Ok(PresentationReport {
        case: case.to_string(),
        generators: pres.tags.names.clone(),
        relations: pres.relation_strings(),
        status: pres.status,
        hilbert,
        quadric,
        scroll,
        checks,
    })
}

#[cfg(test)]
mod tests;
