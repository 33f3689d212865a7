//! Named semi-invariant generators of each length-four case, their
//! characters, infinitesimal invariance checks and graded bases.

pub(crate) mod build;
mod survey;

pub use survey::{systematic_survey, Survey, SurveyEntry};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{format_scalar, int, Monomial, PolyMatrix, Polynomial, Scalar};
use crate::gitmodel::GITProblem;
use crate::groebner::{Caps, Echelon, GbError, GroebnerBasis, Reducer, WeightedGenerators};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("cycle type {0} has no generator construction")]
    Unsupported(String),
    #[error("expression '{0}' is not weight-homogeneous")]
    NotHomogeneous(String),
    #[error(transparent)]
    Gb(#[from] GbError),
}

#[derive(Clone, Debug)]
pub struct NamedInvariant {
    pub name: String,
    /// Construction in words, e.g. `det(A w_1 | w_1)`.
    pub definition: String,
    pub expr: Polynomial,
    /// Restriction to the strictly lower-triangular slice.
    pub slice_expr: Polynomial,
    /// Scalar-slot weight.
    pub weight: Vec<i64>,
    /// `n` with `weight = n chi`, when such `n` exists.
    pub degree: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct CaseGenerators {
    pub problem: Arc<GITProblem>,
    pub generators: Vec<NamedInvariant>,
    /// Intermediate vectors and matrices (full ring).
    pub helpers: Vec<(String, PolyMatrix)>,
}

impl CaseGenerators {
    pub fn get(&self, name: &str) -> Option<&NamedInvariant> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Generators as weighted tags over the slice, for graded kernels.
    pub fn weighted_slice(&self) -> WeightedGenerators {
        WeightedGenerators {
            names: self.names(),
            polys: self.generators.iter().map(|g| g.slice_expr.clone()).collect(),
            weights: self.generators.iter().map(|g| g.weight.clone()).collect(),
            chi: self.problem.chi().to_vec(),
        }
    }

    pub fn helper(&self, name: &str) -> Option<&PolyMatrix> {
        self.helpers.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// Scalar-slot weight of a homogeneous polynomial in the full or slice ring.
pub fn weight_of(problem: &GITProblem, f: &Polynomial) -> Result<Option<Vec<i64>>, InvariantError> {
    let full = problem.ring().vars();
    let map: Vec<usize> = f
        .ring()
        .vars()
        .names()
        .iter()
        .map(|n| full.index_of(n).expect("variable outside the problem registry"))
        .collect();
    let mut w: Option<Vec<i64>> = None;
    for (m, _) in f.terms() {
        let mut exps = vec![0u16; full.len()];
        for v in m.support() {
            exps[map[v]] = m.exp(v);
        }
        let tw = problem.monomial_weight(&exps);
        match &w {
            None => w = Some(tw),
            Some(prev) if *prev != tw => return Err(InvariantError::NotHomogeneous(f.to_string())),
            _ => {}
        }
    }
    Ok(w)
}

fn degree_of(chi: &[i64], w: &[i64]) -> Option<u32> {
    let n = w[0] / chi[0];
    (w[0] % chi[0] == 0 && n >= 0 && chi.iter().zip(w).all(|(c, x)| c * n == *x)).then_some(n as u32)
}

fn named(
    problem: &GITProblem,
    name: String,
    definition: String,
    expr: Polynomial,
    slice_expr: Polynomial,
) -> Result<NamedInvariant, InvariantError> {
    let weight = weight_of(problem, &expr)?
        .ok_or_else(|| InvariantError::NotHomogeneous(format!("{name} is zero")))?;
    let degree = degree_of(problem.chi(), &weight);
    Ok(NamedInvariant { name, definition, expr, slice_expr, weight, degree })
}

const DEF_112: [&str; 8] = [
    "|x; y|",
    "det Z",
    "det(A w_1 | w_1)",
    "det(B w_1 | w_1)",
    "det(A w_1 | w_2)",
    "det(B w_1 | w_2)",
    "det(A w_2 | w_2)",
    "det(B w_2 | w_2)",
];

const DEF_22: [&str; 6] = ["det X", "det Y", "tr(A_2 X_1)", "tr(B_2 X_1)", "tr(A_2 X_2)", "tr(B_2 X_2)"];

const DEF_4: [&str; 10] = [
    "<u, T(A)^2 u>",
    "<u, T(A)T(B) u>",
    "<u, T(B)^2 u>",
    "<u, T(A)^4 u>",
    "<u, T(A)^3 T(B) u>",
    "<u, T(A)^2 T(B)^2 u>",
    "<u, T(A) T(B)^3 u>",
    "<u, T(B)^4 u>",
    "<u, T(A^2) T(B) u>",
    "<u, T(A) T(B^2) u>",
];

pub fn case_generators(problem: &Arc<GITProblem>) -> Result<CaseGenerators, InvariantError> {
    let full = build::full_mats(problem);
    let slice = build::slice_mats(problem);
    let csv = problem.cycle().csv();
    let zip = |f: build::Built, s: build::Built, defs: &[&str]| -> Result<_, InvariantError> {
        let gens = f
            .gens
            .into_iter()
            .zip(s.gens)
            .enumerate()
            .map(|(k, ((n, e), (_, se)))| {
                let def = defs.get(k).map(|d| d.to_string()).unwrap_or_default();
                named(problem, n, def, e, se)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((gens, f.helpers))
    };
    let (generators, helpers) = match csv.as_str() {
        "1,1,1,1" => {
            let (mut g, h) = zip(build::plucker(&full), build::plucker(&slice), &[])?;
            for inv in &mut g {
                let d = inv.name.trim_start_matches("p_");
                let (i, j) = (&d[..1], &d[1..]);
                inv.definition = format!("|row {i}; row {j}|");
            }
            (g, h)
        }
        "1,1,2" => zip(build::one_one_two(&full), build::one_one_two(&slice), &DEF_112)?,
        "2,2" => zip(build::two_two(&full), build::two_two(&slice), &DEF_22)?,
        "4" => zip(build::four(&full), build::four(&slice), &DEF_4)?,
        "1,3" => one_three(problem)?,
        _ => return Err(InvariantError::Unsupported(problem.cycle().to_string())),
    };
    Ok(CaseGenerators { problem: problem.clone(), generators, helpers })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Novelty {
    /// Vanishes on the slice, hence on the nilpotent variety.
    Zero,
    /// Polynomial in previously accepted candidates.
    Dependent,
    New,
}

/// Filters systematic candidates: drops those vanishing on the slice and
/// those in the span of products of already accepted generators.
pub(crate) struct Filter<'a> {
    problem: &'a GITProblem,
    reducer: Reducer,
    accepted: Vec<NamedInvariant>,
}

impl<'a> Filter<'a> {
    pub fn new(problem: &'a GITProblem, slice_gb: &GroebnerBasis) -> Self {
        Filter {
            problem,
            reducer: Reducer::new(problem.slice_ring(), slice_gb.basis().to_vec()),
            accepted: Vec::new(),
        }
    }

    fn products_of_weight(&self, w: &[i64]) -> Vec<Polynomial> {
        if self.accepted.is_empty() {
            return Vec::new();
        }
        let gens = WeightedGenerators {
            names: (0..self.accepted.len()).map(|i| format!("g{i}")).collect(),
            polys: Vec::new(),
            weights: self.accepted.iter().map(|g| g.weight.clone()).collect(),
            chi: w.to_vec(),
        };
        let Ok(mons) = gens.monomials_of_degree(1) else {
            return Vec::new();
        };
        mons.iter()
            .map(|e| {
                let mut acc = Polynomial::one(self.problem.slice_ring());
                for (k, g) in e.iter().zip(&self.accepted) {
                    if *k > 0 {
                        acc = &acc * &g.slice_expr.pow(*k as u32);
                    }
                }
                self.reducer.reduce(&acc).0
            })
            .collect()
    }

    /// Classifies a candidate given on the slice, accepting it when new.
    pub fn offer(&mut self, name: &str, slice_expr: &Polynomial) -> Result<Novelty, InvariantError> {
        let status = self.classify(slice_expr)?;
        if status == Novelty::New {
            let weight = weight_of(self.problem, slice_expr)?.expect("nonzero");
            let degree = degree_of(self.problem.chi(), &weight);
            self.accepted.push(NamedInvariant {
                name: name.to_string(),
                definition: name.to_string(),
                expr: Polynomial::zero(self.problem.ring()),
                slice_expr: slice_expr.clone(),
                weight,
                degree,
            });
        }
        Ok(status)
    }

    pub fn classify(&self, slice_expr: &Polynomial) -> Result<Novelty, InvariantError> {
        let nf = self.reducer.reduce(slice_expr).0;
        if nf.is_zero() {
            return Ok(Novelty::Zero);
        }
        let w = weight_of(self.problem, slice_expr)?.expect("nonzero");
        let ring = self.problem.slice_ring().clone();
        let mut ech = Echelon::new();
        for p in self.products_of_weight(&w) {
            ech.add(p, Polynomial::zero(&ring));
        }
        Ok(if ech.add(nf, Polynomial::zero(&ring)).is_some() {
            Novelty::Dependent
        } else {
            Novelty::New
        })
    }
}

fn one_three(problem: &GITProblem) -> Result<(Vec<NamedInvariant>, Vec<(String, PolyMatrix)>), InvariantError> {
    let full = build::one_three_candidates(&build::full_mats(problem));
    let slice = build::one_three_candidates(&build::slice_mats(problem));
    let mut out = Vec::new();
    // Pairings skip the identity word; determinants take the seven triples
    // that contain the identity and at most one word of length two.
    for (k, idx) in (1..6).enumerate() {
        let (label, e) = &full.pairings[idx];
        out.push(named(problem, format!("xi_{}", k + 1), label.clone(), e.clone(), slice.pairings[idx].1.clone())?);
    }
    for (stem, f, s) in [
        ("upsilon", &full.vector_dets, &slice.vector_dets),
        ("zeta", &full.covector_dets, &slice.covector_dets),
    ] {
        for k in 0..7 {
            let (label, e) = &f[k];
            out.push(named(problem, format!("{stem}_{}", k + 1), label.clone(), e.clone(), s[k].1.clone())?);
        }
    }
    Ok((out, full.helpers))
}

/// Character in determinant units, one entry for `V` and one per factor.
pub fn character_of(problem: &GITProblem, inv: &NamedInvariant) -> Result<Vec<Scalar>, InvariantError> {
    let w = weight_of(problem, &inv.expr)?
        .ok_or_else(|| InvariantError::NotHomogeneous(format!("{} is zero", inv.name)))?;
    Ok(problem.det_units(&w))
}

/// Text form of a determinant-unit row, e.g. `-1; 1, 1, 0, 0`.
pub fn format_character(row: &[Scalar]) -> String {
    let rest: Vec<String> = row[1..].iter().map(format_scalar).collect();
    format!("{}; {}", format_scalar(&row[0]), rest.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SemiInvariance {
    Pass,
    Fail { derivation: String },
}

impl SemiInvariance {
    pub fn passed(&self) -> bool {
        matches!(self, SemiInvariance::Pass)
    }
}

/// Applies every special linear derivation; a nonzero image is reduced
/// modulo the nilpotency ideal, whose basis is computed only when needed.
pub fn check_semi_invariance(
    inv: &NamedInvariant,
    problem: &GITProblem,
    caps: Caps,
) -> Result<SemiInvariance, InvariantError> {
    check_expr(&inv.expr, problem, caps)
}

pub fn check_expr(expr: &Polynomial, problem: &GITProblem, caps: Caps) -> Result<SemiInvariance, InvariantError> {
    let mut gb: Option<GroebnerBasis> = None;
    for (label, d) in problem.derivations() {
        let img = d.apply(expr).map_err(GbError::from)?;
        if img.is_zero() {
            continue;
        }
        if gb.is_none() {
            gb = Some(problem.nilpotency_basis(caps));
        }
        if !gb.as_ref().unwrap().normal_form(&img)?.is_zero() {
            return Ok(SemiInvariance::Fail { derivation: label.clone() });
        }
    }
    Ok(SemiInvariance::Pass)
}

#[derive(Clone, Debug)]
pub struct SemiInvariantBasis {
    pub degree: u32,
    /// Candidate monomials, as exponent vectors over the generators.
    pub monomials: Vec<Vec<u16>>,
    /// Indices of monomials whose images form a basis.
    pub basis: Vec<usize>,
    /// Relations among the candidates, in the generator tag ring.
    pub dependencies: Vec<Polynomial>,
}

impl SemiInvariantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Products of generators of weight `n chi`, restricted to the slice and
/// reduced there, with an exact basis and the dependency space.
pub fn semiinvariant_basis(gens: &CaseGenerators, n: u32) -> Result<SemiInvariantBasis, InvariantError> {
    let wg = gens.weighted_slice();
    let tag_ring = wg.tag_ring()?;
    let monomials = if n == 0 {
        vec![vec![0u16; wg.names.len()]]
    } else {
        wg.monomials_of_degree(n)?
    };
    let gb = gens.problem.slice_basis();
    let reducer = Reducer::new(gens.problem.slice_ring(), gb.basis().to_vec());
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    let mut deps = Vec::new();
    for (k, e) in monomials.iter().enumerate() {
        let mut acc = Polynomial::one(gens.problem.slice_ring());
        for (p, g) in e.iter().zip(&gens.generators) {
            if *p > 0 {
                acc = &acc * &g.slice_expr.pow(*p as u32);
            }
        }
        let img = reducer.reduce(&acc).0;
        let tag = Polynomial::monomial(&tag_ring, Monomial::from_exps(e.clone()), int(1));
        match ech.add(img, tag) {
            None => basis.push(k),
            Some(rel) => deps.push(rel),
        }
    }
    let dependencies = crate::groebner::canonical_span(&tag_ring, &deps);
    Ok(SemiInvariantBasis { degree: n, monomials, basis, dependencies })
}
