//! Relations among weighted generators, degree by degree, by exact linear
//! algebra on normal forms.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::exactpoly::{
    Monomial, MonomialOrder, PolyRing, Polynomial, QMatrix, Scalar, VarRegistry,
};

use super::{GbError, GroebnerBasis, Reducer};

/// Generators with torus weights; the grading counts multiples of `chi`.
#[derive(Clone, Debug)]
pub struct WeightedGenerators {
    pub names: Vec<String>,
    pub polys: Vec<Polynomial>,
    pub weights: Vec<Vec<i64>>,
    pub chi: Vec<i64>,
}

impl WeightedGenerators {
    pub fn tag_ring(&self) -> Result<Arc<PolyRing>, GbError> {
        Ok(PolyRing::new(
            VarRegistry::new(self.names.iter().cloned())?,
            MonomialOrder::DegRevLex,
        ))
    }

    fn bounding_coordinate(&self) -> Result<usize, GbError> {
        (0..self.chi.len())
            .find(|&c| {
                let s = self.chi[c].signum();
                s != 0 && self.weights.iter().all(|w| w[c].signum() == s)
            })
            .ok_or_else(|| {
                GbError::Weights("no weight coordinate bounds the monomials of a given degree".into())
            })
    }

    /// Exponent vectors of tag monomials of weight `n * chi`.
    pub fn monomials_of_degree(&self, n: u32) -> Result<Vec<Vec<u16>>, GbError> {
        for w in &self.weights {
            if w.len() != self.chi.len() {
                return Err(GbError::Weights("weight vectors differ in length".into()));
            }
        }
        let c = self.bounding_coordinate()?;
        let target: Vec<i64> = self.chi.iter().map(|&x| x * n as i64).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.weights.len()];
        self.enumerate(0, c, target, &mut cur, &mut out);
        Ok(out)
    }

    fn enumerate(&self, i: usize, c: usize, rem: Vec<i64>, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == self.weights.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let w = &self.weights[i];
        let max = rem[c] / w[c];
        for e in (0..=max).rev() {
            let next: Vec<i64> = rem.iter().zip(w).map(|(r, x)| r - e * x).collect();
            cur[i] = e as u16;
            self.enumerate(i + 1, c, next, cur, out);
        }
        cur[i] = 0;
    }
}

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub monomials: usize,
    /// Dimension of the span of the images, i.e. the Hilbert function value.
    pub image_rank: usize,
    /// Canonical basis of the relation space in this degree.
    pub relations: Vec<Polynomial>,
    /// Relations not generated by those of lower degree.
    pub new_relations: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct GradedKernel {
    pub tag_ring: Arc<PolyRing>,
    pub pieces: Vec<GradedPiece>,
}

impl GradedKernel {
    pub fn piece(&self, n: u32) -> Option<&GradedPiece> {
        self.pieces.iter().find(|p| p.degree == n)
    }

    /// All minimal relations up to the computed degree.
    pub fn minimal_relations(&self) -> Vec<Polynomial> {
        self.pieces
            .iter()
            .flat_map(|p| p.new_relations.iter().cloned())
            .collect()
    }
}

/// Incremental echelon form over sparse vectors stored as polynomials,
/// remembering how each pivot row combines the inputs.
pub(crate) struct Echelon {
    pivots: HashMap<Monomial, usize>,
    rows: Vec<(Polynomial, Polynomial)>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Echelon {
            pivots: HashMap::new(),
            rows: Vec::new(),
        }
    }

    /// Returns the reduced combination when `v` depends on earlier rows.
    pub(crate) fn add(&mut self, mut v: Polynomial, mut combo: Polynomial) -> Option<Polynomial> {
        while let Some((lm, lc)) = v.leading_term().cloned() {
            match self.pivots.get(&lm) {
                Some(&r) => {
                    let (row, rc) = &self.rows[r];
                    v = &v - &row.scale(&lc);
                    combo = &combo - &rc.scale(&lc);
                }
                None => {
                    let inv = lc.recip();
                    self.pivots.insert(lm, self.rows.len());
                    self.rows.push((v.scale(&inv), combo.scale(&inv)));
                    return None;
                }
            }
        }
        Some(combo)
    }
}

/// Reduced row echelon basis of the span of `polys`, sorted by decreasing
/// leading monomial.
pub(crate) fn canonical_span(ring: &Arc<PolyRing>, polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut mons: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().iter().map(|(m, _)| m.clone()))
        .collect();
    let order = ring.order().clone();
    mons.sort_by(|a, b| order.cmp(b, a));
    mons.dedup();
    if mons.is_empty() {
        return Vec::new();
    }
    let col: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| {
            let mut r = vec![crate::exactpoly::int(0); mons.len()];
            for (m, c) in p.terms() {
                r[col[m]] = c.clone();
            }
            r
        })
        .collect();
    let (rref, pivots) = QMatrix::from_rows(rows).rref();
    (0..pivots.len())
        .map(|i| {
            let terms = rref
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(j, c)| (mons[j].clone(), c.clone()))
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// Relation spaces among `gens` in each degree `1..=d`, modulo the ideal
/// whose basis is `modulo`.
pub fn graded_kernel_upto(
    gens: &WeightedGenerators,
    d: u32,
    modulo: &GroebnerBasis,
) -> Result<GradedKernel, GbError> {
    let tag_ring = gens.tag_ring()?;
    let src = modulo.ring().clone();
    let polys: Vec<Polynomial> = gens
        .polys
        .iter()
        .map(|p| p.to_ring(&src))
        .collect::<Result<_, _>>()?;
    let reducer = Reducer::new(&src, modulo.basis().to_vec());
    let mut pieces: Vec<GradedPiece> = Vec::new();
    let mut monomials_by_degree: Vec<Vec<Vec<u16>>> = Vec::new();
    for n in 1..=d {
        let mons = gens.monomials_of_degree(n)?;
        let max_deg = mons
            .iter()
            .map(|e| {
                e.iter()
                    .zip(&polys)
                    .map(|(&k, p)| k as u32 * p.total_degree().unwrap_or(0))
                    .sum::<u32>()
            })
            .max()
            .unwrap_or(0);
        modulo.check_degree(max_deg)?;
        let images: Vec<Polynomial> = mons
            .par_iter()
            .map(|e| {
                let mut acc = Polynomial::one(&src);
                for (k, p) in e.iter().zip(&polys) {
                    if *k > 0 {
                        acc = &acc * &p.pow(*k as u32);
                    }
                }
                reducer.reduce(&acc).0
            })
            .collect();
        let mut ech = Echelon::new();
        let mut relations = Vec::new();
        for (e, img) in mons.iter().zip(images) {
            let tag = Polynomial::monomial(
                &tag_ring,
                Monomial::from_exps(e.clone()),
                crate::exactpoly::int(1),
            );
            if let Some(rel) = ech.add(img, tag) {
                relations.push(rel);
            }
        }
        let relations = canonical_span(&tag_ring, &relations);
        let mut lower = Vec::new();
        for (k, piece) in pieces.iter().enumerate() {
            let comp = &monomials_by_degree[n as usize - 2 - k];
            for r in &piece.relations {
                for e in comp {
                    lower.push(r.mul_term(&Monomial::from_exps(e.clone()), &crate::exactpoly::int(1)));
                }
            }
        }
        let lower = canonical_span(&tag_ring, &lower);
        let mut ext = Echelon::new();
        for l in &lower {
            ext.add(l.clone(), Polynomial::zero(&tag_ring));
        }
        let new_relations = relations
            .iter()
            .filter(|r| ext.add((*r).clone(), Polynomial::zero(&tag_ring)).is_none())
            .cloned()
            .collect();
        pieces.push(GradedPiece {
            degree: n,
            monomials: mons.len(),
            image_rank: mons.len() - relations.len(),
            relations,
            new_relations,
        });
        monomials_by_degree.push(mons);
    }
    Ok(GradedKernel { tag_ring, pieces })
}
