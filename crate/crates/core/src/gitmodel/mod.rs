//! The GIT data attached to a 0-cycle type: framing matrix, commuting
//! nilpotent pairs per support point, group, character and the strictly
//! lower-triangular slice.

mod point;
mod ps;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactpoly::{
    Derivation, MonomialOrder, PolyError, PolyMatrix, PolyRing, Polynomial, Scalar, VarRegistry,
};
use crate::groebner::{groebner_basis, Caps, GroebnerBasis, Ideal};

pub use point::{nilpotency_violations, slice_point, triangularize_point, GroupElement, PointY, SliceSample, SliceSampler, Triangularized};
pub use ps::{pairing, ps_weight_of_variable, OnePS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("cycle type must have at least one positive multiplicity")]
    EmptyCycle,
    #[error("invalid cycle '{0}'")]
    InvalidCycle(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// Each violated generator with its value at the point.
    #[error("point violates the nilpotency ideal: {}", .0.join("; "))]
    NotOnN(Vec<String>),
    #[error("point violates the slice equations: {0}")]
    NotOnSlice(String),
    #[error("point is missing variable '{0}'")]
    MissingValue(String),
    #[error("no rational common flag exists")]
    NotRational,
    #[error("slot count {got} does not match {expected}")]
    SlotCount { got: usize, expected: usize },
    #[error("group element does not match the problem shape")]
    BadGroupElement,
}

/// Multiset of multiplicities, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    mults: Vec<u32>,
}

impl CycleType {
    pub fn new(mut mults: Vec<u32>) -> Result<Self, ModelError> {
        if mults.is_empty() || mults.contains(&0) {
            return Err(ModelError::EmptyCycle);
        }
        mults.sort_unstable();
        Ok(CycleType { mults })
    }

    /// Parses comma separated multiplicities such as `1,1,2`.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        let mults = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ModelError::InvalidCycle(s.to_string()))?;
        CycleType::new(mults).map_err(|_| ModelError::InvalidCycle(s.to_string()))
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mults
    }

    pub fn total_length(&self) -> u32 {
        self.mults.iter().sum()
    }

    /// `eta[k]` counts the factors of multiplicity `k + 1`.
    pub fn signature(&self) -> Vec<u32> {
        let max = *self.mults.iter().max().unwrap() as usize;
        let mut eta = vec![0; max];
        for &m in &self.mults {
            eta[m as usize - 1] += 1;
        }
        eta
    }

    /// Comma form used on the command line.
    pub fn csv(&self) -> String {
        self.mults
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The five types of total length four.
    pub fn length_four() -> Vec<CycleType> {
        [vec![1, 1, 1, 1], vec![1, 1, 2], vec![2, 2], vec![1, 3], vec![4]]
            .into_iter()
            .map(|m| CycleType::new(m).unwrap())
            .collect()
    }
}

impl fmt::Display for CycleType {
    /// Partition notation, e.g. `[1^2,2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .signature()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| {
                if c == 1 {
                    format!("{}", k + 1)
                } else {
                    format!("{}^{}", k + 1, c)
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Bidegrees `(i, j)` of the words `A^i B^j` that can be nonzero on `N_m`,
/// ordered by length and then by decreasing power of `A`.
pub fn enumerate_words(m: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for len in 1..m {
        for i in (0..=len).rev() {
            out.push((i, len - i));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Psi { factor: usize, row: usize, col: usize },
    Nil { factor: usize, which: Which, row: usize, col: usize },
}

/// One support point of the cycle.
#[derive(Clone, Debug)]
pub struct Factor {
    pub m: usize,
    /// Row-name stem of the framing block (`x`, `y`, ...).
    pub letter: String,
    /// First 1-PS slot of this factor; slots `0, 1` belong to `V`.
    pub slot: usize,
    pub psi: PolyMatrix,
    pub a: Option<PolyMatrix>,
    pub b: Option<PolyMatrix>,
    /// Same matrices over the slice ring.
    pub slice_psi: PolyMatrix,
    pub slice_a: Option<PolyMatrix>,
    pub slice_b: Option<PolyMatrix>,
}

#[derive(Clone, Debug)]
pub struct GITProblem {
    cycle: CycleType,
    ring: Arc<PolyRing>,
    kinds: Vec<VarKind>,
    factors: Vec<Factor>,
    i_n: Ideal,
    torus_weights: Vec<Vec<i64>>,
    chi: Vec<i64>,
    derivations: Vec<(String, Derivation)>,
    slice_ring: Arc<PolyRing>,
    slice_ideal: Ideal,
    slice_images: Vec<Polynomial>,
    slice_gb: std::sync::OnceLock<GroebnerBasis>,
}

fn psi_name(letter: &str, m: usize, row: usize, col: usize) -> String {
    if m == 1 {
        format!("{letter}{}", col + 1)
    } else if m < 10 {
        format!("{letter}{}{}", row + 1, col + 1)
    } else {
        format!("{letter}{}_{}", row + 1, col + 1)
    }
}

fn nil_name(which: Which, tag: Option<usize>, m: usize, row: usize, col: usize) -> String {
    let stem = match which {
        Which::A => "a",
        Which::B => "b",
    };
    let idx = if m < 10 {
        format!("{}{}", row + 1, col + 1)
    } else {
        format!("{}_{}", row + 1, col + 1)
    };
    match tag {
        None => format!("{stem}{idx}"),
        Some(t) => format!("{stem}{t}_{idx}"),
    }
}

fn letter(k: usize) -> String {
    const L: [&str; 4] = ["x", "y", "z", "w"];
    L.get(k).map_or_else(|| format!("q{}_", k + 1), |s| s.to_string())
}

/// Symbolic traceless matrix over `ring`; `None` marks the eliminated entry.
fn traceless(ring: &Arc<PolyRing>, m: usize, names: &[Vec<Option<String>>]) -> PolyMatrix {
    let mut rows = Vec::with_capacity(m);
    for row in names {
        let mut r = Vec::with_capacity(m);
        for n in row {
            match n {
                Some(n) => r.push(ring.var(n).unwrap()),
                None => {
                    let mut acc = Polynomial::zero(ring);
                    for (k, rr) in names.iter().enumerate().take(m - 1) {
                        acc = &acc - &ring.var(rr[k].as_ref().unwrap()).unwrap();
                    }
                    r.push(acc);
                }
            }
        }
        rows.push(r);
    }
    PolyMatrix::from_rows(rows)
}

fn strictly_lower(ring: &Arc<PolyRing>, m: usize, which: Which, tag: Option<usize>) -> PolyMatrix {
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i > j {
                        ring.var(&nil_name(which, tag, m, i, j)).unwrap()
                    } else {
                        Polynomial::zero(ring)
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows)
}

impl GITProblem {
    pub fn build(cycle: &CycleType) -> Result<Self, ModelError> {
        let mults: Vec<usize> = cycle.multiplicities().iter().map(|&m| m as usize).collect();
        let multi_nil = mults.iter().filter(|&&m| m > 1).count() > 1;
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        let mut slice_names = Vec::new();
        for (k, &m) in mults.iter().enumerate() {
            for row in 0..m {
                for col in 0..2 {
                    names.push(psi_name(&letter(k), m, row, col));
                    kinds.push(VarKind::Psi { factor: k, row, col });
                    slice_names.push(psi_name(&letter(k), m, row, col));
                }
            }
        }
        let mut nil_tag = 0;
        let mut tags = Vec::new();
        for (k, &m) in mults.iter().enumerate() {
            if m == 1 {
                tags.push(None);
                continue;
            }
            nil_tag += 1;
            let tag = multi_nil.then_some(nil_tag);
            tags.push(tag);
            for which in [Which::A, Which::B] {
                for row in 0..m {
                    for col in 0..m {
                        if row == m - 1 && col == m - 1 {
                            continue;
                        }
                        let n = nil_name(which, tag, m, row, col);
                        if row > col {
                            slice_names.push(n.clone());
                        }
                        names.push(n);
                        kinds.push(VarKind::Nil { factor: k, which, row, col });
                    }
                }
            }
        }
        let ring = PolyRing::new(VarRegistry::new(names.clone())?, MonomialOrder::DegRevLex);
        let slice_ring = PolyRing::new(VarRegistry::new(slice_names)?, MonomialOrder::DegRevLex);

        let mut factors = Vec::new();
        let mut slot = 2;
        for (k, &m) in mults.iter().enumerate() {
            let l = letter(k);
            let psi_rows: Vec<Vec<Polynomial>> = (0..m)
                .map(|r| (0..2).map(|c| ring.var(&psi_name(&l, m, r, c)).unwrap()).collect())
                .collect();
            let slice_psi_rows: Vec<Vec<Polynomial>> = (0..m)
                .map(|r| {
                    (0..2)
                        .map(|c| slice_ring.var(&psi_name(&l, m, r, c)).unwrap())
                        .collect()
                })
                .collect();
            let (a, b, sa, sb) = if m > 1 {
                let grid = |w: Which| -> Vec<Vec<Option<String>>> {
                    (0..m)
                        .map(|i| {
                            (0..m)
                                .map(|j| {
                                    (!(i == m - 1 && j == m - 1))
                                        .then(|| nil_name(w, tags[k], m, i, j))
                                })
                                .collect()
                        })
                        .collect()
                };
                (
                    Some(traceless(&ring, m, &grid(Which::A))),
                    Some(traceless(&ring, m, &grid(Which::B))),
                    Some(strictly_lower(&slice_ring, m, Which::A, tags[k])),
                    Some(strictly_lower(&slice_ring, m, Which::B, tags[k])),
                )
            } else {
                (None, None, None, None)
            };
            factors.push(Factor {
                m,
                letter: l,
                slot,
                psi: PolyMatrix::from_rows(psi_rows),
                a,
                b,
                slice_psi: PolyMatrix::from_rows(slice_psi_rows),
                slice_a: sa,
                slice_b: sb,
            });
            slot += m;
        }

        let mut gens = Vec::new();
        let mut slice_gens = Vec::new();
        for f in &factors {
            if let (Some(a), Some(b)) = (&f.a, &f.b) {
                gens.extend(a.commutator(b).entries().iter().cloned());
                let mut pa = vec![PolyMatrix::identity(&ring, f.m)];
                let mut pb = vec![PolyMatrix::identity(&ring, f.m)];
                for i in 1..=f.m {
                    pa.push(pa[i - 1].mul(a));
                    pb.push(pb[i - 1].mul(b));
                }
                for i in 0..=f.m {
                    gens.extend(pa[i].mul(&pb[f.m - i]).entries().iter().cloned());
                }
                let (sa, sb) = (f.slice_a.as_ref().unwrap(), f.slice_b.as_ref().unwrap());
                slice_gens.extend(sa.commutator(sb).entries().iter().cloned());
            }
        }
        let i_n = Ideal::new(&ring, gens)?;
        let slice_ideal = Ideal::new(&slice_ring, slice_gens)?;

        let nf = factors.len();
        let mut torus_weights = Vec::with_capacity(kinds.len());
        for kind in &kinds {
            let mut w = vec![0i64; 1 + nf];
            if let VarKind::Psi { factor, .. } = kind {
                w[0] = -1;
                w[1 + factor] = 1;
            }
            torus_weights.push(w);
        }
        let mut chi = vec![-4i64];
        chi.extend(mults.iter().map(|&m| m as i64));

        let slice_images = kinds
            .iter()
            .enumerate()
            .map(|(i, kind)| match kind {
                VarKind::Psi { .. } => slice_ring.var(ring.vars().name(i)).unwrap(),
                VarKind::Nil { row, col, .. } if row > col => {
                    slice_ring.var(ring.vars().name(i)).unwrap()
                }
                VarKind::Nil { .. } => Polynomial::zero(&slice_ring),
            })
            .collect();

        let mut problem = GITProblem {
            cycle: cycle.clone(),
            ring,
            kinds,
            factors,
            i_n,
            torus_weights,
            chi,
            derivations: Vec::new(),
            slice_ring,
            slice_ideal,
            slice_gb: std::sync::OnceLock::new(),
            slice_images,
        };
        problem.derivations = problem.build_derivations();
        Ok(problem)
    }

    /// Infinitesimal action of the elementary basis of each special linear
    /// factor: `psi -> -psi X` on `V`, `psi_k -> Y psi_k`, `A -> [Y, A]`.
    fn build_derivations(&self) -> Vec<(String, Derivation)> {
        let ring = &self.ring;
        let mut out = Vec::new();
        let basis = |n: usize| -> Vec<(String, Vec<Vec<i64>>)> {
            let mut b = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut e = vec![vec![0; n]; n];
                        e[i][j] = 1;
                        b.push((format!("E{}{}", i + 1, j + 1), e));
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                let mut e = vec![vec![0; n]; n];
                e[i][i] = 1;
                e[i + 1][i + 1] = -1;
                b.push((format!("H{}", i + 1), e));
            }
            b
        };
        let constm = |e: &Vec<Vec<i64>>| {
            PolyMatrix::from_scalars(
                ring,
                &e.iter()
                    .map(|r| r.iter().map(|&v| crate::exactpoly::int(v)).collect())
                    .collect::<Vec<_>>(),
            )
        };
        for (label, e) in basis(2) {
            let x = constm(&e);
            let mut d = Derivation::zero(ring);
            for f in &self.factors {
                let img = f.psi.mul(&x).scale(&Polynomial::from_int(ring, -1));
                self.assign_psi(&mut d, f, &img);
            }
            out.push((format!("V:{label}"), d));
        }
        for (k, f) in self.factors.iter().enumerate() {
            if f.m < 2 {
                continue;
            }
            for (label, e) in basis(f.m) {
                let y = constm(&e);
                let mut d = Derivation::zero(ring);
                self.assign_psi(&mut d, f, &y.mul(&f.psi));
                for (which, mat) in [(Which::A, f.a.as_ref().unwrap()), (Which::B, f.b.as_ref().unwrap())] {
                    let img = y.commutator(mat);
                    for (v, kind) in self.kinds.iter().enumerate() {
                        if let VarKind::Nil { factor, which: w, row, col } = *kind {
                            if factor == k && w == which {
                                d.set_image(v, img.get(row, col).clone());
                            }
                        }
                    }
                }
                out.push((format!("{}:{label}", f.letter), d));
            }
        }
        out
    }

    fn assign_psi(&self, d: &mut Derivation, f: &Factor, img: &PolyMatrix) {
        for r in 0..f.m {
            for c in 0..2 {
                let v = f.psi.get(r, c).variables()[0];
                d.set_image(v, img.get(r, c).clone());
            }
        }
    }

    pub fn cycle(&self) -> &CycleType {
        &self.cycle
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn nilpotency_ideal(&self) -> &Ideal {
        &self.i_n
    }

    /// Slot count of a 1-PS: two for `V`, then one per row of each factor.
    pub fn slot_count(&self) -> usize {
        2 + self.cycle.total_length() as usize
    }

    /// Scalar-slot weights (`V`, then one entry per factor) of each variable.
    pub fn torus_weights(&self) -> &[Vec<i64>] {
        &self.torus_weights
    }

    pub fn chi(&self) -> &[i64] {
        &self.chi
    }

    pub fn derivations(&self) -> &[(String, Derivation)] {
        &self.derivations
    }

    pub fn slice_ring(&self) -> &Arc<PolyRing> {
        &self.slice_ring
    }

    pub fn slice_ideal(&self) -> &Ideal {
        &self.slice_ideal
    }

    pub fn slice_basis(&self) -> GroebnerBasis {
        self.slice_gb
            .get_or_init(|| groebner_basis(&self.slice_ideal, self.slice_ring.order(), Caps::none()))
            .clone()
    }

    pub fn nilpotency_basis(&self, caps: Caps) -> GroebnerBasis {
        groebner_basis(&self.i_n, self.ring.order(), caps)
    }

    /// Restriction of a polynomial on `Y` to the slice.
    pub fn restrict_to_slice(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&self.slice_ring, &self.slice_images)
    }

    /// Scalar-slot weight of a monomial given by its exponent vector.
    pub fn monomial_weight(&self, exps: &[u16]) -> Vec<i64> {
        let mut w = vec![0i64; self.chi.len()];
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                for (acc, x) in w.iter_mut().zip(&self.torus_weights[v]) {
                    *acc += e as i64 * x;
                }
            }
        }
        w
    }

    /// Converts a scalar-slot weight to determinant units (divide the `V`
    /// entry by 2 and each factor entry by its multiplicity).
    pub fn det_units(&self, w: &[i64]) -> Vec<Scalar> {
        let mut out = vec![crate::exactpoly::rat(w[0], 2)];
        for (k, f) in self.factors.iter().enumerate() {
            out.push(crate::exactpoly::rat(w[1 + k], f.m as i64));
        }
        out
    }
}

pub fn build_problem(cycle: &CycleType) -> Result<GITProblem, ModelError> {
    GITProblem::build(cycle)
}
