use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::{format_scalar, int, parse_scalar, Polynomial, QMatrix, Scalar};

use super::{GITProblem, ModelError, VarKind, Which};

/// A rational point of `Y`, one value per registry variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointY {
    values: Vec<Scalar>,
}

/// Generators of the nilpotency ideal that do not vanish at `values`, as
/// `g = value`.
pub fn nilpotency_violations(problem: &GITProblem, values: &[Scalar]) -> Vec<String> {
    problem
        .nilpotency_ideal()
        .gens()
        .iter()
        .filter_map(|g| {
            let v = g.eval(values);
            (!v.is_zero()).then(|| format!("{g} = {}", crate::exactpoly::format_scalar(&v)))
        })
        .collect()
}

impl PointY {
    /// Builds and validates a point from named values; absent names are zero.
    pub fn from_map(problem: &GITProblem, map: &HashMap<String, Scalar>) -> Result<Self, ModelError> {
        let vars = problem.ring().vars();
        for name in map.keys() {
            if vars.index_of(name).is_none() {
                return Err(crate::exactpoly::PolyError::UnknownVariable(name.clone()).into());
            }
        }
        let values = vars
            .names()
            .iter()
            .map(|n| map.get(n).cloned().unwrap_or_else(Scalar::zero))
            .collect();
        PointY::new(problem, values)
    }

    pub fn new(problem: &GITProblem, values: Vec<Scalar>) -> Result<Self, ModelError> {
        if values.len() != problem.ring().nvars() {
            return Err(crate::exactpoly::PolyError::Shape(format!(
                "point has {} values, ring has {}",
                values.len(),
                problem.ring().nvars()
            ))
            .into());
        }
        let bad = nilpotency_violations(problem, &values);
        if !bad.is_empty() {
            return Err(ModelError::NotOnN(bad));
        }
        Ok(PointY { values })
    }

    /// Values known to satisfy the nilpotency ideal, such as conjugates of a
    /// valid point.
    pub(crate) fn trusted(values: Vec<Scalar>) -> Self {
        PointY { values }
    }

    /// Point file format: a JSON object from variable name to `"num/den"`.
    pub fn from_json(problem: &GITProblem, text: &str) -> Result<Self, ModelError> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)
            .map_err(|e| crate::exactpoly::PolyError::Syntax { pos: 0, msg: e.to_string() })?;
        let mut map = HashMap::new();
        for (k, v) in raw {
            let s = match v {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(n) => n.to_string(),
                other => {
                    return Err(crate::exactpoly::PolyError::Syntax {
                        pos: 0,
                        msg: format!("value of '{k}' is not a rational: {other}"),
                    }
                    .into())
                }
            };
            map.insert(k, parse_scalar(&s)?);
        }
        PointY::from_map(problem, &map)
    }

    pub fn to_json_map(&self, problem: &GITProblem) -> BTreeMap<String, String> {
        problem
            .ring()
            .vars()
            .names()
            .iter()
            .zip(&self.values)
            .map(|(n, v)| (n.clone(), format_scalar(v)))
            .collect()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, problem: &GITProblem, name: &str) -> Option<&Scalar> {
        problem.ring().vars().index_of(name).map(|i| &self.values[i])
    }

    pub fn eval(&self, f: &Polynomial) -> Scalar {
        f.eval(&self.values)
    }

    /// Framing block of factor `k` as an `m x 2` matrix.
    pub fn psi(&self, problem: &GITProblem, k: usize) -> QMatrix {
        let f = &problem.factors()[k];
        let mut out = QMatrix::zeros(f.m, 2);
        for (v, kind) in problem.kinds().iter().enumerate() {
            if let VarKind::Psi { factor, row, col } = *kind {
                if factor == k {
                    out[(row, col)] = self.values[v].clone();
                }
            }
        }
        out
    }

    /// Nilpotent matrix of factor `k`, trace entry restored.
    pub fn nil(&self, problem: &GITProblem, k: usize, which: Which) -> QMatrix {
        let m = problem.factors()[k].m;
        let mut out = QMatrix::zeros(m, m);
        for (v, kind) in problem.kinds().iter().enumerate() {
            if let VarKind::Nil { factor, which: w, row, col } = *kind {
                if factor == k && w == which {
                    out[(row, col)] = self.values[v].clone();
                }
            }
        }
        if m > 1 {
            let mut t = Scalar::zero();
            for i in 0..m - 1 {
                t += &out[(i, i)];
            }
            out[(m - 1, m - 1)] = -t;
        }
        out
    }

    fn assemble(problem: &GITProblem, psi: &[QMatrix], a: &[QMatrix], b: &[QMatrix]) -> Vec<Scalar> {
        problem
            .kinds()
            .iter()
            .map(|kind| match *kind {
                VarKind::Psi { factor, row, col } => psi[factor][(row, col)].clone(),
                VarKind::Nil { factor, which: Which::A, row, col } => a[factor][(row, col)].clone(),
                VarKind::Nil { factor, which: Which::B, row, col } => b[factor][(row, col)].clone(),
            })
            .collect()
    }

    /// Whether every nilpotent matrix is strictly lower triangular.
    pub fn on_slice(&self, problem: &GITProblem) -> bool {
        problem.kinds().iter().zip(&self.values).all(|(k, v)| match *k {
            VarKind::Nil { row, col, .. } if row <= col => v.is_zero(),
            _ => true,
        })
    }

    /// Coordinates in the slice ring.
    pub fn slice_coords(&self, problem: &GITProblem) -> Result<Vec<Scalar>, ModelError> {
        if !self.on_slice(problem) {
            return Err(ModelError::NotOnSlice("nilpotent part is not strictly lower".into()));
        }
        let full = problem.ring().vars();
        Ok(problem
            .slice_ring()
            .vars()
            .names()
            .iter()
            .map(|n| self.values[full.index_of(n).unwrap()].clone())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// An element of `GL(V) x prod GL(m_k)` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub v: QMatrix,
    pub w: Vec<QMatrix>,
}

impl GroupElement {
    pub fn identity(problem: &GITProblem) -> Self {
        GroupElement {
            v: QMatrix::identity(2),
            w: problem.factors().iter().map(|f| QMatrix::identity(f.m)).collect(),
        }
    }

    /// Integer entries in `[-bound, bound]`, each block invertible.
    pub fn random(problem: &GITProblem, rng: &mut impl Rng, bound: i64) -> Self {
        let mut block = |n: usize| loop {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|_| (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect())
                .collect();
            let m = QMatrix::from_rows(rows);
            if !m.det().is_zero() {
                return m;
            }
        };
        let v = block(2);
        let w = problem.factors().iter().map(|f| block(f.m)).collect();
        GroupElement { v, w }
    }

    /// `psi_k -> w_k psi_k v^-1`, `A_k -> w_k A_k w_k^-1`.
    pub fn act(&self, problem: &GITProblem, p: &PointY) -> Result<PointY, ModelError> {
        if self.w.len() != problem.factors().len()
            || self.w.iter().zip(problem.factors()).any(|(w, f)| w.rows() != f.m)
        {
            return Err(ModelError::BadGroupElement);
        }
        let vinv = self.v.inverse().ok_or(ModelError::BadGroupElement)?;
        let mut psi = Vec::new();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (k, w) in self.w.iter().enumerate() {
            let winv = w.inverse().ok_or(ModelError::BadGroupElement)?;
            psi.push(w.mul(&p.psi(problem, k)).mul(&vinv));
            a.push(w.mul(&p.nil(problem, k, Which::A)).mul(&winv));
            b.push(w.mul(&p.nil(problem, k, Which::B)).mul(&winv));
        }
        Ok(PointY::trusted(PointY::assemble(problem, &psi, &a, &b)))
    }
}

#[derive(Clone, Debug)]
pub struct Triangularized {
    pub g: GroupElement,
    pub point: PointY,
}

fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let mut rows: Vec<Vec<Scalar>> = basis.to_vec();
    let r = QMatrix::from_rows(rows.clone()).rank();
    rows.push(v.to_vec());
    QMatrix::from_rows(rows).rank() == r
}

/// Integer multiple with coprime entries.
fn primitive(v: Vec<Scalar>) -> Vec<Scalar> {
    use num_integer::Integer;
    let mut den = num_bigint::BigInt::one();
    for x in &v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Scalar::from(den.clone())).to_integer()).collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(1, |x| if x.is_negative() { -1 } else { 1 });
    ints.into_iter()
        .map(|x| Scalar::from(x * sign / &g))
        .collect()
}

/// A basis `f_1..f_m` with `A f_j, B f_j` in the span of `f_{j+1}..f_m`.
fn common_flag(a: &QMatrix, b: &QMatrix) -> Result<Vec<Vec<Scalar>>, ModelError> {
    let m = a.rows();
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    while chosen.len() < m {
        let k = chosen.len();
        let cols = m + 2 * k;
        let mut sys = QMatrix::zeros(2 * m, cols);
        for i in 0..m {
            for j in 0..m {
                sys[(i, j)] = a[(i, j)].clone();
                sys[(m + i, j)] = b[(i, j)].clone();
            }
            for (c, u) in chosen.iter().enumerate() {
                sys[(i, m + c)] = -u[i].clone();
                sys[(m + i, m + k + c)] = -u[i].clone();
            }
        }
        let next = sys
            .kernel()
            .into_iter()
            .map(|v| v[..m].to_vec())
            .find(|v| !in_span(&chosen, v))
            .ok_or(ModelError::NotRational)?;
        chosen.push(primitive(next));
    }
    chosen.reverse();
    Ok(chosen)
}

/// Conjugates each nilpotent pair to strictly lower-triangular form. Over
/// the rationals a common flag always exists for commuting nilpotents, so
/// `NotRational` only signals inconsistent input.
pub fn triangularize_point(problem: &GITProblem, p: &PointY) -> Result<Triangularized, ModelError> {
    let mut g = GroupElement::identity(problem);
    if p.on_slice(problem) {
        return Ok(Triangularized { g, point: p.clone() });
    }
    for (k, f) in problem.factors().iter().enumerate() {
        if f.m < 2 {
            continue;
        }
        let a = p.nil(problem, k, Which::A);
        let b = p.nil(problem, k, Which::B);
        let lower = (0..f.m).all(|i| (i..f.m).all(|j| a[(i, j)].is_zero() && b[(i, j)].is_zero()));
        if lower {
            continue;
        }
        let flag = common_flag(&a, &b)?;
        let cols = QMatrix::from_rows(flag).transpose();
        g.w[k] = cols.inverse().ok_or(ModelError::NotRational)?;
    }
    let point = g.act(problem, p)?;
    if !point.on_slice(problem) {
        return Err(ModelError::NotRational);
    }
    Ok(Triangularized { g, point })
}

/// Random points on the slice.
#[derive(Clone, Debug)]
pub struct SliceSampler {
    rng: ChaCha8Rng,
    bound: i64,
    /// Probability of forcing a coordinate to zero, to reach special strata.
    pub zero_bias: f64,
}

impl SliceSampler {
    pub fn new(seed: u64) -> Self {
        SliceSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: 5,
            zero_bias: 0.0,
        }
    }

    pub fn with_zero_bias(mut self, p: f64) -> Self {
        self.zero_bias = p;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn draw(&mut self) -> Scalar {
        if self.zero_bias > 0.0 && self.rng.gen_bool(self.zero_bias) {
            return Scalar::zero();
        }
        int(self.rng.gen_range(-self.bound..=self.bound))
    }

    /// Commuting strictly lower-triangular pair of size `m`.
    fn pair(&mut self, m: usize) -> (QMatrix, QMatrix) {
        let mut a = QMatrix::zeros(m, m);
        let mut b = QMatrix::zeros(m, m);
        match m {
            0 | 1 => {}
            2 => {
                a[(1, 0)] = self.draw();
                b[(1, 0)] = self.draw();
            }
            3 => {
                // (A21, A32) and (B21, B32) proportional; the corner is free.
                let (v1, v3, s, t) = (self.draw(), self.draw(), self.draw(), self.draw());
                a[(1, 0)] = &s * &v1;
                a[(2, 1)] = &s * &v3;
                b[(1, 0)] = &t * &v1;
                b[(2, 1)] = &t * &v3;
                a[(2, 0)] = self.draw();
                b[(2, 0)] = self.draw();
            }
            4 => {
                if self.rng.gen_bool(0.75) {
                    let v = [self.draw(), self.draw(), self.draw()];
                    let (s, t) = (self.draw(), self.draw());
                    for (idx, (i, j)) in [(1, 0), (2, 1), (3, 2)].into_iter().enumerate() {
                        a[(i, j)] = &s * &v[idx];
                        b[(i, j)] = &t * &v[idx];
                    }
                } else {
                    a[(1, 0)] = self.draw();
                    a[(3, 2)] = self.draw();
                    b[(1, 0)] = self.draw();
                    b[(3, 2)] = self.draw();
                }
                for (i, j) in [(2, 0), (3, 1), (3, 0)] {
                    a[(i, j)] = self.draw();
                    b[(i, j)] = self.draw();
                }
                // Remaining commutator entry is linear in A31, A42, B31, B42.
                let c_a31 = -b[(3, 2)].clone();
                let c_a42 = b[(1, 0)].clone();
                let c_b31 = a[(3, 2)].clone();
                let c_b42 = -a[(1, 0)].clone();
                let rest = |a: &QMatrix, b: &QMatrix| {
                    &c_a31 * &a[(2, 0)] + &c_a42 * &a[(3, 1)] + &c_b31 * &b[(2, 0)] + &c_b42 * &b[(3, 1)]
                };
                let r = rest(&a, &b);
                if !r.is_zero() {
                    if !c_b42.is_zero() {
                        b[(3, 1)] = &b[(3, 1)] - &(&r / &c_b42);
                    } else if !c_b31.is_zero() {
                        b[(2, 0)] = &b[(2, 0)] - &(&r / &c_b31);
                    } else if !c_a42.is_zero() {
                        a[(3, 1)] = &a[(3, 1)] - &(&r / &c_a42);
                    } else {
                        a[(2, 0)] = &a[(2, 0)] - &(&r / &c_a31);
                    }
                }
            }
            _ => {
                for i in 0..m {
                    for j in 0..i {
                        a[(i, j)] = self.draw();
                    }
                }
                let (c1, c2) = (self.draw(), self.draw());
                let a2 = a.mul(&a);
                for i in 0..m {
                    for j in 0..m {
                        b[(i, j)] = &c1 * &a[(i, j)] + &c2 * &a2[(i, j)];
                    }
                }
            }
        }
        (a, b)
    }

    pub fn sample(&mut self, problem: &GITProblem) -> PointY {
        let mut psi = Vec::new();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for f in problem.factors() {
            let mut ps = QMatrix::zeros(f.m, 2);
            for i in 0..f.m {
                for j in 0..2 {
                    ps[(i, j)] = self.draw();
                }
            }
            psi.push(ps);
            let (x, y) = self.pair(f.m);
            a.push(x);
            b.push(y);
        }
        PointY::new(problem, PointY::assemble(problem, &psi, &a, &b))
            .expect("sampled slice data satisfies the commutator equations")
    }
}

/// Point on the slice from a seed, or from explicit slice coordinates given
/// as a map of slice variable names.
pub fn slice_point(problem: &GITProblem, sample: SliceSample<'_>) -> Result<PointY, ModelError> {
    match sample {
        SliceSample::Seed(seed) => Ok(SliceSampler::new(seed).sample(problem)),
        SliceSample::Explicit(map) => {
            let sring = problem.slice_ring();
            for n in map.keys() {
                if sring.vars().index_of(n).is_none() {
                    return Err(ModelError::NotOnSlice(format!("'{n}' is not a slice variable")));
                }
            }
            let coords: Vec<Scalar> = sring
                .vars()
                .names()
                .iter()
                .map(|n| map.get(n).cloned().unwrap_or_else(Scalar::zero))
                .collect();
            for g in problem.slice_ideal().gens() {
                if !g.eval(&coords).is_zero() {
                    return Err(ModelError::NotOnSlice(g.to_string()));
                }
            }
            PointY::from_map(problem, map)
        }
    }
}

pub enum SliceSample<'a> {
    Seed(u64),
    Explicit(&'a HashMap<String, Scalar>),
}
