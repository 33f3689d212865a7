//! Generator constructions, written once over an arbitrary ring so that the
//! same code yields both the full expressions and their slice restrictions.

use std::sync::Arc;

use crate::exactpoly::{PolyMatrix, PolyRing, Polynomial};
use crate::gitmodel::{enumerate_words, GITProblem};

/// Matrices of one factor over some ring.
#[derive(Clone)]
pub(crate) struct Mats {
    pub psi: PolyMatrix,
    pub a: Option<PolyMatrix>,
    pub b: Option<PolyMatrix>,
}

pub(crate) fn full_mats(p: &GITProblem) -> Vec<Mats> {
    p.factors()
        .iter()
        .map(|f| Mats { psi: f.psi.clone(), a: f.a.clone(), b: f.b.clone() })
        .collect()
}

pub(crate) fn slice_mats(p: &GITProblem) -> Vec<Mats> {
    p.factors()
        .iter()
        .map(|f| Mats {
            psi: f.slice_psi.clone(),
            a: f.slice_a.clone(),
            b: f.slice_b.clone(),
        })
        .collect()
}

pub(crate) fn det2(r1: &[Polynomial], r2: &[Polynomial]) -> Polynomial {
    &(&r1[0] * &r2[1]) - &(&r1[1] * &r2[0])
}

fn det_cols(cols: &[Vec<Polynomial>]) -> Polynomial {
    PolyMatrix::from_columns(cols).det()
}

fn apply(m: &PolyMatrix, v: &[Polynomial]) -> Vec<Polynomial> {
    m.mul(&PolyMatrix::column_vector(v.to_vec())).col(0)
}

fn covector(v: &[Polynomial], m: &PolyMatrix) -> Vec<Polynomial> {
    PolyMatrix::row_vector(v.to_vec()).mul(m).row(0)
}

fn dot(a: &[Polynomial], b: &[Polynomial]) -> Polynomial {
    let ring = a[0].ring().clone();
    a.iter().zip(b).fold(Polynomial::zero(&ring), |acc, (x, y)| &acc + &(x * y))
}

/// `A^i B^j` for the given bidegrees.
pub(crate) fn word_matrices(a: &PolyMatrix, b: &PolyMatrix, words: &[(u32, u32)]) -> Vec<PolyMatrix> {
    let ring = a.ring().unwrap().clone();
    let n = a.rows();
    let maxp = words.iter().map(|w| w.0.max(w.1)).max().unwrap_or(0) as usize;
    let mut pa = vec![PolyMatrix::identity(&ring, n)];
    let mut pb = vec![PolyMatrix::identity(&ring, n)];
    for k in 1..=maxp {
        pa.push(pa[k - 1].mul(a));
        pb.push(pb[k - 1].mul(b));
    }
    words
        .iter()
        .map(|&(i, j)| pa[i as usize].mul(&pb[j as usize]))
        .collect()
}

pub(crate) struct Built {
    pub gens: Vec<(String, Polynomial)>,
    pub helpers: Vec<(String, PolyMatrix)>,
}

pub(crate) fn plucker(m: &[Mats]) -> Built {
    let rows: Vec<Vec<Polynomial>> = m.iter().map(|f| f.psi.row(0)).collect();
    let mut gens = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            gens.push((format!("p_{}{}", i + 1, j + 1), det2(&rows[i], &rows[j])));
        }
    }
    Built { gens, helpers: Vec::new() }
}

/// `det(A w_i | w_j)`-type generators of a double point, in the order
/// `(A,1,1), (B,1,1), (A,1,2), (B,1,2), (A,2,2), (B,2,2)`.
fn double_point_dets(a: &PolyMatrix, b: &PolyMatrix, w1: &[Polynomial], w2: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for (u, v) in [(w1, w1), (w1, w2), (w2, w2)] {
        for m in [a, b] {
            out.push(det_cols(&[apply(m, u), v.to_vec()]));
        }
    }
    out
}

pub(crate) fn one_one_two(m: &[Mats]) -> Built {
    let x = m[0].psi.row(0);
    let y = m[1].psi.row(0);
    let z = &m[2].psi;
    let (a, b) = (m[2].a.as_ref().unwrap(), m[2].b.as_ref().unwrap());
    let f1 = det2(&x, &y);
    let f2 = z.det();
    let w1 = vec![det2(&x, &z.row(0)), det2(&x, &z.row(1))];
    let w2 = vec![det2(&y, &z.row(0)), det2(&y, &z.row(1))];
    let mut gens = vec![("xi_1".to_string(), f1), ("xi_2".to_string(), f2)];
    for (k, d) in double_point_dets(a, b, &w1, &w2).into_iter().enumerate() {
        gens.push((format!("xi_{}", k + 3), d));
    }
    Built {
        gens,
        helpers: vec![
            ("w_1".into(), PolyMatrix::column_vector(w1)),
            ("w_2".into(), PolyMatrix::column_vector(w2)),
        ],
    }
}

/// `Sym^2 -> sl(2)`: `(q_1, q_2, q_3) -> [[q_2, -q_1], [q_3, -q_2]]`.
pub(crate) fn t_sym2(q: &[Polynomial]) -> PolyMatrix {
    PolyMatrix::from_rows(vec![
        vec![q[1].clone(), -&q[0]],
        vec![q[2].clone(), -&q[1]],
    ])
}

pub(crate) fn two_two(m: &[Mats]) -> Built {
    let x = &m[0].psi;
    let y = &m[1].psi;
    let (a1, b1) = (m[0].a.as_ref().unwrap(), m[0].b.as_ref().unwrap());
    let (a2, b2) = (m[1].a.as_ref().unwrap(), m[1].b.as_ref().unwrap());
    let f1 = x.det();
    let f2 = y.det();
    let w = |j: usize| vec![det2(&x.row(0), &y.row(j)), det2(&x.row(1), &y.row(j))];
    let (w1, w2) = (w(0), w(1));
    let xi = double_point_dets(a1, b1, &w1, &w2);
    let x1 = t_sym2(&[xi[0].clone(), xi[2].clone(), xi[4].clone()]);
    let x2 = t_sym2(&[xi[1].clone(), xi[3].clone(), xi[5].clone()]);
    let gens = vec![
        ("zeta_1".to_string(), f1),
        ("zeta_2".to_string(), f2),
        ("zeta_3".to_string(), a2.mul(&x1).trace()),
        ("zeta_4".to_string(), b2.mul(&x1).trace()),
        ("zeta_5".to_string(), a2.mul(&x2).trace()),
        ("zeta_6".to_string(), b2.mul(&x2).trace()),
    ];
    let mut helpers = vec![
        ("w_1".into(), PolyMatrix::column_vector(w1)),
        ("w_2".into(), PolyMatrix::column_vector(w2)),
    ];
    for (k, d) in xi.into_iter().enumerate() {
        helpers.push((format!("xi_{}", k + 3), PolyMatrix::from_rows(vec![vec![d]])));
    }
    helpers.push(("X_1".into(), x1));
    helpers.push(("X_2".into(), x2));
    Built { gens, helpers }
}

/// Candidate invariants of the type `[1,3]` before filtering: pairings
/// `lambda W w` over all words including the identity, then the vector and
/// covector determinants over all triples of distinct words.
pub(crate) struct OneThreeCandidates {
    pub pairings: Vec<(String, Polynomial)>,
    pub vector_dets: Vec<(String, Polynomial)>,
    pub covector_dets: Vec<(String, Polynomial)>,
    pub helpers: Vec<(String, PolyMatrix)>,
}

fn word_label(w: (u32, u32)) -> String {
    let part = |s: &str, e: u32| match e {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{e}"),
    };
    let s = format!("{}{}", part("A", w.0), part("B", w.1));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

pub(crate) fn one_three_candidates(m: &[Mats]) -> OneThreeCandidates {
    let x = m[0].psi.row(0);
    let y = &m[1].psi;
    let (a, b) = (m[1].a.as_ref().unwrap(), m[1].b.as_ref().unwrap());
    let f: Vec<Polynomial> = (0..3).map(|i| det2(&x, &y.row(i))).collect();
    let g1 = det2(&y.row(0), &y.row(1));
    let g2 = det2(&y.row(0), &y.row(2));
    let g3 = det2(&y.row(1), &y.row(2));
    let lambda = vec![g3, -&g2, g1];
    let mut words = vec![(0, 0)];
    words.extend(enumerate_words(3));
    let mats = word_matrices(a, b, &words);
    let ww: Vec<Vec<Polynomial>> = mats.iter().map(|mm| apply(mm, &f)).collect();
    let lw: Vec<Vec<Polynomial>> = mats.iter().map(|mm| covector(&lambda, mm)).collect();
    let pairings = words
        .iter()
        .zip(&ww)
        .map(|(&wd, v)| (format!("lambda {} w", word_label(wd)), dot(&lambda, v)))
        .collect();
    let mut vector_dets = Vec::new();
    let mut covector_dets = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            for k in j + 1..words.len() {
                let label = format!(
                    "{}, {}, {}",
                    word_label(words[i]),
                    word_label(words[j]),
                    word_label(words[k])
                );
                vector_dets.push((
                    format!("det(w | {label})"),
                    det_cols(&[ww[i].clone(), ww[j].clone(), ww[k].clone()]),
                ));
                covector_dets.push((
                    format!("det(lambda | {label})"),
                    PolyMatrix::from_rows(vec![lw[i].clone(), lw[j].clone(), lw[k].clone()]).det(),
                ));
            }
        }
    }
    OneThreeCandidates {
        pairings,
        vector_dets,
        covector_dets,
        helpers: vec![
            ("w".into(), PolyMatrix::column_vector(f)),
            ("lambda".into(), PolyMatrix::row_vector(lambda)),
        ],
    }
}

/// Basis `e_i ^ e_j`, `i < j`, of the second exterior power of a
/// four-dimensional space, in lexicographic order.
pub(crate) const WEDGE_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn wedge_index(i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    WEDGE_BASIS.iter().position(|&p| p == (lo, hi)).map(|k| (k, s))
}

/// Gram matrix of `alpha ^ beta = <alpha, beta> e_1 ^ e_2 ^ e_3 ^ e_4`.
pub(crate) fn wedge_gram() -> [[i64; 6]; 6] {
    let mut g = [[0i64; 6]; 6];
    for (r, &(i, j)) in WEDGE_BASIS.iter().enumerate() {
        for (c, &(k, l)) in WEDGE_BASIS.iter().enumerate() {
            let idx = [i, j, k, l];
            let mut sorted = idx;
            sorted.sort_unstable();
            if sorted != [0, 1, 2, 3] {
                continue;
            }
            let mut inv = 0;
            for a in 0..4 {
                for b in a + 1..4 {
                    if idx[a] > idx[b] {
                        inv += 1;
                    }
                }
            }
            g[r][c] = if inv % 2 == 0 { 1 } else { -1 };
        }
    }
    g
}

/// Induced action on the second exterior power,
/// `X (e_i ^ e_j) = X e_i ^ e_j + e_i ^ X e_j`.
pub(crate) fn t_wedge(x: &PolyMatrix) -> PolyMatrix {
    let ring = x.ring().unwrap().clone();
    let mut t = PolyMatrix::zeros(&ring, 6, 6);
    for (c, &(i, j)) in WEDGE_BASIS.iter().enumerate() {
        for k in 0..4 {
            for (src, other, first) in [(i, j, true), (j, i, false)] {
                let coef = x.get(k, src);
                if coef.is_zero() {
                    continue;
                }
                let pair = if first { wedge_index(k, other) } else { wedge_index(other, k) };
                if let Some((r, s)) = pair {
                    let cur = t.get(r, c).clone();
                    t.set(r, c, &cur + &coef.scale_int(s));
                }
            }
        }
    }
    t
}

pub(crate) struct FourContext {
    pub u: Vec<Polynomial>,
    pub ta: Vec<PolyMatrix>,
    pub words: Vec<(u32, u32)>,
    gram: [[i64; 6]; 6],
}

impl FourContext {
    pub fn new(m: &[Mats]) -> Self {
        let x = &m[0].psi;
        let u = WEDGE_BASIS.iter().map(|&(i, j)| det2(&x.row(i), &x.row(j))).collect();
        let (a, b) = (m[0].a.as_ref().unwrap(), m[0].b.as_ref().unwrap());
        let words = enumerate_words(4);
        let ta = word_matrices(a, b, &words).iter().map(t_wedge).collect();
        FourContext { u, ta, words, gram: wedge_gram() }
    }

    pub fn ring(&self) -> Arc<PolyRing> {
        self.u[0].ring().clone()
    }

    pub fn form(&self, a: &[Polynomial], b: &[Polynomial]) -> Polynomial {
        let ring = self.ring();
        let mut acc = Polynomial::zero(&ring);
        for r in 0..6 {
            for c in 0..6 {
                if self.gram[r][c] != 0 && !a[r].is_zero() && !b[c].is_zero() {
                    acc = &acc + &(&a[r] * &b[c]).scale_int(self.gram[r][c]);
                }
            }
        }
        acc
    }

    pub fn word_index(&self, w: (u32, u32)) -> usize {
        self.words.iter().position(|&x| x == w).unwrap()
    }

    /// `<u, T(W_1) ... T(W_k) u>`; the rightmost factor acts first.
    pub fn pairing(&self, factors: &[usize]) -> Polynomial {
        let mut v = self.u.clone();
        for &k in factors.iter().rev() {
            v = apply(&self.ta[k], &v);
        }
        self.form(&self.u, &v)
    }

    pub fn curated(&self) -> Vec<(String, Polynomial)> {
        let a = self.word_index((1, 0));
        let b = self.word_index((0, 1));
        let a2 = self.word_index((2, 0));
        let b2 = self.word_index((0, 2));
        let lists: [(&str, Vec<usize>); 10] = [
            ("xi_1", vec![a, a]),
            ("xi_2", vec![a, b]),
            ("xi_3", vec![b, b]),
            ("xi_4", vec![a, a, a, a]),
            ("xi_5", vec![a, a, a, b]),
            ("xi_6", vec![a, a, b, b]),
            ("xi_7", vec![a, b, b, b]),
            ("xi_8", vec![b, b, b, b]),
            ("xi_9", vec![a2, b]),
            ("xi_10", vec![a, b2]),
        ];
        lists
            .iter()
            .map(|(n, f)| (n.to_string(), self.pairing(f)))
            .collect()
    }
}

pub(crate) fn four(m: &[Mats]) -> Built {
    let ctx = FourContext::new(m);
    let gens = ctx.curated();
    Built {
        gens,
        helpers: vec![("u".into(), PolyMatrix::column_vector(ctx.u.clone()))],
    }
}
