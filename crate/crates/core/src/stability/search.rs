//! Randomized search for destabilizing one-parameter subgroups.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactpoly::format_scalar;
use crate::gitmodel::{pairing, ps_weight_of_variable, GITProblem, GroupElement, ModelError, OnePS, PointY, VarKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Entries of `r` range over `[-radius, radius]`.
    pub radius: i64,
    /// Random base changes tried after the given basis.
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { radius: 3, trials: 20, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChange {
    pub v: Vec<Vec<String>>,
    pub w: Vec<Vec<Vec<String>>>,
}

impl BaseChange {
    fn of(g: &GroupElement) -> Self {
        let text = |m: &crate::exactpoly::QMatrix| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| format_scalar(&m[(i, j)])).collect())
                .collect()
        };
        BaseChange {
            v: text(&g.v),
            w: g.w.iter().map(text).collect(),
        }
    }
}

/// A subgroup `lambda_r` whose limit exists at `g . p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Destabilizer {
    pub r: OnePS,
    pub pairing: i64,
    /// 0 for the given basis, otherwise the index of the random base change.
    pub trial: usize,
    pub base_change: BaseChange,
}

impl Destabilizer {
    /// Negative pairing: the point is unstable. Zero pairing only refutes
    /// stability.
    pub fn refutes_semistability(&self) -> bool {
        self.pairing < 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub limit_exists: bool,
    pub pairing: i64,
    /// `r` is not a multiple of the all-ones vector, which acts trivially.
    pub nontrivial: bool,
}

impl CertificateCheck {
    pub fn destabilizing(&self) -> bool {
        self.limit_exists && self.pairing < 0
    }

    pub fn refutes_stability(&self) -> bool {
        self.limit_exists && self.nontrivial && self.pairing <= 0
    }
}

pub fn verify_certificate(problem: &GITProblem, p: &PointY, r: &OnePS) -> Result<CertificateCheck, ModelError> {
    let pairing = pairing(problem, r)?;
    let limit_exists = p
        .values()
        .iter()
        .enumerate()
        .all(|(v, x)| x.is_zero() || ps_weight_of_variable(problem, v, r) >= 0);
    let nontrivial = r.0.iter().any(|&x| x != r.0[0]);
    Ok(CertificateCheck { limit_exists, pairing, nontrivial })
}

/// Limit conditions `r_a >= r_b`, grouped under the later slot.
struct Space {
    radius: i64,
    coef: Vec<i64>,
    by_slot: Vec<Vec<(usize, usize)>>,
    /// Largest `|coef|` over the slots after each slot.
    tail_coef: Vec<i64>,
}

impl Space {
    fn new(problem: &GITProblem, p: &PointY, radius: i64) -> Self {
        let slots = problem.slot_count();
        let mut by_slot = vec![Vec::new(); slots];
        for (v, x) in p.values().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (a, b) = match problem.kinds()[v] {
                VarKind::Psi { factor, row, col } => (problem.factors()[factor].slot + row, col),
                VarKind::Nil { factor, row, col, .. } => {
                    let s = problem.factors()[factor].slot;
                    (s + row, s + col)
                }
            };
            if a != b && !by_slot[a.max(b)].contains(&(a, b)) {
                by_slot[a.max(b)].push((a, b));
            }
        }
        let coef: Vec<i64> = (0..slots).map(|s| if s < 2 { -2 } else { 1 }).collect();
        let tail_coef = (0..slots)
            .map(|s| coef[s + 1..].iter().map(|c| c.abs()).max().unwrap_or(0))
            .collect();
        Space { radius, coef, by_slot, tail_coef }
    }

    /// Among vectors with `r_0 = 0` and pairing `< 0` (or `<= 0` when
    /// `strict` is false), the first of minimal L1 norm in scan order.
    fn search(&self, strict: bool) -> Option<Vec<i64>> {
        let mut values = vec![0i64];
        for k in 1..=self.radius {
            values.push(-k);
            values.push(k);
        }
        let mut r = vec![0i64; self.coef.len()];
        let mut best = None;
        self.dfs(1, &mut r, 0, 0, strict, &values, &mut best);
        best.map(|(_, v)| v)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        s: usize,
        r: &mut Vec<i64>,
        used: i64,
        partial: i64,
        strict: bool,
        values: &[i64],
        best: &mut Option<(i64, Vec<i64>)>,
    ) {
        let slots = self.coef.len();
        if s == slots {
            let ok = used > 0 && if strict { partial < 0 } else { partial <= 0 };
            if ok {
                *best = Some((used, r.clone()));
            }
            return;
        }
        let bound = best.as_ref().map_or(i64::MAX, |(l, _)| *l);
        for &v in values {
            let used2 = used + v.abs();
            if used2 >= bound {
                continue;
            }
            let partial2 = partial + self.coef[s] * v;
            let room = (bound.min(i64::MAX / 4) - 1 - used2).min(self.radius * (slots - s - 1) as i64);
            let lowest = partial2 - self.tail_coef[s] * room;
            if (strict && lowest >= 0) || (!strict && lowest > 0) {
                continue;
            }
            r[s] = v;
            if self.by_slot[s].iter().all(|&(a, b)| r[a] >= r[b]) {
                self.dfs(s + 1, r, used2, partial2, strict, values, best);
            }
        }
        r[s] = 0;
    }
}

/// Diagonal subgroups in a box, in the given basis and after random base
/// changes. Negative pairing is preferred; otherwise the first nontrivial
/// subgroup with zero pairing is returned. Finding none proves nothing.
pub fn destabilizer_search(problem: &GITProblem, p: &PointY, opts: SearchOptions) -> Option<Destabilizer> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut weak: Option<Destabilizer> = None;
    for trial in 0..=opts.trials {
        let g = if trial == 0 {
            GroupElement::identity(problem)
        } else {
            GroupElement::random(problem, &mut rng, 3)
        };
        let q = g.act(problem, p).ok()?;
        let space = Space::new(problem, &q, opts.radius);
        let certify = |r: Vec<i64>| {
            let r = OnePS(r);
            let check = verify_certificate(problem, &q, &r).ok()?;
            check.refutes_stability().then(|| Destabilizer {
                pairing: check.pairing,
                r,
                trial,
                base_change: BaseChange::of(&g),
            })
        };
        if let Some(d) = space.search(true).and_then(certify) {
            return Some(d);
        }
        if weak.is_none() {
            weak = space.search(false).and_then(certify);
        }
    }
    weak
}
