//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of new pairs.

use std::sync::Arc;
use std::time::Instant;

use crate::exactpoly::{Monomial, MonomialOrder, PolyRing, Polynomial};

use super::reduce::Reducer;
use super::{Caps, GbStats, GbStatus, GroebnerBasis, Ideal};

#[derive(Clone, Debug)]
enum Item {
    Input(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Pending {
    item: Item,
    sugar: u32,
    lcm: Monomial,
    key: Box<[u32]>,
}

struct Engine {
    ring: Arc<PolyRing>,
    red: Reducer,
    sugars: Vec<u32>,
    active: Vec<bool>,
    queue: Vec<Pending>,
    stats: GbStats,
    unit: bool,
}

pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder, caps: Caps) -> GroebnerBasis {
    let ring = if ideal.ring().order() == order {
        ideal.ring().clone()
    } else {
        ideal.ring().with_order(order.clone())
    };
    let inputs: Vec<Polynomial> = ideal
        .gens()
        .iter()
        .map(|g| Polynomial::from_terms(&ring, g.terms().to_vec()).monic())
        .collect();
    let mut eng = Engine {
        red: Reducer::new(&ring, Vec::new()),
        ring: ring.clone(),
        sugars: Vec::new(),
        active: Vec::new(),
        queue: Vec::new(),
        stats: GbStats::default(),
        unit: false,
    };
    for (i, f) in inputs.iter().enumerate() {
        let lm = f.leading_monomial().unwrap().clone();
        eng.queue.push(Pending {
            item: Item::Input(i),
            sugar: f.total_degree().unwrap(),
            key: order.key(&lm),
            lcm: lm,
        });
    }
    let start = Instant::now();
    let mut status = GbStatus::Complete;
    while let Some(pos) = eng.select() {
        let sugar = eng.queue[pos].sugar;
        if let Some(d) = caps.max_degree {
            if sugar > d {
                status = GbStatus::Capped { degree_reached: d };
                break;
            }
        }
        if let Some(s) = caps.max_seconds {
            if start.elapsed().as_secs_f64() > s as f64 {
                status = GbStatus::Capped {
                    degree_reached: sugar.saturating_sub(1),
                };
                break;
            }
        }
        let p = eng.queue.swap_remove(pos);
        let (poly, sugar) = match p.item {
            Item::Input(i) => (inputs[i].clone(), p.sugar),
            Item::Pair(i, j) => (eng.spoly(i, j, &p.lcm), p.sugar),
        };
        eng.stats.pairs_reduced += 1;
        let active = eng.active.clone();
        let (h, sugar) = eng
            .red
            .reduce_sugar(&poly, sugar, &eng.sugars, &|k| !active[k]);
        if h.is_zero() {
            eng.stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            eng.unit = true;
            break;
        }
        eng.insert(h, sugar);
    }
    let basis = if eng.unit {
        status = GbStatus::Complete;
        vec![Polynomial::one(&ring)]
    } else {
        eng.interreduce()
    };
    GroebnerBasis {
        ideal: ideal.clone(),
        ring,
        basis,
        status,
        stats: eng.stats,
    }
}

impl Engine {
    /// Smallest pending item by (sugar, lcm, insertion order).
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.queue.iter().enumerate() {
            let better = match best {
                None => true,
                Some(b) => {
                    let q = &self.queue[b];
                    (p.sugar, &p.key, item_rank(&p.item)) < (q.sugar, &q.key, item_rank(&q.item))
                }
            };
            if better {
                best = Some(k);
            }
        }
        best
    }

    fn head(&self, i: usize) -> &Monomial {
        self.red.divisors()[i].leading_monomial().unwrap()
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Polynomial {
        let fi = &self.red.divisors()[i];
        let fj = &self.red.divisors()[j];
        let one = crate::exactpoly::int(1);
        let qi = self.head(i).quotient_of(lcm).unwrap();
        let qj = self.head(j).quotient_of(lcm).unwrap();
        let a = Polynomial::from_sorted_unchecked(&self.ring, fi.terms()[1..].to_vec());
        let b = Polynomial::from_sorted_unchecked(&self.ring, fj.terms()[1..].to_vec());
        &a.mul_term(&qi, &one) - &b.mul_term(&qj, &one)
    }

    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let idx = self.red.push(h);
        self.sugars.push(sugar);
        self.active.push(false);
        let lm_h = self.head(idx).clone();
        let order = self.ring.order().clone();

        let cands: Vec<usize> = (0..idx).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&g| lm_h.lcm(self.head(g))).collect();
        let mut discarded = vec![false; cands.len()];
        let mut kept = Vec::new();
        for k in 0..cands.len() {
            let coprime = lm_h.is_coprime(self.head(cands[k]));
            let dominated = !coprime
                && (0..cands.len())
                    .any(|l| l != k && !discarded[l] && lcms[l].divides(&lcms[k]));
            if dominated {
                discarded[k] = true;
            } else {
                kept.push(k);
            }
        }
        let before = self.queue.len();
        let heads: Vec<Monomial> = (0..=idx).map(|i| self.head(i).clone()).collect();
        self.queue.retain(|p| match p.item {
            Item::Input(_) => true,
            Item::Pair(a, b) => {
                !(lm_h.divides(&p.lcm)
                    && heads[a].lcm(&lm_h) != p.lcm
                    && heads[b].lcm(&lm_h) != p.lcm)
            }
        });
        self.stats.pairs_pruned += before - self.queue.len();
        self.stats.pairs_pruned += cands.len() - kept.len();
        for k in kept {
            let g = cands[k];
            if lm_h.is_coprime(&heads[g]) {
                self.stats.pairs_pruned += 1;
                continue;
            }
            let lcm = lcms[k].clone();
            let d = lcm.degree();
            let sugar = (self.sugars[g] + d - heads[g].degree()).max(sugar + d - lm_h.degree());
            self.queue.push(Pending {
                item: Item::Pair(g, idx),
                sugar,
                key: order.key(&lcm),
                lcm,
            });
        }
        for g in cands {
            if lm_h.divides(&heads[g]) {
                self.active[g] = false;
            }
        }
        self.active[idx] = true;
    }

    fn interreduce(&self) -> Vec<Polynomial> {
        let order = self.ring.order();
        let mut idx: Vec<usize> = (0..self.active.len()).filter(|&i| self.active[i]).collect();
        idx.sort_by(|&a, &b| order.cmp(self.head(a), self.head(b)));
        let mut out = Vec::with_capacity(idx.len());
        for &i in &idx {
            let f = &self.red.divisors()[i];
            let lead = f.terms()[0].clone();
            let tail = Polynomial::from_sorted_unchecked(&self.ring, f.terms()[1..].to_vec());
            let tail = self
                .red
                .reduce_sugar(&tail, 0, &self.sugars, &|k| k == i || !self.active[k])
                .0;
            let mut terms = vec![lead];
            terms.extend(tail.into_terms());
            out.push(Polynomial::from_sorted_unchecked(&self.ring, terms));
        }
        out
    }
}

fn item_rank(item: &Item) -> (usize, usize, usize) {
    match *item {
        Item::Input(i) => (0, i, 0),
        Item::Pair(i, j) => (1, j, i),
    }
}
