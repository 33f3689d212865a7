use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::exactpoly::{Monomial, MonomialOrder, PolyRing, Polynomial, Scalar};

struct Keyed {
    key: Box<[u32]>,
    mon: Monomial,
}

impl PartialEq for Keyed {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Keyed {}

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Full multivariate division by a fixed list of monic divisors.
pub struct Reducer {
    ring: Arc<PolyRing>,
    divisors: Vec<Polynomial>,
    heads: Vec<(Monomial, u64)>,
}

impl Reducer {
    pub fn new(ring: &Arc<PolyRing>, divisors: Vec<Polynomial>) -> Self {
        let mut r = Reducer {
            ring: ring.clone(),
            divisors: Vec::with_capacity(divisors.len()),
            heads: Vec::with_capacity(divisors.len()),
        };
        for d in divisors {
            r.push(d);
        }
        r
    }

    pub fn push(&mut self, d: Polynomial) -> usize {
        let d = d.monic();
        let lm = d.leading_monomial().expect("zero divisor").clone();
        let mask = lm.support_mask();
        self.heads.push((lm, mask));
        self.divisors.push(d);
        self.divisors.len() - 1
    }

    pub fn divisors(&self) -> &[Polynomial] {
        &self.divisors
    }

    /// Index of a divisor whose leading monomial divides `m`, preferring short
    /// divisors and then early ones. `skip` excludes divisors.
    pub fn find_divisor(&self, m: &Monomial, skip: &dyn Fn(usize) -> bool) -> Option<usize> {
        let mask = m.support_mask();
        let mut best: Option<usize> = None;
        for (i, (lm, lmask)) in self.heads.iter().enumerate() {
            if lmask & !mask != 0 || skip(i) || !lm.divides(m) {
                continue;
            }
            if best.is_none_or(|b| self.divisors[i].len() < self.divisors[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    /// Remainder of `f` and the number of reduction steps.
    pub fn reduce(&self, f: &Polynomial) -> (Polynomial, usize) {
        let (p, _, steps) = self.reduce_inner(f, 0, None, &|_| false);
        (p, steps)
    }

    /// Reduction with sugar bookkeeping, used inside the basis computation.
    pub(super) fn reduce_sugar(
        &self,
        f: &Polynomial,
        sugar: u32,
        sugars: &[u32],
        skip: &dyn Fn(usize) -> bool,
    ) -> (Polynomial, u32) {
        let (p, s, _) = self.reduce_inner(f, sugar, Some(sugars), skip);
        (p, s)
    }

    fn reduce_inner(
        &self,
        f: &Polynomial,
        mut sugar: u32,
        sugars: Option<&[u32]>,
        skip: &dyn Fn(usize) -> bool,
    ) -> (Polynomial, u32, usize) {
        let order: &MonomialOrder = self.ring.order();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(f.len() * 2);
        let mut heap: BinaryHeap<Keyed> = BinaryHeap::with_capacity(f.len() * 2);
        for (m, c) in f.terms() {
            heap.push(Keyed {
                key: order.key(m),
                mon: m.clone(),
            });
            acc.insert(m.clone(), c.clone());
        }
        let mut rem = Vec::new();
        let mut steps = 0;
        while let Some(top) = heap.pop() {
            let c = acc.remove(&top.mon).expect("heap and map out of sync");
            if c.is_zero() {
                continue;
            }
            match self.find_divisor(&top.mon, skip) {
                None => rem.push((top.mon, c)),
                Some(i) => {
                    steps += 1;
                    let q = self.heads[i].0.quotient_of(&top.mon).unwrap();
                    if let Some(s) = sugars {
                        sugar = sugar.max(q.degree() + s[i]);
                    }
                    for (m2, c2) in &self.divisors[i].terms()[1..] {
                        let m = m2.mul(&q);
                        let v = -(&c * c2);
                        match acc.entry(m) {
                            Entry::Occupied(mut e) => *e.get_mut() += v,
                            Entry::Vacant(e) => {
                                heap.push(Keyed {
                                    key: order.key(e.key()),
                                    mon: e.key().clone(),
                                });
                                e.insert(v);
                            }
                        }
                    }
                }
            }
        }
        (Polynomial::from_sorted_unchecked(&self.ring, rem), sugar, steps)
    }
}
