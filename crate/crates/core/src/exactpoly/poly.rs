use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, PolyError, Scalar, VarRegistry};

/// A variable registry together with the ambient monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: VarRegistry,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: VarRegistry, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { vars, order })
    }

    pub fn from_names<I, S>(names: I, order: MonomialOrder) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Self::new(VarRegistry::new(names)?, order))
    }

    pub fn vars(&self) -> &VarRegistry {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Self::new(self.vars.clone(), order)
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(self, i))
    }

    pub fn gen(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::var(self, i)
    }

    pub fn gens(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| Polynomial::var(self, i)).collect()
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial, PolyError> {
        super::parse::parse_poly(text, self)
    }
}

pub fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse distributed polynomial with exact rational coefficients.
///
/// Terms are kept strictly decreasing in the ring's monomial order with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, Scalar::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i, 1), Scalar::one())],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a canonical polynomial from arbitrary terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    pub(crate) fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees sortedness and nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Scalar)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, u)| **u)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                }
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), if negate { -c } else { c.clone() }));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = if negate { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        Polynomial::from_sorted_unchecked(&self.ring, out)
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(small.len() * big.len() / 2 + 1);
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let prod = cs * cb;
                match acc.entry(ms.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Multiplication by a single term preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, cc)| (m.clone(), cc * c))
            .collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn scale_int(&self, c: i64) -> Polynomial {
        self.scale(&Scalar::from_integer(BigInt::from(c)))
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        if n == 0 {
            return Polynomial::one(&self.ring);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return Polynomial::monomial(&self.ring, m.pow(n), num_traits::pow(c.clone(), n as usize));
        }
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Scales to integer coefficients with content one and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            g = num_integer::Integer::gcd(&g, &n);
        }
        let mut factor = Scalar::new(den, g);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let n = self.ring.nvars();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            debug_assert_eq!(exps.len(), n);
            terms.push((Monomial::from_exps(exps), c * Scalar::from_integer(BigInt::from(e))));
        }
        // Differentiation can reorder monomials under non-lex orders.
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluates at a full assignment of the ring variables.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars());
        let mut cache: HashMap<(usize, u16), Scalar> = HashMap::new();
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if point[i].is_zero() {
                    v = Scalar::zero();
                    break;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| num_traits::pow(point[i].clone(), e as usize));
                v *= &*p;
            }
            total += v;
        }
        total
    }

    /// Substitutes constants for some variables and keeps the rest.
    pub fn partial_eval(&self, values: &[Option<Scalar>]) -> Polynomial {
        assert_eq!(values.len(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        'term: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exps().to_vec();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    let e = exps[i];
                    if e > 0 {
                        if v.is_zero() {
                            continue 'term;
                        }
                        coeff *= num_traits::pow(v.clone(), e as usize);
                        exps[i] = 0;
                    }
                }
            }
            terms.push((Monomial::from_exps(exps), coeff));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Image under the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32));
                prod = &prod * &*p;
                if prod.is_zero() {
                    break;
                }
            }
            for (mm, cc) in prod.terms {
                *acc.entry(mm).or_insert_with(Scalar::zero) += cc;
            }
        }
        Polynomial::from_map(target, acc)
    }

    /// Same polynomial viewed in another ring; variables are matched by name.
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Polynomial, PolyError> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .names()
            .iter()
            .map(|n| target.vars().index_of(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mm = m.remap(&map, target.nvars()).ok_or_else(|| {
                let missing = m
                    .support()
                    .find(|&i| map[i].is_none())
                    .map(|i| self.ring.vars().name(i).to_string())
                    .unwrap_or_default();
                PolyError::UnknownVariable(missing)
            })?;
            terms.push((mm, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, vars: &VarRegistry) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m, self.ring.vars());
            if m.is_one() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
