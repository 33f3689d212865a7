use std::cmp::Ordering;
use std::fmt;

use std::collections::HashMap;

use super::PolyError;

/// Ordered, unique variable names. The index order is the canonical variable
/// order: index 0 is the largest variable for every monomial order.
#[derive(Clone, Debug, Default)]
pub struct VarRegistry {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for VarRegistry {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarRegistry {}

impl VarRegistry {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut reg = VarRegistry::default();
        for name in names {
            reg.push(name.into())?;
        }
        Ok(reg)
    }

    pub fn push(&mut self, name: String) -> Result<usize, PolyError> {
        if !is_valid_name(&name) {
            return Err(PolyError::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(PolyError::DuplicateVariable(name));
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: e as u32,
        }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .map(|&e| u16::try_from(e as u32 * n).expect("exponent overflow"))
            .collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree * n,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u16> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Some(Monomial {
            exps: exps.into_boxed_slice(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with nonzero exponent (indices folded mod 64).
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Reindex into a registry of size `nvars` using `map[i] = new index of i`.
    pub fn remap(&self, map: &[Option<usize>], nvars: usize) -> Option<Monomial> {
        let mut exps = vec![0u16; nvars];
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            exps[map[i]?] = e;
        }
        Some(Monomial::from_exps(exps))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Sub-order used inside a block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SimpleOrder {
    Lex,
    DegRevLex,
}

/// Total monomial order. `Block` splits the registry into a prefix of length
/// `split` compared first and the remaining suffix.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Block {
        split: usize,
        prefix: SimpleOrder,
        suffix: SimpleOrder,
    },
}

impl MonomialOrder {
    /// Elimination order with the default sub-orders.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            prefix: SimpleOrder::Lex,
            suffix: SimpleOrder::DegRevLex,
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a.exps(), b.exps()),
            MonomialOrder::DegRevLex => {
                a.degree().cmp(&b.degree()).then_with(|| revlex(a.exps(), b.exps()))
            }
            MonomialOrder::Block {
                split,
                prefix,
                suffix,
            } => {
                let (ap, asuf) = a.exps().split_at(*split);
                let (bp, bsuf) = b.exps().split_at(*split);
                simple_cmp(*prefix, ap, bp).then_with(|| simple_cmp(*suffix, asuf, bsuf))
            }
        }
    }

    /// Key whose lexicographic comparison agrees with `cmp`.
    pub fn key(&self, m: &Monomial) -> Box<[u32]> {
        let e = m.exps();
        let mut out = Vec::with_capacity(e.len() + 2);
        match self {
            MonomialOrder::Lex => simple_key(SimpleOrder::Lex, e, &mut out),
            MonomialOrder::DegRevLex => simple_key(SimpleOrder::DegRevLex, e, &mut out),
            MonomialOrder::Block {
                split,
                prefix,
                suffix,
            } => {
                let (p, s) = e.split_at(*split);
                simple_key(*prefix, p, &mut out);
                simple_key(*suffix, s, &mut out);
            }
        }
        out.into_boxed_slice()
    }

    /// True if every monomial is compared by total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

fn simple_key(order: SimpleOrder, e: &[u16], out: &mut Vec<u32>) {
    match order {
        SimpleOrder::Lex => out.extend(e.iter().map(|&x| x as u32)),
        SimpleOrder::DegRevLex => {
            out.push(e.iter().map(|&x| x as u32).sum());
            out.extend(e.iter().rev().map(|&x| u16::MAX as u32 - x as u32));
        }
    }
}

fn simple_cmp(order: SimpleOrder, a: &[u16], b: &[u16]) -> Ordering {
    match order {
        SimpleOrder::Lex => lex(a, b),
        SimpleOrder::DegRevLex => {
            let da: u32 = a.iter().map(|&e| e as u32).sum();
            let db: u32 = b.iter().map(|&e| e as u32).sum();
            da.cmp(&db).then_with(|| revlex(a, b))
        }
    }
}

#[inline]
fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_basic() {
        let o = MonomialOrder::DegRevLex;
        // x1*x2 > x3^2
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        // x1^2 > x1*x2 > x2^2 > x1*x3
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_prefix() {
        let o = MonomialOrder::elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn keys_agree_with_cmp() {
        let ms = [m(&[1, 0, 2]), m(&[0, 3, 0]), m(&[2, 1, 0]), m(&[0, 0, 3]), m(&[1, 1, 1])];
        for o in [
            MonomialOrder::Lex,
            MonomialOrder::DegRevLex,
            MonomialOrder::elimination(1),
            MonomialOrder::Block { split: 2, prefix: SimpleOrder::DegRevLex, suffix: SimpleOrder::Lex },
        ] {
            for a in &ms {
                for b in &ms {
                    assert_eq!(o.cmp(a, b), o.key(a).cmp(&o.key(b)));
                }
            }
        }
    }

    #[test]
    fn registry_rejects_duplicates() {
        assert!(VarRegistry::new(["x", "y", "x"]).is_err());
        assert!(VarRegistry::new(["1x"]).is_err());
        let r = VarRegistry::new(["a_1", "b2"]).unwrap();
        assert_eq!(r.index_of("b2"), Some(1));
    }
}
