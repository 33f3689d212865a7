//! gcd of homogeneous binary forms.
//!
//! Each form is split as `x^a y^b g(x, y)` with `g` coprime to both variables,
//! the `g` are dehomogenized at `y = 1`, combined with a univariate
//! subresultant remainder sequence over the integers, and rehomogenized.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, PolyRing, Polynomial, Scalar};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntUPoly(pub Vec<BigInt>);

impl IntUPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().unwrap()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive(&self) -> IntUPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntUPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn prem(&self, b: &IntUPoly) -> IntUPoly {
        let mut r = self.0.clone();
        let db = b.degree();
        let lb = b.lead().clone();
        if r.len() < b.0.len() {
            return self.clone();
        }
        let mut steps = r.len() - b.0.len() + 1;
        while !r.is_empty() && r.len() >= b.0.len() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[i + shift] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps -= 1;
        }
        let factor = num_traits::pow(lb, steps);
        IntUPoly(r.into_iter().map(|c| c * &factor).collect()).trim()
    }
}

/// Primitive gcd of two univariate integer polynomials via the subresultant
/// remainder sequence.
pub fn subresultant_gcd(a: &IntUPoly, b: &IntUPoly) -> IntUPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let (mut f, mut g) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    let mut gfac = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = f.degree() - g.degree();
        let r = f.prem(&g);
        if r.is_zero() {
            return g.primitive();
        }
        if r.degree() == 0 {
            return IntUPoly(vec![BigInt::one()]);
        }
        let denom = &gfac * num_traits::pow(h.clone(), delta);
        let next = IntUPoly(r.0.into_iter().map(|c| c / &denom).collect());
        f = g;
        g = next;
        gfac = f.lead().clone();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(gfac.clone(), delta);
            let den = num_traits::pow(h, delta - 1);
            num / den
        };
    }
}

/// gcd of homogeneous forms in the variables `x`, `y` of `ring`. The result is
/// normalized to leading coefficient 1 in the ring's order.
pub fn binary_form_gcd(
    forms: &[Polynomial],
    x: usize,
    y: usize,
) -> Result<Polynomial, PolyError> {
    let ring = forms
        .first()
        .map(|f| f.ring().clone())
        .ok_or(PolyError::AllFormsZero)?;
    let mut min_x: Option<u16> = None;
    let mut min_y: Option<u16> = None;
    let mut acc: Option<IntUPoly> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        if !f.is_homogeneous() {
            return Err(PolyError::NotHomogeneous(f.to_string()));
        }
        if f.variables().iter().any(|&v| v != x && v != y) {
            return Err(PolyError::NotBinary(f.to_string()));
        }
        let ax = f.terms().iter().map(|(m, _)| m.exp(x)).min().unwrap();
        let ay = f.terms().iter().map(|(m, _)| m.exp(y)).min().unwrap();
        min_x = Some(min_x.map_or(ax, |v| v.min(ax)));
        min_y = Some(min_y.map_or(ay, |v| v.min(ay)));
        let g = dehomogenize(f, x, ax);
        acc = Some(match acc {
            None => g.primitive(),
            Some(prev) => subresultant_gcd(&prev, &g),
        });
    }
    let core = acc.ok_or(PolyError::AllFormsZero)?;
    let (ex, ey) = (min_x.unwrap(), min_y.unwrap());
    let n = ring.nvars();
    let d = core.degree() as u16;
    let mut terms = Vec::new();
    for (k, c) in core.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u16; n];
        exps[x] = ex + k as u16;
        exps[y] = ey + (d - k as u16);
        terms.push((Monomial::from_exps(exps), Scalar::from_integer(c.clone())));
    }
    Ok(Polynomial::from_terms(&ring, terms).monic())
}

/// `f(x, 1) / x^shift` as a dense integer polynomial in `x`.
fn dehomogenize(f: &Polynomial, x: usize, shift: u16) -> IntUPoly {
    let p = f.primitive();
    let deg = p.terms().iter().map(|(m, _)| m.exp(x)).max().unwrap() - shift;
    let mut coeffs = vec![BigInt::zero(); deg as usize + 1];
    for (m, c) in p.terms() {
        coeffs[(m.exp(x) - shift) as usize] += c.numer();
    }
    IntUPoly(coeffs).trim()
}

/// Convenience ring `Q[w1, w2]` used for binary forms in the stability code.
pub fn binary_ring() -> Arc<PolyRing> {
    PolyRing::from_names(["w1", "w2"], super::MonomialOrder::Lex).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> IntUPoly {
        IntUPoly(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn univariate_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = up(&[-2, 1, 1]);
        let b = up(&[3, -4, 1]);
        assert_eq!(subresultant_gcd(&a, &b), up(&[-1, 1]));
        assert_eq!(subresultant_gcd(&up(&[1, 1]), &up(&[1, -1])), up(&[1]));
    }

    #[test]
    fn binary_examples() {
        let r = binary_ring();
        let f = |s: &str| r.parse(s).unwrap();
        let g = binary_form_gcd(&[f("w1^2"), f("w1*w2")], 0, 1).unwrap();
        assert_eq!(g, f("w1"));
        let g = binary_form_gcd(&[f("w1^2 - w2^2"), f("w1 - w2")], 0, 1).unwrap();
        assert_eq!(g, f("w1 - w2"));
        let g = binary_form_gcd(&[f("w1"), f("w2")], 0, 1).unwrap();
        assert_eq!(g, f("1"));
        let g = binary_form_gcd(&[f("0"), f("2*w1*w2 + 4*w2^2")], 0, 1).unwrap();
        assert_eq!(g, f("w1*w2 + 2*w2^2"));
        assert!(matches!(
            binary_form_gcd(&[f("0")], 0, 1),
            Err(PolyError::AllFormsZero)
        ));
    }
}
