//! Text form of polynomials.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! coeff  := int ('/' nat)?
//! var    := letter (letter|digit|'_')*
//! ```
//!
//! Whitespace is ignored. A leading sign is accepted on the first term.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, PolyRing, Polynomial, Scalar};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, PolyError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let n = ring.nvars();
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut sign = match cur.peek() {
        Some(b'-') => {
            cur.bump();
            -1
        }
        Some(b'+') => {
            cur.bump();
            1
        }
        Some(_) => 1,
        None => return Err(cur.err("empty polynomial")),
    };
    loop {
        let (m, c) = parse_term(&mut cur, ring, n)?;
        let c = if sign < 0 { -c } else { c };
        terms.push((m, c));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                sign = 1;
            }
            Some(b'-') => {
                cur.bump();
                sign = -1;
            }
            Some(ch) => return Err(cur.err(format!("unexpected character '{}'", ch as char))),
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term(
    cur: &mut Cursor<'_>,
    ring: &Arc<PolyRing>,
    n: usize,
) -> Result<(Monomial, Scalar), PolyError> {
    let mut coeff = Scalar::one();
    let mut exps = vec![0u16; n];
    let mut first = true;
    loop {
        match cur.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                if !first {
                    return Err(cur.err("coefficient must lead the term"));
                }
                let num = cur.digits()?;
                let mut c = Scalar::from_integer(num);
                if cur.peek() == Some(b'/') {
                    cur.bump();
                    let den = cur.digits()?;
                    if den.is_zero() {
                        return Err(cur.err("zero denominator"));
                    }
                    c /= Scalar::from_integer(den);
                }
                coeff *= c;
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let at = cur.pos;
                let name = cur.ident();
                let i = ring
                    .vars()
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                let mut e: u32 = 1;
                if cur.peek() == Some(b'^') {
                    cur.bump();
                    let d = cur.digits()?;
                    e = u32::try_from(&d).map_err(|_| PolyError::Syntax {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                }
                let total = exps[i] as u32 + e;
                exps[i] = u16::try_from(total).map_err(|_| PolyError::Syntax {
                    pos: at,
                    msg: "exponent too large".into(),
                })?;
            }
            _ => return Err(cur.err("expected coefficient or variable")),
        }
        first = false;
        if cur.peek() == Some(b'*') {
            cur.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::from_exps(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::from_names(["x1", "x2", "x3"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        let r = ring();
        let f = r.parse("x1*x2 - 2*x3^2").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.total_degree(), Some(2));
        assert_eq!(f.to_string(), "x1*x2 - 2*x3^2");
        assert!(r.parse("0").unwrap().is_zero());
        assert_eq!(r.parse(" 3/4 * x1 ").unwrap().to_string(), "3/4*x1");
        assert_eq!(r.parse("-x1 + x1").unwrap().to_string(), "0");
    }

    #[test]
    fn reports_errors() {
        let r = ring();
        assert!(matches!(r.parse("x1 + y"), Err(PolyError::UnknownVariable(v)) if v == "y"));
        match r.parse("x1 + * x2") {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(r.parse("x1 *").is_err());
        assert!(r.parse("1/0").is_err());
        assert!(r.parse("").is_err());
    }
}
