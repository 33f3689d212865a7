//! Exact sparse multivariate polynomials over the rationals.

mod derivation;
mod gcd;
pub mod linalg;
mod matrix;
mod monomial;
mod parse;
mod poly;

use thiserror::Error;

pub use derivation::Derivation;
pub use gcd::{binary_form_gcd, binary_ring, subresultant_gcd, IntUPoly};
pub use linalg::QMatrix;
pub use matrix::{subsets, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder, SimpleOrder, VarRegistry};
pub use parse::parse_poly;
pub use poly::{format_scalar, same_ring, PolyRing, Polynomial};

/// Exact rational coefficient.
pub type Scalar = num_rational::BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Result<Scalar, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Syntax {
        pos: 0,
        msg: format!("invalid rational '{s}'"),
    };
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&d) {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("invalid variable name '{0}'")]
    InvalidName(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("missing image for variable '{0}'")]
    MissingImage(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("all forms are zero")]
    AllFormsZero,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not a binary form: {0}")]
    NotBinary(String),
}

/// Applies the ring map given by `images` (variable name to polynomial in
/// `target`). Variables of `f` without an image are an error.
pub fn substitute_hom(
    f: &Polynomial,
    target: &std::sync::Arc<PolyRing>,
    images: &std::collections::HashMap<String, Polynomial>,
) -> Result<Polynomial, PolyError> {
    let src = f.ring();
    let used = f.variables();
    let mut full = Vec::with_capacity(src.nvars());
    for i in 0..src.nvars() {
        let name = src.vars().name(i);
        match images.get(name) {
            Some(p) => {
                if !same_ring(p.ring(), target) {
                    return Err(PolyError::RingMismatch);
                }
                full.push(p.clone());
            }
            None if used.contains(&i) => return Err(PolyError::MissingImage(name.to_string())),
            None => full.push(Polynomial::zero(target)),
        }
    }
    Ok(f.substitute(target, &full))
}

#[cfg(test)]
mod tests;
