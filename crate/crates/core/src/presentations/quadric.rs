//! Exact analysis of quadric hypersurfaces inside linear subspaces.

use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::{format_scalar, Monomial, MonomialOrder, PolyRing, Polynomial, QMatrix, Scalar};

use super::PresentationError;

#[derive(Clone, Debug, Serialize)]
pub struct QuadricReport {
    /// Variables of the ambient projective space.
    pub variables: Vec<String>,
    /// Projective dimension of the linear subspace cut out by the constraints.
    pub ambient_dim: i64,
    /// Rank of the Jacobian (equivalently Gram) matrix of the restricted form.
    pub rank: usize,
    /// Projective dimension of the singular locus; -1 when smooth.
    pub singular_dim: i64,
    /// Spanning vectors of the singular locus in ambient coordinates.
    pub vertex: Vec<Vec<String>>,
    #[serde(skip)]
    pub vertex_space: Vec<Vec<Scalar>>,
}

impl QuadricReport {
    pub fn is_smooth(&self) -> bool {
        self.singular_dim < 0
    }
}

fn linear_coefficients(f: &Polynomial) -> Result<Vec<Scalar>, PresentationError> {
    let n = f.ring().nvars();
    let mut row = vec![Scalar::zero(); n];
    for (m, c) in f.terms() {
        let e = m.exps();
        if e.iter().map(|&x| x as u32).sum::<u32>() != 1 {
            return Err(PresentationError::NotLinear(f.to_string()));
        }
        let i = e.iter().position(|&x| x == 1).unwrap();
        row[i] = c.clone();
    }
    Ok(row)
}

/// Singular locus of `form = 0` inside `{constraints = 0}` by the Jacobian
/// criterion on the restriction.
pub fn quadric_report(form: &Polynomial, constraints: &[Polynomial]) -> Result<QuadricReport, PresentationError> {
    if form.is_zero() || form.total_degree() != Some(2) || !form.is_homogeneous() {
        return Err(PresentationError::NotQuadratic(form.to_string()));
    }
    let ring = form.ring();
    let n = ring.nvars();
    let basis: Vec<Vec<Scalar>> = if constraints.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::from_integer(1.into()) } else { Scalar::zero() }).collect())
            .collect()
    } else {
        let rows = constraints
            .iter()
            .map(|c| c.to_ring(ring).map_err(PresentationError::from).and_then(|c| linear_coefficients(&c)))
            .collect::<Result<Vec<_>, _>>()?;
        QMatrix::from_rows(rows).kernel()
    };
    let r = basis.len();
    let pring = PolyRing::from_names((1..=r).map(|i| format!("s{i}")), MonomialOrder::DegRevLex)?;
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let terms = (0..r)
                .filter(|&k| !basis[k][i].is_zero())
                .map(|k| {
                    let mut e = vec![0u16; r];
                    e[k] = 1;
                    (Monomial::from_exps(e), basis[k][i].clone())
                })
                .collect();
            Polynomial::from_terms(&pring, terms)
        })
        .collect();
    let q = form.substitute(&pring, &images);
    let jac: Vec<Vec<Scalar>> = (0..r)
        .map(|j| {
            let d = q.derivative(j);
            if d.is_zero() {
                Ok(vec![Scalar::zero(); r])
            } else {
                linear_coefficients(&d)
            }
        })
        .collect::<Result<_, _>>()?;
    let jac = QMatrix::from_rows(jac);
    let rank = jac.rank();
    let kernel = jac.kernel();
    let vertex_space: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| {
            (0..n)
                .map(|i| (0..r).fold(Scalar::zero(), |acc, j| acc + &k[j] * &basis[j][i]))
                .collect()
        })
        .collect();
    Ok(QuadricReport {
        variables: ring.vars().names().to_vec(),
        ambient_dim: r as i64 - 1,
        rank,
        singular_dim: kernel.len() as i64 - 1,
        vertex: vertex_space.iter().map(|v| v.iter().map(format_scalar).collect()).collect(),
        vertex_space,
    })
}

/// True when the two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = if a.is_empty() { 0 } else { QMatrix::from_rows(a.to_vec()).rank() };
    let rb = if b.is_empty() { 0 } else { QMatrix::from_rows(b.to_vec()).rank() };
    if ra != rb {
        return false;
    }
    if ra == 0 {
        return true;
    }
    let both: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    QMatrix::from_rows(both).rank() == ra
}
