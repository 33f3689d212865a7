use std::sync::Arc;

use super::{PolyError, PolyRing, Polynomial, Scalar};

/// Dense matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix is not rectangular");
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "matrix is not rectangular");
            entries.extend(row);
        }
        PolyMatrix::new(r, c, entries)
    }

    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix::new(rows, cols, vec![Polynomial::zero(ring); rows * cols])
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Matrix of scalars embedded as constants.
    pub fn from_scalars(ring: &Arc<PolyRing>, rows: &[Vec<Scalar>]) -> Self {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Polynomial::constant(ring, c.clone())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn ring(&self) -> Option<&Arc<PolyRing>> {
        self.entries.first().map(|p| p.ring())
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_vector(entries: Vec<Polynomial>) -> Self {
        let n = entries.len();
        PolyMatrix::new(n, 1, entries)
    }

    pub fn row_vector(entries: Vec<Polynomial>) -> Self {
        let n = entries.len();
        PolyMatrix::new(1, n, entries)
    }

    /// Columns side by side.
    pub fn from_columns(cols: &[Vec<Polynomial>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                entries.push(col[i].clone());
            }
        }
        PolyMatrix::new(r, c, entries)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix::new(self.cols, self.rows, entries)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix::new(rows.len(), cols.len(), entries)
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self
            .ring()
            .or_else(|| other.ring())
            .cloned()
            .ok_or_else(|| PolyError::Shape("empty matrix product".into()))?;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &a.try_mul(b)?;
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix::new(self.rows, other.cols, entries))
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a + b)
            .collect();
        PolyMatrix::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        PolyMatrix::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        PolyMatrix::new(self.rows, self.cols, entries)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn trace(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols);
        let ring = self.ring().expect("empty matrix").clone();
        (0..self.rows).fold(Polynomial::zero(&ring), |acc, i| &acc + self.get(i, i))
    }

    pub fn commutator(&self, other: &PolyMatrix) -> PolyMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Determinant by cofactor expansion along the sparsest row.
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let ring = self.ring().expect("empty matrix").clone();
        let idx: Vec<usize> = (0..self.rows).collect();
        det_rec(self, &idx, &idx, &ring)
    }

    /// All `k x k` minors, row index sets outer and column index sets inner,
    /// both in lexicographic order.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>, PolyError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(PolyError::Shape(format!(
                "minor size {k} out of range for {}x{}",
                self.rows, self.cols
            )));
        }
        let ring = self.ring().expect("empty matrix").clone();
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(det_rec(self, rs, cs, &ring));
            }
        }
        Ok(out)
    }
}

fn det_rec(m: &PolyMatrix, rows: &[usize], cols: &[usize], ring: &Arc<PolyRing>) -> Polynomial {
    let n = rows.len();
    match n {
        0 => return Polynomial::one(ring),
        1 => return m.get(rows[0], cols[0]).clone(),
        2 => {
            let a = m.get(rows[0], cols[0]);
            let b = m.get(rows[0], cols[1]);
            let c = m.get(rows[1], cols[0]);
            let d = m.get(rows[1], cols[1]);
            return &(a * d) - &(b * c);
        }
        _ => {}
    }
    // expand along the row with most zeros
    let (pick, _) = rows
        .iter()
        .enumerate()
        .map(|(ri, &r)| (ri, cols.iter().filter(|&&c| m.get(r, c).is_zero()).count()))
        .max_by_key(|&(ri, z)| (z, std::cmp::Reverse(ri)))
        .unwrap();
    let r = rows[pick];
    let sub_rows: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pick)
        .map(|(_, &x)| x)
        .collect();
    let mut acc = Polynomial::zero(ring);
    for (ci, &c) in cols.iter().enumerate() {
        let entry = m.get(r, c);
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != ci)
            .map(|(_, &x)| x)
            .collect();
        let minor = det_rec(m, &sub_rows, &sub_cols, ring);
        let term = entry * &minor;
        if (pick + ci) % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::MonomialOrder;

    #[test]
    fn plucker_minors_in_order() {
        let ring = PolyRing::from_names(
            ["x1", "x2", "y1", "y2", "z1", "z2", "w1", "w2"],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let g = ring.gens();
        let psi = PolyMatrix::new(4, 2, g.clone());
        let minors = psi.minors(2).unwrap();
        assert_eq!(minors.len(), 6);
        assert_eq!(minors[0].to_string(), "-x2*y1 + x1*y2");
        assert_eq!(minors[5].to_string(), "-z2*w1 + z1*w2");
        let p = &minors;
        let rel = &(&(&p[0] * &p[5]) - &(&p[1] * &p[4])) + &(&p[2] * &p[3]);
        assert!(rel.is_zero());
        assert_eq!(psi.minors(1).unwrap(), g);
        assert!(psi.minors(3).is_err());
    }

    #[test]
    fn det_matches_leibniz_3x3() {
        let ring = PolyRing::from_names(
            ["a", "b", "c", "d", "e", "f", "g", "h", "i"],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let m = PolyMatrix::new(3, 3, ring.gens());
        let expected = ring
            .parse("a*e*i - a*f*h - b*d*i + b*f*g + c*d*h - c*e*g")
            .unwrap();
        assert_eq!(m.det(), expected);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 4), vec![vec![0, 1, 2, 3]]);
    }
}
