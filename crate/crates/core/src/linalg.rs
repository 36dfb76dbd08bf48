//! Exact linear algebra over any [`Field`]: dense matrices with reduced row
//! echelon form, kernels and inverses, plus an incremental sparse echelon
//! basis for large, mostly-zero systems.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

/// Dense row-major matrix.
///
/// Linear maps use the column convention: column `c` holds the coordinates of
/// the image of basis vector `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, zero: &F) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, one: &F) -> Self {
        let mut m = Self::zeros(n, n, one);
        for i in 0..n {
            m[(i, i)] = one.one_like();
        }
        m
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::eq_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let zero = self.any_scalar(other);
        let mut out = Matrix {
            rows: self.rows,
            cols: other.cols,
            data: vec![zero.zero_like(); self.rows * other.cols],
        };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.eq_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.eq_zero() {
                        let v = out[(r, c)].add_ref(&a.mul_ref(b));
                        out[(r, c)] = v;
                    }
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let mut acc = v
                    .first()
                    .map(|x| x.zero_like())
                    .unwrap_or_else(|| self.data[0].zero_like());
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.eq_zero() && !x.eq_zero() {
                        acc = acc.add_ref(&a.mul_ref(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    /// Kronecker product `self (x) other`, with index `(a, b) -> a * other_dim + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let zero = self.any_scalar(other);
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix {
            rows,
            cols,
            data: vec![zero.zero_like(); rows * cols],
        };
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.eq_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = &other[(r2, c2)];
                        if !b.eq_zero() {
                            out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        out
    }

    fn any_scalar(&self, other: &Self) -> F {
        self.data
            .first()
            .or_else(|| other.data.first())
            .expect("scalar template needs a non-empty matrix")
            .zero_like()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Pivots are normalized to one and cleared above and below.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for c in 0..self.cols {
            if lead_row == self.rows {
                break;
            }
            let Some(p) = (lead_row..self.rows).find(|&r| !self[(r, c)].eq_zero()) else {
                continue;
            };
            self.swap_rows(p, lead_row);
            let inv = self[(lead_row, c)].inverse().expect("pivot is nonzero");
            for k in c..self.cols {
                let v = self[(lead_row, k)].mul_ref(&inv);
                self[(lead_row, k)] = v;
            }
            for r in 0..self.rows {
                if r == lead_row {
                    continue;
                }
                let f = self[(r, c)].clone();
                if f.eq_zero() {
                    continue;
                }
                for k in c..self.cols {
                    let s = &self[(lead_row, k)];
                    if s.eq_zero() {
                        continue;
                    }
                    let v = self[(r, k)].sub_ref(&f.mul_ref(s));
                    self[(r, k)] = v;
                }
            }
            pivots.push(c);
            lead_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self, zero: &F) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.zero_like(); self.cols];
                v[f] = zero.one_like();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let one = self.data[0].one_like();
        let mut aug = Matrix::zeros(n, 2 * n, &one);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = one.clone();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n, &one);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Some(out)
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF.
pub fn row_space_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return vec![];
    }
    let mut m = Matrix::from_rows(vectors.to_vec(), dim);
    let rank = m.rref().len();
    (0..rank).map(|r| m.row(r).to_vec()).collect()
}

/// Sparse vector keyed by coordinate index, without stored zeros.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// Incrementally built echelon basis of sparse vectors, keyed by pivot.
///
/// Each stored row has pivot coefficient one and no entries before its pivot.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<F: Field> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        SparseEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; returns the (possibly zero) remainder.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut floor = 0usize;
        loop {
            let Some((&k, coef)) = v.range(floor..).find(|(k, _)| self.rows.contains_key(k)) else {
                return v;
            };
            let coef = coef.clone();
            let row = &self.rows[&k];
            for (&j, a) in row {
                let updated = match v.get(&j) {
                    Some(x) => x.sub_ref(&coef.mul_ref(a)),
                    None => coef.mul_ref(a).neg_ref(),
                };
                if updated.eq_zero() {
                    v.remove(&j);
                } else {
                    v.insert(j, updated);
                }
            }
            floor = k + 1;
        }
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inverse().expect("leading entry is nonzero");
        let normalized = r.into_iter().map(|(j, a)| (j, a.mul_ref(&inv))).collect();
        self.rows.insert(pivot, normalized);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rref_and_rank() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a, m(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 0]]));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 0]]);
        let ns = a.nullspace(&rat(0, 1));
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.apply(&v).iter().all(Field::eq_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, &rat(1, 1)));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_matches_definition() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], rat(1, 1));
        assert_eq!(k[(3, 2)], rat(4, 1));
        assert_eq!(k[(2, 1)], rat(3, 1));
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let rows = [[1, 2, 0, 0], [0, 0, 1, 1], [1, 2, 1, 1], [0, 1, 0, 5]];
        let mut e = SparseEchelon::new();
        for r in rows {
            let v: SparseVec<Rational> = r
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| (j, rat(x, 1)))
                .collect();
            e.insert(v);
        }
        let dense = m(&[&[1, 2, 0, 0], &[0, 0, 1, 1], &[1, 2, 1, 1], &[0, 1, 0, 5]]);
        assert_eq!(e.rank(), dense.rank());
        assert_eq!(e.rank(), 3);
    }
}
