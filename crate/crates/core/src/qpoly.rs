//! The q-symmetric algebra `S_q(V)`: generators `x_1..x_n` with
//! `x_i x_j = q_ij x_j x_i`, stored in the normal-ordered monomial basis
//! `x_1^a_1 ... x_n^a_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::{Field, RootField};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Deformation matrix with `q_ii = 1` and `q_ij q_ji = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix<F: Field> {
    n: usize,
    entries: Vec<F>,
}

impl<F: Field> QMatrix<F> {
    /// Validate and build a q-matrix from rows.
    pub fn new(entries: Vec<Vec<F>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidQMatrix {
                reason: "rank must be positive".into(),
                i: 0,
                j: 0,
            });
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQMatrix {
                    reason: format!("row has length {} instead of {n}", row.len()),
                    i,
                    j: 0,
                });
            }
        }
        for i in 0..n {
            if !entries[i][i].eq_one() {
                return Err(Error::InvalidQMatrix {
                    reason: "diagonal entry q_ii must be 1".into(),
                    i,
                    j: i,
                });
            }
            for j in 0..n {
                if !entries[i][j].mul_ref(&entries[j][i]).eq_one() {
                    return Err(Error::InvalidQMatrix {
                        reason: "q_ij * q_ji must be 1".into(),
                        i,
                        j,
                    });
                }
            }
        }
        Ok(QMatrix {
            n,
            entries: entries.into_iter().flatten().collect(),
        })
    }

    /// All entries equal to one (the commutative case).
    pub fn ones(n: usize, one: &F) -> Self {
        QMatrix {
            n,
            entries: vec![one.one_like(); n * n],
        }
    }

    /// The matrix `-1`: every off-diagonal entry equals `-1`.
    pub fn minus_one(n: usize, one: &F) -> Self {
        let mut entries = vec![one.one_like().neg_ref(); n * n];
        for i in 0..n {
            entries[i * n + i] = one.one_like();
        }
        QMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `q_ij` (zero-based indices).
    pub fn q(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.n + j]
    }

    pub fn one(&self) -> F {
        self.entries[0].one_like()
    }

    pub fn zero(&self) -> F {
        self.entries[0].zero_like()
    }

    /// Transposed matrix, the deformation used for `S_{q^T}(V*)`.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.q(j, i).clone());
            }
        }
        QMatrix { n, entries }
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(
            (0..self.n)
                .map(|i| (0..self.n).map(|j| self.q(i, j).clone()).collect())
                .collect(),
            self.n,
        )
    }

    /// `q_ij^e` for a non-negative exponent.
    fn qpow(&self, i: usize, j: usize, e: u64) -> F {
        let q = self.q(i, j);
        if e == 0 || q.eq_one() {
            return self.one();
        }
        q.pow_i64(e as i64).expect("q entries are nonzero")
    }

    /// Scalar `c` with `x^a * x^b = c * x^(a+b)`: the product of `q_ji^(a_j b_i)` for `j > i`.
    pub fn reorder_factor(&self, a: &Monomial, b: &Monomial) -> F {
        let mut acc = self.one();
        for i in 0..self.n {
            let bi = b.0[i] as u64;
            if bi == 0 {
                continue;
            }
            for j in i + 1..self.n {
                let aj = a.0[j] as u64;
                if aj != 0 {
                    acc = acc.mul_ref(&self.qpow(j, i, aj * bi));
                }
            }
        }
        acc
    }
}

impl<F: RootField> QMatrix<F> {
    /// Build from exponent data: `q_ij = zeta_order^(k_ij)`; validates the constraints.
    pub fn from_root_exponents(order: u64, exps: &[Vec<i64>], one: &F) -> Result<Self> {
        let rows = exps
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&k| one.root_of_unity_like(order, k))
                    .collect()
            })
            .collect::<Result<Vec<Vec<F>>>>()?;
        Self::new(rows)
    }
}

impl<F: Field> fmt::Debug for QMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{:?}", self.to_matrix())
    }
}

/// Build a q-matrix from a closure on zero-based index pairs `i < j`.
pub fn qmatrix_create<F: Field>(entries: Vec<Vec<F>>) -> Result<QMatrix<F>> {
    QMatrix::new(entries)
}

/// Exponent vector `(a_1, ..., a_n)` of the normal-ordered monomial.
///
/// Ordered graded-lexicographically: total degree first, then exponent
/// vectors compared lexicographically, so `x_1 > x_2 > ... > x_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i` (zero-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Exponent-wise sum.
    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponent-wise difference if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, a)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of total degree `d` in `n` variables, in descending lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All monomials of degree at most `d`, by increasing degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Element of `S_q(V)`: a finite combination of normal-ordered monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct QPolynomial<F: Field> {
    q: Arc<QMatrix<F>>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> QPolynomial<F> {
    pub fn zero(q: &Arc<QMatrix<F>>) -> Self {
        QPolynomial {
            q: q.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(q: &Arc<QMatrix<F>>, c: F) -> Self {
        Self::term(q, Monomial::one(q.n()), c)
    }

    pub fn one(q: &Arc<QMatrix<F>>) -> Self {
        Self::constant(q, q.one())
    }

    /// The generator `x_i` (zero-based).
    pub fn var(q: &Arc<QMatrix<F>>, i: usize) -> Self {
        Self::term(q, Monomial::var(q.n(), i), q.one())
    }

    pub fn monomial(q: &Arc<QMatrix<F>>, m: Monomial) -> Self {
        Self::term(q, m, q.one())
    }

    pub fn term(q: &Arc<QMatrix<F>>, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(q);
        p.add_term(m, c);
        p
    }

    pub fn qmatrix(&self) -> &Arc<QMatrix<F>> {
        &self.q
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(|| self.q.zero())
    }

    /// Highest monomial in graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Maximal total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.eq_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add_ref(&c);
                if s.eq_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.q, &other.q) || self.q == other.q {
            Ok(())
        } else {
            Err(Error::QMatrixMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        Ok(out)
    }

    /// In-place `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: &F) {
        if s.eq_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul_ref(s));
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(&self.q);
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.q.one().neg_ref())
    }

    /// Product in `S_q(V)`, normal-ordered with all q-factors.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.q);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let f = self.q.reorder_factor(a, b);
                out.add_term(a.times(b), ca.mul_ref(cb).mul_ref(&f));
            }
        }
        Ok(out)
    }

    /// Left multiplication by the generator `x_i`.
    pub fn left_mul_var(&self, i: usize) -> Self {
        let xi = Monomial::var(self.q.n(), i);
        let mut out = Self::zero(&self.q);
        for (m, c) in &self.terms {
            out.add_term(xi.times(m), c.mul_ref(&self.q.reorder_factor(&xi, m)));
        }
        out
    }

    /// Central in `S_q(V)`: each monomial satisfies `prod_i q_ik^(a_i) = 1` for every `k`.
    pub fn is_central(&self) -> bool {
        let n = self.q.n();
        self.terms.keys().all(|m| {
            (0..n).all(|k| {
                let mut acc = self.q.one();
                for (i, &a) in m.0.iter().enumerate() {
                    if a > 0 && i != k {
                        acc = acc.mul_ref(&self.q.qpow(i, k, a as u64));
                    }
                }
                acc.eq_one()
            })
        })
    }

    /// Exact quotient `g` with `d * g = self` for central nonzero `d`.
    ///
    /// Leading-term elimination in graded-lexicographic order.
    pub fn divide_by_central(&self, d: &Self) -> Result<Self> {
        self.check_same(d)?;
        let Some((lm, lc)) = d.leading() else {
            return Err(Error::DivisionByZero);
        };
        if !d.is_central() {
            return Err(Error::NotCentral);
        }
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.q);
        while let Some((m, c)) = rem.leading() {
            let Some(u) = m.checked_div(&lm) else {
                return Err(Error::NotDivisible {
                    remainder: rem.to_string(),
                });
            };
            let f = self.q.reorder_factor(&lm, &u);
            let coef = c.div_ref(&lc.mul_ref(&f))?;
            let step = d.multiply(&Self::term(&self.q, u.clone(), coef.clone()))?;
            rem = rem.sub(&step)?;
            quot.add_term(u, coef);
        }
        Ok(quot)
    }

    /// Exact `g` with `x_i * g = self`; every monomial must contain `x_i`.
    pub fn left_divide_by_variable(&self, i: usize) -> Result<Self> {
        let xi = Monomial::var(self.q.n(), i);
        let mut out = Self::zero(&self.q);
        for (m, c) in &self.terms {
            let Some(rest) = m.checked_div(&xi) else {
                return Err(Error::NotDivisible {
                    remainder: Self::term(&self.q, m.clone(), c.clone()).to_string(),
                });
            };
            let f = self.q.reorder_factor(&xi, &rest);
            out.add_term(rest, c.div_ref(&f)?);
        }
        Ok(out)
    }

    /// Restriction to monomials of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        QPolynomial {
            q: self.q.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<F: Field> fmt::Display for QPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for QPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CycloElement, CycloField, CycloFieldExt};

    fn minus_one(n: usize) -> Arc<QMatrix<CycloElement>> {
        Arc::new(QMatrix::minus_one(n, &CycloField::new(4).one()))
    }

    #[test]
    fn qmatrix_validation() {
        let k = CycloField::new(3);
        let ones = QMatrix::new(vec![vec![k.one(); 3]; 3]);
        assert!(ones.is_ok());
        let m = QMatrix::new(vec![vec![k.one(), k.int(-1)], vec![k.int(-1), k.one()]]);
        assert!(m.is_ok());
        let z = k.root_of_unity(1);
        let bad = QMatrix::new(vec![vec![k.one(), z.clone()], vec![z, k.one()]]);
        assert!(matches!(bad, Err(Error::InvalidQMatrix { i: 0, j: 1, .. })));
    }

    #[test]
    fn multiplication_examples() {
        let q = minus_one(2);
        let x1 = QPolynomial::var(&q, 0);
        let x2 = QPolynomial::var(&q, 1);
        let prod = x2.multiply(&x1).unwrap();
        assert_eq!(prod, x1.multiply(&x2).unwrap().neg());
        let sq = x1.multiply(&x1).unwrap();
        assert_eq!(sq, QPolynomial::monomial(&q, Monomial(vec![2, 0])));

        let k = CycloField::new(3);
        let z = k.root_of_unity(1);
        let qz = Arc::new(
            QMatrix::new(vec![
                vec![k.one(), z.clone()],
                vec![z.inverse().unwrap(), k.one()],
            ])
            .unwrap(),
        );
        let y1 = QPolynomial::var(&qz, 0);
        let y2 = QPolynomial::var(&qz, 1);
        let expected = QPolynomial::term(&qz, Monomial(vec![1, 1]), k.root_of_unity(2));
        assert_eq!(y2.multiply(&y1).unwrap(), expected);
    }

    #[test]
    fn centrality_examples() {
        let q = minus_one(2);
        let d = QPolynomial::monomial(&q, Monomial(vec![2, 0]))
            .sub(&QPolynomial::monomial(&q, Monomial(vec![0, 2])))
            .unwrap();
        assert!(d.is_central());
        assert!(!QPolynomial::var(&q, 0).is_central());
        let ones = Arc::new(QMatrix::ones(2, &CycloField::new(1).one()));
        assert!(QPolynomial::var(&ones, 1).is_central());
    }

    #[test]
    fn central_division_examples() {
        let k = CycloField::new(4);
        let q = minus_one(2);
        let x1sq = QPolynomial::monomial(&q, Monomial(vec![2, 0]));
        let x2sq = QPolynomial::monomial(&q, Monomial(vec![0, 2]));
        let d = x1sq.sub(&x2sq).unwrap();
        let p = d.scale(&k.int(2));
        assert_eq!(
            p.divide_by_central(&d).unwrap(),
            QPolynomial::constant(&q, k.int(2))
        );

        let eps = k.root_of_unity(1);
        let eps2 = eps.mul_ref(&eps);
        let d = x1sq.sub(&x2sq.scale(&eps2)).unwrap();
        let p = x1sq
            .scale(&eps.inverse().unwrap())
            .add(&x2sq.scale(&eps))
            .unwrap();
        assert!(matches!(
            p.divide_by_central(&d),
            Err(Error::NotDivisible { .. })
        ));
        assert!(QPolynomial::zero(&q)
            .divide_by_central(&d)
            .unwrap()
            .is_zero());
        let x1 = QPolynomial::var(&q, 0);
        assert_eq!(x1sq.divide_by_central(&x1), Err(Error::NotCentral));
    }

    #[test]
    fn variable_division_examples() {
        let q = minus_one(2);
        let x1x2 = QPolynomial::monomial(&q, Monomial(vec![1, 1]));
        assert_eq!(
            x1x2.left_divide_by_variable(0).unwrap(),
            QPolynomial::var(&q, 1)
        );
        assert_eq!(
            x1x2.left_divide_by_variable(1).unwrap(),
            QPolynomial::var(&q, 0).neg()
        );
        assert!(matches!(
            QPolynomial::var(&q, 1).left_divide_by_variable(0),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(
            m,
            vec![
                Monomial(vec![2, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2])
            ]
        );
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial(vec![0, 0, 0])]);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
    }

    #[test]
    fn mismatched_matrices_are_rejected() {
        let a = QPolynomial::var(&minus_one(2), 0);
        let b = QPolynomial::var(&Arc::new(QMatrix::ones(2, &CycloField::new(4).one())), 0);
        assert_eq!(a.multiply(&b), Err(Error::QMatrixMismatch));
    }
}
