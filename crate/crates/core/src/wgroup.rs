//! Monomial matrices, finite groups generated by them, the q-preservation
//! predicate and the block structure of a q-matrix.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::field::{Field, RootField};
use crate::linalg::Matrix;
use crate::qpoly::{Monomial, QMatrix, QPolynomial};
use crate::{Error, Result};

/// Default bound on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 100_000;

/// Generalized permutation matrix acting by `x_j -> d_j x_{perm[j]}` (zero-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix<F: Field> {
    perm: Vec<usize>,
    scalars: Vec<F>,
}

impl<F: Field> MonomialMatrix<F> {
    /// Validate that `perm` is a permutation and all scalars are nonzero.
    pub fn new(perm: Vec<usize>, scalars: Vec<F>) -> Result<Self> {
        let n = perm.len();
        if scalars.len() != n || n == 0 {
            return Err(Error::BadIndices(format!(
                "permutation of length {n} with {} scalars",
                scalars.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::BadIndices(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if scalars.iter().any(Field::eq_zero) {
            return Err(Error::InvalidParameters(
                "monomial matrix scalar is zero".into(),
            ));
        }
        Ok(MonomialMatrix { perm, scalars })
    }

    pub fn identity(n: usize, one: &F) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            scalars: vec![one.one_like(); n],
        }
    }

    pub fn diagonal(scalars: Vec<F>) -> Result<Self> {
        Self::new((0..scalars.len()).collect(), scalars)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[F] {
        &self.scalars
    }

    fn one(&self) -> F {
        self.scalars[0].one_like()
    }

    /// Composition `self o other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "rank mismatch in composition");
        let mut perm = vec![0; self.n()];
        let mut scalars = Vec::with_capacity(self.n());
        for j in 0..self.n() {
            let mid = other.perm[j];
            perm[j] = self.perm[mid];
            scalars.push(other.scalars[j].mul_ref(&self.scalars[mid]));
        }
        MonomialMatrix { perm, scalars }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut scalars = vec![self.one(); n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            scalars[self.perm[j]] = self.scalars[j].inverse().expect("scalars are nonzero");
        }
        MonomialMatrix { perm, scalars }
    }

    /// `self o other o self^-1`.
    pub fn conjugate(&self, other: &Self) -> Self {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.scalars.iter().all(Field::eq_one)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
    }

    /// Dense matrix in the column convention: entry `(perm[j], j)` equals `d_j`.
    pub fn to_dense(&self) -> Matrix<F> {
        let n = self.n();
        let mut m = Matrix::zeros(n, n, &self.one());
        for j in 0..n {
            m[(self.perm[j], j)] = self.scalars[j].clone();
        }
        m
    }

    pub fn det(&self) -> F {
        let mut sign_negative = false;
        let mut visited = vec![false; self.n()];
        for s in 0..self.n() {
            let mut len = 0;
            let mut j = s;
            while !visited[j] {
                visited[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign_negative = !sign_negative;
            }
        }
        let prod = self
            .scalars
            .iter()
            .fold(self.one(), |acc, d| acc.mul_ref(d));
        if sign_negative {
            prod.neg_ref()
        } else {
            prod
        }
    }

    /// Image of the vector `sum v_j x_j`.
    pub fn act_on_vector(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![self.one().zero_like(); self.n()];
        for j in 0..self.n() {
            out[self.perm[j]] = v[j].mul_ref(&self.scalars[j]);
        }
        out
    }

    /// The action on the dual basis: `y_k -> d_k^-1 y_{perm[k]}`, the inverse transpose.
    pub fn act_on_dual(&self) -> Self {
        MonomialMatrix {
            perm: self.perm.clone(),
            scalars: self
                .scalars
                .iter()
                .map(|d| d.inverse().expect("scalars are nonzero"))
                .collect(),
        }
    }

    /// Image of a normal-ordered monomial, as a scalar times a monomial.
    pub fn act_on_monomial(&self, q: &QMatrix<F>, m: &Monomial) -> (F, Monomial) {
        let n = self.n();
        let mut coef = self.one();
        let mut cur = Monomial::one(n);
        for (j, &a) in m.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut block = Monomial::one(n);
            block.0[self.perm[j]] = a;
            coef = coef
                .mul_ref(&self.scalars[j].pow_i64(a as i64).expect("nonzero"))
                .mul_ref(&q.reorder_factor(&cur, &block));
            cur = cur.times(&block);
        }
        (coef, cur)
    }

    /// Multiplicative extension of `x_j -> d_j x_{perm[j]}` to `S_q(V)`.
    pub fn act_on_poly(&self, p: &QPolynomial<F>) -> QPolynomial<F> {
        let q = p.qmatrix();
        let mut out = QPolynomial::zero(q);
        for (m, c) in p.terms() {
            let (f, image) = self.act_on_monomial(q, m);
            out.add_term(image, c.mul_ref(&f));
        }
        out
    }

    /// Order of the element, searched up to `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    /// Readable label such as `[x1->x2, x2->-x1]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = (0..self.n())
            .map(|j| {
                let d = &self.scalars[j];
                let target = format!("x{}", self.perm[j] + 1);
                let image = if d.eq_one() {
                    target
                } else if d.neg_ref().eq_one() {
                    format!("-{target}")
                } else {
                    format!("({d})*{target}")
                };
                format!("x{}->{}", j + 1, image)
            })
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for MonomialMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl<F: Field> fmt::Display for MonomialMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i >= n || j >= n || i == j {
        return Err(Error::BadIndices(format!(
            "need distinct indices below {n}, got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

/// `sigma_ij^(eps)`: `x_i -> eps x_j`, `x_j -> -eps^-1 x_i`, other variables fixed.
pub fn make_sigma<F: Field>(n: usize, i: usize, j: usize, eps: &F) -> Result<MonomialMatrix<F>> {
    check_pair(n, i, j)?;
    let inv = eps.inverse().ok_or(Error::DivisionByZero)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut scalars = vec![eps.one_like(); n];
    perm[i] = j;
    perm[j] = i;
    scalars[i] = eps.clone();
    scalars[j] = inv.neg_ref();
    MonomialMatrix::new(perm, scalars)
}

/// `t_i^(eps)`: `x_i -> eps x_i`, other variables fixed.
pub fn make_t<F: Field>(n: usize, i: usize, eps: &F) -> Result<MonomialMatrix<F>> {
    if i >= n {
        return Err(Error::BadIndices(format!(
            "index {} exceeds rank {n}",
            i + 1
        )));
    }
    let mut scalars = vec![eps.one_like(); n];
    scalars[i] = eps.clone();
    MonomialMatrix::diagonal(scalars)
}

/// `s_ij^(eps) = (ij) t_i^(eps) t_j^(eps^-1)`: `x_i -> eps x_j`, `x_j -> eps^-1 x_i`.
pub fn make_srefl<F: Field>(n: usize, i: usize, j: usize, eps: &F) -> Result<MonomialMatrix<F>> {
    check_pair(n, i, j)?;
    let inv = eps.inverse().ok_or(Error::DivisionByZero)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut scalars = vec![eps.one_like(); n];
    perm[i] = j;
    perm[j] = i;
    scalars[i] = eps.clone();
    scalars[j] = inv;
    MonomialMatrix::new(perm, scalars)
}

/// Scalar matrix `-id`.
pub fn minus_id<F: Field>(n: usize, one: &F) -> MonomialMatrix<F> {
    MonomialMatrix {
        perm: (0..n).collect(),
        scalars: vec![one.one_like().neg_ref(); n],
    }
}

/// Finite group of monomial matrices with its elements enumerated.
#[derive(Clone)]
pub struct Group<F: Field> {
    n: usize,
    generators: Vec<MonomialMatrix<F>>,
    elements: Vec<MonomialMatrix<F>>,
    index: HashMap<MonomialMatrix<F>, usize>,
}

impl<F: Field> Group<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MonomialMatrix<F>] {
        &self.generators
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[MonomialMatrix<F>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &MonomialMatrix<F>) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &MonomialMatrix<F>) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> &MonomialMatrix<F> {
        &self.elements[0]
    }

    /// Equality of element sets.
    pub fn same_elements(&self, other: &Group<F>) -> bool {
        self.order() == other.order() && self.elements.iter().all(|g| other.contains(g))
    }

    /// Subgroup of elements satisfying `keep`; generators are chosen greedily.
    pub fn filter(&self, keep: impl Fn(&MonomialMatrix<F>) -> bool) -> Result<Group<F>> {
        let members: Vec<MonomialMatrix<F>> =
            self.elements.iter().filter(|g| keep(g)).cloned().collect();
        Group::from_elements(members, self.order().max(1))
    }

    /// Group with the given element set, which must be closed under products.
    pub fn from_elements(members: Vec<MonomialMatrix<F>>, cap: usize) -> Result<Group<F>> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidParameters("empty element set".into()));
        };
        let one = first.scalars[0].one_like();
        let n = first.n();
        let mut gens: Vec<MonomialMatrix<F>> = Vec::new();
        let mut current = generate_group(&[], n, &one, cap)?;
        for g in &members {
            if !current.contains(g) {
                gens.push(g.clone());
                current = generate_group(&gens, n, &one, cap)?;
            }
        }
        if current.order() != members.len() {
            return Err(Error::InvalidParameters(
                "element set is not a group".into(),
            ));
        }
        Ok(current)
    }

    /// Conjugacy class of `g` inside the group.
    pub fn conjugacy_class(&self, g: &MonomialMatrix<F>) -> Vec<MonomialMatrix<F>> {
        let mut seen: HashMap<MonomialMatrix<F>, ()> = HashMap::new();
        let mut out = Vec::new();
        for h in &self.elements {
            let c = h.conjugate(g);
            if seen.insert(c.clone(), ()).is_none() {
                out.push(c);
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for Group<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(n={}, order={})", self.n, self.order())
    }
}

/// Breadth-first closure of the generators under composition.
///
/// Fails with `CapExceeded` when more than `cap` elements appear.
pub fn generate_group<F: Field>(
    gens: &[MonomialMatrix<F>],
    n: usize,
    one: &F,
    cap: usize,
) -> Result<Group<F>> {
    if gens.iter().any(|g| g.n() != n) {
        return Err(Error::InvalidParameters(
            "generators of different rank".into(),
        ));
    }
    let id = MonomialMatrix::identity(n, one);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in gens {
            let h = g.compose(&elements[k]);
            if !index.contains_key(&h) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok(Group {
        n,
        generators: gens.to_vec(),
        elements,
        index,
    })
}

/// `W_{C,C'}(n)`: generated by `sigma_ij^(eps)` with `eps^m = 1` and `t_i^(eps')` with `eps'^m' = 1`.
pub fn build_w_cc<F: RootField>(
    one: &F,
    m: u64,
    mp: u64,
    n: usize,
    cap: usize,
) -> Result<Group<F>> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("|C| = {m} must be even")));
    }
    if mp == 0 || !m.is_multiple_of(mp) {
        return Err(Error::InvalidParameters(format!(
            "|C'| = {mp} must divide |C| = {m}"
        )));
    }
    let mut gens = Vec::new();
    for eps in one.roots_of_unity_like(m)? {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    gens.push(make_sigma(n, i, j, &eps)?);
                }
            }
        }
    }
    for eps in one.roots_of_unity_like(mp)?.into_iter().skip(1) {
        for i in 0..n {
            gens.push(make_t(n, i, &eps)?);
        }
    }
    generate_group(&gens, n, one, cap)
}

/// `G(m,p,n)`: generated by adjacent transpositions, `diag(zeta, zeta^-1, 1, ...)` and `diag(zeta^p, 1, ...)`.
pub fn build_gmpn<F: RootField>(one: &F, m: u64, p: u64, n: usize, cap: usize) -> Result<Group<F>> {
    if m == 0 || p == 0 || !m.is_multiple_of(p) || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "need p | m and n >= 1, got ({m}, {p}, {n})"
        )));
    }
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        gens.push(make_srefl(n, i, i + 1, one)?);
    }
    let z = one.root_of_unity_like(m, 1)?;
    if n >= 2 {
        let mut d = vec![one.one_like(); n];
        d[0] = z.clone();
        d[1] = z.inverse().expect("root of unity");
        gens.push(MonomialMatrix::diagonal(d)?);
    }
    gens.push(make_t(n, 0, &one.root_of_unity_like(m, p as i64)?)?);
    gens.retain(|g| !g.is_identity());
    generate_group(&gens, n, one, cap)
}

/// `{g in G(m,p,n) : det(g)^det_power = 1}`.
pub fn build_gmpn_plus<F: RootField>(
    one: &F,
    m: u64,
    p: u64,
    n: usize,
    det_power: u64,
    cap: usize,
) -> Result<Group<F>> {
    let g = build_gmpn(one, m, p, n, cap)?;
    g.filter(|h| {
        h.det()
            .pow_i64(det_power as i64)
            .map(|v| v.eq_one())
            .unwrap_or(false)
    })
}

/// The predicate `(q_kl - q_ij) A_k^i A_l^j = 0` for all index quadruples,
/// where `A x_k = sum_i A_k^i x_i`.
pub fn preserves_q<F: Field>(a: &Matrix<F>, q: &QMatrix<F>) -> bool {
    first_preservation_failure(a, q).is_none()
}

/// First quadruple `(k, l, i, j)` (zero-based) violating [`preserves_q`].
pub fn first_preservation_failure<F: Field>(a: &Matrix<F>, q: &QMatrix<F>) -> Option<[usize; 4]> {
    let n = q.n();
    // A_k^i is the coefficient of x_i in A(x_k): entry (i, k) in the column convention.
    let coef = |k: usize, i: usize| &a[(i, k)];
    for k in 0..n {
        for i in 0..n {
            if coef(k, i).eq_zero() {
                continue;
            }
            for l in 0..n {
                for j in 0..n {
                    if coef(l, j).eq_zero() {
                        continue;
                    }
                    if !q.q(k, l).sub_ref(q.q(i, j)).eq_zero() {
                        return Some([k, l, i, j]);
                    }
                }
            }
        }
    }
    None
}

/// The diagonal operators `gamma_i(x_j) = q_ij x_j`.
pub fn gamma_generators<F: Field>(q: &QMatrix<F>) -> Vec<MonomialMatrix<F>> {
    (0..q.n())
        .map(|i| {
            MonomialMatrix::diagonal((0..q.n()).map(|j| q.q(i, j).clone()).collect())
                .expect("q entries are nonzero")
        })
        .collect()
}

/// Sign of a block of indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSign {
    Positive,
    Negative,
}

/// Partition of the indices into blocks with the induced constants.
#[derive(Debug, Clone)]
pub struct BlockStructure<F: Field> {
    /// Blocks of zero-based indices, each sorted, ordered by smallest element.
    pub partition: Vec<Vec<usize>>,
    pub sign: Vec<BlockSign>,
    /// `pair_values[b][c] = q_{B,C}`; the diagonal holds `1` or `-1` by sign.
    pub pair_values: Vec<Vec<F>>,
    /// `gamma_B` acting on `V_C` by `q_{B,C}`.
    pub gamma: Vec<MonomialMatrix<F>>,
}

impl<F: Field> BlockStructure<F> {
    /// Index of the block containing `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.partition
            .iter()
            .position(|b| b.contains(&i))
            .expect("blocks partition the indices")
    }
}

fn related<F: Field>(q: &QMatrix<F>, i: usize, j: usize) -> bool {
    let one = q.one();
    let v = q.q(i, j);
    if !(v.eq_one() || v.add_ref(&one).eq_zero()) {
        return false;
    }
    (0..q.n())
        .filter(|&k| k != i && k != j)
        .all(|k| q.q(i, k) == q.q(j, k))
}

/// Blocks of `q`: `i ~ j` when `q_ij = +-1` and `q_ik = q_jk` for every other `k`.
pub fn block_structure<F: Field>(q: &QMatrix<F>) -> Result<BlockStructure<F>> {
    let n = q.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if related(q, i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_to_block: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let b = *root_to_block.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[b].push(i);
    }
    let one = q.one();
    let mut sign = Vec::new();
    for b in &groups {
        let s = if b.len() > 1 && q.q(b[0], b[1]).add_ref(&one).eq_zero() {
            BlockSign::Negative
        } else {
            BlockSign::Positive
        };
        for &i in b {
            for &j in b {
                if i != j {
                    let expect = if s == BlockSign::Negative {
                        one.neg_ref()
                    } else {
                        one.clone()
                    };
                    if q.q(i, j) != &expect || !related(q, i, j) {
                        return Err(Error::InvalidParameters(format!(
                            "indices {} and {} fall in one block without a consistent sign",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        sign.push(s);
    }
    let nb = groups.len();
    let mut pair_values = vec![vec![one.clone(); nb]; nb];
    for b in 0..nb {
        for c in 0..nb {
            pair_values[b][c] = if b == c {
                match sign[b] {
                    BlockSign::Negative => one.neg_ref(),
                    BlockSign::Positive => one.clone(),
                }
            } else {
                q.q(groups[b][0], groups[c][0]).clone()
            };
        }
    }
    let mut gamma = Vec::new();
    for b in 0..nb {
        let mut d = vec![one.clone(); n];
        for c in 0..nb {
            for &j in &groups[c] {
                d[j] = pair_values[b][c].clone();
            }
        }
        gamma.push(MonomialMatrix::diagonal(d)?);
    }
    Ok(BlockStructure {
        partition: groups,
        sign,
        pair_values,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CycloElement, CycloField, CycloFieldExt};
    use crate::qpoly::QPolynomial;
    use std::sync::Arc;

    fn k4() -> Arc<crate::cyclotomic::CycloField> {
        CycloField::new(4)
    }

    #[test]
    fn sigma_basics() {
        let k = k4();
        let s = make_sigma(2, 0, 1, &k.one()).unwrap();
        assert_eq!(s.order(10), Some(4));
        let sq = s.compose(&s);
        let expected = make_t(2, 0, &k.int(-1))
            .unwrap()
            .compose(&make_t(2, 1, &k.int(-1)).unwrap());
        assert_eq!(sq, expected);
        for e in 0..4 {
            let eps = k.root_of_unity(e);
            let lhs = make_sigma(2, 0, 1, &eps).unwrap();
            let rhs = make_sigma(2, 1, 0, &eps.inverse().unwrap().neg_ref()).unwrap();
            assert_eq!(lhs, rhs);
            let inv = make_sigma(2, 1, 0, &eps.inverse().unwrap()).unwrap();
            assert_eq!(lhs.inverse(), inv);
        }
        assert!(make_sigma(2, 0, 0, &k.one()).is_err());
    }

    #[test]
    fn action_on_polynomials() {
        let k = k4();
        let q = Arc::new(QMatrix::minus_one(2, &k.one()));
        let s = make_sigma(2, 0, 1, &k.one()).unwrap();
        let x1 = QPolynomial::var(&q, 0);
        assert_eq!(s.act_on_poly(&x1), QPolynomial::var(&q, 1));
        let x1x2 = QPolynomial::monomial(&q, Monomial(vec![1, 1]));
        assert_eq!(s.act_on_poly(&x1x2), x1x2);
        let eps = k.root_of_unity(1);
        let t = make_t(2, 0, &eps).unwrap();
        let x1sq = QPolynomial::monomial(&q, Monomial(vec![2, 0]));
        assert_eq!(t.act_on_poly(&x1sq), x1sq.scale(&eps.mul_ref(&eps)));
    }

    #[test]
    fn dual_action_examples() {
        let k = k4();
        let eps = k.root_of_unity(1);
        let t = make_t(2, 0, &eps).unwrap();
        assert_eq!(
            t.act_on_dual(),
            make_t(2, 0, &eps.inverse().unwrap()).unwrap()
        );
        let s = make_srefl(2, 0, 1, &k.one()).unwrap();
        assert_eq!(s.act_on_dual(), s);
        let sig = make_sigma(2, 0, 1, &k.one()).unwrap().act_on_dual();
        assert_eq!(
            sig.act_on_vector(&[k.one(), k.zero()]),
            vec![k.zero(), k.one()]
        );
        assert_eq!(
            sig.act_on_vector(&[k.zero(), k.one()]),
            vec![k.int(-1), k.zero()]
        );
    }

    #[test]
    fn group_orders() {
        let k = k4();
        let one = k.one();
        let s = make_sigma(2, 0, 1, &one).unwrap();
        assert_eq!(
            generate_group(&[s], 2, &one, DEFAULT_CAP).unwrap().order(),
            4
        );
        assert_eq!(build_w_cc(&one, 2, 1, 2, DEFAULT_CAP).unwrap().order(), 4);
        assert_eq!(build_w_cc(&one, 2, 1, 3, DEFAULT_CAP).unwrap().order(), 24);
        assert_eq!(build_gmpn(&one, 2, 1, 2, DEFAULT_CAP).unwrap().order(), 8);
        assert_eq!(build_gmpn(&one, 1, 1, 3, DEFAULT_CAP).unwrap().order(), 6);
        assert_eq!(build_gmpn(&one, 4, 2, 2, DEFAULT_CAP).unwrap().order(), 16);
        let infinite = MonomialMatrix::diagonal(vec![k.int(2), k.one()]).unwrap();
        assert_eq!(
            generate_group(&[infinite], 2, &one, 1000).unwrap_err(),
            Error::CapExceeded { cap: 1000 }
        );
        assert!(build_w_cc(&one, 3, 1, 2, DEFAULT_CAP).is_err());
        assert!(build_w_cc(&one, 4, 3, 2, DEFAULT_CAP).is_err());
    }

    #[test]
    fn preservation_predicate() {
        let k = k4();
        let q = QMatrix::minus_one(2, &k.one());
        let s = make_sigma(2, 0, 1, &k.root_of_unity(1)).unwrap();
        assert!(preserves_q(&s.to_dense(), &q));
        let tr = make_srefl(2, 0, 1, &k.one()).unwrap();
        assert!(preserves_q(&tr.to_dense(), &q));
        let (a, b) = (k.int(3), k.int(4));
        let rot = Matrix::from_rows(vec![vec![a.clone(), b.neg_ref()], vec![b, a]], 2);
        assert!(!preserves_q(&rot, &q));
    }

    #[test]
    fn block_examples() {
        let k = CycloField::new(1);
        let one = k.one();
        let bs = block_structure(&QMatrix::minus_one(3, &one)).unwrap();
        assert_eq!(bs.partition, vec![vec![0, 1, 2]]);
        assert_eq!(bs.sign, vec![BlockSign::Negative]);
        assert_eq!(bs.gamma[0], minus_id(3, &one));
        let bs = block_structure(&QMatrix::ones(3, &one)).unwrap();
        assert_eq!(bs.partition, vec![vec![0, 1, 2]]);
        assert!(bs.gamma[0].is_identity());
        let five = k.int(5);
        let fifth = five.inverse().unwrap();
        let q = QMatrix::new(vec![
            vec![one.clone(), one.clone(), five.clone()],
            vec![one.clone(), one.clone(), five.clone()],
            vec![fifth.clone(), fifth, one.clone()],
        ])
        .unwrap();
        let bs = block_structure(&q).unwrap();
        assert_eq!(bs.partition, vec![vec![0, 1], vec![2]]);
        assert_eq!(bs.sign, vec![BlockSign::Positive, BlockSign::Positive]);
        assert_eq!(bs.pair_values[0][1], five);
    }

    #[test]
    fn gamma_generators_examples() {
        let k = CycloField::new(2);
        let q = QMatrix::minus_one(2, &k.one());
        let g = gamma_generators(&q);
        assert_eq!(
            g[0],
            MonomialMatrix::diagonal(vec![k.one(), k.int(-1)]).unwrap()
        );
        let ones: QMatrix<CycloElement> = QMatrix::ones(3, &k.one());
        assert!(gamma_generators(&ones)
            .iter()
            .all(MonomialMatrix::is_identity));
    }

    #[test]
    fn determinant_signs() {
        let k = CycloField::new(2);
        let s = make_srefl(3, 0, 2, &k.one()).unwrap();
        assert_eq!(s.det(), k.int(-1));
        let sig = make_sigma(3, 0, 1, &k.one()).unwrap();
        assert_eq!(sig.det(), k.one());
    }
}
