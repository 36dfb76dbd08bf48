//! Quadratic doubles over a group algebra.
//!
//! A commutator parameter `beta(f (x) v) = sum_w <L_w(v), f> w` is stored as a
//! finite map `w -> L_w`. Matrices follow the column convention of the crate:
//! column `c` of `L_w` is `L_w(x_c)`, so the coefficient of `w` in
//! `beta(y_j (x) x_i)` is `L_w[(j, i)]`. Tensors `e_a (x) e_b` are indexed by
//! `a * dim + b`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::field::{Field, RootField};
use crate::linalg::{row_space_basis, Matrix, SparseEchelon, SparseVec};
use crate::qpoly::QMatrix;
use crate::wgroup::{
    block_structure, gamma_generators, generate_group, Group, MonomialMatrix, DEFAULT_CAP,
};
use crate::{Error, Result};

/// Element of the group algebra: group element to coefficient, without zeros.
pub type GroupAlgebraElement<F> = BTreeMap<MonomialMatrix<F>, F>;

/// Add `c * g` to a group algebra element.
pub fn ga_add_term<F: Field>(a: &mut GroupAlgebraElement<F>, g: MonomialMatrix<F>, c: &F) {
    if c.eq_zero() {
        return;
    }
    let entry = a.entry(g.clone()).or_insert_with(|| c.zero_like());
    *entry = entry.add_ref(c);
    if entry.eq_zero() {
        a.remove(&g);
    }
}

/// `h * a` for a group element `h`.
pub fn ga_left_mul<F: Field>(
    h: &MonomialMatrix<F>,
    a: &GroupAlgebraElement<F>,
) -> GroupAlgebraElement<F> {
    a.iter().map(|(g, c)| (h.compose(g), c.clone())).collect()
}

/// Render a group algebra element, e.g. `1*[x1->x2, x2->-x1] + (-1/2)*[...]`.
pub fn ga_to_string<F: Field>(a: &GroupAlgebraElement<F>) -> String {
    if a.is_empty() {
        return "0".into();
    }
    a.iter()
        .map(|(g, c)| format!("({c})*{}", g.label()))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Commutator parameter `beta = sum_w delta_w (x) L_w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutatorMap<F: Field> {
    dim: usize,
    support: BTreeMap<MonomialMatrix<F>, Matrix<F>>,
}

impl<F: Field> CommutatorMap<F> {
    /// The zero parameter on a space of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        CommutatorMap {
            dim,
            support: BTreeMap::new(),
        }
    }

    /// Build from `(w, L_w)` pairs; repeated `w` are summed and zero maps dropped.
    pub fn from_entries(dim: usize, entries: Vec<(MonomialMatrix<F>, Matrix<F>)>) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (w, l) in entries {
            out.add_entry(w, &l)?;
        }
        Ok(out)
    }

    /// Read `L_w[(j, i)]` off a table `(j, i) -> beta(y_j (x) x_i)`.
    pub fn from_table(
        dim: usize,
        table: &BTreeMap<(usize, usize), GroupAlgebraElement<F>>,
        zero: &F,
    ) -> Result<Self> {
        let mut mats: BTreeMap<MonomialMatrix<F>, Matrix<F>> = BTreeMap::new();
        for (&(j, i), elt) in table {
            if j >= dim || i >= dim {
                return Err(Error::BadIndices(format!(
                    "table entry ({}, {}) beyond rank {dim}",
                    j + 1,
                    i + 1
                )));
            }
            for (w, c) in elt {
                let m = mats
                    .entry(w.clone())
                    .or_insert_with(|| Matrix::zeros(dim, dim, zero));
                m[(j, i)] = m[(j, i)].add_ref(c);
            }
        }
        Self::from_entries(dim, mats.into_iter().collect())
    }

    pub fn add_entry(&mut self, w: MonomialMatrix<F>, l: &Matrix<F>) -> Result<()> {
        if l.rows() != self.dim || l.cols() != self.dim {
            return Err(Error::InvalidParameters(format!(
                "L_w of shape {}x{} for a space of dimension {}",
                l.rows(),
                l.cols(),
                self.dim
            )));
        }
        let sum = match self.support.get(&w) {
            Some(m) => m.add(l),
            None => l.clone(),
        };
        if sum.is_zero() {
            self.support.remove(&w);
        } else {
            self.support.insert(w, sum);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &BTreeMap<MonomialMatrix<F>, Matrix<F>> {
        &self.support
    }

    pub fn get(&self, w: &MonomialMatrix<F>) -> Option<&Matrix<F>> {
        self.support.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// `beta(y_j (x) x_i)` as a group algebra element.
    pub fn evaluate(&self, j: usize, i: usize) -> GroupAlgebraElement<F> {
        let mut out = GroupAlgebraElement::new();
        for (w, l) in &self.support {
            ga_add_term(&mut out, w.clone(), &l[(j, i)]);
        }
        out
    }

    /// All values `(j, i) -> beta(y_j (x) x_i)`.
    pub fn table(&self) -> BTreeMap<(usize, usize), GroupAlgebraElement<F>> {
        let mut out = BTreeMap::new();
        for j in 0..self.dim {
            for i in 0..self.dim {
                let v = self.evaluate(j, i);
                if !v.is_empty() {
                    out.insert((j, i), v);
                }
            }
        }
        out
    }

    /// The parameter with `M_w = id` on the support of `self`, a unit for [`star`].
    pub fn identity_on_support(&self, one: &F) -> Self {
        CommutatorMap {
            dim: self.dim,
            support: self
                .support
                .keys()
                .map(|w| (w.clone(), Matrix::identity(self.dim, one)))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.dim);
        if s.eq_zero() {
            return out;
        }
        for (w, l) in &self.support {
            out.support.insert(w.clone(), l.scale(s));
        }
        out
    }
}

/// Sum of parameters, `L_w + M_w`.
pub fn diamond<F: Field>(
    beta: &CommutatorMap<F>,
    gamma: &CommutatorMap<F>,
) -> Result<CommutatorMap<F>> {
    if beta.dim != gamma.dim {
        return Err(Error::InvalidParameters(
            "diamond of parameters of different rank".into(),
        ));
    }
    let mut out = beta.clone();
    for (w, m) in &gamma.support {
        out.add_entry(w.clone(), m)?;
    }
    Ok(out)
}

/// Product of parameters, `L_w M_w` on the common support.
pub fn star<F: Field>(
    beta: &CommutatorMap<F>,
    gamma: &CommutatorMap<F>,
) -> Result<CommutatorMap<F>> {
    if beta.dim != gamma.dim {
        return Err(Error::InvalidParameters(
            "star of parameters of different rank".into(),
        ));
    }
    let mut out = CommutatorMap::zero(beta.dim);
    for (w, l) in &beta.support {
        if let Some(m) = gamma.support.get(w) {
            out.add_entry(w.clone(), &l.mul(m))?;
        }
    }
    Ok(out)
}

/// First pair `(g, w)` with `L_{g w g^-1} != g L_w g^-1`, over the generators `g`.
pub fn equivariance_failure<F: Field>(
    beta: &CommutatorMap<F>,
    group: &Group<F>,
) -> Option<(MonomialMatrix<F>, MonomialMatrix<F>)> {
    for g in group.generators() {
        let gd = g.to_dense();
        let gi = g.inverse().to_dense();
        for (w, l) in &beta.support {
            let conj = g.conjugate(w);
            let expected = gd.mul(l).mul(&gi);
            let ok = beta
                .support
                .get(&conj)
                .map(|m| *m == expected)
                .unwrap_or(false);
            if !ok {
                return Some((g.clone(), w.clone()));
            }
        }
    }
    None
}

/// W-equivariance `L_{g w g^-1} = g L_w g^-1` for all generators `g`.
pub fn check_equivariance<F: Field>(beta: &CommutatorMap<F>, group: &Group<F>) -> bool {
    equivariance_failure(beta, group).is_none()
}

/// Location of a failed q-commutativity equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCommFailure<F: Field> {
    pub w: MonomialMatrix<F>,
    pub i: usize,
    pub j: usize,
    /// `true` for the equation on `V*`.
    pub dual: bool,
}

fn tensor<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul_ref(y));
        }
    }
    out
}

fn basis_vector<F: Field>(n: usize, k: usize, one: &F) -> Vec<F> {
    let mut v = vec![one.zero_like(); n];
    v[k] = one.clone();
    v
}

fn axpy<F: Field>(a: &[F], s: &F, b: &[F]) -> Vec<F> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.add_ref(&s.mul_ref(y)))
        .collect()
}

/// The q-commutativity equations
/// `(x_i - q_ij w(x_i)) (x) L_w(x_j) = (q_ij x_j - w(x_j)) (x) L_w(x_i)` and their duals.
pub fn q_commutativity_failure<F: Field>(
    beta: &CommutatorMap<F>,
    q: &QMatrix<F>,
) -> Option<QCommFailure<F>> {
    let n = q.n();
    let one = q.one();
    let minus = one.neg_ref();
    for (w, l) in &beta.support {
        let lt = l.transpose();
        let wd = w.act_on_dual();
        for i in 0..n {
            for j in 0..n {
                let xi = basis_vector(n, i, &one);
                let xj = basis_vector(n, j, &one);
                let left = axpy(&xi, &q.q(i, j).neg_ref(), &w.act_on_vector(&xi));
                let right = axpy(
                    &xj.iter().map(|v| v.mul_ref(q.q(i, j))).collect::<Vec<_>>(),
                    &minus,
                    &w.act_on_vector(&xj),
                );
                let lhs = tensor(&left, &l.column(j));
                let rhs = tensor(&right, &l.column(i));
                if lhs != rhs {
                    return Some(QCommFailure {
                        w: w.clone(),
                        i,
                        j,
                        dual: false,
                    });
                }
                let left = axpy(&xi, &q.q(j, i).neg_ref(), &wd.act_on_vector(&xi));
                let right = axpy(
                    &xj.iter().map(|v| v.mul_ref(q.q(j, i))).collect::<Vec<_>>(),
                    &minus,
                    &wd.act_on_vector(&xj),
                );
                let lhs = tensor(&left, &lt.column(j));
                let rhs = tensor(&right, &lt.column(i));
                if lhs != rhs {
                    return Some(QCommFailure {
                        w: w.clone(),
                        i,
                        j,
                        dual: true,
                    });
                }
            }
        }
    }
    None
}

pub fn check_q_commutativity<F: Field>(beta: &CommutatorMap<F>, q: &QMatrix<F>) -> bool {
    q_commutativity_failure(beta, q).is_none()
}

/// `T^-_w(u (x) v) = (L_w (x) id)(u (x) w(v) + v (x) u)`, given the matrix of `w` on the space.
pub fn t_minus_with<F: Field>(l: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    let d = l.rows();
    let zero = l[(0, 0)].zero_like();
    let id = Matrix::identity(d, &zero.one_like());
    let swap = flip(d, &zero);
    // u (x) v -> u (x) w(v), then add the flip, then apply L (x) id.
    let inner = id.kron(w).add(&swap);
    l.kron(&id).mul(&inner)
}

/// `T^+_w(f (x) g) = (id (x) L_w^*)(w^-1(f) (x) g + g (x) f)`, given `w^-1` on the dual space.
pub fn t_plus_with<F: Field>(l: &Matrix<F>, w_inv_dual: &Matrix<F>) -> Matrix<F> {
    let d = l.rows();
    let zero = l[(0, 0)].zero_like();
    let id = Matrix::identity(d, &zero.one_like());
    let swap = flip(d, &zero);
    let inner = w_inv_dual.kron(&id).add(&swap);
    id.kron(&l.transpose()).mul(&inner)
}

/// The flip `e_a (x) e_b -> e_b (x) e_a`.
pub fn flip<F: Field>(d: usize, zero: &F) -> Matrix<F> {
    let mut m = Matrix::zeros(d * d, d * d, zero);
    for a in 0..d {
        for b in 0..d {
            m[(b * d + a, a * d + b)] = zero.one_like();
        }
    }
    m
}

/// `T^-_{w, beta}` for a parameter on `V` with `w` acting by its monomial matrix.
pub fn t_minus<F: Field>(w: &MonomialMatrix<F>, beta: &CommutatorMap<F>) -> Matrix<F> {
    let one = w.scalars()[0].one_like();
    match beta.get(w) {
        Some(l) => t_minus_with(l, &w.to_dense()),
        None => Matrix::zeros(beta.dim * beta.dim, beta.dim * beta.dim, &one.zero_like()),
    }
}

/// `T^+_{w, beta}` for a parameter on `V`.
pub fn t_plus<F: Field>(w: &MonomialMatrix<F>, beta: &CommutatorMap<F>) -> Matrix<F> {
    let one = w.scalars()[0].one_like();
    match beta.get(w) {
        Some(l) => t_plus_with(l, &w.inverse().act_on_dual().to_dense()),
        None => Matrix::zeros(beta.dim * beta.dim, beta.dim * beta.dim, &one.zero_like()),
    }
}

/// Subspace of a tensor square, stored as the rows of its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> RelationSpace<F> {
    /// Span of `vectors` inside a space of dimension `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        RelationSpace {
            ambient,
            basis: row_space_basis(vectors, ambient),
        }
    }

    pub fn full(ambient: usize, one: &F) -> Self {
        let vs: Vec<Vec<F>> = (0..ambient)
            .map(|k| basis_vector(ambient, k, one))
            .collect();
        Self::span(ambient, &vs)
    }

    pub fn zero(ambient: usize) -> Self {
        RelationSpace {
            ambient,
            basis: vec![],
        }
    }

    /// `span{e_i (x) e_j - q_ij e_j (x) e_i : i < j}` in `V (x) V`.
    ///
    /// Pass `q.transpose()` for the relations of `S_{q^T}(V*)`.
    pub fn wedge_q(q: &QMatrix<F>) -> Self {
        let n = q.n();
        let one = q.one();
        let mut vs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![one.zero_like(); n * n];
                v[i * n + j] = one.clone();
                v[j * n + i] = q.q(i, j).neg_ref();
                vs.push(v);
            }
        }
        Self::span(n * n, &vs)
    }

    /// Common kernel of a family of square matrices.
    pub fn kernel_of(ambient: usize, maps: &[Matrix<F>], one: &F) -> Self {
        if maps.is_empty() {
            return Self::full(ambient, one);
        }
        let mut rows = Vec::new();
        for m in maps {
            rows.extend(m.row_vectors());
        }
        let stacked = Matrix::from_rows(rows, ambient);
        let kernel = stacked.nullspace(&one.zero_like());
        Self::span(ambient, &kernel)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        row_space_basis(&vs, self.ambient).len() == self.basis.len()
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn intersect(&self, other: &Self, one: &F) -> Self {
        // Intersection as the kernel of the map to the joint quotient.
        let complement = |s: &Self| -> Vec<Vec<F>> {
            if s.basis.is_empty() {
                return (0..s.ambient)
                    .map(|k| basis_vector(s.ambient, k, one))
                    .collect();
            }
            Matrix::from_rows(s.basis.clone(), s.ambient).nullspace(&one.zero_like())
        };
        let mut eqs = complement(self);
        eqs.extend(complement(other));
        if eqs.is_empty() {
            return Self::full(self.ambient, one);
        }
        let m = Matrix::from_rows(eqs, self.ambient);
        Self::span(self.ambient, &m.nullspace(&one.zero_like()))
    }
}

/// The maximal relation spaces `(R^-_max, R^+_max)` as common kernels over the support.
///
/// With a group given, the parameter is first checked for equivariance.
pub fn r_max<F: Field>(
    beta: &CommutatorMap<F>,
    group: Option<&Group<F>>,
    one: &F,
) -> Result<(RelationSpace<F>, RelationSpace<F>)> {
    if let Some(g) = group {
        if !check_equivariance(beta, g) {
            return Err(Error::NotEquivariant);
        }
    }
    let d = beta.dim;
    let minus: Vec<Matrix<F>> = beta.support.keys().map(|w| t_minus(w, beta)).collect();
    let plus: Vec<Matrix<F>> = beta.support.keys().map(|w| t_plus(w, beta)).collect();
    Ok((
        RelationSpace::kernel_of(d * d, &minus, one),
        RelationSpace::kernel_of(d * d, &plus, one),
    ))
}

/// Maximal relation spaces of a parameter on a Yetter-Drinfeld module, with
/// group elements acting through the module.
pub fn r_max_on<F: Field>(
    beta: &CommutatorMap<F>,
    y: &YDModule<F>,
) -> Result<(RelationSpace<F>, RelationSpace<F>)> {
    let d = beta.dim;
    if d != y.dim() {
        return Err(Error::InvalidParameters(
            "parameter and module have different dimensions".into(),
        ));
    }
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for (w, l) in &beta.support {
        let rho = y.action(w)?;
        let rho_inv_dual = y
            .action(&w.inverse())?
            .transpose()
            .inverse()
            .ok_or(Error::DivisionByZero)?;
        minus.push(t_minus_with(l, rho));
        plus.push(t_plus_with(l, &rho_inv_dual));
    }
    let one = y.one();
    Ok((
        RelationSpace::kernel_of(d * d, &minus, &one),
        RelationSpace::kernel_of(d * d, &plus, &one),
    ))
}

/// Finite-dimensional Yetter-Drinfeld module over a finite monomial group.
#[derive(Clone, Debug)]
pub struct YDModule<F: Field> {
    labels: Vec<String>,
    degrees: Vec<MonomialMatrix<F>>,
    group: Group<F>,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> YDModule<F> {
    /// Build from the degree of every basis vector and the action of every group element.
    ///
    /// Fails with `NotYetterDrinfeld` when a degree lies outside the group, the
    /// action is not a representation on the generators, or it moves `Y_w` off
    /// `Y_{g w g^-1}`.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<MonomialMatrix<F>>,
        group: Group<F>,
        action: impl FnMut(&MonomialMatrix<F>) -> Result<Matrix<F>>,
    ) -> Result<Self> {
        let dim = degrees.len();
        if labels.len() != dim || dim == 0 {
            return Err(Error::NotYetterDrinfeld(
                "one label per basis vector, at least one vector".into(),
            ));
        }
        let actions = group
            .elements()
            .iter()
            .map(action)
            .collect::<Result<Vec<_>>>()?;
        let y = YDModule {
            labels,
            degrees,
            group,
            actions,
        };
        y.validate()?;
        Ok(y)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for (a, d) in self.degrees.iter().enumerate() {
            if !self.group.contains(d) {
                return Err(Error::NotYetterDrinfeld(format!(
                    "degree of {} is not in the group",
                    self.labels[a]
                )));
            }
        }
        for m in &self.actions {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::NotYetterDrinfeld(
                    "action matrix of wrong shape".into(),
                ));
            }
        }
        for g in self.group.generators() {
            let rg = self.action(g)?;
            for h in self.group.elements() {
                if *self.action(&g.compose(h))? != rg.mul(self.action(h)?) {
                    return Err(Error::NotYetterDrinfeld(format!(
                        "action is not multiplicative at {}",
                        g.label()
                    )));
                }
            }
        }
        for (gi, g) in self.group.elements().iter().enumerate() {
            let m = &self.actions[gi];
            for a in 0..dim {
                let target = g.conjugate(&self.degrees[a]);
                for b in 0..dim {
                    if !m[(b, a)].eq_zero() && self.degrees[b] != target {
                        return Err(Error::NotYetterDrinfeld(format!(
                            "{} maps {} outside the component of degree {}",
                            g.label(),
                            self.labels[a],
                            target.label()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `V` graded by `|x_i| = gamma_i` over the group `Gamma_q`.
    pub fn over_gamma(q: &QMatrix<F>) -> Result<Self> {
        let n = q.n();
        let gens = gamma_generators(q);
        let group = generate_group(&gens, n, &q.one(), DEFAULT_CAP)?;
        Self::new(
            (1..=n).map(|i| format!("x{i}")).collect(),
            gens,
            group,
            |g| Ok(g.to_dense()),
        )
    }

    /// `V` with the trivial grading over a group acting on `V`.
    pub fn trivial(group: &Group<F>) -> Result<Self> {
        let n = group.n();
        let id = group.identity().clone();
        Self::new(
            (1..=n).map(|i| format!("x{i}")).collect(),
            vec![id; n],
            group.clone(),
            |g| Ok(g.to_dense()),
        )
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[MonomialMatrix<F>] {
        &self.degrees
    }

    pub fn group(&self) -> &Group<F> {
        &self.group
    }

    pub fn one(&self) -> F {
        self.degrees[0].scalars()[0].one_like()
    }

    pub fn action(&self, g: &MonomialMatrix<F>) -> Result<&Matrix<F>> {
        let k = self
            .group
            .index_of(g)
            .ok_or_else(|| Error::NotInGroup(g.label()))?;
        Ok(&self.actions[k])
    }
}

/// `Psi(e_a (x) e_b) = |e_a|(e_b) (x) e_a`.
pub fn yd_braiding<F: Field>(y: &YDModule<F>) -> Result<Matrix<F>> {
    let d = y.dim();
    let zero = y.one().zero_like();
    let mut psi = Matrix::zeros(d * d, d * d, &zero);
    for a in 0..d {
        let rho = y.action(&y.degrees[a])?;
        for b in 0..d {
            for c in 0..d {
                let v = &rho[(c, b)];
                if !v.eq_zero() {
                    psi[(c * d + a, a * d + b)] = v.clone();
                }
            }
        }
    }
    Ok(psi)
}

/// `beta_Y(f (x) v) = <v, f> |v|`: projections onto the graded components.
pub fn heisenberg_beta<F: Field>(y: &YDModule<F>) -> CommutatorMap<F> {
    let d = y.dim();
    let one = y.one();
    let mut support: BTreeMap<MonomialMatrix<F>, Matrix<F>> = BTreeMap::new();
    for (a, g) in y.degrees.iter().enumerate() {
        let m = support
            .entry(g.clone())
            .or_insert_with(|| Matrix::zeros(d, d, &one.zero_like()));
        m[(a, a)] = one.clone();
    }
    CommutatorMap { dim: d, support }
}

/// Hilbert function of `T(Y)/<R>` in degrees `0..=d_max`.
pub fn quad_algebra_dims<F: Field>(
    dim: usize,
    relations: &RelationSpace<F>,
    d_max: usize,
) -> Result<Vec<usize>> {
    const LIMIT: usize = 200_000;
    if d_max > 6 {
        return Err(Error::TooLarge {
            size: d_max,
            limit: 6,
        });
    }
    if relations.ambient() != dim * dim {
        return Err(Error::InvalidParameters(
            "relations do not live in Y (x) Y".into(),
        ));
    }
    let mut dims = Vec::new();
    for d in 0..=d_max {
        let size = (0..d)
            .try_fold(1usize, |acc, _| acc.checked_mul(dim))
            .unwrap_or(usize::MAX);
        if size > LIMIT {
            return Err(Error::TooLarge { size, limit: LIMIT });
        }
        if d < 2 {
            dims.push(size);
            continue;
        }
        let rel_sparse: Vec<Vec<(usize, F)>> = relations
            .basis()
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.eq_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect();
        let mut ech: SparseEchelon<F> = SparseEchelon::new();
        for k in 0..=d - 2 {
            let prefix = dim.pow(k as u32);
            let suffix = dim.pow((d - 2 - k) as u32);
            for p in 0..prefix {
                for s in 0..suffix {
                    for r in &rel_sparse {
                        let v: SparseVec<F> = r
                            .iter()
                            .map(|(idx, c)| (p * dim * dim * suffix + idx * suffix + s, c.clone()))
                            .collect();
                        ech.insert(v);
                    }
                }
            }
        }
        dims.push(size - ech.rank());
    }
    Ok(dims)
}

/// Root-coroot data attached to a q-reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum<F: Field> {
    pub label: MonomialMatrix<F>,
    /// Coordinates of `alpha` in the basis `x_k`.
    pub alpha: Vec<F>,
    /// Coordinates of `alpha^vee` in the basis `y_k`.
    pub alpha_check: Vec<F>,
    pub c: F,
}

impl<F: Field> RootDatum<F> {
    /// `L(x) = c <x, alpha^vee> alpha`.
    pub fn commutator_matrix(&self) -> Matrix<F> {
        let n = self.alpha.len();
        let mut m = Matrix::zeros(n, n, &self.c.zero_like());
        for r in 0..n {
            for col in 0..n {
                m[(r, col)] = self
                    .c
                    .mul_ref(&self.alpha[r])
                    .mul_ref(&self.alpha_check[col]);
            }
        }
        m
    }
}

/// Whether `g` is `gamma_B s` with `s` a complex reflection moving only `V_B`.
pub fn q_reflection_block<F: Field>(
    g: &MonomialMatrix<F>,
    q: &QMatrix<F>,
) -> Result<Option<usize>> {
    let blocks = block_structure(q)?;
    let one = q.one();
    for (b, gamma) in blocks.gamma.iter().enumerate() {
        let s = gamma.inverse().compose(g);
        let diff = Matrix::identity(q.n(), &one).sub(&s.to_dense());
        if diff.rank() != 1 {
            continue;
        }
        let inside = (0..q.n())
            .all(|r| blocks.partition[b].contains(&r) || diff.row(r).iter().all(Field::eq_zero));
        if inside {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Solutions `v` of `(x_i - q_ij w(x_i)) v_j = (q_ij x_j - w(x_j)) v_i` for all `i, j`.
fn compatible_values<F: Field>(w: &MonomialMatrix<F>, q: &QMatrix<F>, dual: bool) -> Vec<Vec<F>> {
    let n = q.n();
    let one = q.one();
    let act = if dual { w.act_on_dual() } else { w.clone() };
    let qq = |i: usize, j: usize| {
        if dual {
            q.q(j, i).clone()
        } else {
            q.q(i, j).clone()
        }
    };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let xi = basis_vector(n, i, &one);
            let xj = basis_vector(n, j, &one);
            let left = axpy(&xi, &qq(i, j).neg_ref(), &act.act_on_vector(&xi));
            let right = axpy(
                &xj.iter().map(|v| v.mul_ref(&qq(i, j))).collect::<Vec<_>>(),
                &one.neg_ref(),
                &act.act_on_vector(&xj),
            );
            // For each output coordinate r: left[r] v_j - right[r] v_i = 0.
            for r in 0..n {
                let mut row = vec![one.zero_like(); n];
                row[j] = row[j].add_ref(&left[r]);
                row[i] = row[i].sub_ref(&right[r]);
                if row.iter().any(|x| !x.eq_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return (0..n).map(|k| basis_vector(n, k, &one)).collect();
    }
    Matrix::from_rows(rows, n).nullspace(&one.zero_like())
}

/// Root data of a q-reflection: `alpha^vee` spans the values compatible with the
/// relations of `S_q(V)`, `alpha` the dual ones. `alpha` is scaled to have first
/// nonzero coordinate one and `alpha^vee` to have coordinate one at that index.
pub fn q_root_datum<F: Field>(g: &MonomialMatrix<F>, q: &QMatrix<F>, c: F) -> Result<RootDatum<F>> {
    let coroots = compatible_values(g, q, false);
    let roots = compatible_values(g, q, true);
    if coroots.len() != 1 || roots.len() != 1 {
        return Err(Error::InvalidParameters(format!(
            "{} is not a q-reflection: compatible spaces of dimensions {} and {}",
            g.label(),
            coroots.len(),
            roots.len()
        )));
    }
    let alpha = &roots[0];
    let k = alpha
        .iter()
        .position(|x| !x.eq_zero())
        .expect("nullspace vectors are nonzero");
    let inv = alpha[k].inverse().expect("nonzero");
    let alpha: Vec<F> = alpha.iter().map(|x| x.mul_ref(&inv)).collect();
    let check = &coroots[0];
    let inv = check[k].inverse().ok_or_else(|| {
        Error::InvalidParameters(format!(
            "coroot of {} vanishes on the root coordinate",
            g.label()
        ))
    })?;
    let alpha_check = check.iter().map(|x| x.mul_ref(&inv)).collect();
    Ok(RootDatum {
        label: g.clone(),
        alpha,
        alpha_check,
        c,
    })
}

/// The module of q-reflections with the maps `mu_c`, `nu` and the root data.
#[derive(Clone, Debug)]
pub struct QReflections<F: Field> {
    pub module: YDModule<F>,
    /// `mu_c`, a `dim Y x n` matrix: column `i` is `mu_c(x_i)`.
    pub mu: Matrix<F>,
    /// `nu`, a `dim Y x n` matrix in the dual basis `[g]^*`: column `j` is `nu(y_j)`.
    pub nu: Matrix<F>,
    pub roots: Vec<RootDatum<F>>,
}

/// Enumerate the q-reflections of `wtilde`, attach root data and coefficients,
/// and build `Y_q = span{[g] = g (x) alpha_g}` with `w([g]) = chi [w g w^-1]`.
pub fn build_q_reflections<F: Field>(
    wtilde: &Group<F>,
    q: &QMatrix<F>,
    c: &[(MonomialMatrix<F>, F)],
) -> Result<QReflections<F>> {
    let n = q.n();
    let one = q.one();
    let blocks = block_structure(q)?;
    for g in &blocks.gamma {
        if !wtilde.contains(g) {
            return Err(Error::NotInGroup(format!(
                "gamma_B = {} is not in the group",
                g.label()
            )));
        }
    }
    let mut labels = Vec::new();
    for g in wtilde.elements() {
        if q_reflection_block(g, q)?.is_some() {
            labels.push(g.clone());
        }
    }
    let mut coeff: HashMap<MonomialMatrix<F>, F> = HashMap::new();
    for (g, v) in c {
        if !labels.contains(g) {
            return Err(Error::NotInGroup(format!(
                "{} is not a q-reflection of the group",
                g.label()
            )));
        }
        coeff.insert(g.clone(), v.clone());
    }
    let c_of = |g: &MonomialMatrix<F>| coeff.get(g).cloned().unwrap_or_else(|| one.zero_like());
    for g in &labels {
        for h in wtilde.generators() {
            if c_of(&h.conjugate(g)) != c_of(g) {
                return Err(Error::NotConjugationInvariant);
            }
        }
    }
    let roots = labels
        .iter()
        .map(|g| q_root_datum(g, q, c_of(g)))
        .collect::<Result<Vec<_>>>()?;
    let index: HashMap<MonomialMatrix<F>, usize> = labels
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, g)| (g, k))
        .collect();
    let dim = labels.len();
    let module = YDModule::new(
        labels.iter().map(|g| format!("[{}]", g.label())).collect(),
        labels.clone(),
        wtilde.clone(),
        |w| {
            let mut m = Matrix::zeros(dim, dim, &one.zero_like());
            for (a, r) in roots.iter().enumerate() {
                let b = index[&w.conjugate(&r.label)];
                let image = w.act_on_vector(&r.alpha);
                let target = &roots[b].alpha;
                let k = target
                    .iter()
                    .position(|x| !x.eq_zero())
                    .expect("roots are nonzero");
                let chi = image[k].div_ref(&target[k])?;
                if image != target.iter().map(|x| x.mul_ref(&chi)).collect::<Vec<_>>() {
                    return Err(Error::NotYetterDrinfeld(format!(
                        "{} does not carry the root of {} to a multiple of the root of its conjugate",
                        w.label(),
                        r.label.label()
                    )));
                }
                m[(b, a)] = chi;
            }
            Ok(m)
        },
    )?;
    let mut mu = Matrix::zeros(dim, n, &one.zero_like());
    let mut nu = Matrix::zeros(dim, n, &one.zero_like());
    for (a, r) in roots.iter().enumerate() {
        for i in 0..n {
            mu[(a, i)] = r.c.mul_ref(&r.alpha_check[i]);
            nu[(a, i)] = r.alpha[i].clone();
        }
    }
    Ok(QReflections {
        module,
        mu,
        nu,
        roots,
    })
}

/// Commutator parameter `sum_g c_g alpha_g (x) alpha_g^vee` of a list of root data.
pub fn reflection_beta<F: Field>(roots: &[RootDatum<F>], n: usize) -> Result<CommutatorMap<F>> {
    let mut beta = CommutatorMap::zero(n);
    for r in roots {
        if !r.c.eq_zero() {
            beta.add_entry(r.label.clone(), &r.commutator_matrix())?;
        }
    }
    Ok(beta)
}

/// `mu_c(w x) = w mu_c(x)` and `nu(w y) = w nu(y)` for the generators.
pub fn maps_are_equivariant<F: Field>(refl: &QReflections<F>) -> Result<bool> {
    for g in refl.module.group().generators() {
        let rho = refl.module.action(g)?;
        if rho.mul(&refl.mu) != refl.mu.mul(&g.to_dense()) {
            return Ok(false);
        }
        let rho_dual = rho.transpose().inverse().ok_or(Error::DivisionByZero)?;
        if rho_dual.mul(&refl.nu) != refl.nu.mul(&g.act_on_dual().to_dense()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the three embedding conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// `beta gamma = beta_Y o (nu (x) mu)`.
    pub commutator: bool,
    /// `(mu (x) mu) S^- in ker(id + Psi_Y)`.
    pub minus_relations: bool,
    /// `(nu (x) nu) R^+ in ker(id + Psi_Y^*)`.
    pub plus_relations: bool,
    /// First failing condition, if any.
    pub failure: Option<String>,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.commutator && self.minus_relations && self.plus_relations
    }
}

/// The morphism-existence certificate for `A_beta(., R^+) * A_gamma(S^-, .) -> A_Y`.
pub fn embedding_conditions<F: Field>(
    beta: &CommutatorMap<F>,
    gamma: &CommutatorMap<F>,
    s_minus: &RelationSpace<F>,
    r_plus: &RelationSpace<F>,
    y: &YDModule<F>,
    mu: &Matrix<F>,
    nu: &Matrix<F>,
) -> Result<EmbeddingReport> {
    let n = beta.dim();
    let d = y.dim();
    if mu.rows() != d || nu.rows() != d || mu.cols() != n || nu.cols() != n {
        return Err(Error::InvalidParameters(
            "mu and nu must be dim Y x n".into(),
        ));
    }
    let product = star(beta, gamma)?;
    let mut failure = None;
    let mut commutator = true;
    'outer: for j in 0..n {
        for i in 0..n {
            let mut via_y = GroupAlgebraElement::new();
            for a in 0..d {
                ga_add_term(
                    &mut via_y,
                    y.degrees()[a].clone(),
                    &nu[(a, j)].mul_ref(&mu[(a, i)]),
                );
            }
            if via_y != product.evaluate(j, i) {
                commutator = false;
                failure = Some(format!("commutator differs at (y{}, x{})", j + 1, i + 1));
                break 'outer;
            }
        }
    }
    let psi = yd_braiding(y)?;
    let one = y.one();
    let id = Matrix::identity(d * d, &one);
    let k_minus = id.add(&psi);
    let k_plus = id.add(&psi.transpose());
    let mu2 = mu.kron(mu);
    let nu2 = nu.kron(nu);
    let mut minus_relations = true;
    for r in s_minus.basis() {
        if k_minus.apply(&mu2.apply(r)).iter().any(|x| !x.eq_zero()) {
            minus_relations = false;
            failure.get_or_insert_with(|| "a relation of S^- leaves ker(id + Psi)".into());
            break;
        }
    }
    let mut plus_relations = true;
    for r in r_plus.basis() {
        if k_plus.apply(&nu2.apply(r)).iter().any(|x| !x.eq_zero()) {
            plus_relations = false;
            failure.get_or_insert_with(|| "a relation of R^+ leaves ker(id + Psi^*)".into());
            break;
        }
    }
    Ok(EmbeddingReport {
        commutator,
        minus_relations,
        plus_relations,
        failure,
    })
}

/// Injectivity certificate: the roots with nonzero coefficient span `V`.
pub fn roots_span<F: Field>(roots: &[RootDatum<F>], n: usize) -> bool {
    let vs: Vec<Vec<F>> = roots
        .iter()
        .filter(|r| !r.c.eq_zero())
        .map(|r| r.alpha.clone())
        .collect();
    row_space_basis(&vs, n).len() == n
}

/// Braided commutator table `(j, i) -> gamma_j^-1 beta(y_j (x) x_i)`.
pub fn braided_reduce<F: Field>(
    beta: &CommutatorMap<F>,
    q: &QMatrix<F>,
) -> Result<BTreeMap<(usize, usize), GroupAlgebraElement<F>>> {
    let gammas = gamma_generators(q);
    let gamma_group = generate_group(&gammas, q.n(), &q.one(), DEFAULT_CAP)?;
    for w in beta.support().keys() {
        for g in &gammas {
            if !gamma_group.contains(&w.conjugate(g)) {
                return Err(Error::NotNormalized(w.label()));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (key, value) in beta.table() {
        let reduced = ga_left_mul(&gammas[key.0].inverse(), &value);
        if !reduced.is_empty() {
            out.insert(key, reduced);
        }
    }
    Ok(out)
}

/// Pretty printer for tables, used in reports.
pub fn table_to_strings<F: Field>(
    table: &BTreeMap<(usize, usize), GroupAlgebraElement<F>>,
) -> Vec<String> {
    table
        .iter()
        .map(|((j, i), v)| format!("(y{}, x{}) -> {}", j + 1, i + 1, ga_to_string(v)))
        .collect()
}

/// The group `W~ = W . Gamma_q . {+-id}` generated inside `GL(V)`.
pub fn extended_group<F: Field>(w: &Group<F>, q: &QMatrix<F>) -> Result<Group<F>> {
    let mut gens = w.generators().to_vec();
    gens.extend(gamma_generators(q));
    gens.push(crate::wgroup::minus_id(q.n(), &q.one()));
    gens.retain(|g| !g.is_identity());
    generate_group(&gens, q.n(), &q.one(), DEFAULT_CAP)
}

/// The q-Cherednik parameter of the negative family over `W~`.
///
/// Every q-reflection `g` of `W~` carries root data from [`q_root_datum`] and
/// coefficient `1` (or `0` when degenerate) for `gamma_i`, `c_1` (rank-two
/// split via the class of `s_12^(eta)`) for `(-id) s_ij^(eta)`, and `c_eps'`
/// for `(-id) t_i^(-eps')`; when `-1` lies in `C'` the scalar `-id` carries
/// `c_{-1} id`.
pub fn negative_q_cherednik<F: RootField>(
    params: &crate::dunkl::NegativeParams<F>,
    one: &F,
    n: usize,
) -> Result<(Group<F>, CommutatorMap<F>, Vec<RootDatum<F>>)> {
    let q = QMatrix::minus_one(n, one);
    let w = crate::wgroup::build_w_cc(one, params.m, params.mp, n, DEFAULT_CAP)?;
    let wt = extended_group(&w, &q)?;
    let cprime = one.roots_of_unity_like(params.mp)?;
    let mut coeffs = Vec::new();
    for g in wt.elements() {
        if q_reflection_block(g, &q)?.is_none() {
            continue;
        }
        let s = crate::wgroup::minus_id(n, one).compose(g);
        let c = if s.is_diagonal() {
            let i = (0..n)
                .find(|&k| !s.scalars()[k].eq_one())
                .expect("reflection");
            let eps = s.scalars()[i].neg_ref();
            if eps.eq_one() {
                if params.degenerate {
                    one.zero_like()
                } else {
                    one.clone()
                }
            } else if let Some(k) = cprime.iter().position(|e| *e == eps) {
                params.c_prime[k - 1].clone()
            } else {
                one.zero_like()
            }
        } else {
            let i = (0..n).find(|&k| s.perm()[k] != k).expect("reflection");
            let eta = s.scalars()[i].clone();
            params.sigma_weight(0, &eta)?
        };
        if !c.eq_zero() {
            coeffs.push((g.clone(), c));
        }
    }
    let refl = build_q_reflections(&wt, &q, &coeffs)?;
    let mut beta = reflection_beta(&refl.roots, n)?;
    let minus = one.neg_ref();
    if let Some(k) = cprime.iter().position(|e| *e == minus) {
        let c = &params.c_prime[k - 1];
        beta.add_entry(
            crate::wgroup::minus_id(n, one),
            &Matrix::identity(n, one).scale(c),
        )?;
    }
    Ok((wt, beta, refl.roots))
}

/// Shared handle used by presentations built from a parameter.
pub type SharedQ<F> = Arc<QMatrix<F>>;
