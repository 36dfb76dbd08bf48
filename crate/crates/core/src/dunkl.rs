//! Degree-truncated linear operators on `S_q(V)` and the Dunkl families built
//! from them.
//!
//! An [`Operator`] stores the image of every monomial of degree at most its
//! `max_degree`. Composition, sums and brackets are exact; composing shrinks
//! the degree window when the inner operator raises degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::{Field, RootField};
use crate::qpoly::{monomials_up_to, Monomial, QMatrix, QPolynomial};
use crate::wgroup::{make_sigma, make_t, MonomialMatrix};
use crate::{Error, Result};

/// Linear endomorphism of `S_q(V)`, known on all monomials of degree `<= max_degree`.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator<F: Field> {
    q: Arc<QMatrix<F>>,
    max_degree: u32,
    shift: i32,
    images: BTreeMap<Monomial, QPolynomial<F>>,
}

impl<F: Field> Operator<F> {
    /// Build from a function on basis monomials; zero images are dropped.
    pub fn from_fn(
        q: &Arc<QMatrix<F>>,
        max_degree: u32,
        shift: i32,
        mut f: impl FnMut(&Monomial) -> Result<QPolynomial<F>>,
    ) -> Result<Self> {
        let mut images = BTreeMap::new();
        for m in monomials_up_to(q.n(), max_degree) {
            let p = f(&m)?;
            if !p.is_zero() {
                images.insert(m, p);
            }
        }
        Ok(Operator {
            q: q.clone(),
            max_degree,
            shift,
            images,
        })
    }

    pub fn zero(q: &Arc<QMatrix<F>>, max_degree: u32, shift: i32) -> Self {
        Operator {
            q: q.clone(),
            max_degree,
            shift,
            images: BTreeMap::new(),
        }
    }

    pub fn identity(q: &Arc<QMatrix<F>>, max_degree: u32) -> Self {
        Self::from_fn(q, max_degree, 0, |m| {
            Ok(QPolynomial::monomial(q, m.clone()))
        })
        .expect("identity never fails")
    }

    /// Left multiplication by `x_i`.
    pub fn left_mul(q: &Arc<QMatrix<F>>, i: usize, max_degree: u32) -> Self {
        Self::from_fn(q, max_degree, 1, |m| {
            Ok(QPolynomial::monomial(q, m.clone()).left_mul_var(i))
        })
        .expect("multiplication never fails")
    }

    /// The automorphism induced by a monomial matrix.
    pub fn group_action(q: &Arc<QMatrix<F>>, g: &MonomialMatrix<F>, max_degree: u32) -> Self {
        Self::from_fn(q, max_degree, 0, |m| {
            let (c, image) = g.act_on_monomial(q, m);
            Ok(QPolynomial::term(q, image, c))
        })
        .expect("group action never fails")
    }

    pub fn qmatrix(&self) -> &Arc<QMatrix<F>> {
        &self.q
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn degree_shift(&self) -> i32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Nonzero images as `(monomial, image)` pairs in increasing monomial order.
    pub fn images(&self) -> &BTreeMap<Monomial, QPolynomial<F>> {
        &self.images
    }

    /// First monomial with a nonzero image, the natural counterexample for a zero test.
    pub fn first_nonzero(&self) -> Option<(&Monomial, &QPolynomial<F>)> {
        self.images.iter().next()
    }

    /// Image of a basis monomial.
    pub fn image(&self, m: &Monomial) -> Result<QPolynomial<F>> {
        if m.degree() > self.max_degree {
            return Err(Error::DegreeWindowEmpty(format!(
                "monomial {m} exceeds operator degree {}",
                self.max_degree
            )));
        }
        Ok(self
            .images
            .get(m)
            .cloned()
            .unwrap_or_else(|| QPolynomial::zero(&self.q)))
    }

    pub fn apply(&self, p: &QPolynomial<F>) -> Result<QPolynomial<F>> {
        let mut out = QPolynomial::zero(&self.q);
        for (m, c) in p.terms() {
            if m.degree() > self.max_degree {
                return Err(Error::DegreeWindowEmpty(format!(
                    "monomial {m} exceeds operator degree {}",
                    self.max_degree
                )));
            }
            if let Some(img) = self.images.get(m) {
                out.add_scaled(img, c);
            }
        }
        Ok(out)
    }

    /// Restrict to monomials of degree `<= d`.
    pub fn truncate(&self, d: u32) -> Self {
        Operator {
            q: self.q.clone(),
            max_degree: d.min(self.max_degree),
            shift: self.shift,
            images: self
                .images
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, p)| (m.clone(), p.clone()))
                .collect(),
        }
    }

    fn check_q(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.q, &other.q) || self.q == other.q {
            Ok(())
        } else {
            Err(Error::QMatrixMismatch)
        }
    }

    /// `self o other`; valid on degrees `d <= other.max` with `d + other.shift <= self.max`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_q(other)?;
        let window = (other.max_degree as i64).min(self.max_degree as i64 - other.shift as i64);
        if window < 0 {
            return Err(Error::DegreeWindowEmpty(format!(
                "composing degree {} with degree {} and shift {}",
                self.max_degree, other.max_degree, other.shift
            )));
        }
        let window = window as u32;
        let mut images = BTreeMap::new();
        for (m, p) in &other.images {
            if m.degree() > window {
                continue;
            }
            let img = self.apply(p)?;
            if !img.is_zero() {
                images.insert(m.clone(), img);
            }
        }
        Ok(Operator {
            q: self.q.clone(),
            max_degree: window,
            shift: self.shift + other.shift,
            images,
        })
    }

    fn combine(&self, other: &Self, s: &F) -> Result<Self> {
        self.check_q(other)?;
        let shift = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.shift,
            (_, true) => self.shift,
            _ if self.shift == other.shift => self.shift,
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "adding operators of degree shifts {} and {}",
                    self.shift, other.shift
                )))
            }
        };
        let window = self.max_degree.min(other.max_degree);
        let mut out = self.truncate(window);
        out.shift = shift;
        for (m, p) in &other.images {
            if m.degree() > window {
                continue;
            }
            let entry = out
                .images
                .entry(m.clone())
                .or_insert_with(|| QPolynomial::zero(&self.q));
            entry.add_scaled(p, s);
            if entry.is_zero() {
                out.images.remove(m);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &self.q.one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &self.q.one().neg_ref())
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Operator::zero(&self.q, self.max_degree, self.shift);
        if s.eq_zero() {
            return out;
        }
        for (m, p) in &self.images {
            out.images.insert(m.clone(), p.scale(s));
        }
        out
    }

    /// `A o B - sign * q * B o A`.
    pub fn q_bracket(a: &Self, b: &Self, q: &F, sign: i32) -> Result<Self> {
        let ab = a.compose(b)?;
        let ba = b.compose(a)?;
        let f = if sign >= 0 { q.clone() } else { q.neg_ref() };
        ab.sub(&ba.scale(&f))
    }

    /// Sum of a list of operators with a common shift.
    pub fn sum(q: &Arc<QMatrix<F>>, max_degree: u32, shift: i32, ops: &[Self]) -> Result<Self> {
        let mut acc = Operator::zero(q, max_degree, shift);
        for op in ops {
            acc = acc.add(op)?;
        }
        Ok(acc)
    }
}

impl<F: Field> std::fmt::Debug for Operator<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Operator(D={}, shift={}) {{",
            self.max_degree, self.shift
        )?;
        for (m, p) in &self.images {
            writeln!(f, "  {m} -> {p}")?;
        }
        write!(f, "}}")
    }
}

/// `q_bracket(A, B, q, sign) = A o B - sign * q * B o A`.
pub fn q_bracket<F: Field>(
    a: &Operator<F>,
    b: &Operator<F>,
    q: &F,
    sign: i32,
) -> Result<Operator<F>> {
    Operator::q_bracket(a, b, q, sign)
}

/// Braided partial derivative: `x^a -> a_i prod_{l<i} q_li^(a_l) x^(a - e_i)`.
pub fn braided_partial<F: Field>(q: &Arc<QMatrix<F>>, i: usize, max_degree: u32) -> Operator<F> {
    Operator::from_fn(q, max_degree, -1, |m| {
        let ai = m.0[i];
        if ai == 0 {
            return Ok(QPolynomial::zero(q));
        }
        let mut c = q.one().from_i64_like(ai as i64);
        for l in 0..i {
            if m.0[l] > 0 {
                c = c.mul_ref(&q.q(l, i).pow_i64(m.0[l] as i64)?);
            }
        }
        let mut rest = m.clone();
        rest.0[i] -= 1;
        Ok(QPolynomial::term(q, rest, c))
    })
    .expect("braided partial never fails")
}

/// Right braided derivative: `x^a -> a_i prod_{l>i} q_il^(a_l) x^(a - e_i)`,
/// the derivative taken after moving `x_i` to the end of the word.
pub fn right_partial<F: Field>(q: &Arc<QMatrix<F>>, i: usize, max_degree: u32) -> Operator<F> {
    Operator::from_fn(q, max_degree, -1, |m| {
        let ai = m.0[i];
        if ai == 0 {
            return Ok(QPolynomial::zero(q));
        }
        let mut c = q.one().from_i64_like(ai as i64);
        for l in i + 1..q.n() {
            if m.0[l] > 0 {
                c = c.mul_ref(&q.q(i, l).pow_i64(m.0[l] as i64)?);
            }
        }
        let mut rest = m.clone();
        rest.0[i] -= 1;
        Ok(QPolynomial::term(q, rest, c))
    })
    .expect("right partial never fails")
}

/// Ordinary partial derivative `x^a -> a_i x^(a - e_i)` for commuting variables.
fn plain_partial<F: Field>(q: &Arc<QMatrix<F>>, i: usize, max_degree: u32) -> Operator<F> {
    right_partial(q, i, max_degree)
}

/// Degree `-1` operator with `d(x_k) = values[k]` and `d(ab) = d(a) w(b) + a d(b)`.
///
/// The rule is unrolled along the normal-ordered word of each monomial; the
/// result is the twisted derivation whenever the data are compatible with the
/// relations of `S_q(V)`, which callers can confirm with the commutator identity.
pub fn twisted_derivation<F: Field>(
    q: &Arc<QMatrix<F>>,
    w: &MonomialMatrix<F>,
    values: &[F],
    max_degree: u32,
) -> Result<Operator<F>> {
    if values.len() != q.n() || w.n() != q.n() {
        return Err(Error::InvalidParameters(
            "twisted derivation data of wrong rank".into(),
        ));
    }
    let mut memo: BTreeMap<Monomial, QPolynomial<F>> = BTreeMap::new();
    for m in monomials_up_to(q.n(), max_degree) {
        let Some(k) = m.0.iter().position(|&a| a > 0) else {
            memo.insert(m, QPolynomial::zero(q));
            continue;
        };
        let mut rest = m.clone();
        rest.0[k] -= 1;
        let (c, wrest) = w.act_on_monomial(q, &rest);
        let mut img = QPolynomial::term(q, wrest, c.mul_ref(&values[k]));
        let inner = memo[&rest].left_mul_var(k);
        img = img.add(&inner)?;
        memo.insert(m, img);
    }
    Operator::from_fn(q, max_degree, -1, |m| Ok(memo[m].clone()))
}

/// The polynomial `x_i + eps x_j`.
fn linear_form<F: Field>(q: &Arc<QMatrix<F>>, i: usize, j: usize, eps: &F) -> QPolynomial<F> {
    let mut p = QPolynomial::var(q, i);
    p.add_term(Monomial::var(q.n(), j), eps.clone());
    p
}

/// The central polynomial `x_i^2 - e x_j^2`.
fn square_difference<F: Field>(q: &Arc<QMatrix<F>>, i: usize, j: usize, e: &F) -> QPolynomial<F> {
    let mut si = Monomial::one(q.n());
    si.0[i] = 2;
    let mut sj = Monomial::one(q.n());
    sj.0[j] = 2;
    let mut p = QPolynomial::monomial(q, si);
    p.add_term(sj, e.neg_ref());
    p
}

/// `C~ = {zeta_m^k : 0 <= k < m/2}`, representatives of `mu_m / {+-1}`.
pub fn c_tilde<F: RootField>(one: &F, m: u64) -> Result<Vec<F>> {
    (0..(m / 2) as i64)
        .map(|k| one.root_of_unity_like(m, k))
        .collect()
}

/// Weighted divided difference `f -> sum_eps w_eps (x_i + eps x_j)/(x_i^2 - eps^2 x_j^2) (1 - sigma_ij^(eps)) f`
/// over `eps` in `mu_m`, assembled over the common central denominator
/// `prod_{eps in C~} (x_i^2 - eps^2 x_j^2)` and divided exactly.
pub fn divided_difference_sigma_weighted<F: RootField>(
    q: &Arc<QMatrix<F>>,
    i: usize,
    j: usize,
    m: u64,
    weights: &[F],
    max_degree: u32,
) -> Result<Operator<F>> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("|C| = {m} must be even")));
    }
    let n = q.n();
    let one = q.one();
    let roots = one.roots_of_unity_like(m)?;
    if weights.len() != roots.len() {
        return Err(Error::InvalidParameters(
            "one weight per root of unity".into(),
        ));
    }
    let reps = c_tilde(&one, m)?;
    let factors: Vec<QPolynomial<F>> = reps
        .iter()
        .map(|e| square_difference(q, i, j, &e.mul_ref(e)))
        .collect();
    let mut denominator = QPolynomial::one(q);
    for f in &factors {
        denominator = denominator.multiply(f)?;
    }
    // For each eps: the product of the other denominator factors, times (x_i + eps x_j).
    let mut prefactors = Vec::new();
    for (eps, w) in roots.iter().zip(weights) {
        let e2 = eps.mul_ref(eps);
        let mut p = QPolynomial::constant(q, w.clone());
        let mut matched = false;
        for (rep, f) in reps.iter().zip(&factors) {
            if !matched && rep.mul_ref(rep) == e2 {
                matched = true;
                continue;
            }
            p = p.multiply(f)?;
        }
        debug_assert!(matched);
        prefactors.push((
            make_sigma(n, i, j, eps)?,
            p.multiply(&linear_form(q, i, j, eps))?,
        ));
    }
    Operator::from_fn(q, max_degree, -1, |mono| {
        let f = QPolynomial::monomial(q, mono.clone());
        let mut numerator = QPolynomial::zero(q);
        for (sigma, pre) in &prefactors {
            let diff = f.sub(&sigma.act_on_poly(&f))?;
            if diff.is_zero() {
                continue;
            }
            numerator = numerator.add(&pre.multiply(&diff)?)?;
        }
        numerator.divide_by_central(&denominator)
    })
}

/// Divided difference over all of `mu_m` with unit weights.
pub fn divided_difference_sigma<F: RootField>(
    q: &Arc<QMatrix<F>>,
    i: usize,
    j: usize,
    m: u64,
    max_degree: u32,
) -> Result<Operator<F>> {
    let one = q.one();
    divided_difference_sigma_weighted(q, i, j, m, &vec![one; m as usize], max_degree)
}

/// `f -> x_i^-1 (1 - t_i^(eps)) f`, computed by exact left division.
pub fn divided_difference_t<F: Field>(
    q: &Arc<QMatrix<F>>,
    i: usize,
    eps: &F,
    max_degree: u32,
) -> Result<Operator<F>> {
    let t = make_t(q.n(), i, eps)?;
    Operator::from_fn(q, max_degree, -1, |m| {
        let f = QPolynomial::monomial(q, m.clone());
        f.sub(&t.act_on_poly(&f))?.left_divide_by_variable(i)
    })
}

/// Parameters of the negative family over `W_{C,C'}` with `q = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeParams<F: Field> {
    /// `|C|`, even.
    pub m: u64,
    /// `|C'|`, dividing `m`.
    pub mp: u64,
    pub c1: F,
    /// Rank-two extra parameter attached to `sigma_12^(eps)` with `eps` outside `C^2`.
    pub c1_prime: Option<F>,
    /// `c_prime[k-1]` is the parameter of `eps' = zeta_{m'}^k`, `k = 1..m'-1`.
    pub c_prime: Vec<F>,
    /// Drop the braided derivative (and the constant term of the relations).
    pub degenerate: bool,
}

/// Parameters of the abelian family: arbitrary `q`, cyclic groups `C_i = mu_{m_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianParams<F: Field> {
    pub q: QMatrix<F>,
    pub orders: Vec<u64>,
    /// `coeffs[i][k-1]` is `c_{i, zeta_{m_i}^k}`.
    pub coeffs: Vec<Vec<F>>,
}

/// Parameters of a Dunkl family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DunklParams<F: Field> {
    Negative(NegativeParams<F>),
    Abelian(AbelianParams<F>),
    Symmetric { c: F },
}

impl<F: RootField> NegativeParams<F> {
    /// Parameter attached to `sigma_ij^(eps)` (zero-based `i`, `j`).
    ///
    /// Without `c1_prime` this is `c1`. With it (rank two), the element is
    /// rewritten as `sigma_12^(eta)` and receives `c1` when `eta` lies in `C^2`
    /// and `c1_prime` otherwise, so the split is a function of the group element.
    pub fn sigma_weight(&self, i: usize, eps: &F) -> Result<F> {
        let Some(c1p) = &self.c1_prime else {
            return Ok(self.c1.clone());
        };
        let eta = if i == 0 {
            eps.clone()
        } else {
            eps.inverse().ok_or(Error::DivisionByZero)?.neg_ref()
        };
        let one = eps.one_like();
        let half = self.m / 2;
        let in_squares = (0..half as i64)
            .map(|k| one.root_of_unity_like(self.m, 2 * k))
            .collect::<Result<Vec<F>>>()?
            .contains(&eta);
        Ok(if in_squares {
            self.c1.clone()
        } else {
            c1p.clone()
        })
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.m == 0 || !self.m.is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!(
                "|C| = {} must be even",
                self.m
            )));
        }
        if self.mp == 0 || !self.m.is_multiple_of(self.mp) {
            return Err(Error::InvalidParameters(format!(
                "|C'| = {} must divide |C| = {}",
                self.mp, self.m
            )));
        }
        if self.c_prime.len() as u64 != self.mp - 1 {
            return Err(Error::InvalidParameters(format!(
                "expected {} parameters c_eps', got {}",
                self.mp - 1,
                self.c_prime.len()
            )));
        }
        if let Some(c1p) = &self.c1_prime {
            if n != 2 {
                return Err(Error::InvalidParameters(
                    "c1' is only defined in rank two".into(),
                ));
            }
            if c1p != &self.c1
                && (!self.m.is_multiple_of(4) || !(self.m / 2).is_multiple_of(self.mp))
            {
                return Err(Error::InvalidParameters(format!(
                    "c1' != c1 needs 4 | |C| and |C'| | |C|/2 (got |C| = {}, |C'| = {}); otherwise the two classes of sigma_12 are conjugate",
                    self.m, self.mp
                )));
            }
        }
        Ok(())
    }
}

/// Terms `c_eps'/(1 - eps') * x_i^-1 (1 - t_i^(eps'))` summed over `eps' != 1`.
fn reflection_t_terms<F: RootField>(
    q: &Arc<QMatrix<F>>,
    i: usize,
    order: u64,
    coeffs: &[F],
    max_degree: u32,
) -> Result<Operator<F>> {
    let one = q.one();
    let mut acc = Operator::zero(q, max_degree, -1);
    for (k, c) in coeffs.iter().enumerate() {
        if c.eq_zero() {
            continue;
        }
        let eps = one.root_of_unity_like(order, k as i64 + 1)?;
        let factor = c.div_ref(&one.sub_ref(&eps))?;
        acc = acc.add(&divided_difference_t(q, i, &eps, max_degree)?.scale(&factor))?;
    }
    Ok(acc)
}

/// The braided Dunkl operators of the negative family on `S_{-1}(V)`, `n` variables.
pub fn dunkl_negative<F: RootField>(
    params: &NegativeParams<F>,
    one: &F,
    n: usize,
    max_degree: u32,
) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
    params.validate(n)?;
    let q = Arc::new(QMatrix::minus_one(n, one));
    let roots = one.roots_of_unity_like(params.m)?;
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let mut op = if params.degenerate {
            Operator::zero(&q, max_degree, -1)
        } else {
            braided_partial(&q, i, max_degree)
        };
        for j in (0..n).filter(|&j| j != i) {
            let weights = roots
                .iter()
                .map(|e| params.sigma_weight(i, e))
                .collect::<Result<Vec<F>>>()?;
            if weights.iter().all(Field::eq_zero) {
                continue;
            }
            let dd = divided_difference_sigma_weighted(&q, i, j, params.m, &weights, max_degree)?;
            op = op.add(&dd)?;
        }
        op = op.add(&reflection_t_terms(
            &q,
            i,
            params.mp,
            &params.c_prime,
            max_degree,
        )?)?;
        ops.push(op);
    }
    Ok((q, ops))
}

/// `D_ij = (x_i^2 - x_j^2)^-1 ((x_i + x_j)(1 - sigma_ij) + (x_i - x_j)(1 - sigma_ji))`.
pub fn d_ij<F: RootField>(
    q: &Arc<QMatrix<F>>,
    i: usize,
    j: usize,
    max_degree: u32,
) -> Result<Operator<F>> {
    let n = q.n();
    let one = q.one();
    let minus = one.neg_ref();
    let s_ij = make_sigma(n, i, j, &one)?;
    let s_ji = make_sigma(n, j, i, &one)?;
    let plus_form = linear_form(q, i, j, &one);
    let minus_form = linear_form(q, i, j, &minus);
    let den = square_difference(q, i, j, &one);
    Operator::from_fn(q, max_degree, -1, |m| {
        let f = QPolynomial::monomial(q, m.clone());
        let a = plus_form.multiply(&f.sub(&s_ij.act_on_poly(&f))?)?;
        let b = minus_form.multiply(&f.sub(&s_ji.act_on_poly(&f))?)?;
        a.add(&b)?.divide_by_central(&den)
    })
}

/// The negative family assembled through conjugated `D_ij` operators:
/// `gamma_i (d_i + gamma_i (c1 sum t_j D_ij t_j^-1 + sum c/(1-eps') D_i^(eps')))`,
/// where `d_i` is the right braided derivative, the operator with `gamma_i d_i`
/// equal to the braided partial derivative.
pub fn dunkl_negative_via_dij<F: RootField>(
    params: &NegativeParams<F>,
    one: &F,
    n: usize,
    max_degree: u32,
) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
    params.validate(n)?;
    if params.c1_prime.is_some() {
        return Err(Error::InvalidParameters(
            "the D_ij route covers the single-parameter family".into(),
        ));
    }
    let q = Arc::new(QMatrix::minus_one(n, one));
    let gammas = crate::wgroup::gamma_generators(&q);
    let reps = c_tilde(one, params.m)?;
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let mut reflection_part = Operator::zero(&q, max_degree, -1);
        for j in (0..n).filter(|&j| j != i) {
            let dij = d_ij(&q, i, j, max_degree)?;
            for eps in &reps {
                let t = Operator::group_action(&q, &make_t(n, j, eps)?, max_degree);
                let t_inv = Operator::group_action(
                    &q,
                    &make_t(n, j, &eps.inverse().ok_or(Error::DivisionByZero)?)?,
                    max_degree,
                );
                let conj = t.compose(&dij.compose(&t_inv)?)?;
                reflection_part = reflection_part.add(&conj.scale(&params.c1))?;
            }
        }
        reflection_part = reflection_part.add(&reflection_t_terms(
            &q,
            i,
            params.mp,
            &params.c_prime,
            max_degree,
        )?)?;
        let gamma = Operator::group_action(&q, &gammas[i], max_degree);
        let mut inner = gamma.compose(&reflection_part)?;
        if !params.degenerate {
            inner = right_partial(&q, i, max_degree).add(&inner)?;
        }
        ops.push(gamma.compose(&inner)?);
    }
    Ok((q, ops))
}

/// The abelian family `d_i + sum_{eps != 1} c_{i,eps}/(1-eps) x_i^-1 (1 - t_i^(eps))` over any `q`.
pub fn dunkl_abelian<F: RootField>(
    params: &AbelianParams<F>,
    max_degree: u32,
) -> Result<Vec<Operator<F>>> {
    let n = params.q.n();
    if params.orders.len() != n || params.coeffs.len() != n {
        return Err(Error::InvalidParameters(
            "one cyclic order and coefficient list per variable".into(),
        ));
    }
    let q = Arc::new(params.q.clone());
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let m = params.orders[i];
        if m == 0 || params.coeffs[i].len() as u64 != m - 1 {
            return Err(Error::InvalidParameters(format!(
                "variable {} needs {} coefficients",
                i + 1,
                m.saturating_sub(1)
            )));
        }
        let op = braided_partial(&q, i, max_degree).add(&reflection_t_terms(
            &q,
            i,
            m,
            &params.coeffs[i],
            max_degree,
        )?)?;
        ops.push(op);
    }
    Ok(ops)
}

/// Classical Dunkl operators for `S_n` on the commutative polynomial ring.
pub fn dunkl_symmetric<F: RootField>(
    one: &F,
    n: usize,
    c: &F,
    max_degree: u32,
) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
    let q = Arc::new(QMatrix::ones(n, one));
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let mut op = plain_partial(&q, i, max_degree);
        for j in (0..n).filter(|&j| j != i) {
            let s = crate::wgroup::make_srefl(n, i, j, one)?;
            let den = linear_form(&q, i, j, &one.neg_ref());
            let dd = Operator::from_fn(&q, max_degree, -1, |m| {
                let f = QPolynomial::monomial(&q, m.clone());
                f.sub(&s.act_on_poly(&f))?.divide_by_central(&den)
            })?;
            op = op.add(&dd.scale(c))?;
        }
        ops.push(op);
    }
    Ok((q, ops))
}

/// Operators and q-matrix of one Dunkl family.
pub fn dunkl_family<F: RootField>(
    params: &DunklParams<F>,
    one: &F,
    n: usize,
    max_degree: u32,
) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
    match params {
        DunklParams::Negative(p) => dunkl_negative(p, one, n, max_degree),
        DunklParams::Abelian(p) => {
            if p.q.n() != n {
                return Err(Error::InvalidParameters("abelian rank mismatch".into()));
            }
            Ok((Arc::new(p.q.clone()), dunkl_abelian(p, max_degree)?))
        }
        DunklParams::Symmetric { c } => dunkl_symmetric(one, n, c, max_degree),
    }
}

/// Composite q-matrix of a braided product: factor blocks on the diagonal,
/// `r_kl` above and `r_kl^-1` below.
pub fn composite_qmatrix<F: Field>(blocks: &[Arc<QMatrix<F>>], r: &[Vec<F>]) -> Result<QMatrix<F>> {
    let sizes: Vec<usize> = blocks.iter().map(|b| b.n()).collect();
    let total: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let one = blocks[0].one();
    let mut rows = vec![vec![one.clone(); total]; total];
    for (k, b) in blocks.iter().enumerate() {
        for l in 0..blocks.len() {
            for a in 0..sizes[k] {
                for c in 0..sizes[l] {
                    rows[offsets[k] + a][offsets[l] + c] = if k == l {
                        b.q(a, c).clone()
                    } else if k < l {
                        r[k][l].clone()
                    } else {
                        r[l][k].inverse().ok_or(Error::DivisionByZero)?
                    };
                }
            }
        }
    }
    QMatrix::new(rows)
}

/// Braided product of Dunkl families.
///
/// `r[k][l]` for `k < l` is the constant of `x x' = r_kl x' x` between factors.
/// The operator for a variable of factor `k` acts on `m_1 ... m_K` as
/// `(prod_{l<k} r_lk^(deg m_l)) m_1 ... (nabla^(k) m_k) ... m_K`.
pub fn dunkl_product<F: RootField>(
    factors: &[(DunklParams<F>, usize)],
    r: &[Vec<F>],
    one: &F,
    max_degree: u32,
) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
    if factors.is_empty() {
        return Err(Error::InvalidParameters("empty product".into()));
    }
    if r.len() < factors.len() || r.iter().any(|row| row.len() < factors.len()) {
        return Err(Error::InvalidParameters(
            "r must be a square array over the factors".into(),
        ));
    }
    let mut blocks = Vec::new();
    let mut factor_ops = Vec::new();
    for (params, rank) in factors {
        let (q, ops) = dunkl_family(params, one, *rank, max_degree)?;
        blocks.push(q);
        factor_ops.push(ops);
    }
    for k in 0..factors.len() {
        for l in k + 1..factors.len() {
            if r[k][l].eq_zero() {
                return Err(Error::InvalidParameters(format!(
                    "r_{}{} is zero",
                    k + 1,
                    l + 1
                )));
            }
        }
    }
    let q = Arc::new(composite_qmatrix(&blocks, r)?);
    let sizes: Vec<usize> = factors.iter().map(|(_, s)| *s).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut ops = Vec::new();
    for k in 0..factors.len() {
        for (a, factor_op) in factor_ops[k].iter().enumerate() {
            let _ = a;
            let op = Operator::from_fn(&q, max_degree, -1, |m| {
                let part = |l: usize| Monomial(m.0[offsets[l]..offsets[l] + sizes[l]].to_vec());
                let mut prefactor = one.one_like();
                for l in 0..k {
                    let d = part(l).degree();
                    if d > 0 {
                        prefactor = prefactor.mul_ref(&r[l][k].pow_i64(d as i64)?);
                    }
                }
                let inner = factor_op.image(&part(k))?;
                let mut out = QPolynomial::zero(&q);
                for (mk, c) in inner.terms() {
                    let mut full = m.clone();
                    full.0[offsets[k]..offsets[k] + sizes[k]].copy_from_slice(&mk.0);
                    out.add_term(full, c.mul_ref(&prefactor));
                }
                Ok(out)
            })?;
            ops.push(op);
        }
    }
    Ok((q, ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CycloElement, CycloField, CycloFieldExt};
    use crate::field::rat;

    fn k(n: u64) -> Arc<CycloField> {
        CycloField::new(n)
    }

    fn poly(q: &Arc<QMatrix<CycloElement>>, e: &[u32]) -> QPolynomial<CycloElement> {
        QPolynomial::monomial(q, Monomial(e.to_vec()))
    }

    fn b2_plus(c: CycloElement) -> NegativeParams<CycloElement> {
        NegativeParams {
            m: 2,
            mp: 1,
            c1: c,
            c1_prime: None,
            c_prime: vec![],
            degenerate: false,
        }
    }

    #[test]
    fn braided_partial_examples() {
        let q = Arc::new(QMatrix::minus_one(2, &k(4).one()));
        let d1 = braided_partial(&q, 0, 4);
        assert_eq!(
            d1.apply(&poly(&q, &[3, 0])).unwrap(),
            poly(&q, &[2, 0]).scale(&k(4).int(3))
        );
        let d2 = braided_partial(&q, 1, 4);
        assert_eq!(
            d2.apply(&poly(&q, &[1, 1])).unwrap(),
            poly(&q, &[1, 0]).neg()
        );
        assert!(d2.apply(&poly(&q, &[0, 0])).unwrap().is_zero());
    }

    #[test]
    fn divided_difference_examples() {
        let f = k(4);
        let q = Arc::new(QMatrix::minus_one(2, &f.one()));
        let dd = divided_difference_sigma(&q, 0, 1, 4, 3).unwrap();
        assert_eq!(
            dd.apply(&poly(&q, &[1, 0])).unwrap(),
            QPolynomial::constant(&q, f.int(4))
        );
        assert!(dd.apply(&poly(&q, &[0, 1])).unwrap().is_zero());
        assert!(dd.apply(&poly(&q, &[0, 0])).unwrap().is_zero());
        let eps = f.root_of_unity(1);
        let dt = divided_difference_t(&q, 0, &eps, 3).unwrap();
        assert_eq!(
            dt.apply(&poly(&q, &[1, 0])).unwrap(),
            QPolynomial::constant(&q, f.one().sub_ref(&eps))
        );
        assert!(dt.apply(&poly(&q, &[0, 1])).unwrap().is_zero());
        assert_eq!(
            dt.apply(&poly(&q, &[2, 0])).unwrap(),
            poly(&q, &[1, 0]).scale(&f.one().sub_ref(&eps.mul_ref(&eps)))
        );
    }

    #[test]
    fn single_eps_term_is_not_polynomial() {
        // One summand of the divided difference on x_j leaves a nonzero remainder.
        let f = k(4);
        let q = Arc::new(QMatrix::minus_one(2, &f.one()));
        let mut weights = vec![f.zero(); 4];
        weights[1] = f.one();
        let res = divided_difference_sigma_weighted(&q, 0, 1, 4, &weights, 1);
        assert!(matches!(res, Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn negative_family_examples() {
        let f = k(4);
        let c = f.rational(rat(1, 2));
        let (q, ops) = dunkl_negative(&b2_plus(c.clone()), &f.one(), 2, 3).unwrap();
        let two_c = c.add_ref(&c);
        assert_eq!(
            ops[0].apply(&poly(&q, &[1, 0])).unwrap(),
            QPolynomial::constant(&q, f.one().add_ref(&two_c))
        );
        assert!(ops[0].apply(&poly(&q, &[0, 1])).unwrap().is_zero());
        assert_eq!(
            ops[0].apply(&poly(&q, &[2, 0])).unwrap(),
            poly(&q, &[1, 0]).scale(&f.int(2).add_ref(&two_c))
        );
    }

    #[test]
    fn abelian_and_symmetric_examples() {
        let f = k(2);
        let c = f.rational(rat(1, 3));
        let params = AbelianParams {
            q: QMatrix::ones(1, &f.one()),
            orders: vec![2],
            coeffs: vec![vec![c.clone()]],
        };
        let ops = dunkl_abelian(&params, 3).unwrap();
        let q = ops[0].qmatrix().clone();
        assert_eq!(
            ops[0].apply(&poly(&q, &[1])).unwrap(),
            QPolynomial::constant(&q, f.one().add_ref(&c))
        );
        let (q, ops) = dunkl_symmetric(&f.one(), 2, &c, 3).unwrap();
        assert_eq!(
            ops[0].apply(&poly(&q, &[1, 0])).unwrap(),
            QPolynomial::constant(&q, f.one().add_ref(&c))
        );
        assert_eq!(
            ops[0].apply(&poly(&q, &[0, 1])).unwrap(),
            QPolynomial::constant(&q, c.neg_ref())
        );
    }

    #[test]
    fn d_ij_values() {
        let f = k(2);
        let q = Arc::new(QMatrix::minus_one(2, &f.one()));
        let d = d_ij(&q, 0, 1, 2).unwrap();
        assert_eq!(
            d.apply(&poly(&q, &[1, 0])).unwrap(),
            QPolynomial::constant(&q, f.int(2))
        );
        assert!(d.apply(&poly(&q, &[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn bracket_conventions() {
        let f = k(3);
        let q = Arc::new(QMatrix::ones(2, &f.one()));
        let a = braided_partial(&q, 0, 4);
        assert!(q_bracket(&a, &a, &f.one(), 1).unwrap().is_zero());
        let zero = Operator::zero(&q, 4, 0);
        assert!(zero.compose(&a).unwrap().is_zero());
    }

    #[test]
    fn composite_matrix_entries() {
        let f = k(4);
        let c = f.rational(rat(1, 2));
        let z = f.root_of_unity(1);
        let factors = vec![
            (DunklParams::Symmetric { c: c.clone() }, 2),
            (DunklParams::Negative(b2_plus(f.rational(rat(1, 3)))), 2),
        ];
        let r = vec![vec![f.one(), z.clone()], vec![f.one(), f.one()]];
        let (q, ops) = dunkl_product(&factors, &r, &f.one(), 2).unwrap();
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(q.q(i, j), &z);
        }
        assert_eq!(q.q(2, 3), &f.int(-1));
        assert_eq!(q.q(0, 1), &f.one());
        // The operator of x_3 picks up r = zeta_4 when passing x_1.
        let x1x3 = poly(&q, &[1, 0, 1, 0]);
        let expected =
            poly(&q, &[1, 0, 0, 0]).scale(&z.mul_ref(&f.one().add_ref(&f.rational(rat(2, 3)))));
        assert_eq!(ops[2].apply(&x1x3).unwrap(), expected);
    }
}
