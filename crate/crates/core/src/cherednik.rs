//! Presented braided Cherednik algebras.
//!
//! An algebra is presented by generators `x_i`, `y_i` (the braided `y`
//! variables) and the elements of a finite group `W`, with relations
//!
//! * `x_i x_j = q_ij x_j x_i` and `y_i y_j = q_ij y_j y_i`,
//! * `w x_i w^-1 = w(x_i)` and `w y_i w^-1 = w(y_i)`,
//! * `y_j x_i = q_ij x_i y_j + table(j, i)` with `table(j, i)` in the group algebra.
//!
//! Words are rewritten to the basis `x^a w y^b` by adjacent-pair rules. Every
//! rule moves a letter toward its slot in the order `X < G < Y` or sorts
//! letters of one kind, so the pair (number of letters out of kind order,
//! number of inversions inside a kind) decreases and rewriting terminates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doubles::{check_equivariance, ga_add_term, CommutatorMap, GroupAlgebraElement};
use crate::dunkl::{
    dunkl_abelian, dunkl_negative, dunkl_symmetric, AbelianParams, NegativeParams, Operator,
};
use crate::field::{Field, RootField};
use crate::qpoly::{Monomial, QMatrix, QPolynomial};
use crate::wgroup::{
    build_gmpn, build_w_cc, generate_group, make_sigma, make_srefl, make_t, Group, MonomialMatrix,
    DEFAULT_CAP,
};
use crate::{Error, Result};

/// Generator token of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token<F: Field> {
    X(usize),
    Y(usize),
    G(MonomialMatrix<F>),
}

impl<F: Field> Token<F> {
    fn kind(&self) -> u8 {
        match self {
            Token::X(_) => 0,
            Token::G(_) => 1,
            Token::Y(_) => 2,
        }
    }
}

/// A word in the generators, read left to right as a product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word<F: Field>(pub Vec<Token<F>>);

impl<F: Field> fmt::Display for Word<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| match t {
                Token::X(i) => format!("X({})", i + 1),
                Token::Y(i) => format!("Y({})", i + 1),
                Token::G(w) => format!("G({})", w.label()),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Key of a basis element `x^a w y^b`.
pub type BasisKey<F> = (Monomial, MonomialMatrix<F>, Monomial);

/// Element in the basis `x^a w y^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<F: Field> {
    n: usize,
    terms: BTreeMap<BasisKey<F>, F>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey<F>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: BasisKey<F>, c: &F) {
        if c.eq_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| c.zero_like());
        *entry = entry.add_ref(c);
        if entry.eq_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &c.neg_ref());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.mul_ref(s));
        }
        out
    }

    /// The word `X.. G Y..` of a basis key.
    pub fn key_word(key: &BasisKey<F>) -> Word<F> {
        let (xm, g, ym) = key;
        let mut w = Vec::new();
        for (i, &e) in xm.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(Token::X(i), e as usize));
        }
        if !g.is_identity() {
            w.push(Token::G(g.clone()));
        }
        for (i, &e) in ym.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(Token::Y(i), e as usize));
        }
        Word(w)
    }

    /// Terms rendered as `x-monomial * [group element] * y-monomial`.
    pub fn render(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|((xm, g, ym), c)| {
                format!(
                    "({c}) {xm} * {} * {}",
                    g.label(),
                    ym.to_string().replace('x', "y")
                )
            })
            .collect()
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.render().join(" + "))
    }
}

/// Linear combination of words, not reduced.
pub type FreeElement<F> = Vec<(F, Word<F>)>;

/// Dunkl family attached to a presentation, used for the Verma action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VermaFamily<F: Field> {
    Negative(NegativeParams<F>),
    Abelian(AbelianParams<F>),
    Symmetric { c: F },
}

/// A presented algebra: `q`, the group, the commutator table and the family.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    name: String,
    q: Arc<QMatrix<F>>,
    group: Group<F>,
    table: BTreeMap<(usize, usize), GroupAlgebraElement<F>>,
    degenerate: bool,
    family: Option<VermaFamily<F>>,
}

impl<F: Field> Presentation<F> {
    /// Build a presentation, checking that the table lies in `W` and is equivariant.
    pub fn new(
        name: impl Into<String>,
        q: QMatrix<F>,
        group: Group<F>,
        table: BTreeMap<(usize, usize), GroupAlgebraElement<F>>,
        degenerate: bool,
        family: Option<VermaFamily<F>>,
    ) -> Result<Self> {
        let p = Self::new_unchecked(name, q, group, table, degenerate, family)?;
        for elt in p.table.values() {
            for w in elt.keys() {
                if !p.group.contains(w) {
                    return Err(Error::NotInGroup(w.label()));
                }
            }
        }
        if !check_equivariance(&p.commutator_map()?, &p.group) {
            return Err(Error::NotEquivariant);
        }
        Ok(p)
    }

    /// Build without the table checks; used for negative controls.
    pub fn new_unchecked(
        name: impl Into<String>,
        q: QMatrix<F>,
        group: Group<F>,
        table: BTreeMap<(usize, usize), GroupAlgebraElement<F>>,
        degenerate: bool,
        family: Option<VermaFamily<F>>,
    ) -> Result<Self> {
        if group.n() != q.n() {
            return Err(Error::InvalidParameters(
                "group and q-matrix have different rank".into(),
            ));
        }
        if table.keys().any(|&(j, i)| j >= q.n() || i >= q.n()) {
            return Err(Error::BadIndices("table index beyond rank".into()));
        }
        let table = table.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Ok(Presentation {
            name: name.into(),
            q: Arc::new(q),
            group,
            table,
            degenerate,
            family,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn qmatrix(&self) -> &Arc<QMatrix<F>> {
        &self.q
    }

    pub fn group(&self) -> &Group<F> {
        &self.group
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), GroupAlgebraElement<F>> {
        &self.table
    }

    pub fn entry(&self, j: usize, i: usize) -> GroupAlgebraElement<F> {
        self.table.get(&(j, i)).cloned().unwrap_or_default()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn family(&self) -> Option<&VermaFamily<F>> {
        self.family.as_ref()
    }

    /// The table read as a commutator parameter.
    pub fn commutator_map(&self) -> Result<CommutatorMap<F>> {
        CommutatorMap::from_table(self.n(), &self.table, &self.q.zero())
    }

    /// The untwisted commutator parameter `beta(y_j (x) x_i) = gamma_j * table(j, i)`,
    /// inverse to [`crate::doubles::braided_reduce`]. It lives over the group
    /// generated by `W`, `Gamma_q` and `-id` (see [`crate::doubles::extended_group`]).
    pub fn untwisted_commutator_map(&self) -> Result<CommutatorMap<F>> {
        let gammas = crate::wgroup::gamma_generators(&self.q);
        let table = self
            .table
            .iter()
            .map(|(&(j, i), elt)| ((j, i), crate::doubles::ga_left_mul(&gammas[j], elt)))
            .collect();
        CommutatorMap::from_table(self.n(), &table, &self.q.zero())
    }

    /// Copy with a replaced table and no validation.
    pub fn with_table_unchecked(
        &self,
        table: BTreeMap<(usize, usize), GroupAlgebraElement<F>>,
    ) -> Self {
        let mut p = self.clone();
        p.table = table;
        p.name = format!("{} (modified)", self.name);
        p
    }

    /// Defining relations as free elements that vanish in the algebra.
    pub fn defining_relations(&self) -> Vec<(String, FreeElement<F>)> {
        let n = self.n();
        let one = self.q.one();
        let minus = one.neg_ref();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let qij = self.q.q(i, j).neg_ref();
                out.push((
                    format!("y{}y{} - q y{}y{}", i + 1, j + 1, j + 1, i + 1),
                    vec![
                        (one.clone(), Word(vec![Token::Y(i), Token::Y(j)])),
                        (qij.clone(), Word(vec![Token::Y(j), Token::Y(i)])),
                    ],
                ));
                out.push((
                    format!("x{}x{} - q x{}x{}", i + 1, j + 1, j + 1, i + 1),
                    vec![
                        (one.clone(), Word(vec![Token::X(i), Token::X(j)])),
                        (qij, Word(vec![Token::X(j), Token::X(i)])),
                    ],
                ));
            }
        }
        for w in self.group.generators() {
            let winv = w.inverse();
            let wd = w.act_on_dual();
            for i in 0..n {
                let k = w.perm()[i];
                out.push((
                    format!("{} x{} {}^-1 - w(x{})", w.label(), i + 1, w.label(), i + 1),
                    vec![
                        (
                            one.clone(),
                            Word(vec![
                                Token::G(w.clone()),
                                Token::X(i),
                                Token::G(winv.clone()),
                            ]),
                        ),
                        (w.scalars()[i].neg_ref(), Word(vec![Token::X(k)])),
                    ],
                ));
                let k = wd.perm()[i];
                out.push((
                    format!("{} y{} {}^-1 - w(y{})", w.label(), i + 1, w.label(), i + 1),
                    vec![
                        (
                            one.clone(),
                            Word(vec![
                                Token::G(w.clone()),
                                Token::Y(i),
                                Token::G(winv.clone()),
                            ]),
                        ),
                        (wd.scalars()[i].neg_ref(), Word(vec![Token::Y(k)])),
                    ],
                ));
            }
        }
        for j in 0..n {
            for i in 0..n {
                let mut rel = vec![
                    (one.clone(), Word(vec![Token::Y(j), Token::X(i)])),
                    (
                        self.q.q(i, j).neg_ref(),
                        Word(vec![Token::X(i), Token::Y(j)]),
                    ),
                ];
                for (g, c) in self.entry(j, i) {
                    rel.push((c.mul_ref(&minus), Word(vec![Token::G(g)])));
                }
                out.push((format!("[y{}, x{}]_q - table", j + 1, i + 1), rel));
            }
        }
        out
    }
}

/// Which reducible pair a rewriting step picks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Position `p` such that tokens `p, p+1` admit a rule.
fn reducible_at<F: Field>(w: &[Token<F>], strategy: Strategy) -> Option<usize> {
    let is_red = |p: usize| -> bool {
        let (a, b) = (&w[p], &w[p + 1]);
        match (a, b) {
            (Token::X(i), Token::X(j)) | (Token::Y(i), Token::Y(j)) => i > j,
            (Token::G(_), Token::G(_)) => true,
            _ => a.kind() > b.kind(),
        }
    };
    if w.len() < 2 {
        return None;
    }
    match strategy {
        Strategy::Leftmost => (0..w.len() - 1).find(|&p| is_red(p)),
        Strategy::Rightmost => (0..w.len() - 1).rev().find(|&p| is_red(p)),
    }
}

/// Replacements `(coefficient, tokens)` for the reducible pair `a b`.
fn rewrite_pair<F: Field>(
    a: &Token<F>,
    b: &Token<F>,
    p: &Presentation<F>,
) -> Vec<(F, Vec<Token<F>>)> {
    let q = &p.q;
    let one = q.one();
    match (a, b) {
        (Token::X(i), Token::X(j)) => vec![(q.q(*i, *j).clone(), vec![Token::X(*j), Token::X(*i)])],
        (Token::Y(i), Token::Y(j)) => vec![(q.q(*i, *j).clone(), vec![Token::Y(*j), Token::Y(*i)])],
        (Token::G(u), Token::G(v)) => {
            let uv = u.compose(v);
            if uv.is_identity() {
                vec![(one, vec![])]
            } else {
                vec![(one, vec![Token::G(uv)])]
            }
        }
        (Token::G(w), Token::X(i)) => {
            vec![(
                w.scalars()[*i].clone(),
                vec![Token::X(w.perm()[*i]), Token::G(w.clone())],
            )]
        }
        (Token::G(w), Token::Y(i)) => {
            let wd = w.act_on_dual();
            vec![(
                wd.scalars()[*i].clone(),
                vec![Token::Y(wd.perm()[*i]), Token::G(w.clone())],
            )]
        }
        (Token::Y(j), Token::G(w)) => {
            // y w = w w^-1(y)
            let wd = w.inverse().act_on_dual();
            vec![(
                wd.scalars()[*j].clone(),
                vec![Token::G(w.clone()), Token::Y(wd.perm()[*j])],
            )]
        }
        (Token::Y(j), Token::X(i)) => {
            let mut out = vec![(q.q(*i, *j).clone(), vec![Token::X(*i), Token::Y(*j)])];
            for (g, c) in p.entry(*j, *i) {
                if g.is_identity() {
                    out.push((c, vec![]));
                } else {
                    out.push((c, vec![Token::G(g)]));
                }
            }
            out
        }
        _ => unreachable!("pair is not reducible"),
    }
}

fn normal_key<F: Field>(w: &[Token<F>], n: usize, one: &F) -> BasisKey<F> {
    let mut xm = vec![0u32; n];
    let mut ym = vec![0u32; n];
    let mut g = MonomialMatrix::identity(n, one);
    for t in w {
        match t {
            Token::X(i) => xm[*i] += 1,
            Token::Y(i) => ym[*i] += 1,
            Token::G(h) => g = h.clone(),
        }
    }
    (Monomial(xm), g, Monomial(ym))
}

/// Normal form under a chosen rewriting strategy.
pub fn normal_form_with<F: Field>(
    word: &Word<F>,
    p: &Presentation<F>,
    strategy: Strategy,
) -> AlgebraElement<F> {
    normal_form_of_combination(&[(p.q.one(), word.clone())], p, strategy)
}

fn normal_form_of_combination<F: Field>(
    combo: &[(F, Word<F>)],
    p: &Presentation<F>,
    strategy: Strategy,
) -> AlgebraElement<F> {
    let n = p.n();
    let one = p.q.one();
    let mut out = AlgebraElement::zero(n);
    let mut stack: Vec<(F, Vec<Token<F>>)> = combo
        .iter()
        .map(|(c, w)| {
            (
                c.clone(),
                w.0.iter()
                    .filter(|t| !matches!(t, Token::G(g) if g.is_identity()))
                    .cloned()
                    .collect(),
            )
        })
        .collect();
    while let Some((c, w)) = stack.pop() {
        if c.eq_zero() {
            continue;
        }
        match reducible_at(&w, strategy) {
            None => out.add_term(normal_key(&w, n, &one), &c),
            Some(pos) => {
                for (k, repl) in rewrite_pair(&w[pos], &w[pos + 1], p) {
                    let mut next = Vec::with_capacity(w.len() + 1);
                    next.extend_from_slice(&w[..pos]);
                    next.extend(repl);
                    next.extend_from_slice(&w[pos + 2..]);
                    stack.push((c.mul_ref(&k), next));
                }
            }
        }
    }
    out
}

/// Normal form in the basis `x^a w y^b` (leftmost strategy).
pub fn normal_form<F: Field>(word: &Word<F>, p: &Presentation<F>) -> AlgebraElement<F> {
    normal_form_with(word, p, Strategy::Leftmost)
}

/// Normal form of a linear combination of words.
pub fn reduce<F: Field>(combo: &FreeElement<F>, p: &Presentation<F>) -> AlgebraElement<F> {
    normal_form_of_combination(combo, p, Strategy::Leftmost)
}

/// Product of two normal forms.
pub fn multiply<F: Field>(
    a: &AlgebraElement<F>,
    b: &AlgebraElement<F>,
    p: &Presentation<F>,
) -> AlgebraElement<F> {
    let mut combo = Vec::new();
    for (ka, ca) in &a.terms {
        let wa = AlgebraElement::key_word(ka);
        for (kb, cb) in &b.terms {
            let mut w = wa.0.clone();
            w.extend(AlgebraElement::key_word(kb).0);
            combo.push((ca.mul_ref(cb), Word(w)));
        }
    }
    reduce(&combo, p)
}

/// The unit element.
pub fn unit<F: Field>(p: &Presentation<F>) -> AlgebraElement<F> {
    let one = p.q.one();
    let mut e = AlgebraElement::zero(p.n());
    e.add_term(
        (
            Monomial::one(p.n()),
            MonomialMatrix::identity(p.n(), &one),
            Monomial::one(p.n()),
        ),
        &one,
    );
    e
}

/// `S_q(V)` with `x` acting by multiplication, `W` by substitution and `y` by Dunkl operators.
#[derive(Clone, Debug)]
pub struct VermaModule<F: Field> {
    q: Arc<QMatrix<F>>,
    ops: Vec<Operator<F>>,
    max_degree: u32,
}

impl<F: RootField> VermaModule<F> {
    /// Operators on polynomials of degree at most `max_degree`.
    pub fn new(p: &Presentation<F>, max_degree: u32) -> Result<Self> {
        let one = p.q.one();
        let n = p.n();
        let ops = match &p.family {
            Some(VermaFamily::Negative(params)) => dunkl_negative(params, &one, n, max_degree)?.1,
            Some(VermaFamily::Abelian(params)) => dunkl_abelian(params, max_degree)?,
            Some(VermaFamily::Symmetric { c }) => dunkl_symmetric(&one, n, c, max_degree)?.1,
            None => {
                return Err(Error::InvalidParameters(format!(
                    "presentation {} has no Dunkl family for the Verma action",
                    p.name
                )))
            }
        };
        Ok(VermaModule {
            q: p.q.clone(),
            ops,
            max_degree,
        })
    }
}

impl<F: Field> VermaModule<F> {
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn operators(&self) -> &[Operator<F>] {
        &self.ops
    }

    /// Act by a word, rightmost letter first.
    pub fn act_word(&self, w: &Word<F>, poly: &QPolynomial<F>) -> Result<QPolynomial<F>> {
        let mut cur = poly.clone();
        for t in w.0.iter().rev() {
            cur = match t {
                Token::X(i) => cur.left_mul_var(*i),
                Token::Y(i) => self.ops[*i].apply(&cur)?,
                Token::G(g) => g.act_on_poly(&cur),
            };
            if cur.degree().unwrap_or(0) > self.max_degree {
                return Err(Error::DegreeWindowEmpty(format!(
                    "intermediate degree exceeds {}",
                    self.max_degree
                )));
            }
        }
        Ok(cur)
    }

    pub fn act_free(
        &self,
        combo: &FreeElement<F>,
        poly: &QPolynomial<F>,
    ) -> Result<QPolynomial<F>> {
        let mut acc = QPolynomial::zero(&self.q);
        for (c, w) in combo {
            acc.add_scaled(&self.act_word(w, poly)?, c);
        }
        Ok(acc)
    }

    pub fn act(&self, a: &AlgebraElement<F>, poly: &QPolynomial<F>) -> Result<QPolynomial<F>> {
        let combo: FreeElement<F> = a
            .terms
            .iter()
            .map(|(k, c)| (c.clone(), AlgebraElement::key_word(k)))
            .collect();
        self.act_free(&combo, poly)
    }
}

/// `a . poly` in the Verma module, with operators truncated at degree `max_degree`.
pub fn verma_action<F: RootField>(
    a: &AlgebraElement<F>,
    poly: &QPolynomial<F>,
    p: &Presentation<F>,
    max_degree: u32,
) -> Result<QPolynomial<F>> {
    VermaModule::new(p, max_degree)?.act(a, poly)
}

/// First defining relation acting nonzero on a monomial of degree at most `max_degree`.
pub fn verma_relation_failure<F: RootField>(
    p: &Presentation<F>,
    max_degree: u32,
) -> Result<Option<(String, Monomial)>> {
    // Relations have at most two x letters.
    let module = VermaModule::new(p, max_degree + 2)?;
    let rels = p.defining_relations();
    for m in crate::qpoly::monomials_up_to(p.n(), max_degree) {
        let poly = QPolynomial::monomial(&p.q, m.clone());
        for (name, rel) in &rels {
            if !module.act_free(rel, &poly)?.is_zero() {
                return Ok(Some((name.clone(), m)));
            }
        }
    }
    Ok(None)
}

/// Outcome of a confluence experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwReport {
    pub trials: usize,
    pub agreements: usize,
    /// First word whose two normal forms differ.
    pub counterexample: Option<String>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Random word with letters drawn uniformly from `X(i)`, `Y(i)`, `G(w)`.
pub fn random_word<F: Field>(p: &Presentation<F>, rng: &mut impl Rng, max_len: usize) -> Word<F> {
    let n = p.n();
    let len = rng.gen_range(1..=max_len.max(1));
    let elems = p.group.elements();
    Word(
        (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Token::X(rng.gen_range(0..n)),
                1 => Token::Y(rng.gen_range(0..n)),
                _ => Token::G(elems[rng.gen_range(0..elems.len())].clone()),
            })
            .collect(),
    )
}

/// Compare leftmost and rightmost rewriting on seeded random words.
pub fn pbw_consistency<F: Field>(
    p: &Presentation<F>,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> PbwReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    for _ in 0..trials {
        let w = random_word(p, &mut rng, max_len);
        let a = normal_form_with(&w, p, Strategy::Leftmost);
        let b = normal_form_with(&w, p, Strategy::Rightmost);
        if a == b {
            agreements += 1;
        } else {
            return PbwReport {
                trials,
                agreements,
                counterexample: Some(w.to_string()),
            };
        }
    }
    PbwReport {
        trials,
        agreements,
        counterexample: None,
    }
}

/// Copy of the table with the entry at `(1, 1)` shifted by a non-identity
/// element, which breaks equivariance.
pub fn corrupted<F: Field>(p: &Presentation<F>) -> Presentation<F> {
    let one = p.q.one();
    let mut table = p.table.clone();
    let g = p
        .group
        .elements()
        .iter()
        .find(|g| !g.is_identity())
        .cloned()
        .unwrap_or_else(|| MonomialMatrix::identity(p.n(), &one));
    let entry = table.entry((0, 0)).or_default();
    ga_add_term(entry, g, &one);
    p.with_table_unchecked(table)
}

/// Negative braided Cherednik algebra over `W_{C,C'}` with `q = -1`.
///
/// `(i, i) -> 1 + sum_{j != i, eps} c(sigma_ij^(eps)) sigma_ij^(eps) + sum_{eps'} c_eps' t_i^(eps')`
/// and `(j, i) -> - sum_eps c(sigma_ij^(eps)) eps sigma_ij^(eps)` for `j != i`;
/// the constant `1` is dropped in the degenerate case.
pub fn presentation_negative<F: RootField>(
    params: &NegativeParams<F>,
    one: &F,
    n: usize,
) -> Result<Presentation<F>> {
    // Validation is shared with the operator builder.
    dunkl_negative(params, one, n, 0)?;
    let q = QMatrix::minus_one(n, one);
    let group = build_w_cc(one, params.m, params.mp, n, DEFAULT_CAP)?;
    let roots = one.roots_of_unity_like(params.m)?;
    let cprime = one.roots_of_unity_like(params.mp)?;
    let id = MonomialMatrix::identity(n, one);
    let mut table: BTreeMap<(usize, usize), GroupAlgebraElement<F>> = BTreeMap::new();
    for i in 0..n {
        let mut diag = GroupAlgebraElement::new();
        if !params.degenerate {
            ga_add_term(&mut diag, id.clone(), one);
        }
        for j in (0..n).filter(|&j| j != i) {
            let mut off = GroupAlgebraElement::new();
            for eps in &roots {
                let s = make_sigma(n, i, j, eps)?;
                let c = params.sigma_weight(i, eps)?;
                ga_add_term(&mut diag, s.clone(), &c);
                ga_add_term(&mut off, s, &c.mul_ref(eps).neg_ref());
            }
            table.insert((j, i), off);
        }
        for (k, c) in params.c_prime.iter().enumerate() {
            ga_add_term(&mut diag, make_t(n, i, &cprime[k + 1])?, c);
        }
        table.insert((i, i), diag);
    }
    let name = format!(
        "negative(m={}, m'={}, n={n}{})",
        params.m,
        params.mp,
        if params.degenerate {
            ", degenerate"
        } else {
            ""
        }
    );
    Presentation::new(
        name,
        q,
        group,
        table,
        params.degenerate,
        Some(VermaFamily::Negative(params.clone())),
    )
}

/// Rational Cherednik algebra of `S_n`: `(i, i) -> 1 + c sum_{j != i} s_ij`, `(j, i) -> -c s_ij`.
pub fn presentation_rational_sn<F: RootField>(n: usize, c: &F, one: &F) -> Result<Presentation<F>> {
    let q = QMatrix::ones(n, one);
    let group = build_gmpn(one, 1, 1, n, DEFAULT_CAP)?;
    let id = MonomialMatrix::identity(n, one);
    let mut table: BTreeMap<(usize, usize), GroupAlgebraElement<F>> = BTreeMap::new();
    for i in 0..n {
        let mut diag = GroupAlgebraElement::new();
        ga_add_term(&mut diag, id.clone(), one);
        for j in (0..n).filter(|&j| j != i) {
            let s = make_srefl(n, i, j, one)?;
            ga_add_term(&mut diag, s.clone(), c);
            let mut off = GroupAlgebraElement::new();
            ga_add_term(&mut off, s, &c.neg_ref());
            table.insert((j, i), off);
        }
        table.insert((i, i), diag);
    }
    Presentation::new(
        format!("rational S_{n}"),
        q,
        group,
        table,
        false,
        Some(VermaFamily::Symmetric { c: c.clone() }),
    )
}

/// Abelian family over `prod_i mu_{m_i}`: `(i, i) -> 1 + sum_{eps != 1} c_{i,eps} t_i^(eps)`.
pub fn presentation_abelian<F: RootField>(params: &AbelianParams<F>) -> Result<Presentation<F>> {
    let q = params.q.clone();
    let n = q.n();
    let one = q.one();
    if params.orders.len() != n || params.coeffs.len() != n {
        return Err(Error::InvalidParameters(
            "one cyclic order and coefficient list per variable".into(),
        ));
    }
    let mut gens = Vec::new();
    let mut table: BTreeMap<(usize, usize), GroupAlgebraElement<F>> = BTreeMap::new();
    for i in 0..n {
        let m = params.orders[i];
        if m == 0 || params.coeffs[i].len() as u64 != m - 1 {
            return Err(Error::InvalidParameters(format!(
                "variable {} needs {} coefficients",
                i + 1,
                m.max(1) - 1
            )));
        }
        let mut diag = GroupAlgebraElement::new();
        ga_add_term(&mut diag, MonomialMatrix::identity(n, &one), &one);
        for (k, c) in params.coeffs[i].iter().enumerate() {
            let eps = one.root_of_unity_like(m, k as i64 + 1)?;
            ga_add_term(&mut diag, make_t(n, i, &eps)?, c);
        }
        if m > 1 {
            gens.push(make_t(n, i, &one.root_of_unity_like(m, 1)?)?);
        }
        table.insert((i, i), diag);
    }
    let group = generate_group(&gens, n, &one, DEFAULT_CAP)?;
    let name = format!("abelian(orders={:?})", params.orders);
    Presentation::new(
        name,
        q,
        group,
        table,
        false,
        Some(VermaFamily::Abelian(params.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CycloElement, CycloField, CycloFieldExt};
    use crate::field::rat;

    type F = CycloElement;

    fn b2plus(c: &F, degenerate: bool) -> Presentation<F> {
        let f = CycloField::new(2);
        let params = NegativeParams {
            m: 2,
            mp: 1,
            c1: c.clone(),
            c1_prime: None,
            c_prime: vec![],
            degenerate,
        };
        presentation_negative(&params, &f.one(), 2).unwrap()
    }

    #[test]
    fn b2plus_rewrites() {
        let f = CycloField::new(2);
        let c = f.rational(rat(1, 2));
        let p = b2plus(&c, false);
        let one = f.one();
        let s12 = make_sigma(2, 0, 1, &one).unwrap();
        let s21 = make_sigma(2, 1, 0, &one).unwrap();
        let nf = normal_form(&Word(vec![Token::Y(0), Token::X(0)]), &p);
        let mut expected = AlgebraElement::zero(2);
        let e = Monomial::one(2);
        expected.add_term(
            (
                Monomial::var(2, 0),
                MonomialMatrix::identity(2, &one),
                Monomial::var(2, 0),
            ),
            &one,
        );
        expected.add_term(
            (e.clone(), MonomialMatrix::identity(2, &one), e.clone()),
            &one,
        );
        expected.add_term((e.clone(), s12.clone(), e.clone()), &c);
        expected.add_term((e.clone(), s21.clone(), e.clone()), &c);
        assert_eq!(nf, expected);
        let nf = normal_form(&Word(vec![Token::Y(1), Token::Y(0)]), &p);
        let mut expected = AlgebraElement::zero(2);
        expected.add_term(
            (
                e.clone(),
                MonomialMatrix::identity(2, &one),
                Monomial(vec![1, 1]),
            ),
            &f.int(-1),
        );
        assert_eq!(nf, expected);
        // cross relation: y2 x1 + x1 y2 = c (sigma_21 - sigma_12)
        let nf = normal_form(&Word(vec![Token::Y(1), Token::X(0)]), &p);
        let mut expected = AlgebraElement::zero(2);
        expected.add_term(
            (
                Monomial::var(2, 0),
                MonomialMatrix::identity(2, &one),
                Monomial::var(2, 1),
            ),
            &f.int(-1),
        );
        expected.add_term((e.clone(), s21, e.clone()), &c);
        expected.add_term((e.clone(), s12, e), &c.neg_ref());
        assert_eq!(nf, expected);
    }

    #[test]
    fn degenerate_drops_constant() {
        let f = CycloField::new(2);
        let p = b2plus(&f.rational(rat(1, 3)), true);
        let id = MonomialMatrix::identity(2, &f.one());
        assert!(!p.entry(0, 0).contains_key(&id));
        let p = b2plus(&f.zero(), false);
        assert_eq!(p.entry(0, 0), BTreeMap::from([(id, f.one())]));
        assert!(p.entry(1, 0).is_empty());
    }

    #[test]
    fn verma_examples() {
        let f = CycloField::new(2);
        let c = f.rational(rat(1, 2));
        let p = b2plus(&c, false);
        let module = VermaModule::new(&p, 3).unwrap();
        let x1 = QPolynomial::var(p.qmatrix(), 0);
        let image = module.act_word(&Word(vec![Token::Y(0)]), &x1).unwrap();
        assert_eq!(image, QPolynomial::constant(p.qmatrix(), f.int(2)));
        assert_eq!(verma_relation_failure(&p, 3).unwrap(), None);
    }

    #[test]
    fn rational_s2_and_abelian_tables() {
        let f = CycloField::new(2);
        let c = f.rational(rat(2, 5));
        let p = presentation_rational_sn(2, &c, &f.one()).unwrap();
        let s = make_srefl(2, 0, 1, &f.one()).unwrap();
        assert_eq!(p.entry(1, 0), BTreeMap::from([(s.clone(), c.neg_ref())]));
        assert_eq!(p.entry(0, 0).get(&s), Some(&c));
        let ab = AbelianParams {
            q: QMatrix::ones(1, &f.one()),
            orders: vec![2],
            coeffs: vec![vec![c.clone()]],
        };
        let p = presentation_abelian(&ab).unwrap();
        let t = make_t(1, 0, &f.int(-1)).unwrap();
        assert_eq!(p.entry(0, 0).get(&t), Some(&c));
        assert_eq!(verma_relation_failure(&p, 4).unwrap(), None);
    }

    #[test]
    fn multiply_and_unit() {
        let f = CycloField::new(2);
        let p = b2plus(&f.rational(rat(1, 2)), false);
        let y1 = normal_form(&Word(vec![Token::Y(0)]), &p);
        let x1 = normal_form(&Word(vec![Token::X(0)]), &p);
        assert_eq!(multiply(&y1, &unit(&p), &p), y1);
        assert_eq!(
            multiply(&y1, &x1, &p),
            normal_form(&Word(vec![Token::Y(0), Token::X(0)]), &p)
        );
    }

    #[test]
    fn confluence_and_corruption() {
        let f = CycloField::new(2);
        let p = b2plus(&f.rational(rat(1, 2)), false);
        assert!(pbw_consistency(&p, 50, 5, 7).passed());
        let bad = corrupted(&p);
        assert!(!check_equivariance(
            &bad.commutator_map().unwrap(),
            bad.group()
        ));
        assert!(!pbw_consistency(&bad, 200, 6, 7).passed());
    }
}
