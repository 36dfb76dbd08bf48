//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(N)-1)`
//! reduced modulo the cyclotomic polynomial `Phi_N`, so two elements are equal
//! exactly when their coefficient vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::field::{format_rational, parse_rational, Field, Rational, RootField};
use crate::{Error, Result};

/// The field `Q(zeta_N)` together with its defining polynomial.
#[derive(Debug)]
pub struct CycloField {
    order: u64,
    /// Coefficients of `Phi_N`, lowest degree first; monic.
    minimal_polynomial: Vec<BigInt>,
}

/// Integer polynomial `x^n - 1` divided by `Phi_d` for every proper divisor `d`.
fn cyclotomic_polynomial(n: u64, cache: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d, cache);
            num = exact_monic_quotient(&num, &den);
        }
    }
    cache.insert(n, num.clone());
    num
}

/// Quotient of integer polynomials where the divisor is monic and divides exactly.
fn exact_monic_quotient(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloField {
    /// The field `Q(zeta_N)`; fields are interned, so equal orders share one handle.
    ///
    /// # Panics
    /// Panics if `order` is zero.
    pub fn new(order: u64) -> Arc<CycloField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut cache = field_cache().lock().expect("field cache poisoned");
        if let Some(f) = cache.get(&order) {
            return f.clone();
        }
        let mut polys = HashMap::new();
        let minimal_polynomial = cyclotomic_polynomial(order, &mut polys);
        let f = Arc::new(CycloField {
            order,
            minimal_polynomial,
        });
        cache.insert(order, f.clone());
        f
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `phi(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    /// Coefficients of `Phi_N`, lowest degree first.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minimal_polynomial
    }

    /// Reduce a polynomial in `zeta` of any length modulo `Phi_N`.
    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], Rational::zero());
            for (j, pj) in self.minimal_polynomial[..d].iter().enumerate() {
                if !pj.is_zero() {
                    poly[k - d + j] -= &c * Rational::from_integer(pj.clone());
                }
            }
        }
        poly.resize(d, Rational::zero());
        poly
    }
}

/// Handle-level helpers on `Arc<CycloField>`.
pub trait CycloFieldExt {
    fn zero(&self) -> CycloElement;
    fn one(&self) -> CycloElement;
    fn rational(&self, r: Rational) -> CycloElement;
    fn int(&self, v: i64) -> CycloElement;
    /// `zeta_N^k`, with `k` taken modulo `N`.
    fn root_of_unity(&self, k: i64) -> CycloElement;
    fn from_coeffs(&self, coeffs: Vec<Rational>) -> CycloElement;
}

impl CycloFieldExt for Arc<CycloField> {
    fn zero(&self) -> CycloElement {
        CycloElement {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }
    fn one(&self) -> CycloElement {
        self.int(1)
    }
    fn rational(&self, r: Rational) -> CycloElement {
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }
    fn int(&self, v: i64) -> CycloElement {
        self.rational(Rational::from_integer(BigInt::from(v)))
    }
    fn root_of_unity(&self, k: i64) -> CycloElement {
        let n = self.order as i64;
        let k = k.mod_floor(&n) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        self.from_coeffs(poly)
    }
    fn from_coeffs(&self, coeffs: Vec<Rational>) -> CycloElement {
        CycloElement {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }
}

/// Create the field `Q(zeta_N)`.
pub fn field_create(order: u64) -> Arc<CycloField> {
    CycloField::new(order)
}

/// An element `sum coeffs[k] * zeta_N^k` of `Q(zeta_N)` in canonical form.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

/// Binary operation selector for [`CycloElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl CycloElement {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.order,
                right: other.field.order,
            })
        }
    }

    /// Checked arithmetic that reports mismatched fields.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.same_field(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    /// Checked inverse.
    pub fn invert(&self) -> Result<Self> {
        self.inverse().ok_or(Error::DivisionByZero)
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        }
    }

    /// Image under the embedding `Q(zeta_M) -> Q(zeta_N)`, `zeta_M -> zeta_N^(N/M)`.
    pub fn promote(&self, target: &Arc<CycloField>) -> Result<Self> {
        let m = self.field.order;
        let n = target.order;
        if !n.is_multiple_of(m) {
            return Err(Error::NotASubfield { from: m, to: n });
        }
        let step = (n / m) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(target.from_coeffs(poly))
    }

    /// Literal form `{"order": N, "coeffs": {"k": "p/q"}}` with zero entries omitted.
    pub fn to_literal(&self) -> Value {
        let mut coeffs = serde_json::Map::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(k.to_string(), Value::String(format_rational(c)));
            }
        }
        json!({ "order": self.field.order, "coeffs": coeffs })
    }

    /// Parse a literal and promote it into `ambient`.
    ///
    /// Accepts the object form and, as a shorthand for rationals, a string
    /// `"p/q"` or an integer.
    pub fn from_literal(value: &Value, ambient: &Arc<CycloField>) -> Result<Self> {
        let bad = |message: String| Error::Config {
            location: "cyclotomic literal".into(),
            message,
        };
        match value {
            Value::String(s) => Ok(ambient.rational(parse_rational(s)?)),
            Value::Number(num) => {
                let v = num
                    .as_i64()
                    .ok_or_else(|| bad(format!("non-integer number {num}")))?;
                Ok(ambient.int(v))
            }
            Value::Object(map) => {
                let order = map
                    .get("order")
                    .and_then(Value::as_u64)
                    .filter(|&o| o >= 1)
                    .ok_or_else(|| bad("missing positive integer \"order\"".into()))?;
                let field = CycloField::new(order);
                let mut poly = vec![Rational::zero(); order as usize];
                if let Some(coeffs) = map.get("coeffs") {
                    let coeffs = coeffs
                        .as_object()
                        .ok_or_else(|| bad("\"coeffs\" must be an object".into()))?;
                    for (k, c) in coeffs {
                        let k: u64 = k
                            .parse()
                            .map_err(|_| bad(format!("bad exponent key {k:?}")))?;
                        let c = match c {
                            Value::String(s) => parse_rational(s)?,
                            Value::Number(n) => Rational::from_integer(BigInt::from(
                                n.as_i64()
                                    .ok_or_else(|| bad(format!("bad coefficient {n}")))?,
                            )),
                            other => return Err(bad(format!("bad coefficient {other}"))),
                        };
                        poly[(k % order) as usize] += c;
                    }
                }
                field.from_coeffs(poly).promote(ambient)
            }
            other => Err(bad(format!("unsupported literal {other}"))),
        }
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl Hash for CycloElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycloElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycloElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field
            .order
            .cmp(&other.field.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.order;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mag_text = format_rational(&mag);
            match k {
                0 => write!(f, "{mag_text}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_text}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{n}")?;
                    } else {
                        write!(f, "z{n}^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense polynomial helpers over `Q` for the extended Euclidean algorithm.
fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = &den[dd];
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

impl Field for CycloElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        self.field.rational(r.clone())
    }
    fn eq_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.arith(other, ArithOp::Add)
            .expect("operands share one field")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.arith(other, ArithOp::Sub)
            .expect("operands share one field")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.arith(other, ArithOp::Mul)
            .expect("operands share one field")
    }
    fn neg_ref(&self) -> Self {
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.eq_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.field.rational(r.recip()));
        }
        let phi: Vec<Rational> = self
            .field
            .minimal_polynomial
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_N is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        Some(self.field.from_coeffs(s))
    }
}

impl RootField for CycloElement {
    fn root_of_unity_like(&self, m: u64, k: i64) -> Result<Self> {
        let n = self.field.order;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::NotASubfield { from: m, to: n });
        }
        Ok(self.field.root_of_unity(k * (n / m) as i64))
    }
}

/// Least common multiple of a list of orders (1 for an empty list).
pub fn lcm_orders(orders: &[u64]) -> u64 {
    orders.iter().fold(1u64, |acc, &o| acc.lcm(&o.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn poly_ints(f: &CycloField) -> Vec<i64> {
        f.minimal_polynomial()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(poly_ints(&CycloField::new(1)), vec![-1, 1]);
        assert_eq!(poly_ints(&CycloField::new(4)), vec![1, 0, 1]);
        assert_eq!(poly_ints(&CycloField::new(6)), vec![1, -1, 1]);
        assert_eq!(poly_ints(&CycloField::new(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(CycloField::new(12).degree(), 4);
    }

    #[test]
    fn phi_6_is_the_quotient_of_x6_minus_1() {
        // Oracle: multiply Phi_1 Phi_2 Phi_3 Phi_6 back together.
        let ps: Vec<Vec<Rational>> = [1u64, 2, 3, 6]
            .iter()
            .map(|&d| {
                CycloField::new(d)
                    .minimal_polynomial()
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect()
            })
            .collect();
        let prod = ps
            .iter()
            .skip(1)
            .fold(ps[0].clone(), |acc, p| poly_mul(&acc, p));
        let mut expected = vec![Rational::zero(); 7];
        expected[0] = rat(-1, 1);
        expected[6] = rat(1, 1);
        assert_eq!(prod, expected);
    }

    #[test]
    fn roots_of_unity_examples() {
        let k4 = CycloField::new(4);
        assert_eq!(k4.root_of_unity(2), k4.int(-1));
        let k3 = CycloField::new(3);
        let z = k3.root_of_unity(1);
        let s = z.mul_ref(&z).add_ref(&z).add_ref(&k3.one());
        assert!(s.eq_zero());
        let k6 = CycloField::new(6);
        let z6 = k6.root_of_unity(1);
        assert_eq!(z6.pow_i64(3).unwrap(), k6.int(-1));
        assert_eq!(z6.multiplicative_order(100), Some(6));
        assert_eq!(k6.root_of_unity(2).multiplicative_order(100), Some(3));
    }

    #[test]
    fn arithmetic_examples() {
        let k4 = CycloField::new(4);
        let i = k4.root_of_unity(1);
        assert_eq!(i.mul_ref(&i), k4.int(-1));
        let one = k4.one();
        assert_eq!(one.add_ref(&i).mul_ref(&one.sub_ref(&i)), k4.int(2));
        let k3 = CycloField::new(3);
        let z = k3.root_of_unity(1);
        assert_eq!(z.add_ref(&k3.root_of_unity(2)), k3.int(-1));
        let mismatch = i.arith(&z, ArithOp::Add);
        assert_eq!(mismatch, Err(Error::FieldMismatch { left: 4, right: 3 }));
    }

    #[test]
    fn inverse_examples() {
        let k4 = CycloField::new(4);
        let i = k4.root_of_unity(1);
        assert_eq!(i.invert().unwrap(), i.neg_ref());
        assert_eq!(k4.int(2).invert().unwrap(), k4.rational(rat(1, 2)));
        let a = k4.one().add_ref(&i);
        let expected = k4.one().sub_ref(&i).mul_ref(&k4.rational(rat(1, 2)));
        assert_eq!(a.invert().unwrap(), expected);
        assert_eq!(k4.zero().invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn promotion_examples() {
        let minus_one = CycloField::new(2).int(-1);
        let k4 = CycloField::new(4);
        assert_eq!(minus_one.promote(&k4).unwrap(), k4.root_of_unity(2));
        let k6 = CycloField::new(6);
        let z3 = CycloField::new(3).root_of_unity(1);
        assert_eq!(z3.promote(&k6).unwrap(), k6.root_of_unity(2));
        let q = CycloField::new(1).rational(rat(5, 3));
        let k12 = CycloField::new(12);
        assert_eq!(q.promote(&k12).unwrap(), k12.rational(rat(5, 3)));
        assert_eq!(
            CycloField::new(4).one().promote(&k6),
            Err(Error::NotASubfield { from: 4, to: 6 })
        );
    }

    #[test]
    fn literal_round_trip_and_promotion() {
        let k12 = CycloField::new(12);
        let v: Value =
            serde_json::from_str(r#"{"order":4,"coeffs":{"1":"1/2","0":"-3"}}"#).unwrap();
        let e = CycloElement::from_literal(&v, &k12).unwrap();
        let expected = k12
            .root_of_unity(3)
            .mul_ref(&k12.rational(rat(1, 2)))
            .add_ref(&k12.int(-3));
        assert_eq!(e, expected);
        let back = CycloElement::from_literal(&e.to_literal(), &k12).unwrap();
        assert_eq!(back, e);
        let short = CycloElement::from_literal(&Value::String("2/3".into()), &k12).unwrap();
        assert_eq!(short, k12.rational(rat(2, 3)));
        let bad: Value = serde_json::from_str(r#"{"order":5,"coeffs":{"1":"1"}}"#).unwrap();
        assert!(CycloElement::from_literal(&bad, &k12).is_err());
    }

    #[test]
    fn display_is_readable() {
        let k4 = CycloField::new(4);
        let e = k4.int(1).sub_ref(&k4.root_of_unity(1).mul_ref(&k4.int(2)));
        assert_eq!(e.to_string(), "1 - 2*z4");
        assert_eq!(k4.zero().to_string(), "0");
    }
}
