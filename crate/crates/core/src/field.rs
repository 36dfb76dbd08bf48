//! Scalar traits shared by every module.
//!
//! Elements of a cyclotomic field carry a handle to their field, so the trait
//! builds constants from an existing element (`zero_like`, `one_like`) rather
//! than from nothing.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// An exact field.
///
/// `Ord` is a total order used only to make containers canonical; it carries
/// no algebraic meaning.
pub trait Field: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn eq_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64_like(&self, v: i64) -> Self {
        self.from_rational_like(&Rational::from_integer(BigInt::from(v)))
    }

    fn eq_one(&self) -> bool {
        self.sub_ref(&self.one_like()).eq_zero()
    }

    fn div_ref(&self, other: &Self) -> Result<Self> {
        other
            .inverse()
            .map(|inv| self.mul_ref(&inv))
            .ok_or(Error::DivisionByZero)
    }

    /// Integer power; negative exponents invert.
    fn pow_i64(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.inverse().ok_or(Error::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut acc = self.one_like();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            k >>= 1;
        }
        Ok(acc)
    }
}

/// A field that can produce roots of unity of some orders.
pub trait RootField: Field {
    /// `zeta_m^k`, or `NotASubfield` when the field lacks primitive `m`-th roots.
    fn root_of_unity_like(&self, m: u64, k: i64) -> Result<Self>;

    /// All `m`-th roots of unity as `zeta_m^0, ..., zeta_m^(m-1)`.
    fn roots_of_unity_like(&self, m: u64) -> Result<Vec<Self>> {
        (0..m as i64)
            .map(|k| self.root_of_unity_like(m, k))
            .collect()
    }

    /// Smallest `k >= 1` with `self^k = 1`, searched up to `bound`.
    fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        let one = self.one_like();
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = acc.mul_ref(self);
        }
        None
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl RootField for Rational {
    fn root_of_unity_like(&self, m: u64, k: i64) -> Result<Self> {
        match m {
            1 => Ok(Rational::one()),
            2 if k.is_even() => Ok(Rational::one()),
            2 => Ok(-Rational::one()),
            _ => Err(Error::NotASubfield { from: m, to: 2 }),
        }
    }
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Config {
        location: "rational literal".into(),
        message: format!("cannot parse {text:?}"),
    };
    let t = text.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Render a rational as `"p/q"` or `"p"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
