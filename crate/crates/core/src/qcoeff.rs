//! Exact Laurent polynomials in a formal variable `q` over the rationals.
//!
//! Every scalar in the crate lives here. Because `q` is formal, a nonzero
//! Laurent polynomial is never the zero scalar, which is exactly the
//! "q is not a root of unity" hypothesis used throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for coefficients.
pub type Rational = BigRational;

/// Builds a rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A Laurent polynomial `Σ c_n q^n` with rational coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficient, so derived
/// equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: Vec<(i64, Rational)>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    /// The monomial `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self {
            terms: vec![(n, Rational::one())],
        }
    }

    /// The monomial `c * q^n`.
    pub fn monomial(c: Rational, n: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(n, c)] }
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `q^a - q^b`, the shape of every structure constant of the q-difference algebra.
    pub fn q_diff(a: i64, b: i64) -> Self {
        Self::from_map([(a, Rational::one()), (b, -Rational::one())])
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_map<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in pairs {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Rational {
        self.terms
            .binary_search_by_key(&n, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// `Some((c, n))` when the polynomial is the single term `c q^n`.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplicative inverse; only monomials are units of the ring.
    pub fn inverse(&self) -> Option<Self> {
        self.as_monomial()
            .map(|(c, e)| Self::monomial(c.recip(), -e))
    }

    /// Integer power; negative exponents need a monomial.
    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        if let Some((c, e)) = base.as_monomial() {
            let k = n.unsigned_abs();
            let c = num_traits::pow::Pow::pow(c, k);
            return Some(Self::monomial(c, e * n.abs()));
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Replaces `q` by `q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_map(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Exact value at `q = r`. Roots of unity among the rationals (`±1`) and
    /// zero are rejected: they would collapse identities that hold only for
    /// generic `q`.
    pub fn eval_at(&self, r: &Rational) -> Result<Rational> {
        if r.is_zero() || r.abs().is_one() {
            return Err(Error::Genericity(r.to_string()));
        }
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let p = num_traits::pow::Pow::pow(r, e.unsigned_abs());
            let p = if *e < 0 { p.recip() } else { p };
            sum += c * p;
        }
        Ok(sum)
    }

    fn add_terms(&self, other: &Self, sign: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match take_left {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (e, c) = &other.terms[j];
                    out.push((*e, if sign { c.clone() } else { -c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (e, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if sign { a + b } else { a - b };
                    if !c.is_zero() {
                        out.push((*e, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text: `c*q^n` terms joined by ` + ` in increasing exponent order,
/// `c` written `p` or `p/r` with `r > 0`. A `q^0` term is written as bare `c`
/// and the zero polynomial as `0`.
impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*q^{e}")?;
            }
        }
        Ok(())
    }
}

impl From<i64> for QLaurent {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for QLaurent {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        self.add_terms(rhs, true)
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self.add_terms(rhs, false)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        if let Some((c, e)) = rhs.as_monomial() {
            return QLaurent {
                terms: self.terms.iter().map(|(a, b)| (a + e, b * c)).collect(),
            };
        }
        if let Some((c, e)) = self.as_monomial() {
            return QLaurent {
                terms: rhs.terms.iter().map(|(a, b)| (a + e, b * c)).collect(),
            };
        }
        QLaurent::from_map(
            self.terms
                .iter()
                .flat_map(|(a, c)| rhs.terms.iter().map(move |(b, d)| (a + b, c * d))),
        )
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: QLaurent) -> QLaurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: &QLaurent) -> QLaurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<QLaurent> for &QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: QLaurent) -> QLaurent {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        *self = &*self - rhs;
    }
}

/// JSON form: `[[exponent, numerator, denominator], ...]` sorted by exponent.
/// Integers that do not fit an `i64` are written as decimal strings.
impl serde::Serialize for QLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(
                *e,
                json_int(c.numer()),
                json_int(c.denom()),
            ))?;
        }
        seq.end()
    }
}

fn json_int(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(n.to_string()),
    }
}

fn parse_json_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl<'de> serde::Deserialize<'de> for QLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<(i64, serde_json::Value, serde_json::Value)> =
            serde::Deserialize::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (e, n, r) in raw {
            let n = parse_json_int(&n).ok_or_else(|| D::Error::custom("bad numerator"))?;
            let r = parse_json_int(&r).ok_or_else(|| D::Error::custom("bad denominator"))?;
            if r.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            pairs.push((e, BigRational::new(n, r)));
        }
        Ok(QLaurent::from_map(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_pow_examples() {
        assert!(QLaurent::q_pow(0).is_one());
        let c = -(QLaurent::q_pow(1)) + QLaurent::q_pow(-1);
        assert_eq!(c, QLaurent::q_diff(-1, 1));
        assert_eq!(c.to_string(), "1*q^-1 + -1*q^1");
        assert!((QLaurent::q_pow(3) * QLaurent::q_pow(-3)).is_one());
    }

    #[test]
    fn is_zero_examples() {
        assert!((QLaurent::q_pow(2) - QLaurent::q_pow(2)).is_zero());
        assert!(!(QLaurent::q_pow(1) - QLaurent::q_pow(-1)).is_zero());
        assert!((QLaurent::q_pow(0) - QLaurent::from_int(1)).is_zero());
    }

    #[test]
    fn eval_examples() {
        let c = QLaurent::q_diff(-1, 1);
        assert_eq!(c.eval_at(&rat(2, 1)).unwrap(), rat(-3, 2));
        assert_eq!(QLaurent::one().eval_at(&rat(7, 3)).unwrap(), rat(1, 1));
        assert_eq!(QLaurent::q_pow(2).eval_at(&rat(1, 2)).unwrap(), rat(1, 4));
    }

    #[test]
    fn eval_rejects_degenerate_points() {
        for r in [rat(0, 1), rat(1, 1), rat(-1, 1)] {
            assert!(matches!(QLaurent::q_pow(1).eval_at(&r), Err(Error::Genericity(_))));
        }
    }

    #[test]
    fn pow_and_inverse() {
        let m = QLaurent::monomial(rat(2, 3), 4);
        assert_eq!(m.pow(-2).unwrap(), QLaurent::monomial(rat(9, 4), -8));
        assert!(QLaurent::q_diff(1, -1).inverse().is_none());
        assert_eq!(
            QLaurent::q_diff(1, 0).pow(2).unwrap(),
            QLaurent::from_map([(2, rat(1, 1)), (1, rat(-2, 1)), (0, rat(1, 1))])
        );
    }

    #[test]
    fn json_shape() {
        let c = QLaurent::from_map([(1, rat(-1, 1)), (-1, rat(1, 2))]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "[[-1,1,2],[1,-1,1]]");
        let back: QLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
