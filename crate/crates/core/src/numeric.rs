//! Exact rational scalars and the min-plus ("tropical") primitives built on them.
//!
//! Everything in this crate computes over `Q` with arbitrary precision; there is
//! no floating point anywhere. In the min-plus semiring the two operations are
//!
//! ```text
//! tropical sum:      a (+) b = min(a, b)
//! tropical product:  a (*) b = a + b
//! ```
//!
//! so a "tropical polynomial" is a minimum of affine forms. Ties in a minimum
//! are meaningful (they are where tropical varieties live), which is why
//! [`trop_min`] reports the full argmin set and not just a winner.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, kept in lowest terms with a positive denominator.
///
/// Construction, arithmetic and comparison are all exact. The canonical string
/// form is `p` for integers and `p/q` otherwise; [`FromStr`] additionally
/// accepts decimal literals such as `-2.75`, which parse exactly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True when `2 * self` is an integer.
    pub fn is_half_integer(&self) -> bool {
        (&self.0 + &self.0).is_integer()
    }

    /// Largest integer `<= self`, exactly.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational(&self.0 - self.0.floor())
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact integer value, if the denominator is 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q`, and exact decimals (`3.25`, `-0.5`, `.75`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::RationalParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(bad("empty string"));
        }
        if let Some((num, den)) = t.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad("numerator is not an integer"))?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad("denominator is not an integer"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = t.split_once('.') {
            let neg = int_part.trim_start().starts_with('-');
            let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
                format!("{int_part}0")
            } else {
                int_part.to_string()
            };
            let i = BigInt::from_str(&int_part).map_err(|_| bad("integer part is not an integer"))?;
            if frac_part.is_empty() {
                return Ok(Rational(BigRational::from_integer(i)));
            }
            if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("fractional part must be decimal digits"));
            }
            let f = BigInt::from_str(frac_part).expect("digits");
            let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
            let frac = BigRational::new(f, scale);
            let int = BigRational::from_integer(i);
            return Ok(Rational(if neg { int - frac } else { int + frac }));
        }
        let n = BigInt::from_str(t).map_err(|_| bad("not an integer, p/q, or decimal"))?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\", a decimal string, or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<Rational, E> {
                Err(E::custom(
                    "floating point literals are rejected to keep arithmetic exact; \
                     pass the value as a string such as \"1/3\" or \"0.5\"",
                ))
            }
        }
        deserializer.deserialize_any(V)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        let mut acc = Rational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        let mut acc = Rational::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

/// Outcome of a tropical sum: the minimum value together with *every* index
/// attaining it. Indices are 0-based positions into the input slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinResult {
    pub value: Rational,
    pub argmins: BTreeSet<usize>,
}

impl MinResult {
    /// True when the minimum is attained at least twice: the tie locus where
    /// tropical varieties live.
    pub fn is_tie(&self) -> bool {
        self.argmins.len() >= 2
    }
}

/// Tropical sum of a nonempty slice: `min` plus the set of attaining indices.
///
/// `trop_min(&[3, 1, 2]) == (1, {1})`; a tie such as `[2, 5, 2]` yields
/// `(2, {0, 2})`. An empty slice is an error: min-plus has no additive
/// identity here (we do not use a formal +infinity).
pub fn trop_min(terms: &[Rational]) -> Result<MinResult> {
    let first = terms.first().ok_or(Error::EmptyTropicalSum)?;
    let mut value = first.clone();
    for t in &terms[1..] {
        if t < &value {
            value = t.clone();
        }
    }
    let argmins = terms
        .iter()
        .enumerate()
        .filter(|(_, t)| *t == &value)
        .map(|(i, _)| i)
        .collect();
    Ok(MinResult { value, argmins })
}

/// Plain tropical sum when the argmin set is not needed. Panics on empty input.
pub fn tmin(terms: &[Rational]) -> Rational {
    trop_min(terms).expect("tmin over empty slice").value
}

/// Convenience: minimum of two rationals by reference.
pub fn rmin(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Parse a whitespace- or comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms_and_sign() {
        let x = Rational::new(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert_eq!(x.to_string(), "-2/3");
    }

    #[test]
    fn decimal_parse_is_exact() {
        assert_eq!(r("0.25"), Rational::new(1, 4));
        assert_eq!(r("-2.75"), Rational::new(-11, 4));
        assert_eq!(r(".5"), Rational::new(1, 2));
        assert_eq!(r("-0.5"), Rational::new(-1, 2));
        assert_eq!(r("3."), Rational::from_int(3));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "a", "1/0", "1.2.3", "2/x", "0.5e3"] {
            assert!(s.parse::<Rational>().is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn trop_min_basics() {
        let out = trop_min(&[r("3"), r("1"), r("2")]).unwrap();
        assert_eq!(out.value, r("1"));
        assert_eq!(out.argmins, BTreeSet::from([1]));
        assert!(!out.is_tie());

        let out = trop_min(&[r("2"), r("5"), r("2")]).unwrap();
        assert_eq!(out.value, r("2"));
        assert_eq!(out.argmins, BTreeSet::from([0, 2]));
        assert!(out.is_tie());

        assert_eq!(trop_min(&[]), Err(Error::EmptyTropicalSum));
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(r("-7/2").floor_int(), BigInt::from(-4));
        assert_eq!(r("-7/2").fract(), r("1/2"));
        assert_eq!(r("9/4").floor_int(), BigInt::from(2));
        assert_eq!(r("9/4").fract(), r("1/4"));
    }

    #[test]
    fn serde_roundtrip_and_integer_input() {
        let x: Rational = serde_json::from_str("\"-5/3\"").unwrap();
        assert_eq!(x, Rational::new(-5, 3));
        let y: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(y, Rational::from_int(7));
        assert!(serde_json::from_str::<Rational>("0.5").is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"-5/3\"");
    }

    proptest! {
        #[test]
        fn string_roundtrip(n in -10_000i64..10_000, d in 1i64..500) {
            let x = Rational::new(n, d);
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn decimal_roundtrip(n in -10_000i64..10_000, k in 0u32..6) {
            // Decimal fractions (denominator a power of ten) round-trip
            // through their decimal spelling exactly.
            let den = 10i64.pow(k);
            let x = Rational::new(n, den);
            let int = &x * &Rational::from_int(den);
            let digits = format!("{}", int.as_integer().unwrap().abs());
            let padded = format!("{digits:0>width$}", width = k as usize + 1);
            let (i, f) = padded.split_at(padded.len() - k as usize);
            let s = if k == 0 {
                format!("{}{}", if x.is_negative() { "-" } else { "" }, i)
            } else {
                format!("{}{}.{}", if x.is_negative() { "-" } else { "" }, i, f)
            };
            let back: Rational = s.parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn trop_min_invariant_under_permutation(mut xs in prop::collection::vec(-50i64..50, 1..8)) {
            let terms: Vec<Rational> = xs.iter().map(|&n| Rational::from_int(n)).collect();
            let a = trop_min(&terms).unwrap();
            xs.sort_unstable();
            let sorted: Vec<Rational> = xs.iter().map(|&n| Rational::from_int(n)).collect();
            let b = trop_min(&sorted).unwrap();
            prop_assert_eq!(a.value, b.value);
            prop_assert_eq!(a.argmins.len(), b.argmins.len());
        }

        #[test]
        fn trop_min_concat(xs in prop::collection::vec(-50i64..50, 1..6),
                           ys in prop::collection::vec(-50i64..50, 1..6)) {
            // min distributes over concatenation.
            let rx: Vec<Rational> = xs.iter().map(|&n| n.into()).collect();
            let ry: Vec<Rational> = ys.iter().map(|&n| n.into()).collect();
            let all: Vec<Rational> = rx.iter().chain(ry.iter()).cloned().collect();
            let m = trop_min(&all).unwrap().value;
            let mx = trop_min(&rx).unwrap().value;
            let my = trop_min(&ry).unwrap().value;
            prop_assert_eq!(m, mx.min(my));
        }
    }
}
