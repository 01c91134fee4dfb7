//! Exact nonnegative rationals, their extension by `∞`, and unit-interval
//! coefficients.
//!
//! Everything in this crate is computed exactly; there are no tolerances.
//! Signed rationals ([`Q`]) appear only where the arithmetic genuinely needs
//! them (the simplex tableau, the `]-∞, 0]` algebra).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Signed exact rational.
pub type Q = BigRational;

/// Builds a signed rational `n/d`. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a signed rational as `p/q` (or `p` when the denominator is 1).
pub fn fmt_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p/q`, `p` or a signed variant of either.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn parse_detail<E: de::Error>(e: Error) -> E {
    match e {
        Error::Parse(m) => E::custom(m),
        other => E::custom(other),
    }
}

/// A nonnegative rational, always kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(Q);

impl Rat {
    /// `n/d`; panics when `d == 0`.
    pub fn new(n: u64, d: u64) -> Rat {
        Rat(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Rat {
        Rat(Q::zero())
    }

    pub fn one() -> Rat {
        Rat(Q::one())
    }

    pub fn from_int(n: u64) -> Rat {
        Rat::new(n, 1)
    }

    /// Wraps a signed rational, rejecting negative values.
    pub fn from_q(v: Q) -> Option<Rat> {
        if v.is_negative() {
            None
        } else {
            Some(Rat(v))
        }
    }

    pub fn as_q(&self) -> &Q {
        &self.0
    }

    pub fn into_q(self) -> Q {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `self - other` when the result is nonnegative.
    pub fn checked_sub(&self, other: &Rat) -> Option<Rat> {
        Rat::from_q(&self.0 - &other.0)
    }

    /// `max(self - other, 0)`.
    pub fn saturating_sub(&self, other: &Rat) -> Rat {
        self.checked_sub(other).unwrap_or_else(Rat::zero)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn pow(&self, k: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), k as usize))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Approximate decimal rendering, for display only.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let v = parse_q(s)?;
        Rat::from_q(v).ok_or_else(|| Error::Parse(format!("negative value {s:?}")))
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => s.parse().map_err(parse_detail),
            serde_json::Value::Number(n) if n.is_u64() => Ok(Rat::from_int(n.as_u64().unwrap())),
            _ => Err(de::Error::custom(format!("expected a \"p/q\" string, got {v}"))),
        }
    }
}

/// A rational coefficient in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRat(Rat);

impl UnitRat {
    pub fn new(r: Rat) -> Option<UnitRat> {
        if r <= Rat::one() {
            Some(UnitRat(r))
        } else {
            None
        }
    }

    /// `n/d`; panics unless `0 <= n/d <= 1`.
    pub fn frac(n: u64, d: u64) -> UnitRat {
        UnitRat::new(Rat::new(n, d)).expect("coefficient outside [0, 1]")
    }

    pub fn zero() -> UnitRat {
        UnitRat(Rat::zero())
    }

    pub fn one() -> UnitRat {
        UnitRat(Rat::one())
    }

    pub fn half() -> UnitRat {
        UnitRat::frac(1, 2)
    }

    pub fn rat(&self) -> &Rat {
        &self.0
    }

    pub fn into_rat(self) -> Rat {
        self.0
    }

    /// `1 - a`.
    pub fn complement(&self) -> UnitRat {
        UnitRat(Rat::one().checked_sub(&self.0).expect("unit interval"))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Strictly between 0 and 1.
    pub fn is_interior(&self) -> bool {
        !self.is_zero() && !self.is_one()
    }

    pub fn mul(&self, other: &UnitRat) -> UnitRat {
        UnitRat(&self.0 * &other.0)
    }

    pub fn pow(&self, k: u32) -> UnitRat {
        UnitRat(self.0.pow(k))
    }
}

impl fmt::Display for UnitRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for UnitRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for UnitRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<UnitRat> {
        let r: Rat = s.parse()?;
        UnitRat::new(r).ok_or_else(|| Error::Parse(format!("coefficient {s:?} is not in [0, 1]")))
    }
}

impl Serialize for UnitRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<UnitRat, D::Error> {
        let r = Rat::deserialize(d)?;
        UnitRat::new(r).ok_or_else(|| de::Error::custom("coefficient is not in [0, 1]"))
    }
}

/// The extended nonnegative reals restricted to rationals: `ℚ₊ ∪ {∞}`.
///
/// The derived order puts `Infinity` above every finite value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XRat {
    Finite(Rat),
    Infinity,
}

impl XRat {
    pub fn zero() -> XRat {
        XRat::Finite(Rat::zero())
    }

    pub fn one() -> XRat {
        XRat::Finite(Rat::one())
    }

    pub fn fin(n: u64, d: u64) -> XRat {
        XRat::Finite(Rat::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, XRat::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            XRat::Finite(r) => Some(r),
            XRat::Infinity => None,
        }
    }

    /// Scales by a finite nonnegative rational, with `0 · ∞ = 0`.
    pub fn scale(&self, a: &Rat) -> XRat {
        xr_mul(&XRat::Finite(a.clone()), self)
    }
}

impl From<Rat> for XRat {
    fn from(r: Rat) -> XRat {
        XRat::Finite(r)
    }
}

impl fmt::Display for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XRat::Finite(r) => fmt::Display::fmt(r, f),
            XRat::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for XRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<XRat> {
        match s.trim() {
            "inf" => Ok(XRat::Infinity),
            other => Ok(XRat::Finite(other.parse()?)),
        }
    }
}

impl Serialize for XRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for XRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<XRat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => s.parse().map_err(parse_detail),
            serde_json::Value::Number(n) if n.is_u64() => {
                Ok(XRat::Finite(Rat::from_int(n.as_u64().unwrap())))
            }
            _ => Err(de::Error::custom(format!("expected \"p/q\" or \"inf\", got {v}"))),
        }
    }
}

/// Exact sum; `∞` absorbs.
pub fn xr_add(a: &XRat, b: &XRat) -> XRat {
    match (a, b) {
        (XRat::Finite(x), XRat::Finite(y)) => XRat::Finite(x + y),
        _ => XRat::Infinity,
    }
}

/// Exact product with the convention `0 · ∞ = ∞ · 0 = 0`.
pub fn xr_mul(a: &XRat, b: &XRat) -> XRat {
    match (a, b) {
        (XRat::Finite(x), XRat::Finite(y)) => XRat::Finite(x * y),
        (XRat::Finite(x), XRat::Infinity) | (XRat::Infinity, XRat::Finite(x)) if x.is_zero() => {
            XRat::zero()
        }
        _ => XRat::Infinity,
    }
}

/// The way-below relation of `ℝ̄₊`: `s ≪ t` iff `s = 0` or `s < t`.
pub fn way_below(s: &XRat, t: &XRat) -> bool {
    s.is_zero() || s.cmp(t) == Ordering::Less
}

impl Add for XRat {
    type Output = XRat;
    fn add(self, rhs: XRat) -> XRat {
        xr_add(&self, &rhs)
    }
}

impl Mul for XRat {
    type Output = XRat;
    fn mul(self, rhs: XRat) -> XRat {
        xr_mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> XRat {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(xr_add(&x("1/2"), &x("1/3")), x("5/6"));
        assert_eq!(xr_add(&XRat::Infinity, &XRat::zero()), XRat::Infinity);
        assert_eq!(xr_add(&XRat::zero(), &XRat::zero()), XRat::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(xr_mul(&XRat::zero(), &XRat::Infinity), XRat::zero());
        assert_eq!(xr_mul(&XRat::Infinity, &XRat::zero()), XRat::zero());
        assert_eq!(xr_mul(&x("2/3"), &x("3/2")), XRat::one());
        assert_eq!(xr_mul(&XRat::Infinity, &x("1/2")), XRat::Infinity);
    }

    #[test]
    fn way_below_examples() {
        assert!(way_below(&XRat::zero(), &XRat::zero()));
        assert!(!way_below(&XRat::one(), &XRat::one()));
        assert!(way_below(&XRat::one(), &XRat::Infinity));
        assert!(!way_below(&XRat::Infinity, &XRat::Infinity));
    }

    #[test]
    fn text_form() {
        assert_eq!(Rat::new(6, 4).to_string(), "3/2");
        assert_eq!(Rat::new(4, 2).to_string(), "2");
        assert_eq!(XRat::Infinity.to_string(), "inf");
        assert_eq!("4/6".parse::<Rat>().unwrap(), Rat::new(2, 3));
        assert!("-1/2".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("3/2".parse::<UnitRat>().is_err());
        let j = serde_json::to_string(&x("inf")).unwrap();
        assert_eq!(j, "\"inf\"");
    }

    #[test]
    fn infinity_is_top() {
        assert!(XRat::Infinity > x("1000000"));
        assert!(x("1/3") < x("1/2"));
    }

    #[test]
    fn unit_complement() {
        assert_eq!(UnitRat::frac(1, 3).complement(), UnitRat::frac(2, 3));
        assert!(UnitRat::half().is_interior());
        assert!(!UnitRat::one().is_interior());
    }
}
