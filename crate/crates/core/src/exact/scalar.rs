//! Exact rationals and Gaussian rationals.
//!
//! [`Scalar`] is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. [`GaussianScalar`] is an element of ℚ(i), used only
//! where a complexification is unavoidable (type decompositions, the complex
//! Gerstenhaber algebra).

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Arithmetic needed by the generic linear algebra in this crate.
///
/// Implemented by [`Scalar`] (ℚ) and [`GaussianScalar`] (ℚ(i)).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn from_scalar(s: Scalar) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_scalar(Scalar::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    /// `numer / denom`, reduced.
    ///
    /// Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::parse("scalar", "zero denominator"));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        Scalar(num_traits::Pow::pow(&self.0, exp))
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar(BigRational::zero())
    }
    fn one() -> Self {
        Scalar(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty(self.0.$method(&rhs.0))
            }
        }
        impl $assign_trait for $ty {
            fn $assign(&mut self, rhs: $ty) {
                self.0.$assign(rhs.0);
            }
        }
    };
}

forward_binop!(Scalar, Add, add, AddAssign, add_assign);
forward_binop!(Scalar, Sub, sub, SubAssign, sub_assign);
forward_binop!(Scalar, Mul, mul, MulAssign, mul_assign);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.0.is_zero(), "division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.0.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(<Scalar as Field>::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::parse("scalar", format!("invalid rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        if n.is_empty() || d.is_empty() || d.starts_with(['+', '-']) {
            return Err(bad());
        }
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Scalar::from_bigints(n, d)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::from(n)),
        }
    }
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl GaussianScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        GaussianScalar { re, im }
    }

    pub fn i() -> Self {
        GaussianScalar::new(Scalar::zero(), Scalar::one())
    }

    pub fn conj(&self) -> Self {
        GaussianScalar::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, always rational.
    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Field for GaussianScalar {
    fn zero() -> Self {
        GaussianScalar::new(Scalar::zero(), Scalar::zero())
    }
    fn one() -> Self {
        GaussianScalar::new(Scalar::one(), Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        GaussianScalar::new(s, Scalar::zero())
    }
}

impl From<Scalar> for GaussianScalar {
    fn from(s: Scalar) -> Self {
        GaussianScalar::from_scalar(s)
    }
}

impl Add for GaussianScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianScalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianScalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianScalar::new(re, im)
    }
}

impl Div for GaussianScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        let GaussianScalar { re, im } = self * rhs.conj();
        GaussianScalar::new(&re / &n, &im / &n)
    }
}

impl Neg for GaussianScalar {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianScalar::new(-self.re, -self.im)
    }
}

impl AddAssign for GaussianScalar {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign for GaussianScalar {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Sum for GaussianScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GaussianScalar::zero(), |a, b| a + b)
    }
}

impl fmt::Display for GaussianScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{} i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{} i", self.re, self.im)
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianScalar {
    type Err = Error;

    /// Accepts `"p/q+r/s i"`, `"p/q-r/s i"`, a plain rational, or a pure
    /// imaginary `"r/s i"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianScalar::from(t.parse::<Scalar>()?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other.strip_prefix('+').unwrap_or(other),
        };
        Ok(GaussianScalar::new(re.parse()?, im.parse()?))
    }
}

impl Serialize for GaussianScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for an integer [`Scalar`].
pub fn int(n: i64) -> Scalar {
    Scalar::from(n)
}

/// Shorthand for `p/q`.
pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let a = Scalar::new(6, -4);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(a.to_string(), "-3/2");
    }

    #[test]
    fn sums_reduce() {
        assert_eq!(frac(1, 6) + frac(1, 3), frac(1, 2));
        assert_eq!((frac(1, 2) - frac(1, 2)).to_string(), "0");
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "7", "-7", "3/4", "-1/2"] {
            assert_eq!(s.parse::<Scalar>().unwrap().to_string(), s);
        }
        assert_eq!("4/8".parse::<Scalar>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1/-2".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_parse_and_print() {
        let cases = [
            ("1/2+3/4 i", "1/2+3/4 i"),
            ("-1/2-3/4 i", "-1/2-3/4 i"),
            ("2", "2"),
            ("-3 i", "-3 i"),
            ("i", "1 i"),
            ("1-i", "1-1 i"),
        ];
        for (input, out) in cases {
            let z: GaussianScalar = input.parse().unwrap();
            assert_eq!(z.to_string(), out, "{input}");
            assert_eq!(out.parse::<GaussianScalar>().unwrap(), z);
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let i = GaussianScalar::i();
        assert_eq!(i.clone() * i.clone(), -GaussianScalar::one());
        let z = GaussianScalar::new(int(1), int(2));
        let w = GaussianScalar::new(int(3), int(-1));
        assert_eq!((z.clone() * w.clone()) / w.clone(), z);
        assert_eq!(z.clone() * z.conj(), GaussianScalar::from(int(5)));
    }

    #[test]
    fn serde_as_strings() {
        let v: Vec<Scalar> = serde_json::from_str(r#"["1/2", -3, "4"]"#).unwrap();
        assert_eq!(v, vec![frac(1, 2), int(-3), int(4)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","-3","4"]"#);
    }
}
