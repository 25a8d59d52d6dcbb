use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Ring;
use crate::error::{Error, Result};

pub type Q = BigRational;

/// An element re + i·im of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Q,
    pub im: Q,
}

pub fn rational_to_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl GaussianRational {
    pub fn new(re: Q, im: Q) -> Self {
        GaussianRational { re, im }
    }
    pub fn real(re: Q) -> Self {
        GaussianRational { re, im: Q::zero() }
    }
    pub fn from_int(n: i64) -> Self {
        Self::real(Q::from_integer(n.into()))
    }
    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::real(Q::new(n.into(), d.into()))
    }
    pub fn i() -> Self {
        GaussianRational { re: Q::zero(), im: Q::one() }
    }
    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    /// Rational upper bound |re| + |im| on the modulus.
    pub fn modulus_bound(&self) -> Q {
        self.re.abs() + self.im.abs()
    }
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
    /// Total order used only for canonical sorting: real part first, then imaginary part.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
    /// Parses `p/q`, `p/q i`, `a+bi`, `-i` and friends.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.ends_with('i') {
            return Ok(Self::real(parse_rational(&t)?));
        }
        let body = &t[..t.len() - 1];
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-') && !body[..k].ends_with('/'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im.trim_end_matches('*') {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            x => parse_rational(x.trim_start_matches('+'))?,
        };
        Ok(GaussianRational { re: parse_rational(re)?, im })
    }
}

impl From<Q> for GaussianRational {
    fn from(q: Q) -> Self {
        Self::real(q)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Q::zero(), im: Q::zero() }
    }
    fn one() -> Self {
        GaussianRational { re: Q::one(), im: Q::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn minus(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn times(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn negated(&self) -> Self {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn from_gr(c: &GaussianRational) -> Self {
        c.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                self.$f(o)
            }
        }
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                self.$f(&o)
            }
        }
    };
}
forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use `checked_div` where the divisor may vanish.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self.checked_div(o).expect("division by zero in Q(i)")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.negated()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.negated()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = rational_to_string(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im_abs = self.im.abs();
        let im_s = if im_abs.is_one() { String::new() } else { rational_to_string(&im_abs) };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im_s}i")
        } else {
            write!(f, "{re}{sign}{im_s}i")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct GrJson {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GrJson { re: rational_to_string(&self.re), im: rational_to_string(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GrJson::deserialize(d)?;
        let re = parse_rational(&j.re).map_err(D::Error::custom)?;
        let im = parse_rational(&j.im).map_err(D::Error::custom)?;
        Ok(GaussianRational { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::new(Q::from_integer(a.into()), Q::from_integer(b.into()))
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(GaussianRational::i().inv().unwrap(), gr(0, -1));
        assert_eq!(gr(1, 1) * gr(1, -1), gr(2, 0));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(GaussianRational::parse("1/7").unwrap(), GaussianRational::from_frac(1, 7));
        assert_eq!(GaussianRational::parse("-i").unwrap(), gr(0, -1));
        assert_eq!(GaussianRational::parse("2-3i").unwrap(), gr(2, -3));
        assert_eq!(
            GaussianRational::parse("1/2+3/4i").unwrap(),
            GaussianRational::new(Q::new(1.into(), 2.into()), Q::new(3.into(), 4.into()))
        );
        assert!(GaussianRational::parse("1/0").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = GaussianRational::new(Q::new((-3).into(), 4.into()), Q::from_integer(2.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"re":"-3/4","im":"2"}"#);
        assert_eq!(serde_json::from_str::<GaussianRational>(&s).unwrap(), x);
    }

    #[test]
    fn display() {
        assert_eq!(gr(0, -1).to_string(), "-i");
        assert_eq!(gr(2, 3).to_string(), "2+3i");
        assert_eq!(gr(-1, 0).to_string(), "-1");
    }
}
