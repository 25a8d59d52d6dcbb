use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GaussianRational as GR, Ring};
use crate::error::{Error, Result};

/// Univariate polynomial over Q(i), stored densely with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HbarPoly {
    coeffs: Vec<GR>,
}

impl HbarPoly {
    pub fn from_coeffs(mut coeffs: Vec<GR>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HbarPoly { coeffs }
    }
    pub fn constant(c: GR) -> Self {
        Self::from_coeffs(vec![c])
    }
    /// The monomial c·x^k.
    pub fn monomial(c: GR, k: usize) -> Self {
        let mut v = vec![GR::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }
    pub fn x() -> Self {
        Self::monomial(GR::one(), 1)
    }
    /// x − a
    pub fn linear_root(a: &GR) -> Self {
        Self::from_coeffs(vec![a.negated(), GR::one()])
    }
    pub fn coeffs(&self) -> &[GR] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> GR {
        self.coeffs.get(k).cloned().unwrap_or_else(GR::zero)
    }
    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> GR {
        self.coeffs.last().cloned().unwrap_or_else(GR::zero)
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
    pub fn eval(&self, x: &GR) -> GR {
        let mut acc = GR::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.times(&GR::from_int(k as i64))).collect(),
        )
    }
    pub fn make_monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scaled(&inv)
    }
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![GR::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }
    pub fn checked_div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
    /// Monic greatest common divisor (zero if both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }
    /// Reverses coefficients relative to degree `d`: returns x^d·p(1/x).
    pub fn reversed(&self, d: usize) -> Self {
        assert!(self.coeffs.len() <= d + 1, "reversal degree too small");
        let mut v = vec![GR::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[d - k] = c.clone();
        }
        Self::from_coeffs(v)
    }
    /// self += c·p, in place.
    pub fn add_scaled_assign(&mut self, p: &HbarPoly, c: &GR) {
        if c.is_zero() || p.is_zero() {
            return;
        }
        if self.coeffs.len() < p.coeffs.len() {
            self.coeffs.resize(p.coeffs.len(), GR::zero());
        }
        for (k, a) in p.coeffs.iter().enumerate() {
            if !a.is_zero() {
                self.coeffs[k] = self.coeffs[k].plus(&a.times(c));
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
    /// Multiplicity of 0 as a root.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }
    pub fn conj(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(GR::conj).collect())
    }
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_real() || num_traits::Zero::is_zero(&c.re) { c.to_string() } else { format!("({c})") };
            parts.push(match k {
                0 => cs,
                _ => {
                    let mon = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    match cs.as_str() {
                        "1" => mon,
                        "-1" => format!("-{mon}"),
                        _ => format!("{cs}*{mon}"),
                    }
                }
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Ring for HbarPoly {
    fn zero() -> Self {
        HbarPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(GR::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect())
    }
    fn minus(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect())
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![GR::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(v)
    }
    fn negated(&self) -> Self {
        HbarPoly { coeffs: self.coeffs.iter().map(GR::negated).collect() }
    }
    fn from_gr(c: &GR) -> Self {
        Self::constant(c.clone())
    }
    fn scaled(&self, c: &GR) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }
}

impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("h"))
    }
}

impl fmt::Debug for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for HbarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, &GR)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HbarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(usize, GR)> = Vec::deserialize(d)?;
        let n = pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        if n > 1 << 16 {
            return Err(D::Error::custom(Error::Parse("polynomial degree too large".into())));
        }
        let mut v = vec![GR::zero(); n];
        for (k, c) in pairs {
            v[k] = v[k].plus(&c);
        }
        Ok(Self::from_coeffs(v))
    }
}

pub(crate) fn require_nonzero(p: &HbarPoly) -> Result<()> {
    if p.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> HbarPoly {
        HbarPoly::from_coeffs(v.iter().map(|&c| GR::from_int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-2, 1]).times(&b)), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[1, 1])), HbarPoly::one());
    }

    #[test]
    fn reversal() {
        assert_eq!(p(&[1, 2]).reversed(3), p(&[0, 0, 2, 1]));
    }

    #[test]
    fn json_pairs() {
        let s = serde_json::to_string(&p(&[0, 3])).unwrap();
        assert_eq!(s, r#"[[1,{"re":"3","im":"0"}]]"#);
        assert_eq!(serde_json::from_str::<HbarPoly>(&s).unwrap(), p(&[0, 3]));
    }
}
