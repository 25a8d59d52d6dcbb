use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::require_nonzero;
use super::{GaussianRational as GR, HbarPoly, Ring};
use crate::error::{Error, Result};

/// Element of Q(i)(ħ) in canonical form: coprime, monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: HbarPoly,
    den: HbarPoly,
}

impl RationalFunction {
    pub fn new(num: HbarPoly, den: HbarPoly) -> Result<Self> {
        require_nonzero(&den)?;
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: HbarPoly, den: HbarPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading();
        if lead.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lead.inv().expect("nonzero leading coefficient");
        RationalFunction { num: num.scaled(&inv), den: den.scaled(&inv) }
    }

    pub fn from_poly(p: HbarPoly) -> Self {
        RationalFunction { num: p, den: HbarPoly::one() }
    }
    pub fn constant(c: GR) -> Self {
        Self::from_poly(HbarPoly::constant(c))
    }
    /// The symbolic variable ħ.
    pub fn hbar() -> Self {
        Self::from_poly(HbarPoly::x())
    }
    /// Interprets `p` as a polynomial in 1/ħ.
    pub fn from_inverse_poly(p: &HbarPoly) -> Self {
        match p.degree() {
            None => Self::zero(),
            Some(d) => Self::canonical(p.reversed(d), HbarPoly::monomial(GR::one(), d)),
        }
    }
    pub fn num(&self) -> &HbarPoly {
        &self.num
    }
    pub fn den(&self) -> &HbarPoly {
        &self.den
    }
    pub fn as_constant(&self) -> Option<GR> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }
    pub fn inv(&self) -> Result<Self> {
        require_nonzero(&self.num)?;
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }
    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.times(&o.inv()?))
    }
    pub fn pow(&self, k: u32) -> Self {
        RationalFunction { num: self.num.pow(k), den: self.den.pow(k) }
    }
    pub fn eval(&self, h: &GR) -> Result<GR> {
        let d = self.den.eval(h);
        if d.is_zero() {
            return Err(Error::PoleHit { at: h.to_string() });
        }
        self.num.eval(h).checked_div(&d)
    }
    /// Taylor coefficients c_0..c_order at ħ = 0.
    pub fn taylor(&self, order: usize) -> Result<Vec<GR>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let d0_inv = d0.inv()?;
        let mut out: Vec<GR> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.num.coeff(k);
            for j in 1..=k {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc = acc.minus(&dj.times(&out[k - j]));
                }
            }
            out.push(acc.times(&d0_inv));
        }
        Ok(out)
    }
    pub fn conj(&self) -> Self {
        RationalFunction { num: self.num.conj(), den: self.den.conj() }
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: HbarPoly::zero(), den: HbarPoly::one() }
    }
    fn one() -> Self {
        RationalFunction { num: HbarPoly::one(), den: HbarPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::canonical(self.num.plus(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = self.num.times(&o.den).plus(&o.num.times(&self.den));
            return Self::canonical(num, self.den.times(&o.den));
        }
        let a = self.den.div_rem(&g).0;
        let b = o.den.div_rem(&g).0;
        let num = self.num.times(&b).plus(&o.num.times(&a));
        Self::canonical(num, a.times(&o.den))
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.times(&o.num));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (self.num.div_rem(&g1).0, o.den.div_rem(&g1).0) };
        let (n2, d1) = if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (o.num.div_rem(&g2).0, self.den.div_rem(&g2).0) };
        let num = n1.times(&n2);
        let den = d1.times(&d2);
        let lead = den.leading();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lead.inv().expect("nonzero leading coefficient");
            RationalFunction { num: num.scaled(&inv), den: den.scaled(&inv) }
        }
    }
    fn negated(&self) -> Self {
        RationalFunction { num: self.num.negated(), den: self.den.clone() }
    }
    fn from_gr(c: &GR) -> Self {
        Self::constant(c.clone())
    }
    fn scaled(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scaled(c), den: self.den.clone() }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                self.$f(o)
            }
        }
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                self.$f(&o)
            }
        }
    };
}
forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.negated()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct RfJson {
    num: HbarPoly,
    den: HbarPoly,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RfJson { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RfJson::deserialize(d)?;
        RationalFunction::new(j.num, j.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_minus(r: i64) -> RationalFunction {
        RationalFunction::from_poly(HbarPoly::linear_root(&GR::from_int(r)))
    }

    #[test]
    fn inverse_pair_cancels() {
        let h = RationalFunction::hbar();
        let a = h.checked_div(&h_minus(1)).unwrap();
        let b = h_minus(1).checked_div(&h).unwrap();
        assert_eq!(a.times(&b), RationalFunction::one());
    }

    #[test]
    fn partial_fractions_combine() {
        let s = h_minus(1).inv().unwrap().plus(&h_minus(2).inv().unwrap());
        let expected = RationalFunction::new(
            HbarPoly::from_coeffs(vec![GR::from_int(-3), GR::from_int(2)]),
            HbarPoly::from_coeffs(vec![GR::from_int(2), GR::from_int(-3), GR::from_int(1)]),
        )
        .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn eval_at_i() {
        let f = h_minus(1).checked_div(&h_minus(-1)).unwrap();
        assert_eq!(f.eval(&GR::i()).unwrap(), GR::i());
        assert!(matches!(h_minus(1).inv().unwrap().eval(&GR::one()), Err(Error::PoleHit { .. })));
    }

    #[test]
    fn taylor_long_division() {
        let f = RationalFunction::hbar().checked_div(&h_minus(1)).unwrap();
        assert_eq!(f.taylor(2).unwrap(), vec![GR::zero(), GR::from_int(-1), GR::from_int(-1)]);
        assert_eq!(RationalFunction::hbar().inv().unwrap().taylor(1), Err(Error::PoleAtZero));
    }

    #[test]
    fn inverse_polynomial_reading() {
        let p = HbarPoly::from_coeffs(vec![GR::from_int(1), GR::from_int(2)]);
        let f = RationalFunction::from_inverse_poly(&p);
        assert_eq!(f.eval(&GR::from_int(2)).unwrap(), GR::from_int(2));
    }
}
