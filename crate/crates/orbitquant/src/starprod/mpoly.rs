use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra_core::{GaussianRational as GR, RationalFunction, Ring};
use crate::error::{Error, Result};

/// Which N² variables a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    /// Matrix entries P_ij: g ↦ g_ij on the group.
    Entry,
    /// Coordinate functions R_ij: ξ ↦ ξ(E_ij) on g*.
    Coord,
}

impl VarKind {
    fn prefix(self) -> &'static str {
        match self {
            VarKind::Entry => "P",
            VarKind::Coord => "R",
        }
    }
}

pub type Exponents = Vec<u16>;

/// Polynomial in the N² variables of one [`VarKind`], with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct MPoly<C = RationalFunction> {
    pub size: usize,
    pub kind: VarKind,
    pub terms: BTreeMap<Exponents, C>,
}

impl<C: Ring> MPoly<C> {
    pub fn zero(size: usize, kind: VarKind) -> Self {
        MPoly { size, kind, terms: BTreeMap::new() }
    }
    pub fn constant(size: usize, kind: VarKind, c: C) -> Self {
        let mut p = Self::zero(size, kind);
        p.add_term(vec![0; size * size], c);
        p
    }
    pub fn one(size: usize, kind: VarKind) -> Self {
        Self::constant(size, kind, C::one())
    }
    /// The variable with matrix position (i, j).
    pub fn var(size: usize, kind: VarKind, i: usize, j: usize) -> Self {
        let mut e = vec![0; size * size];
        e[i * size + j] = 1;
        let mut p = Self::zero(size, kind);
        p.add_term(e, C::one());
        p
    }
    pub fn nvars(&self) -> usize {
        self.size * self.size
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }
    pub fn add_term(&mut self, e: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    pub fn negated(&self) -> Self {
        MPoly { size: self.size, kind: self.kind, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negated())).collect() }
    }
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.size, self.kind);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.times(c));
        }
        out
    }
    pub fn times(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.size, self.kind);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.times(c2));
            }
        }
        out
    }
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.size, self.kind), |acc, _| acc.times(self))
    }
    /// ∂/∂(variable v).
    pub fn partial(&self, v: usize) -> Self {
        let mut out = Self::zero(self.size, self.kind);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[v] -= 1;
            out.add_term(ne, c.scaled(&GR::from_int(e[v] as i64)));
        }
        out
    }
    /// Evaluates at numeric variable values (row-major).
    pub fn eval(&self, vals: &[GR]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut m = GR::one();
            for (x, &k) in vals.iter().zip(e) {
                if k > 0 {
                    m = m.times(&x.pow(k as u32));
                }
            }
            acc = acc.plus(&c.scaled(&m));
        }
        acc
    }
    /// Replaces every variable v by `subs[v]`.
    pub fn compose(&self, subs: &[MPoly<C>]) -> MPoly<C> {
        let (size, kind) = subs.first().map(|s| (s.size, s.kind)).unwrap_or((self.size, self.kind));
        let mut out = MPoly::zero(size, kind);
        let mut powers: Vec<Vec<MPoly<C>>> = subs.iter().map(|s| vec![MPoly::one(size, kind), s.clone()]).collect();
        for (e, c) in &self.terms {
            let mut m = MPoly::constant(size, kind, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[v].len() <= k as usize {
                    let next = powers[v].last().expect("nonempty").times(&subs[v]);
                    powers[v].push(next);
                }
                m = m.times(&powers[v][k as usize]);
            }
            out = out.plus(&m);
        }
        out
    }
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.size, self.kind);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
    pub fn var_names(&self) -> Vec<String> {
        let p = self.kind.prefix();
        (0..self.nvars()).map(|v| format!("{p}_{}_{}", v / self.size, v % self.size)).collect()
    }
}

impl MPoly<GR> {
    pub fn to_rf(&self) -> MPoly<RationalFunction> {
        self.map_coeffs(|c| RationalFunction::constant(c.clone()))
    }
    pub fn conj(&self) -> Self {
        self.map_coeffs(GR::conj)
    }
}

impl MPoly<RationalFunction> {
    /// Substitutes a numeric ħ into every coefficient.
    pub fn at_hbar(&self, h: &GR) -> Result<MPoly<GR>> {
        let mut out = MPoly::zero(self.size, self.kind);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.eval(h)?);
        }
        Ok(out)
    }
    /// Coefficient of ħ^k in the Taylor expansion at ħ = 0.
    pub fn taylor_coeff(&self, k: usize) -> Result<MPoly<GR>> {
        let mut out = MPoly::zero(self.size, self.kind);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.taylor(k)?[k].clone());
        }
        Ok(out)
    }
    /// Returns the polynomial with constant coefficients, if it has them.
    pub fn as_constant_coeffs(&self) -> Option<MPoly<GR>> {
        let mut out = MPoly::zero(self.size, self.kind);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.as_constant()?);
        }
        Some(out)
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.var_names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { names[v].clone() } else { format!("{}^{k}", names[v]) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct MPolyJson<C> {
    vars: Vec<String>,
    terms: Vec<(Exponents, C)>,
}

impl<C: Ring + Serialize> Serialize for MPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson { vars: self.var_names(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect() }
            .serialize(s)
    }
}

/// Parses the JSON form {"vars": ["R_0_0", …], "terms": [[exponents, coefficient], …]}.
pub fn mpoly_from_json(v: &serde_json::Value) -> Result<MPoly<RationalFunction>> {
    let j: MPolyJson<RationalFunction> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
    let nv = j.vars.len();
    let size = (nv as f64).sqrt().round() as usize;
    if size * size != nv || size == 0 {
        return Err(Error::Parse(format!("{nv} variables do not form a square matrix")));
    }
    let kind = match j.vars[0].split('_').next() {
        Some("P") => VarKind::Entry,
        Some("R") => VarKind::Coord,
        _ => return Err(Error::Parse(format!("unknown variable {}", j.vars[0]))),
    };
    let mut p = MPoly::zero(size, kind);
    if p.var_names() != j.vars {
        return Err(Error::Parse("variables must be listed in row-major order".into()));
    }
    for (e, c) in j.terms {
        if e.len() != nv {
            return Err(Error::Parse("exponent vector has the wrong length".into()));
        }
        p.add_term(e, c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_partials() {
        let x: MPoly<GR> = MPoly::var(2, VarKind::Entry, 0, 1);
        let y: MPoly<GR> = MPoly::var(2, VarKind::Entry, 1, 0);
        let p = x.times(&y).plus(&x.pow(2));
        assert_eq!(p.degree(), 2);
        assert_eq!(p.partial(1), y.plus(&x.scale(&GR::from_int(2))));
        let vals = vec![GR::zero(), GR::from_int(2), GR::from_int(3), GR::zero()];
        assert_eq!(p.eval(&vals), GR::from_int(10));
    }

    #[test]
    fn json_roundtrip() {
        let x: MPoly<GR> = MPoly::var(2, VarKind::Coord, 0, 1);
        let p = x.to_rf().plus(&MPoly::one(2, VarKind::Coord));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(mpoly_from_json(&v).unwrap(), p);
    }
}
