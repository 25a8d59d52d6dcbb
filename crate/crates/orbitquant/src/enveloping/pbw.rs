use std::collections::BTreeMap;
use std::fmt;

use crate::algebra_core::{GaussianRational as GR, Ring};

/// PBW monomial: generator indices in non-decreasing order.
pub type Mono = Vec<u8>;

/// Element of U(g) in the ordered PBW basis.
#[derive(Clone, PartialEq)]
pub struct PbwElement<C = GR> {
    pub terms: BTreeMap<Mono, C>,
}

impl<C: Ring> Default for PbwElement<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> PbwElement<C> {
    pub fn zero() -> Self {
        PbwElement { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Self::monomial(Vec::new(), C::one())
    }
    pub fn monomial(m: Mono, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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
    pub fn add_scaled(&mut self, other: &PbwElement<GR>, c: &C) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), c.scaled(a));
        }
    }
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.times(c));
        }
        out
    }
    pub fn negated(&self) -> Self {
        PbwElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect() }
    }
    pub fn coeff(&self, m: &[u8]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for PbwElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
