use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::{Engine, GenKind, Mono, PbwElement};
use crate::algebra_core::{GaussianRational as GR, HbarPoly, RationalFunction, Ring};

/// Vector in the Verma module: Y-monomials applied to the highest-weight vector,
/// coefficients polynomial in s = 1/ħ.
type VermaVec = BTreeMap<Mono, HbarPoly>;

fn add_into(v: &mut VermaVec, m: &Mono, c: HbarPoly) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(m.clone()).or_insert_with(HbarPoly::zero);
    *e = e.plus(&c);
    if e.is_zero() {
        v.remove(m);
    }
}

/// Shapovalov pairing ⟨u, v⟩ = λ'((S(u)v)₀), λ' = iλ/ħ, computed by letting S(u)
/// act on v·η in the Verma module with highest weight λ'.
pub struct VermaPairing {
    engine: Arc<Engine>,
    cache: RwLock<HashMap<(u8, Mono), Arc<VermaVec>>>,
}

impl VermaPairing {
    pub fn new(engine: Arc<Engine>) -> Self {
        VermaPairing { engine, cache: RwLock::new(HashMap::new()) }
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    fn act(&self, g: u8, m: &Mono) -> Arc<VermaVec> {
        let key = (g, m.clone());
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let e = &self.engine;
        let mut out = VermaVec::new();
        match e.generator(g).kind {
            GenKind::Lower(_) => {
                let mut prod = PbwElement::monomial(vec![g], GR::one());
                for &y in m {
                    prod = e.mul_gen(&prod, y);
                }
                for (mono, c) in prod.terms {
                    add_into(&mut out, &mono, HbarPoly::constant(c));
                }
            }
            GenKind::Cartan(k) => {
                let shift = e.mono_weight(m).coords[k].clone();
                let lam = e.spec.lambda.coords[k].times(&GR::i());
                add_into(&mut out, m, HbarPoly::from_coeffs(vec![shift, lam]));
            }
            GenKind::Raise(_) => {
                if let Some((&y1, rest)) = m.split_first() {
                    let rest = rest.to_vec();
                    // x·y₁·rest = y₁·(x·rest) + [x, y₁]·rest
                    let inner = self.act(g, &rest);
                    for (mono, c) in inner.iter() {
                        for (mm, cc) in self.act(y1, mono).iter() {
                            add_into(&mut out, mm, cc.times(c));
                        }
                    }
                    for (k, c) in e.bracket(g, y1) {
                        for (mm, cc) in self.act(*k, &rest).iter() {
                            add_into(&mut out, mm, cc.scaled(c));
                        }
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.cache.write().expect("cache lock").insert(key, out.clone());
        out
    }

    fn act_vec(&self, g: u8, v: &VermaVec) -> VermaVec {
        let mut out = VermaVec::new();
        for (m, c) in v {
            for (mm, cc) in self.act(g, m).iter() {
                add_into(&mut out, mm, cc.times(c));
            }
        }
        out
    }

    /// Pairing of a PBW monomial u in U(ñ⁺) with a PBW monomial v in U(ñ⁻),
    /// as a polynomial in s = 1/ħ.
    pub fn pairing_mono_s(&self, u: &[u8], v: &[u8]) -> HbarPoly {
        let e = &self.engine;
        if e.mono_weight(u).add(&e.mono_weight(v)).is_zero() {
            let mut vec = VermaVec::new();
            vec.insert(v.to_vec(), HbarPoly::one());
            for &x in u {
                vec = self.act_vec(x, &vec);
                if vec.is_empty() {
                    return HbarPoly::zero();
                }
            }
            let c = vec.get(&Vec::new()).cloned().unwrap_or_else(HbarPoly::zero);
            if u.len() % 2 == 1 {
                c.negated()
            } else {
                c
            }
        } else {
            HbarPoly::zero()
        }
    }

    pub fn pairing_mono(&self, u: &[u8], v: &[u8]) -> RationalFunction {
        RationalFunction::from_inverse_poly(&self.pairing_mono_s(u, v))
    }

    /// Bilinear extension to PBW elements.
    pub fn pairing(&self, u: &PbwElement, v: &PbwElement) -> RationalFunction {
        let mut s = HbarPoly::zero();
        for (a, ca) in &u.terms {
            for (b, cb) in &v.terms {
                s = s.plus(&self.pairing_mono_s(a, b).scaled(&ca.times(cb)));
            }
        }
        RationalFunction::from_inverse_poly(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Q;
    use crate::lie_structure::{type_a_root, OrbitSpec, TypeAOrdering};

    #[test]
    fn rank_one_pairing_matches_reference() {
        let spec = OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
        let e = Arc::new(Engine::new(&spec).unwrap());
        let vp = VermaPairing::new(e.clone());
        let a = type_a_root(1, 0, 1);
        let (x, y) = (e.raise_gen(a).unwrap(), e.lower_gen(a).unwrap());
        for k in 0..4 {
            let u = vec![x; k];
            let v = vec![y; k];
            let fast = vp.pairing_mono(&u, &v);
            let slow = e.pairing_by_straightening(
                &PbwElement::monomial(u.clone(), GR::one()),
                &PbwElement::monomial(v.clone(), GR::one()),
            );
            assert_eq!(fast, slow, "k = {k}");
        }
        // ⟨X, Y⟩ = −λ'(α^♯) = −r/(4ħ)
        let expected = RationalFunction::hbar().inv().unwrap().scaled(&GR::from_frac(-1, 4));
        assert_eq!(vp.pairing_mono(&[x], &[y]), expected);
    }
}
