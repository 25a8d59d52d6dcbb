//! Universal enveloping algebra in the ordered PBW basis Y…H…X: straightening,
//! antipode, projection onto U(h), and the Shapovalov pairing.

mod pairing;
mod pbw;

pub use pairing::VermaPairing;
pub use pbw::{Mono, PbwElement};

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra_core::{GaussianRational as GR, HbarPoly, RationalFunction, Ring};
use crate::error::Result;
use crate::lie_structure::{Matrix, OrbitSpec, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// Y_α = X_{−α} for the positive root with this index.
    Lower(usize),
    Cartan(usize),
    /// X_α for the positive root with this index.
    Raise(usize),
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub kind: GenKind,
    pub matrix: Matrix,
    pub weight: Weight,
    /// True for root generators of Δ̂ (the orbit directions).
    pub in_hat: bool,
    pub name: String,
}

/// Word over positive roots (indices into the root list).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn weight(&self, spec: &OrbitSpec) -> Weight {
        self.letters.iter().fold(Weight::zero(spec.rank()), |a, &i| a.add(spec.root(i)))
    }
    /// Weight of the suffix starting at letter `from`.
    pub fn suffix_weight(&self, spec: &OrbitSpec, from: usize) -> Weight {
        self.letters[from..].iter().fold(Weight::zero(spec.rank()), |a, &i| a.add(spec.root(i)))
    }
    pub fn opposite(&self) -> Word {
        Word { letters: self.letters.iter().rev().copied().collect() }
    }
}

/// Structure constants of the PBW generators with a memoized straightening table.
pub struct Engine {
    pub spec: OrbitSpec,
    gens: Vec<Generator>,
    bracket: Vec<Vec<Vec<(u8, GR)>>>,
    raise: HashMap<usize, u8>,
    lower: HashMap<usize, u8>,
    cartan: Vec<u8>,
    cache: RwLock<HashMap<(Mono, u8), Arc<PbwElement>>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("generators", &self.gens.len()).finish()
    }
}

impl Engine {
    /// Generator order: Y over Δ̂⁺, Y over Δ'⁺, Cartan, X over Δ̂⁺, X over Δ'⁺,
    /// each block in root-list order.
    pub fn new(spec: &OrbitSpec) -> Result<Self> {
        let lie = &spec.lie;
        let hat = spec.hat_positive();
        let prime = spec.prime_positive();
        let mut gens = Vec::new();
        let lower_gen = |i: usize, in_hat: bool| Generator {
            kind: GenKind::Lower(i),
            matrix: lie.root_vectors[lie.negation(i)].clone(),
            weight: lie.roots[i].neg(),
            in_hat,
            name: format!("Y[{}]", lie.root_labels[i]),
        };
        let raise_gen = |i: usize, in_hat: bool| Generator {
            kind: GenKind::Raise(i),
            matrix: lie.root_vectors[i].clone(),
            weight: lie.roots[i].clone(),
            in_hat,
            name: format!("X[{}]", lie.root_labels[i]),
        };
        gens.extend(hat.iter().map(|&i| lower_gen(i, true)));
        gens.extend(prime.iter().map(|&i| lower_gen(i, false)));
        for k in 0..lie.rank() {
            gens.push(Generator {
                kind: GenKind::Cartan(k),
                matrix: lie.cartan[k].clone(),
                weight: Weight::zero(lie.rank()),
                in_hat: false,
                name: format!("H{k}"),
            });
        }
        gens.extend(hat.iter().map(|&i| raise_gen(i, true)));
        gens.extend(prime.iter().map(|&i| raise_gen(i, false)));
        assert!(gens.len() < 256, "too many generators for u8 indices");

        let mut raise = HashMap::new();
        let mut lower = HashMap::new();
        let mut cartan = Vec::new();
        for (g, gen) in gens.iter().enumerate() {
            match gen.kind {
                GenKind::Raise(i) => {
                    raise.insert(i, g as u8);
                }
                GenKind::Lower(i) => {
                    lower.insert(i, g as u8);
                }
                GenKind::Cartan(_) => cartan.push(g as u8),
            }
        }
        let root_gen = |i: usize| -> u8 {
            if spec.positive[i] {
                raise[&i]
            } else {
                lower[&lie.negation(i)]
            }
        };
        let mut bracket = vec![vec![Vec::new(); gens.len()]; gens.len()];
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                let m = gens[a].matrix.commutator(&gens[b].matrix);
                if m.is_zero() {
                    continue;
                }
                let (h, r) = lie.decompose(&m)?;
                let mut out = Vec::new();
                for (k, c) in h.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push((cartan[k], c));
                    }
                }
                for (i, c) in r.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push((root_gen(i), c));
                    }
                }
                out.sort_by_key(|p| p.0);
                bracket[a][b] = out;
            }
        }
        Ok(Engine { spec: spec.clone(), gens, bracket, raise, lower, cartan, cache: RwLock::new(HashMap::new()) })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }
    pub fn generator(&self, g: u8) -> &Generator {
        &self.gens[g as usize]
    }
    /// X generator of a positive root.
    pub fn raise_gen(&self, root: usize) -> Option<u8> {
        self.raise.get(&root).copied()
    }
    /// Y generator of a positive root.
    pub fn lower_gen(&self, root: usize) -> Option<u8> {
        self.lower.get(&root).copied()
    }
    pub fn cartan_gen(&self, k: usize) -> u8 {
        self.cartan[k]
    }
    /// [g_a, g_b] as a combination of generators.
    pub fn bracket(&self, a: u8, b: u8) -> &[(u8, GR)] {
        &self.bracket[a as usize][b as usize]
    }
    pub fn mono_weight(&self, m: &[u8]) -> Weight {
        m.iter().fold(Weight::zero(self.spec.rank()), |acc, &g| acc.add(&self.gens[g as usize].weight))
    }
    pub fn x_word(&self, w: &Word) -> Vec<u8> {
        w.letters.iter().map(|&i| self.raise[&i]).collect()
    }
    pub fn y_word(&self, w: &Word) -> Vec<u8> {
        w.letters.iter().map(|&i| self.lower[&i]).collect()
    }

    /// Right multiplication of a PBW monomial by one generator, straightened.
    pub fn mul_mono_gen(&self, m: &[u8], g: u8) -> Arc<PbwElement> {
        if m.last().is_none_or(|&l| l <= g) {
            let mut v = m.to_vec();
            v.push(g);
            return Arc::new(PbwElement::monomial(v, GR::one()));
        }
        let key = (m.to_vec(), g);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        // m = m0·a with a > g:  m0·a·g = (m0·g)·a + m0·[a, g]
        let (a, m0) = m.split_last().expect("nonempty");
        let mut out = PbwElement::zero();
        let m0g = self.mul_mono_gen(m0, g);
        for (mono, c) in &m0g.terms {
            out.add_scaled(&self.mul_mono_gen(mono, *a), c);
        }
        for (k, c) in self.bracket(*a, g) {
            out.add_scaled(&self.mul_mono_gen(m0, *k), c);
        }
        let out = Arc::new(out);
        self.cache.write().expect("cache lock").insert(key, out.clone());
        out
    }

    pub fn mul_gen<C: Ring>(&self, u: &PbwElement<C>, g: u8) -> PbwElement<C> {
        let mut out = PbwElement::zero();
        for (m, c) in &u.terms {
            out.add_scaled(&self.mul_mono_gen(m, g), c);
        }
        out
    }

    /// Straightens a product of generators into the PBW basis.
    pub fn normal_order(&self, word: &[u8]) -> PbwElement {
        word.iter().fold(PbwElement::one(), |acc, &g| self.mul_gen(&acc, g))
    }

    pub fn mul<C: Ring>(&self, u: &PbwElement<C>, v: &PbwElement<C>) -> PbwElement<C> {
        let mut out = PbwElement::zero();
        for (m, c) in &v.terms {
            let prod = m.iter().fold(u.clone(), |acc, &g| self.mul_gen(&acc, g));
            out = out.plus(&prod.scale(c));
        }
        out
    }

    /// Antipode: S(g₁…g_m) = (−1)^m g_m…g₁.
    pub fn antipode<C: Ring>(&self, u: &PbwElement<C>) -> PbwElement<C> {
        let mut out = PbwElement::zero();
        for (m, c) in &u.terms {
            let rev: Vec<u8> = m.iter().rev().copied().collect();
            let e = self.normal_order(&rev);
            let c = if m.len() % 2 == 1 { c.negated() } else { c.clone() };
            out.add_scaled(&e, &c);
        }
        out
    }

    /// Projection onto U(h) (`generalized = false`) or onto U(g₀) (`generalized = true`).
    pub fn project_zero<C: Ring>(&self, u: &PbwElement<C>, generalized: bool) -> PbwElement<C> {
        let keep = |g: &u8| {
            let gen = &self.gens[*g as usize];
            match gen.kind {
                GenKind::Cartan(_) => true,
                _ => generalized && !gen.in_hat,
            }
        };
        PbwElement { terms: u.terms.iter().filter(|(m, _)| m.iter().all(keep)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Value of λ' = iλ/ħ on a PBW monomial of U(g₀), as a polynomial in s = 1/ħ.
    pub fn lambda_on_mono(&self, m: &[u8]) -> HbarPoly {
        let mut acc = HbarPoly::one();
        for &g in m {
            match self.gens[g as usize].kind {
                GenKind::Cartan(k) => {
                    let v = self.spec.lambda.coords[k].times(&GR::i());
                    acc = acc.times(&HbarPoly::monomial(v, 1));
                }
                _ => return HbarPoly::zero(),
            }
        }
        acc
    }

    /// Shapovalov pairing computed by straightening S(u)·v and projecting: the reference route.
    pub fn pairing_by_straightening(&self, u: &PbwElement, v: &PbwElement) -> RationalFunction {
        let prod = self.mul(&self.antipode(u), v);
        let zero = self.project_zero(&prod, true);
        let mut s_poly = HbarPoly::zero();
        for (m, c) in &zero.terms {
            s_poly = s_poly.plus(&self.lambda_on_mono(m).scaled(c));
        }
        RationalFunction::from_inverse_poly(&s_poly)
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OrthogonalityReport {
    pub pass: bool,
    pub spec: String,
    pub max_len: usize,
    pub pairs_checked: usize,
    pub witness: Option<String>,
}

/// ⟨X_w, Y_w'⟩ = 0 whenever the weights of X_w and Y_w' do not cancel, for all words
/// over the positive roots of length ≤ `max_len`, computed by straightening.
pub fn shapovalov_orthogonality(spec: &OrbitSpec, max_len: usize) -> Result<OrthogonalityReport> {
    use rayon::prelude::*;
    let e = Engine::new(spec)?;
    let pos = spec.positive_roots();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer = words.clone();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                pos.iter().map(move |&i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    let build = |w: &Vec<usize>, raise: bool| -> Result<(Weight, PbwElement)> {
        let gens = w
            .iter()
            .map(|&i| if raise { e.raise_gen(i) } else { e.lower_gen(i) })
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| crate::error::Error::InvalidSpec("missing root generator".into()))?;
        Ok((e.mono_weight(&gens), e.normal_order(&gens)))
    };
    let xs = words.iter().map(|w| build(w, true)).collect::<Result<Vec<_>>>()?;
    let ys = words.iter().map(|w| build(w, false)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !xs[i].0.add(&ys[j].0).is_zero())
        .collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| !e.pairing_by_straightening(&xs[i].1, &ys[j].1).is_zero());
    Ok(OrthogonalityReport {
        pass: bad.is_none(),
        spec: spec.label.clone(),
        max_len,
        pairs_checked: pairs.len(),
        witness: bad.map(|&(i, j)| format!("X{:?}, Y{:?}", words[i], words[j])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Q;
    use crate::lie_structure::{type_a_root, TypeAOrdering};

    fn a1() -> Engine {
        Engine::new(&OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap()).unwrap()
    }

    #[test]
    fn single_commutator() {
        let e = a1();
        let a = type_a_root(1, 0, 1);
        let (x, y, h) = (e.raise_gen(a).unwrap(), e.lower_gen(a).unwrap(), e.cartan_gen(0));
        let xy = e.normal_order(&[x, y]);
        // α^♯ = H/4
        let mut expected = PbwElement::monomial(vec![y, x], GR::one());
        expected.add_term(vec![h], GR::from_frac(1, 4));
        assert_eq!(xy, expected);
        let hx = e.normal_order(&[h, x]);
        assert_eq!(hx, PbwElement::monomial(vec![h, x], GR::one()));
        let xh = e.normal_order(&[x, h]);
        let mut exp2 = PbwElement::monomial(vec![h, x], GR::one());
        exp2.add_term(vec![x], GR::from_int(-2));
        assert_eq!(xh, exp2);
    }

    #[test]
    fn projection_of_xy() {
        let e = a1();
        let a = type_a_root(1, 0, 1);
        let xy = e.normal_order(&[e.raise_gen(a).unwrap(), e.lower_gen(a).unwrap()]);
        let p = e.project_zero(&xy, false);
        assert_eq!(p, PbwElement::monomial(vec![e.cartan_gen(0)], GR::from_frac(1, 4)));
    }
}
