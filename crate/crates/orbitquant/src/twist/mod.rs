//! The canonical element F_ħ of the Shapovalov pairing, truncated by grade.

mod checks;
mod poles;

pub use checks::{
    closed_form_check, closed_form_twist, first_order_check, taylor_twist, verify_canonical, CanonicalReport,
    ClosedFormReport, TaylorTerm,
};
pub use poles::pole_set;
pub(crate) use checks::type_a_shape;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra_core::{invert, GaussianRational as GR, HbarPoly, RationalFunction, Ring};
use crate::enveloping::{Engine, Mono, PbwElement, VermaPairing, Word};
use crate::error::{Error, Result};
use crate::lie_structure::{OrbitSpec, Weight};

/// p(μ) = ½(μ,μ) − (ρ,μ) − (λ',μ) with λ' = iλ/ħ.
pub fn p_coeff(mu: &Weight, spec: &OrbitSpec) -> RationalFunction {
    let (a, b) = p_parts(mu, spec);
    RationalFunction::from_inverse_poly(&HbarPoly::from_coeffs(vec![a, b.times(&GR::i()).negated()]))
}

/// (½(μ,μ) − (ρ,μ), (λ,μ)).
pub(crate) fn p_parts(mu: &Weight, spec: &OrbitSpec) -> (GR, GR) {
    let lie = &spec.lie;
    let a = lie.bilinear(mu, mu).times(&GR::from_frac(1, 2)).minus(&lie.bilinear(spec.rho(), mu));
    (a, spec.pair_lambda(mu))
}

/// Product of p over the suffix weights of `w`.
pub fn pw_coeff(w: &Word, spec: &OrbitSpec) -> Result<RationalFunction> {
    let mut acc = RationalFunction::one();
    for i in 0..w.letters.len() {
        let mu = w.suffix_weight(spec, i);
        let (a, b) = p_parts(&mu, spec);
        if a.is_zero() && b.is_zero() {
            return Err(Error::IdenticallyZeroFactor { weight: mu.to_string() });
        }
        acc = acc.times(&p_coeff(&mu, spec));
    }
    Ok(acc)
}

/// Membership test for N₀Δ̂⁺, memoized over weights.
pub(crate) struct HatCone<'a> {
    spec: &'a OrbitSpec,
    hat: Vec<usize>,
    memo: HashMap<Weight, bool>,
}

impl<'a> HatCone<'a> {
    pub(crate) fn new(spec: &'a OrbitSpec) -> Self {
        HatCone { spec, hat: spec.hat_positive(), memo: HashMap::new() }
    }
    pub(crate) fn contains(&mut self, mu: &Weight) -> bool {
        if mu.is_zero() {
            return true;
        }
        if self.spec.weight_grade(mu) <= 0 {
            return false;
        }
        if let Some(&b) = self.memo.get(mu) {
            return b;
        }
        let hat = self.hat.clone();
        let ans = hat.iter().any(|&i| {
            let rest = mu.sub(self.spec.root(i));
            self.contains(&rest)
        });
        self.memo.insert(mu.clone(), ans);
        ans
    }
}

/// Words over positive roots whose prefix weights all lie in N₀Δ̂⁺, ordered by
/// length and then lexicographically by positive-root position.
pub fn enumerate_words(spec: &OrbitSpec, max_len: usize) -> Vec<Word> {
    enumerate_filtered(spec, max_len, usize::MAX)
}

/// Same as [`enumerate_words`] restricted to total grade ≤ `max_grade`.
pub fn enumerate_words_by_grade(spec: &OrbitSpec, max_grade: usize) -> Vec<Word> {
    enumerate_filtered(spec, max_grade, max_grade)
}

fn enumerate_filtered(spec: &OrbitSpec, max_len: usize, max_grade: usize) -> Vec<Word> {
    let pos = spec.positive_roots();
    let mut cone = HatCone::new(spec);
    let mut out = vec![Word { letters: Vec::new() }];
    let mut frontier = vec![(Word { letters: Vec::new() }, Weight::zero(spec.rank()))];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, mu) in &frontier {
            for &i in &pos {
                let nmu = mu.add(spec.root(i));
                let g = spec.weight_grade(&nmu);
                if g < 0 || g as usize > max_grade || !cone.contains(&nmu) {
                    continue;
                }
                let mut nw = w.clone();
                nw.letters.push(i);
                next.push((nw, nmu));
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistRoute {
    /// Sum over words with p-coefficients (regular λ).
    Words,
    /// Inverse Gram matrix of the pairing on each weight space.
    Gram,
}

#[derive(Debug, Clone)]
pub struct TwistTerm {
    pub word: Word,
    pub coeff: RationalFunction,
    pub left: PbwElement,
    pub right: PbwElement,
    pub grade: i64,
}

/// F_ħ up to a maximal grade, stored as Σ F_ab · a ⊗ b over PBW monomials a of
/// U(ñ⁺) and b of U(ñ⁻).
#[derive(Clone)]
pub struct TruncatedTwist {
    pub spec: OrbitSpec,
    pub engine: Arc<Engine>,
    pub max_grade: usize,
    pub route: TwistRoute,
    pub words: Vec<TwistTerm>,
    pub reduced: BTreeMap<(Mono, Mono), RationalFunction>,
}

impl std::fmt::Debug for TruncatedTwist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncatedTwist")
            .field("max_grade", &self.max_grade)
            .field("route", &self.route)
            .field("terms", &self.reduced.len())
            .finish()
    }
}

impl TruncatedTwist {
    pub fn term_grade(&self, left: &[u8]) -> i64 {
        self.spec.weight_grade(&self.engine.mono_weight(left))
    }
    /// Restriction to grades ≤ g.
    pub fn truncate(&self, g: usize) -> TruncatedTwist {
        let mut t = self.clone();
        t.max_grade = g.min(self.max_grade);
        t.words.retain(|w| w.grade as usize <= t.max_grade);
        let keep: BTreeMap<_, _> = self
            .reduced
            .iter()
            .filter(|((a, _), _)| self.term_grade(a) as usize <= t.max_grade)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        t.reduced = keep;
        t
    }
    pub fn gen_names(&self, m: &[u8]) -> Vec<String> {
        m.iter().map(|&g| self.engine.generator(g).name.clone()).collect()
    }
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .reduced
            .iter()
            .map(|((a, b), c)| {
                serde_json::json!({
                    "left": self.gen_names(a),
                    "right": self.gen_names(b),
                    "grade": self.term_grade(a),
                    "coeff": c,
                })
            })
            .collect();
        let words: Vec<serde_json::Value> = self
            .words
            .iter()
            .map(|t| {
                let labels: Vec<String> =
                    t.word.letters.iter().map(|&i| self.spec.lie.root_labels[i].clone()).collect();
                serde_json::json!({ "word": labels, "coeff": t.coeff, "grade": t.grade })
            })
            .collect();
        serde_json::json!({
            "spec": self.spec.label,
            "max_grade": self.max_grade,
            "route": self.route,
            "terms": terms,
            "words": words,
        })
    }
}

fn add_reduced(map: &mut BTreeMap<(Mono, Mono), RationalFunction>, key: (Mono, Mono), c: RationalFunction) {
    if c.is_zero() {
        return;
    }
    match map.get(&key) {
        Some(old) => {
            let s = old.plus(&c);
            if s.is_zero() {
                map.remove(&key);
            } else {
                map.insert(key, s);
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

/// Builds F_ħ up to `max_grade`: the word formula for regular λ, the inverse
/// Gram matrix per weight space otherwise.
pub fn build_twist(spec: &OrbitSpec, max_grade: usize) -> Result<TruncatedTwist> {
    if spec.is_regular() {
        build_twist_words(spec, max_grade)
    } else {
        build_twist_gram(spec, max_grade)
    }
}

pub fn build_twist_words(spec: &OrbitSpec, max_grade: usize) -> Result<TruncatedTwist> {
    let engine = Arc::new(Engine::new(spec)?);
    let words = enumerate_words_by_grade(spec, max_grade);
    let terms: Vec<TwistTerm> = words
        .into_par_iter()
        .map(|w| {
            let coeff = pw_coeff(&w, spec)?.inv()?;
            let left = engine.normal_order(&engine.x_word(&w));
            let right = engine.normal_order(&engine.y_word(&w));
            let grade = spec.weight_grade(&w.weight(spec));
            Ok(TwistTerm { word: w, coeff, left, right, grade })
        })
        .collect::<Result<_>>()?;
    let mut reduced = BTreeMap::new();
    for t in &terms {
        for (a, ca) in &t.left.terms {
            for (b, cb) in &t.right.terms {
                add_reduced(&mut reduced, (a.clone(), b.clone()), t.coeff.scaled(&ca.times(cb)));
            }
        }
    }
    Ok(TruncatedTwist { spec: spec.clone(), engine, max_grade, route: TwistRoute::Words, words: terms, reduced })
}

/// PBW monomials in the Δ̂⁺ raising generators, grouped by weight, with grade in 1..=max_grade.
pub(crate) fn hat_monomials_by_weight(spec: &OrbitSpec, engine: &Engine, max_grade: usize) -> Vec<(Weight, Vec<Mono>)> {
    let gens: Vec<(u8, i64)> = spec
        .hat_positive()
        .iter()
        .map(|&i| (engine.raise_gen(i).expect("raising generator"), spec.grading[i]))
        .collect();
    let mut groups: Vec<(Weight, Vec<Mono>)> = Vec::new();
    let mut index: HashMap<Weight, usize> = HashMap::new();
    let mut stack: Vec<(Mono, usize, i64)> = vec![(Vec::new(), 0, 0)];
    let mut all = Vec::new();
    while let Some((m, start, g)) = stack.pop() {
        if !m.is_empty() {
            all.push((g, m.clone()));
        }
        for (k, &(gen, gg)) in gens.iter().enumerate().skip(start) {
            if (g + gg) as usize <= max_grade {
                let mut nm = m.clone();
                nm.push(gen);
                stack.push((nm, k, g + gg));
            }
        }
    }
    all.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.len().cmp(&b.1.len())).then_with(|| a.1.cmp(&b.1)));
    for (_, m) in all {
        let w = engine.mono_weight(&m);
        let k = *index.entry(w.clone()).or_insert_with(|| {
            groups.push((w, Vec::new()));
            groups.len() - 1
        });
        groups[k].1.push(m);
    }
    groups
}

/// Matching Y-monomial for an X-monomial over Δ̂⁺.
pub(crate) fn lower_of(engine: &Engine, m: &[u8]) -> Mono {
    m.iter()
        .map(|&g| match engine.generator(g).kind {
            crate::enveloping::GenKind::Raise(i) => engine.lower_gen(i).expect("lowering generator"),
            _ => panic!("not a raising generator"),
        })
        .collect()
}

/// Gram matrix G_ij = ⟨u_i, v_j⟩ of one weight space.
pub(crate) fn gram_matrix(pairing: &VermaPairing, us: &[Mono], vs: &[Mono]) -> Vec<Vec<RationalFunction>> {
    us.iter().map(|u| vs.iter().map(|v| pairing.pairing_mono(u, v)).collect()).collect()
}

pub fn build_twist_gram(spec: &OrbitSpec, max_grade: usize) -> Result<TruncatedTwist> {
    let engine = Arc::new(Engine::new(spec)?);
    let pairing = VermaPairing::new(engine.clone());
    let groups = hat_monomials_by_weight(spec, &engine, max_grade);
    let blocks: Vec<Vec<((Mono, Mono), RationalFunction)>> = groups
        .par_iter()
        .map(|(w, us)| {
            let vs: Vec<Mono> = us.iter().map(|u| lower_of(&engine, u)).collect();
            let g = gram_matrix(&pairing, us, &vs);
            let inv = invert(&g).ok_or_else(|| Error::IdenticallyZeroFactor { weight: w.to_string() })?;
            let mut out = Vec::new();
            for (i, u) in us.iter().enumerate() {
                for (j, v) in vs.iter().enumerate() {
                    out.push(((u.clone(), v.clone()), inv[j][i].clone()));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut reduced = BTreeMap::new();
    reduced.insert((Vec::new(), Vec::new()), RationalFunction::one());
    for block in blocks {
        for (k, c) in block {
            add_reduced(&mut reduced, k, c);
        }
    }
    Ok(TruncatedTwist { spec: spec.clone(), engine, max_grade, route: TwistRoute::Gram, words: Vec::new(), reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Q;
    use crate::lie_structure::{type_a_root, TypeAOrdering};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn p_of_zero_and_rank_one_formula() {
        let spec = OrbitSpec::type_a(1, q(1), TypeAOrdering::Standard).unwrap();
        assert!(p_coeff(&Weight::zero(1), &spec).is_zero());
        let a = spec.root(type_a_root(1, 0, 1)).clone();
        for s in 1..5i64 {
            let mu = a.scale(&GR::from_int(s));
            // ¼·s(s − 1 − r/ħ)
            let expected = RationalFunction::from_inverse_poly(&HbarPoly::from_coeffs(vec![
                GR::from_frac(s * (s - 1), 4),
                GR::from_frac(-s, 4),
            ]));
            assert_eq!(p_coeff(&mu, &spec), expected);
        }
    }

    #[test]
    fn word_counts() {
        let a1 = OrbitSpec::type_a(1, q(1), TypeAOrdering::Standard).unwrap();
        let w = enumerate_words(&a1, 5);
        assert_eq!(w.len(), 6);
        assert_eq!(enumerate_words(&a1, 0), vec![Word { letters: vec![] }]);
        let a2 = OrbitSpec::type_a_diagonal(&[q(3), q(1), q(0)]).unwrap();
        assert_eq!(enumerate_words(&a2, 2).len(), 1 + 3 + 9);
    }

    #[test]
    fn stabilizer_letters_need_a_hat_prefix() {
        let cp2 = OrbitSpec::type_a(2, q(1), TypeAOrdering::Standard).unwrap();
        let words = enumerate_words(&cp2, 2);
        let a12 = type_a_root(2, 1, 2);
        assert!(words.iter().all(|w| w.letters.first() != Some(&a12)));
        assert!(words.contains(&Word { letters: vec![type_a_root(2, 0, 1), a12] }));
    }

    #[test]
    fn word_formula_breaks_on_stabilizer_suffix() {
        let cp2 = OrbitSpec::type_a(2, q(1), TypeAOrdering::Standard).unwrap();
        let w = Word { letters: vec![type_a_root(2, 0, 1), type_a_root(2, 1, 2)] };
        assert!(matches!(pw_coeff(&w, &cp2), Err(Error::IdenticallyZeroFactor { .. })));
    }

    #[test]
    fn gram_and_word_routes_agree_when_regular() {
        let a2 = OrbitSpec::type_a_diagonal(&[q(3), q(1), q(0)]).unwrap();
        let w = build_twist_words(&a2, 4).unwrap();
        let g = build_twist_gram(&a2, 4).unwrap();
        assert_eq!(w.reduced, g.reduced);
    }
}
