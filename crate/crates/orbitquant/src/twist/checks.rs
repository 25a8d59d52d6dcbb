use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{build_twist, hat_monomials_by_weight, lower_of, TruncatedTwist, TwistRoute};
use crate::algebra_core::{GaussianRational as GR, HbarPoly, RationalFunction, Ring, Q};
use crate::enveloping::{Mono, PbwElement};
use crate::error::{Error, Result};
use crate::lie_structure::{type_a_root, OrbitSpec};

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormReport {
    pub pass: bool,
    pub max_grade: usize,
    pub terms_compared: usize,
    pub ordering: String,
}

/// Reads (n, r, standard?) off a built-in type A orbit through λ = −i·r·E₀₀.
pub(crate) fn type_a_shape(spec: &OrbitSpec) -> Result<(usize, Q, bool)> {
    let lie = &spec.lie;
    let n = lie.matrix_size - 1;
    let not_builtin = || Error::InvalidSpec("closed forms need a built-in type A orbit through -i·r·E00".into());
    if lie.roots.len() != n * (n + 1) || lie.root_labels.first().map(String::as_str) != Some("0_1") {
        return Err(not_builtin());
    }
    let l00 = spec.lambda_gl.get(0, 0).clone();
    let others = spec.lambda_gl.nonzero().any(|(i, j, _)| (i, j) != (0, 0));
    if others || !l00.re.is_zero() || l00.im.is_zero() {
        return Err(not_builtin());
    }
    let standard = spec.positive[type_a_root(n, 0, 1)];
    Ok((n, -l00.im, standard))
}

fn factorial(k: usize) -> GR {
    (1..=k as i64).fold(GR::one(), |a, m| a.times(&GR::from_int(m)))
}

/// Multi-indices over `parts` slots with total `k`.
fn compositions(parts: usize, k: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![k]];
    }
    (0..=k)
        .flat_map(|first| {
            compositions(parts - 1, k - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Closed-form twist of the CP^n / D_n examples in the normalized root-vector basis:
/// coefficient c_k·multinom(I)·(2(n+1))^k on Π X^I ⊗ Π Y^I, where
/// c_k = (−1)^k / (k!·Π_{m<k}(r/ħ − m)) for the standard ordering and
/// c_k = 1 / (k!·Π_{m<k}(r/ħ + m)) for the opposite one.
pub fn closed_form_twist(
    spec: &OrbitSpec,
    engine: &crate::enveloping::Engine,
    max_grade: usize,
) -> Result<BTreeMap<(Mono, Mono), RationalFunction>> {
    let (n, r, standard) = type_a_shape(spec)?;
    let r_over_h = RationalFunction::from_inverse_poly(&HbarPoly::from_coeffs(vec![GR::zero(), GR::real(r)]));
    let roots: Vec<usize> = (1..=n).map(|j| if standard { type_a_root(n, 0, j) } else { type_a_root(n, j, 0) }).collect();
    let norm = GR::from_int(2 * (n as i64 + 1));
    let mut out = BTreeMap::new();
    let mut prod = RationalFunction::one();
    for k in 0..=max_grade {
        if k > 0 {
            let m = GR::from_int(k as i64 - 1);
            let factor = if standard {
                r_over_h.minus(&RationalFunction::constant(m))
            } else {
                r_over_h.plus(&RationalFunction::constant(m))
            };
            prod = prod.times(&factor);
        }
        let sign = if standard && k % 2 == 1 { GR::from_int(-1) } else { GR::one() };
        let ck = prod.times(&RationalFunction::constant(factorial(k))).inv()?.scaled(&sign);
        for idx in compositions(n, k) {
            let mult = idx.iter().fold(factorial(k), |a, &i| a.checked_div(&factorial(i)).expect("nonzero"));
            let coeff = ck.scaled(&mult.times(&norm.pow(k as u32)));
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (j, &e) in idx.iter().enumerate() {
                let x = engine.raise_gen(roots[j]).ok_or_else(|| Error::InvalidSpec("missing generator".into()))?;
                let y = engine.lower_gen(roots[j]).ok_or_else(|| Error::InvalidSpec("missing generator".into()))?;
                left.extend(std::iter::repeat_n(x, e));
                right.extend(std::iter::repeat_n(y, e));
            }
            left.sort_unstable();
            right.sort_unstable();
            out.insert((left, right), coeff);
        }
    }
    Ok(out)
}

/// Compares [`build_twist`] with the closed form term by term.
pub fn closed_form_check(spec: &OrbitSpec, max_grade: usize) -> Result<ClosedFormReport> {
    let twist = build_twist(spec, max_grade)?;
    let expected = closed_form_twist(spec, &twist.engine, max_grade)?;
    for (k, v) in expected.iter() {
        let got = twist.reduced.get(k).cloned().unwrap_or_else(RationalFunction::zero);
        if &got != v {
            return Err(Error::Mismatch(format!(
                "term {:?} ⊗ {:?}: computed {got}, closed form {v}",
                twist.gen_names(&k.0),
                twist.gen_names(&k.1)
            )));
        }
    }
    if let Some(k) = twist.reduced.keys().find(|k| !expected.contains_key(*k)) {
        return Err(Error::Mismatch(format!(
            "term {:?} ⊗ {:?} is absent from the closed form",
            twist.gen_names(&k.0),
            twist.gen_names(&k.1)
        )));
    }
    let (_, _, standard) = type_a_shape(spec)?;
    Ok(ClosedFormReport {
        pass: true,
        max_grade,
        terms_compared: expected.len(),
        ordering: if standard { "standard" } else { "opposite" }.into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TaylorTerm {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub grade: i64,
    /// Coefficients of ħ⁰, ħ¹, …
    pub coeffs: Vec<GR>,
}

/// Formal twist: Taylor expansion of each coefficient of F_ħ at ħ = 0.
pub fn taylor_twist(t: &TruncatedTwist, order: usize) -> Result<Vec<TaylorTerm>> {
    let mut out = Vec::new();
    for ((a, b), c) in &t.reduced {
        let coeffs = c.taylor(order)?;
        if coeffs.iter().all(GR::is_zero) {
            continue;
        }
        out.push(TaylorTerm { left: t.gen_names(a), right: t.gen_names(b), grade: t.term_grade(a), coeffs });
    }
    Ok(out)
}

/// Checks F = 1 + iħ Σ_{α∈Δ̂⁺} (λ,α)⁻¹ X_α ⊗ Y_α + O(ħ²) on the stored grades.
pub fn first_order_check(t: &TruncatedTwist) -> Result<()> {
    let spec = &t.spec;
    let mut expected: BTreeMap<(Mono, Mono), GR> = BTreeMap::new();
    for i in spec.hat_positive() {
        if spec.grading[i] as usize <= t.max_grade {
            let x = t.engine.raise_gen(i).expect("generator");
            let y = t.engine.lower_gen(i).expect("generator");
            expected.insert((vec![x], vec![y]), GR::i().checked_div(&spec.pair_lambda(spec.root(i)))?);
        }
    }
    for ((a, b), c) in &t.reduced {
        let tc = c.taylor(1)?;
        let c0 = if a.is_empty() && b.is_empty() { GR::one() } else { GR::zero() };
        let c1 = expected.remove(&(a.clone(), b.clone())).unwrap_or_else(GR::zero);
        if tc[0] != c0 || tc[1] != c1 {
            return Err(Error::Mismatch(format!(
                "first-order term {:?} ⊗ {:?}: got {:?}, expected [{c0}, {c1}]",
                t.gen_names(a),
                t.gen_names(b),
                tc
            )));
        }
    }
    if let Some(((a, b), _)) = expected.iter().next() {
        return Err(Error::Mismatch(format!("missing first-order term {:?} ⊗ {:?}", t.gen_names(a), t.gen_names(b))));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalReport {
    pub pass: bool,
    pub max_len: usize,
    pub twist_grade: usize,
    pub route: TwistRoute,
    pub identities_checked: usize,
}

/// Checks Σ F₁ ⟨u, F₂⟩ = u and Σ ⟨F₁, v⟩ F₂ = v for all PBW monomials u ∈ U(ñ⁺),
/// v ∈ U(ñ⁻) of length ≤ `max_len`, using the straightening pairing.
pub fn verify_canonical(spec: &OrbitSpec, max_len: usize) -> Result<CanonicalReport> {
    let gmax = spec.hat_positive().iter().map(|&i| spec.grading[i]).max().unwrap_or(0) as usize;
    let probe = crate::enveloping::Engine::new(spec)?;
    let groups = hat_monomials_by_weight(spec, &probe, gmax * max_len);
    let us: Vec<Mono> =
        groups.iter().flat_map(|(_, ms)| ms.iter().filter(|m| m.len() <= max_len).cloned()).collect();
    let grade = us.iter().map(|u| spec.weight_grade(&probe.mono_weight(u)) as usize).max().unwrap_or(0);
    let twist = build_twist(spec, grade)?;
    let e = twist.engine.clone();
    let one = |m: &Mono| PbwElement::monomial(m.clone(), GR::one());
    let check = |u: &Mono, mirror: bool| -> Result<()> {
        let target = if mirror { lower_of(&e, u) } else { u.clone() };
        let w = e.mono_weight(u);
        let mut lhs: PbwElement<RationalFunction> = PbwElement::zero();
        for ((a, b), c) in &twist.reduced {
            if e.mono_weight(a) != w {
                continue;
            }
            let (pair, out) = if mirror {
                (e.pairing_by_straightening(&one(a), &one(&target)), b)
            } else {
                (e.pairing_by_straightening(&one(&target), &one(b)), a)
            };
            lhs.add_term(out.clone(), c.times(&pair));
        }
        let rhs = PbwElement::monomial(target.clone(), RationalFunction::one());
        if lhs != rhs {
            return Err(Error::IdentityFailed(format!(
                "{} identity at {:?}",
                if mirror { "right" } else { "left" },
                twist.gen_names(&target)
            )));
        }
        Ok(())
    };
    let mut all: Vec<(Mono, bool)> = vec![(Vec::new(), false), (Vec::new(), true)];
    all.extend(us.iter().flat_map(|u| [(u.clone(), false), (u.clone(), true)]));
    all.par_iter().map(|(u, m)| check(u, *m)).collect::<Result<Vec<_>>>()?;
    Ok(CanonicalReport {
        pass: true,
        max_len,
        twist_grade: grade,
        route: twist.route,
        identities_checked: all.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_structure::TypeAOrdering;
    use crate::twist::pole_set;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn closed_forms_rank_one_and_two() {
        for n in 1..=2 {
            for ord in [TypeAOrdering::Standard, TypeAOrdering::Opposite] {
                let spec = OrbitSpec::type_a(n, q(1), ord).unwrap();
                let rep = closed_form_check(&spec, 4).unwrap();
                assert!(rep.pass);
            }
        }
    }

    #[test]
    fn canonical_identity_small() {
        let spec = OrbitSpec::type_a(1, q(2), TypeAOrdering::Standard).unwrap();
        assert!(verify_canonical(&spec, 3).unwrap().pass);
        let cp2 = OrbitSpec::type_a(2, q(1), TypeAOrdering::Standard).unwrap();
        assert!(verify_canonical(&cp2, 2).unwrap().pass);
    }

    #[test]
    fn first_order_of_twist() {
        let spec = OrbitSpec::type_a_diagonal(&[q(2), q(1), q(-3)]).unwrap();
        first_order_check(&build_twist(&spec, 3).unwrap()).unwrap();
        let cp2 = OrbitSpec::type_a(2, q(3), TypeAOrdering::Opposite).unwrap();
        first_order_check(&build_twist(&cp2, 3).unwrap()).unwrap();
    }

    #[test]
    fn poles_of_type_a() {
        for n in 1..=2 {
            let spec = OrbitSpec::type_a(n, q(3), TypeAOrdering::Standard).unwrap();
            let poles: Vec<GR> = pole_set(&spec, 6).unwrap().into_iter().map(|p| p.0).collect();
            let mut expected: Vec<GR> = (1..=5).map(|m| GR::from_frac(3, m)).collect();
            expected.sort_by(|a, b| a.lex_cmp(b));
            assert_eq!(poles, expected, "n = {n}");
        }
    }
}
