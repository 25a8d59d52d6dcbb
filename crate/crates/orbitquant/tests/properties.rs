use std::sync::Arc;

use orbitquant::algebra_core::{Field, GaussianRational as GR, HbarPoly, RationalFunction, Ring, Q};
use orbitquant::analysis::t0_norm_numeric;
use orbitquant::enveloping::{Engine, PbwElement, VermaPairing};
use orbitquant::lie_structure::{OrbitSpec, TypeAOrdering};
use orbitquant::starprod::{poisson_bracket, MPoly, VarKind};
use proptest::prelude::*;

fn gr() -> impl Strategy<Value = GR> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| GR::new(Q::new(a.into(), b.into()), Q::new(c.into(), d.into())))
}

fn hbar_poly() -> impl Strategy<Value = HbarPoly> {
    prop::collection::vec(gr(), 0..4).prop_map(HbarPoly::from_coeffs)
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (hbar_poly(), hbar_poly())
        .prop_filter("nonzero denominator", |(_, d)| d.degree().is_some())
        .prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

/// Polynomial in the 2×2 coordinate functions with up to three terms of degree ≤ 2.
fn coord_poly(kind: VarKind) -> impl Strategy<Value = MPoly<GR>> {
    prop::collection::vec((gr(), prop::collection::vec(0usize..4, 0..=2)), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(MPoly::zero(2, kind), |acc, (c, vars)| {
            let m = vars
                .iter()
                .fold(MPoly::constant(2, kind, c), |m, &v| m.times(&MPoly::var(2, kind, v / 2, v % 2)));
            acc.plus(&m)
        })
    })
}

fn engines() -> Vec<Arc<Engine>> {
    let a1 = OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
    let q = |n: i64| Q::from_integer(n.into());
    let a2 = OrbitSpec::type_a_diagonal(&[q(3), q(1), q(0)]).unwrap();
    vec![Arc::new(Engine::new(&a1).unwrap()), Arc::new(Engine::new(&a2).unwrap())]
}

/// Index of the engine plus a short linear combination of words in its generators.
fn pbw(max_len: usize) -> impl Strategy<Value = (usize, Vec<(Vec<u8>, GR)>)> {
    (0usize..2).prop_flat_map(move |k| {
        let ngens = if k == 0 { 3u8 } else { 8u8 };
        (Just(k), prop::collection::vec((prop::collection::vec(0..ngens, 0..=max_len), gr()), 1..=2))
    })
}

fn build(e: &Engine, terms: &[(Vec<u8>, GR)]) -> PbwElement {
    terms.iter().fold(PbwElement::zero(), |acc, (w, c)| acc.plus(&e.normal_order(w).scale(c)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gaussian_rationals_form_a_field(a in gr(), b in gr(), c in gr()) {
        prop_assert_eq!(a.plus(&b).times(&c), a.times(&c).plus(&b.times(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert!(a.minus(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.times(&a.try_inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_functions_form_a_field(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(a.plus(&b).times(&c), a.times(&c).plus(&b.times(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.plus(&b).minus(&b), a.clone());
        if !a.is_zero() {
            prop_assert!(a.times(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in ratfun(), b in ratfun(), h in gr()) {
        if let (Ok(x), Ok(y), Ok(xy)) = (a.eval(&h), b.eval(&h), a.times(&b).eval(&h)) {
            prop_assert_eq!(xy, x.times(&y));
        }
    }

    #[test]
    fn poisson_bracket_is_a_lie_bracket(f in coord_poly(VarKind::Coord), g in coord_poly(VarKind::Coord), h in coord_poly(VarKind::Coord)) {
        prop_assert!(poisson_bracket(&f, &g).plus(&poisson_bracket(&g, &f)).is_zero());
        let jacobi = poisson_bracket(&f, &poisson_bracket(&g, &h))
            .plus(&poisson_bracket(&g, &poisson_bracket(&h, &f)))
            .plus(&poisson_bracket(&h, &poisson_bracket(&f, &g)));
        prop_assert!(jacobi.is_zero());
        // Leibniz rule
        let lhs = poisson_bracket(&f, &g.times(&h));
        let rhs = poisson_bracket(&f, &g).times(&h).plus(&g.times(&poisson_bracket(&f, &h)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t0_norm_is_submultiplicative(p in coord_poly(VarKind::Entry), q in coord_poly(VarKind::Entry), r in 1i64..4, d in 1i64..4) {
        let r = Q::new(r.into(), d.into());
        let lhs = t0_norm_numeric(&p.times(&q), &r);
        prop_assert!(lhs <= t0_norm_numeric(&p, &r) * t0_norm_numeric(&q, &r));
        prop_assert!(t0_norm_numeric(&p.plus(&q), &r) <= t0_norm_numeric(&p, &r) + t0_norm_numeric(&q, &r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn straightening_is_associative((k, u) in pbw(3), v in prop::collection::vec((prop::collection::vec(0u8..3, 0..=2), gr()), 1..=2)) {
        let e = &engines()[k];
        let v = build(e, &v);
        let u = build(e, &u);
        let w = e.normal_order(&[0, 2]);
        prop_assert_eq!(e.mul(&e.mul(&u, &v), &w), e.mul(&u, &e.mul(&v, &w)));
    }

    #[test]
    fn antipode_is_an_involutive_antihomomorphism((k, u) in pbw(3), (_, v) in pbw(2)) {
        let e = &engines()[k];
        let ngens = e.generators().len() as u8;
        let v: Vec<(Vec<u8>, GR)> = v.into_iter().map(|(w, c)| (w.into_iter().map(|g| g % ngens).collect(), c)).collect();
        let (u, v) = (build(e, &u), build(e, &v));
        prop_assert_eq!(e.antipode(&e.antipode(&u)), u.clone());
        prop_assert_eq!(e.antipode(&e.mul(&u, &v)), e.mul(&e.antipode(&v), &e.antipode(&u)));
    }

    #[test]
    fn pairing_is_invariant((k, w) in pbw(2), (_, u) in pbw(2), (_, v) in pbw(2)) {
        let e = &engines()[k];
        let ngens = e.generators().len() as u8;
        let fold = |t: Vec<(Vec<u8>, GR)>| -> Vec<(Vec<u8>, GR)> {
            t.into_iter().map(|(w, c)| (w.into_iter().map(|g| g % ngens).collect(), c)).collect()
        };
        let (w, u, v) = (build(e, &w), build(e, &fold(u)), build(e, &fold(v)));
        let lhs = e.pairing_by_straightening(&e.mul(&e.antipode(&w), &u), &v);
        let rhs = e.pairing_by_straightening(&u, &e.mul(&w, &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn verma_pairing_matches_straightening(k in 0usize..2, xs in prop::collection::vec(0usize..3, 0..=3), ys in prop::collection::vec(0usize..3, 0..=3), c in gr()) {
        let e = engines()[k].clone();
        let pos = e.spec.positive_roots();
        let x: Vec<u8> = xs.iter().map(|&i| e.raise_gen(pos[i % pos.len()]).unwrap()).collect();
        let y: Vec<u8> = ys.iter().map(|&i| e.lower_gen(pos[i % pos.len()]).unwrap()).collect();
        let u = e.normal_order(&x).scale(&c);
        let v = e.normal_order(&y);
        let vp = VermaPairing::new(e.clone());
        let fast = vp.pairing(&u, &v);
        prop_assert_eq!(fast.clone(), e.pairing_by_straightening(&u, &v));
        if e.mono_weight(&x).add(&e.mono_weight(&y)).coords.iter().any(|c| !c.is_zero()) {
            prop_assert!(fast.is_zero());
        }
    }
}
