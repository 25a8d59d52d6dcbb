use super::mpoly::{MPoly, VarKind};
use crate::algebra_core::{GaussianRational as GR, Ring};
use crate::enveloping::Engine;
use crate::lie_structure::Matrix;

/// R_Z as a linear polynomial in the coordinate functions.
pub fn coord_of_matrix(z: &Matrix) -> MPoly<GR> {
    let n = z.size();
    let mut out = MPoly::zero(n, VarKind::Coord);
    for (i, j, v) in z.nonzero() {
        let mut e = vec![0; n * n];
        e[i * n + j] = 1;
        out.add_term(e, v.clone());
    }
    out
}

/// Fundamental vector field of X on coordinate polynomials: R_Z ↦ R_[X,Z].
pub fn fundamental_action(x: &Matrix, f: &MPoly<GR>) -> MPoly<GR> {
    let n = f.size;
    let images: Vec<MPoly<GR>> =
        (0..n * n).map(|v| coord_of_matrix(&x.commutator(&Matrix::unit(n, v / n, v % n)))).collect();
    let mut out = MPoly::zero(n, VarKind::Coord);
    for v in 0..n * n {
        if images[v].is_zero() {
            continue;
        }
        let d = f.partial(v);
        if !d.is_zero() {
            out = out.plus(&d.times(&images[v]));
        }
    }
    out
}

/// (u₁⋯u_m)_O f = u₁_O(⋯(u_m)_O f): the last generator acts first.
pub fn fundamental_word(engine: &Engine, u: &[u8], f: &MPoly<GR>) -> MPoly<GR> {
    u.iter().rev().fold(f.clone(), |acc, &g| {
        if acc.is_zero() {
            acc
        } else {
            fundamental_action(&engine.generator(g).matrix, &acc)
        }
    })
}

/// (S(u))_O f = (−1)^m (u_m)_O ⋯ (u₁)_O f: the first generator acts first.
pub fn antipode_action(engine: &Engine, u: &[u8], f: &MPoly<GR>) -> MPoly<GR> {
    let rev: Vec<u8> = u.iter().rev().copied().collect();
    let out = fundamental_word(engine, &rev, f);
    if u.len() % 2 == 1 {
        out.negated()
    } else {
        out
    }
}

/// KKS bracket: {R_X, R_Y} = R_[X,Y], extended as a biderivation.
pub fn poisson_bracket(f: &MPoly<GR>, g: &MPoly<GR>) -> MPoly<GR> {
    let n = f.size;
    let mut out = MPoly::zero(n, VarKind::Coord);
    let df: Vec<MPoly<GR>> = (0..n * n).map(|v| f.partial(v)).collect();
    let dg: Vec<MPoly<GR>> = (0..n * n).map(|v| g.partial(v)).collect();
    for (v, a) in df.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (w, b) in dg.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let br = Matrix::unit(n, v / n, v % n).commutator(&Matrix::unit(n, w / n, w % n));
            if br.is_zero() {
                continue;
            }
            out = out.plus(&a.times(b).times(&coord_of_matrix(&br)));
        }
    }
    out
}

/// All monomials in the coordinate functions of total degree ≤ d, constants first.
pub fn coordinate_monomials(n: usize, d: usize) -> Vec<MPoly<GR>> {
    let nv = n * n;
    let mut out = vec![MPoly::one(n, VarKind::Coord)];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for v in start..nv {
                let mut nm = m.clone();
                nm.push(v);
                next.push(nm);
            }
        }
        for m in &next {
            let mut e = vec![0u16; nv];
            for &v in m {
                e[v] += 1;
            }
            let mut p = MPoly::zero(n, VarKind::Coord);
            p.add_term(e, GR::one());
            out.push(p);
        }
        layer = next;
    }
    out
}

/// Complex conjugation of functions on the real orbit of u(p, q) = {Z : Z = −J Z† J}:
/// R_ij ↦ −J_i J_j R_ji with conjugated coefficients.
pub fn real_form_conjugate(f: &MPoly<GR>, signs: &[i8]) -> MPoly<GR> {
    let n = f.size;
    let subs: Vec<MPoly<GR>> = (0..n * n)
        .map(|v| {
            let (i, j) = (v / n, v % n);
            let s = -(signs[i] as i64) * (signs[j] as i64);
            MPoly::var(n, VarKind::Coord, j, i).scale(&GR::from_int(s))
        })
        .collect();
    f.conj().compose(&subs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Q;
    use crate::lie_structure::{type_a_root, OrbitSpec, TypeAOrdering};

    fn r(n: usize, i: usize, j: usize) -> MPoly<GR> {
        MPoly::var(n, VarKind::Coord, i, j)
    }

    #[test]
    fn bracket_of_coordinates() {
        // {R_01, R_10} = R_00 − R_11
        assert_eq!(poisson_bracket(&r(2, 0, 1), &r(2, 1, 0)), r(2, 0, 0).minus(&r(2, 1, 1)));
        let spec = OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
        let a = type_a_root(1, 0, 1);
        let (x, y) = (&spec.lie.root_vectors[a], &spec.lie.root_vectors[spec.lie.negation(a)]);
        let sharp = spec.lie.sharp_matrix(spec.root(a));
        assert_eq!(poisson_bracket(&coord_of_matrix(x), &coord_of_matrix(y)), coord_of_matrix(&sharp));
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi() {
        let gens = coordinate_monomials(2, 2);
        let (f, g, h) = (&gens[3].plus(&gens[7]), &gens[5], &gens[9].scale(&GR::i()).plus(&gens[2]));
        assert_eq!(poisson_bracket(f, g), poisson_bracket(g, f).negated());
        let j = poisson_bracket(f, &poisson_bracket(g, h))
            .plus(&poisson_bracket(g, &poisson_bracket(h, f)))
            .plus(&poisson_bracket(h, &poisson_bracket(f, g)));
        assert!(j.is_zero());
    }

    #[test]
    fn fundamental_fields_form_a_representation() {
        let n = 3;
        let f = r(n, 0, 2).times(&r(n, 1, 0)).plus(&r(n, 2, 2));
        let x = Matrix::unit(n, 0, 1);
        let y = Matrix::unit(n, 1, 2);
        let lhs = fundamental_action(&x, &fundamental_action(&y, &f))
            .minus(&fundamental_action(&y, &fundamental_action(&x, &f)));
        assert_eq!(lhs, fundamental_action(&x.commutator(&y), &f));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(coordinate_monomials(2, 2).len(), 15);
        assert_eq!(coordinate_monomials(3, 1).len(), 10);
    }

    #[test]
    fn conjugation_is_an_involution() {
        let f = r(2, 0, 1).scale(&GR::i()).plus(&r(2, 1, 1).times(&r(2, 1, 0)));
        let s = [1, -1];
        assert_eq!(real_form_conjugate(&real_form_conjugate(&f, &s), &s), f);
    }
}
