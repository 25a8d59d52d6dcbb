use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::mpoly::{MPoly, VarKind};
use crate::algebra_core::{GaussianRational as GR, Ring};
use crate::lie_structure::{Matrix, OrbitSpec};

/// Left-invariant derivation of X on entry polynomials: P_kl ↦ (P·X)_kl.
pub fn leftinv_apply<C: Ring>(x: &Matrix, p: &MPoly<C>) -> MPoly<C> {
    let n = p.size;
    let mut out = MPoly::zero(n, p.kind);
    let xs: Vec<(usize, usize, GR)> = x.nonzero().map(|(m, l, v)| (m, l, v.clone())).collect();
    for (e, c) in &p.terms {
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let (row, col) = (v / n, v % n);
            let ck = c.scaled(&GR::from_int(k as i64));
            for (m, l, xv) in &xs {
                if *l != col {
                    continue;
                }
                let mut ne = e.clone();
                ne[v] -= 1;
                ne[row * n + m] += 1;
                out.add_term(ne, ck.scaled(xv));
            }
        }
    }
    out
}

/// Composite of left-invariant derivations; the last matrix acts first.
pub fn leftinv_word<C: Ring>(xs: &[&Matrix], p: &MPoly<C>) -> MPoly<C> {
    xs.iter().rev().fold(p.clone(), |acc, x| if acc.is_zero() { acc } else { leftinv_apply(x, &acc) })
}

fn entry_matrix(n: usize) -> Vec<MPoly<GR>> {
    (0..n * n).map(|v| MPoly::var(n, VarKind::Entry, v / n, v % n)).collect()
}

fn sym_det(m: &[MPoly<GR>], rows: &[usize], cols: &[usize], n: usize) -> MPoly<GR> {
    if rows.is_empty() {
        return MPoly::one(n, VarKind::Entry);
    }
    let r = rows[0];
    let mut acc = MPoly::zero(n, VarKind::Entry);
    for (k, &c) in cols.iter().enumerate() {
        let rest_c: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = sym_det(m, &rows[1..], &rest_c, n);
        let term = m[r * n + c].times(&minor);
        acc = if k % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Adjugate of the generic matrix P, entrywise polynomial in the P_ij.
pub fn symbolic_adjugate(n: usize) -> Vec<MPoly<GR>> {
    let p = entry_matrix(n);
    let mut out = vec![MPoly::zero(n, VarKind::Entry); n * n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = sym_det(&p, &rows, &cols, n);
            out[i * n + j] = if (i + j) % 2 == 0 { d } else { d.negated() };
        }
    }
    out
}

/// Pullbacks π*R_ij(g) = λ(g⁻¹E_ij g) = Σ_kl Λ_kl (g⁻¹)_ki g_jl, with g⁻¹ = adj(g).
#[derive(Clone, Debug)]
pub struct Pullback {
    pub size: usize,
    pub coords: Vec<MPoly<GR>>,
}

impl Pullback {
    pub fn new(spec: &OrbitSpec) -> Self {
        let n = spec.lie.matrix_size;
        let adj = symbolic_adjugate(n);
        let p = entry_matrix(n);
        let lam = &spec.lambda_gl;
        let mut coords = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = MPoly::zero(n, VarKind::Entry);
                for (k, l, v) in lam.nonzero() {
                    acc = acc.plus(&adj[k * n + i].times(&p[j * n + l]).scale(v));
                }
                coords.push(acc);
            }
        }
        Pullback { size: n, coords }
    }
    /// π*R_Z for a matrix Z.
    pub fn of_matrix(&self, z: &Matrix) -> MPoly<GR> {
        let n = self.size;
        let mut acc = MPoly::zero(n, VarKind::Entry);
        for (i, j, v) in z.nonzero() {
            acc = acc.plus(&self.coords[i * n + j].scale(v));
        }
        acc
    }
    /// π*f for a polynomial in the coordinate functions.
    pub fn of_poly(&self, f: &MPoly<GR>) -> MPoly<GR> {
        assert_eq!(f.kind, VarKind::Coord, "pullback takes a polynomial in R variables");
        if f.terms.keys().all(|e| e.iter().all(|&k| k == 0)) {
            return MPoly { size: f.size, kind: VarKind::Entry, terms: f.terms.clone() };
        }
        f.compose(&self.coords)
    }
}

/// A point Ad*_g λ of the orbit with g a product of exact exponentials.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPoint {
    /// (root label, parameter) for each factor exp(t·X_root), left to right.
    pub group_word: Vec<(String, GR)>,
    pub g: Matrix,
    /// ξ(E_ij) = λ(g⁻¹E_ij g).
    pub xi: Matrix,
}

impl OrbitPoint {
    pub fn from_group(spec: &OrbitSpec, group_word: Vec<(String, GR)>, g: Matrix) -> Self {
        let n = g.size();
        let ginv = g.adjugate();
        let lam = &spec.lambda_gl;
        let mut xi = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GR::zero();
                for (k, l, v) in lam.nonzero() {
                    acc = acc.plus(&v.times(ginv.get(k, i)).times(g.get(j, l)));
                }
                xi.set(i, j, acc);
            }
        }
        OrbitPoint { group_word, g, xi }
    }
    pub fn identity(spec: &OrbitSpec) -> Self {
        Self::from_group(spec, Vec::new(), Matrix::identity(spec.lie.matrix_size))
    }
}

/// Deterministic points: g = e first, then products running twice through the
/// root vectors in random order with parameters ±a/b, 1 ≤ a ≤ 3, 1 ≤ b ≤ 2.
pub fn sample_orbit_points(spec: &OrbitSpec, count: usize, seed: u64) -> Vec<OrbitPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lie = &spec.lie;
    let nilpotent: Vec<usize> =
        (0..lie.roots.len()).filter(|&i| lie.root_vectors[i].exp_nilpotent(&GR::one()).is_some()).collect();
    let mut out = vec![OrbitPoint::identity(spec)];
    while out.len() < count {
        let mut order: Vec<usize> = nilpotent.iter().chain(nilpotent.iter()).copied().collect();
        order.shuffle(&mut rng);
        let mut g = Matrix::identity(lie.matrix_size);
        let mut word = Vec::new();
        for i in order {
            let a: i64 = rng.gen_range(1..=3);
            let b: i64 = rng.gen_range(1..=2);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let t = GR::from_frac(sign * a, b);
            let factor = lie.root_vectors[i].exp_nilpotent(&t).expect("nilpotent root vector");
            g = g.mul(&factor);
            word.push((lie.root_labels[i].clone(), t));
        }
        out.push(OrbitPoint::from_group(spec, word, g));
    }
    out.truncate(count.max(1));
    out
}

/// Evaluates a polynomial in entry variables at g, or in coordinate functions at ξ.
pub fn point_eval<C: Ring>(f: &MPoly<C>, pt: &OrbitPoint) -> C {
    match f.kind {
        VarKind::Entry => f.eval(pt.g.entries()),
        VarKind::Coord => f.eval(pt.xi.entries()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{HbarPoly, Q};
    use crate::lie_structure::TypeAOrdering;

    fn p(n: usize, i: usize, j: usize) -> MPoly<GR> {
        MPoly::var(n, VarKind::Entry, i, j)
    }

    #[test]
    fn elementary_rule() {
        let e01 = Matrix::unit(2, 0, 1);
        assert_eq!(leftinv_apply(&e01, &p(2, 0, 1)), p(2, 0, 0));
        assert!(leftinv_apply(&e01, &p(2, 0, 0)).is_zero());
        assert!(leftinv_apply(&e01, &MPoly::<GR>::one(2, VarKind::Entry)).is_zero());
    }

    /// p(g·exp(tX)) as a polynomial in t; its linear coefficient is (leftinv X p)(g).
    fn along_curve(f: &MPoly<GR>, g: &Matrix, x: &Matrix) -> HbarPoly {
        let n = g.size();
        let mut entries = vec![HbarPoly::zero(); n * n];
        let curve = [Matrix::identity(n), x.clone(), x.mul(x).scale(&GR::from_frac(1, 2))];
        for (k, m) in curve.iter().enumerate() {
            let gm = g.mul(m);
            for (v, e) in entries.iter_mut().enumerate() {
                *e = e.plus(&HbarPoly::monomial(gm.entries()[v].clone(), k));
            }
        }
        let mut acc = HbarPoly::zero();
        for (e, c) in &f.terms {
            let mut m = HbarPoly::constant(c.clone());
            for (v, &k) in e.iter().enumerate() {
                m = m.times(&entries[v].pow(k as u32));
            }
            acc = acc.plus(&m);
        }
        acc
    }

    #[test]
    fn derivation_matches_curve_derivative() {
        let spec = OrbitSpec::type_a(2, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
        let f = p(3, 0, 1).times(&p(3, 2, 1)).plus(&p(3, 1, 0).pow(2)).plus(&p(3, 2, 2));
        let pts = sample_orbit_points(&spec, 4, 3);
        for x in spec.lie.root_vectors.iter().chain(spec.lie.cartan.iter()) {
            let d = leftinv_apply(x, &f);
            for pt in &pts {
                let series = along_curve(&f, &pt.g, x);
                assert_eq!(series.coeff(1), point_eval(&d, pt));
            }
        }
    }

    #[test]
    fn pullback_at_identity_and_points() {
        let spec = OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
        let pb = Pullback::new(&spec);
        let pts = sample_orbit_points(&spec, 5, 11);
        for pt in &pts {
            assert_eq!(pt.g.det(), GR::one());
            for v in 0..4 {
                assert_eq!(point_eval(&pb.coords[v], pt), pt.xi.entries()[v].clone());
            }
        }
        assert_eq!(pts[0].xi, spec.lambda_gl);
        // N = 2: π*R_01 = λ_00·(g⁻¹)_00·g_10 = −i·P_11·P_10
        let expected = p(2, 1, 1).times(&p(2, 1, 0)).scale(&GR::i().negated());
        assert_eq!(pb.coords[1], expected);
    }

    #[test]
    fn determinant_vanishes_on_group() {
        let spec = OrbitSpec::type_a(2, Q::from_integer(2.into()), TypeAOrdering::Opposite).unwrap();
        let n = 3;
        let rows: Vec<usize> = (0..n).collect();
        let det = sym_det(&entry_matrix(n), &rows, &rows, n).minus(&MPoly::one(n, VarKind::Entry));
        for pt in sample_orbit_points(&spec, 6, 0) {
            assert!(point_eval(&det, &pt).is_zero());
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let spec = OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
        let a: Vec<Matrix> = sample_orbit_points(&spec, 6, 7).into_iter().map(|p| p.g).collect();
        let b: Vec<Matrix> = sample_orbit_points(&spec, 6, 7).into_iter().map(|p| p.g).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn left_translation_commutes_with_leftinv() {
        let spec = OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap();
        let pb = Pullback::new(&spec);
        let f = pb.coords[1].times(&pb.coords[2]);
        let pts = sample_orbit_points(&spec, 3, 5);
        let h = &pts[1].g;
        let n = 2;
        let translated: Vec<MPoly<GR>> = (0..n * n)
            .map(|v| {
                let (k, l) = (v / n, v % n);
                (0..n).fold(MPoly::zero(n, VarKind::Entry), |acc, m| acc.plus(&p(n, m, l).scale(h.get(k, m))))
            })
            .collect();
        let fh = f.compose(&translated);
        for x in &spec.lie.root_vectors {
            let lhs = leftinv_apply(x, &fh);
            let rhs = leftinv_apply(x, &f);
            for pt in &pts {
                let hg = OrbitPoint::from_group(&spec, Vec::new(), h.mul(&pt.g));
                assert_eq!(point_eval(&lhs, pt), point_eval(&rhs, &hg));
            }
        }
    }
}
