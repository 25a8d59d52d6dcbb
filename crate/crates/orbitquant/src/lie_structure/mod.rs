//! Matrix Lie algebras with a chosen Cartan subalgebra, their root data, and
//! the orbit-dependent split of the roots with invariant orderings and grading.

mod json;
mod matrix;
mod orbit;

pub use json::{load_spec_json, SpecFile};
pub use matrix::Matrix;
pub use orbit::{OrbitSpec, TypeAOrdering};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra_core::{invert, GaussianRational as GR, Ring, Q};
use crate::error::{Error, Result};

/// Linear functional on the Cartan subalgebra, given by its values on the Cartan basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<GR>,
}

pub type Root = Weight;

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![GR::zero(); rank] }
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GR::is_zero)
    }
    pub fn add(&self, o: &Self) -> Self {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.plus(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.minus(b)).collect() }
    }
    pub fn neg(&self) -> Self {
        Weight { coords: self.coords.iter().map(GR::negated).collect() }
    }
    pub fn scale(&self, c: &GR) -> Self {
        Weight { coords: self.coords.iter().map(|a| a.times(c)).collect() }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Semisimple matrix Lie algebra g ⊂ gl(N) with Cartan basis, roots and
/// root vectors normalized so that B(X_α, X_{−α}) = 1.
#[derive(Clone)]
pub struct LieData {
    pub matrix_size: usize,
    pub cartan: Vec<Matrix>,
    pub roots: Vec<Root>,
    pub root_vectors: Vec<Matrix>,
    pub root_labels: Vec<String>,
    /// B(X, Y) = killing_scale · tr(XY).
    pub killing_scale: GR,
    gram: Vec<Vec<GR>>,
    gram_inv: Vec<Vec<GR>>,
    root_index: HashMap<Root, usize>,
    negation: Vec<usize>,
}

impl fmt::Debug for LieData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieData")
            .field("matrix_size", &self.matrix_size)
            .field("rank", &self.rank())
            .field("roots", &self.root_labels)
            .finish()
    }
}

impl LieData {
    /// Assembles and validates root data; every structural invariant is checked.
    pub fn new(
        matrix_size: usize,
        cartan: Vec<Matrix>,
        roots: Vec<Root>,
        root_vectors: Vec<Matrix>,
        root_labels: Vec<String>,
        killing_scale: GR,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if cartan.is_empty() {
            return bad("empty Cartan basis".into());
        }
        if roots.len() != root_vectors.len() || roots.len() != root_labels.len() {
            return bad("roots, root vectors and labels differ in length".into());
        }
        let rank = cartan.len();
        for m in cartan.iter().chain(&root_vectors) {
            if m.size() != matrix_size {
                return bad(format!("matrix of size {} in a gl({matrix_size}) realization", m.size()));
            }
            if !m.trace().is_zero() {
                return bad(format!("basis matrix {m:?} is not trace-free"));
            }
        }
        for a in &cartan {
            for b in &cartan {
                if !a.commutator(b).is_zero() {
                    return bad("Cartan basis does not commute".into());
                }
            }
        }
        let gram: Vec<Vec<GR>> = cartan
            .iter()
            .map(|a| cartan.iter().map(|b| killing_scale.times(&a.trace_product(b))).collect())
            .collect();
        let Some(gram_inv) = invert(&gram) else {
            return bad("Killing form is degenerate on the Cartan subalgebra".into());
        };
        let mut root_index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.coords.len() != rank {
                return bad(format!("root {} has {} coordinates, rank is {rank}", root_labels[i], r.coords.len()));
            }
            if r.is_zero() {
                return bad(format!("root {} is zero", root_labels[i]));
            }
            if root_index.insert(r.clone(), i).is_some() {
                return bad(format!("root {} listed twice", root_labels[i]));
            }
        }
        let mut negation = Vec::with_capacity(roots.len());
        for (i, r) in roots.iter().enumerate() {
            match root_index.get(&r.neg()) {
                Some(&j) => negation.push(j),
                None => return bad(format!("negative of root {} is missing", root_labels[i])),
            }
        }
        let lie = LieData {
            matrix_size,
            cartan,
            roots,
            root_vectors,
            root_labels,
            killing_scale,
            gram,
            gram_inv,
            root_index,
            negation,
        };
        lie.check_root_vectors()?;
        Ok(lie)
    }

    fn check_root_vectors(&self) -> Result<()> {
        for (i, x) in self.root_vectors.iter().enumerate() {
            let label = &self.root_labels[i];
            for (k, h) in self.cartan.iter().enumerate() {
                if h.commutator(x) != x.scale(&self.roots[i].coords[k]) {
                    return Err(Error::InvalidSpec(format!("root-space property fails for {label} against H_{k}")));
                }
            }
            let y = &self.root_vectors[self.negation[i]];
            if !self.killing(x, y).is_one() {
                return Err(Error::InvalidSpec(format!("B(X, X_-) ≠ 1 for root {label}")));
            }
            if x.commutator(y) != self.sharp_matrix(&self.roots[i]) {
                return Err(Error::InvalidSpec(format!("[X, X_-] differs from the dual Cartan element for {label}")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }
    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }
    pub fn killing(&self, a: &Matrix, b: &Matrix) -> GR {
        self.killing_scale.times(&a.trace_product(b))
    }
    /// Matrix B(H_k, H_l) of the Killing form on the Cartan basis.
    pub fn gram(&self) -> &[Vec<GR>] {
        &self.gram
    }
    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.root_index.get(r).copied()
    }
    pub fn negation(&self, i: usize) -> usize {
        self.negation[i]
    }
    /// Coordinates of μ^♯ in the Cartan basis, where B(μ^♯, H) = μ(H).
    pub fn sharp(&self, mu: &Weight) -> Vec<GR> {
        self.gram_inv
            .iter()
            .map(|row| row.iter().zip(&mu.coords).fold(GR::zero(), |acc, (g, m)| acc.plus(&g.times(m))))
            .collect()
    }
    pub fn sharp_matrix(&self, mu: &Weight) -> Matrix {
        self.sharp(mu)
            .iter()
            .zip(&self.cartan)
            .fold(Matrix::zeros(self.matrix_size), |acc, (c, h)| acc.add(&h.scale(c)))
    }
    /// The induced form (μ, ν) = B(μ^♯, ν^♯) on h*.
    pub fn bilinear(&self, a: &Weight, b: &Weight) -> GR {
        self.sharp(a).iter().zip(&b.coords).fold(GR::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
    }
    /// Evaluates the weight of a Cartan element given as a matrix.
    pub fn cartan_coords(&self, m: &Matrix) -> Vec<GR> {
        let rhs: Vec<GR> = self.cartan.iter().map(|h| self.killing(m, h)).collect();
        self.gram_inv
            .iter()
            .map(|row| row.iter().zip(&rhs).fold(GR::zero(), |acc, (g, b)| acc.plus(&g.times(b))))
            .collect()
    }
    /// Expands a matrix in g as (Cartan coefficients, root-vector coefficients);
    /// fails if the matrix is not in the span of the basis.
    pub fn decompose(&self, m: &Matrix) -> Result<(Vec<GR>, Vec<GR>)> {
        let h = self.cartan_coords(m);
        let roots: Vec<GR> = (0..self.roots.len())
            .map(|i| self.killing(m, &self.root_vectors[self.negation[i]]))
            .collect();
        let mut rebuilt = Matrix::zeros(self.matrix_size);
        for (c, b) in h.iter().zip(&self.cartan).chain(roots.iter().zip(&self.root_vectors)) {
            if !c.is_zero() {
                rebuilt = rebuilt.add(&b.scale(c));
            }
        }
        if &rebuilt != m {
            return Err(Error::InvalidSpec(format!("matrix {m:?} is not in the span of the basis")));
        }
        Ok((h, roots))
    }
    /// Cartan basis followed by the root vectors.
    pub fn basis(&self) -> Vec<Matrix> {
        self.cartan.iter().chain(&self.root_vectors).cloned().collect()
    }
    pub fn cartan_indices(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }
}

/// sl(n+1) with diagonal Cartan subalgebra, B = 2(n+1)·trace, roots L_i − L_j in
/// lexicographic order of (i, j).
pub fn type_a_algebra(n: usize) -> Result<LieData> {
    if n == 0 {
        return Err(Error::InvalidSpec("type A rank must be at least 1".into()));
    }
    let size = n + 1;
    let scale = GR::from_int(2 * size as i64);
    let cartan: Vec<Matrix> = (0..n)
        .map(|k| Matrix::unit(size, k, k).sub(&Matrix::unit(size, k + 1, k + 1)))
        .collect();
    let mut roots = Vec::new();
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    let delta = |a: usize, b: usize| if a == b { 1 } else { 0 };
    for i in 0..size {
        for j in 0..size {
            if i == j {
                continue;
            }
            let coords = (0..n)
                .map(|k| {
                    let v = delta(i, k) - delta(i, k + 1) - delta(j, k) + delta(j, k + 1);
                    GR::from_int(v)
                })
                .collect();
            roots.push(Weight { coords });
            let e = Matrix::unit(size, i, j);
            vectors.push(if i < j { e } else { e.scale(&scale.inv()?) });
            labels.push(format!("{i}_{j}"));
        }
    }
    LieData::new(size, cartan, roots, vectors, labels, scale)
}

/// Index of the root L_i − L_j in [`type_a_algebra`].
pub fn type_a_root(n: usize, i: usize, j: usize) -> usize {
    let size = n + 1;
    i * (size - 1) + if j > i { j - 1 } else { j }
}

pub fn build_type_a(n: usize, r: Q, ordering: TypeAOrdering) -> Result<OrbitSpec> {
    OrbitSpec::type_a(n, r, ordering)
}

pub fn arc(lie: LieData) -> Arc<LieData> {
    Arc::new(lie)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_norm() {
        let lie = type_a_algebra(1).unwrap();
        assert_eq!(lie.roots.len(), 2);
        let a = &lie.roots[type_a_root(1, 0, 1)];
        assert_eq!(lie.bilinear(a, a), GR::from_frac(1, 2));
        assert_eq!(lie.bilinear(a, &a.neg()), GR::from_frac(-1, 2));
        assert_eq!(lie.sharp_matrix(a), Matrix::diagonal(&[GR::from_frac(1, 4), GR::from_frac(-1, 4)]));
    }

    #[test]
    fn root_indexing() {
        let lie = type_a_algebra(2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(lie.root_labels[type_a_root(2, i, j)], format!("{i}_{j}"));
                }
            }
        }
    }

    #[test]
    fn commutators_close() {
        let lie = type_a_algebra(2).unwrap();
        let basis = lie.basis();
        for a in &basis {
            for b in &basis {
                lie.decompose(&a.commutator(b)).unwrap();
            }
        }
    }

    #[test]
    fn rejects_unnormalized_vectors() {
        let lie = type_a_algebra(1).unwrap();
        let mut v = lie.root_vectors.clone();
        v[0] = v[0].scale(&GR::from_int(2));
        let r = LieData::new(2, lie.cartan.clone(), lie.roots.clone(), v, lie.root_labels.clone(), lie.killing_scale.clone());
        assert!(matches!(r, Err(Error::InvalidSpec(_))));
    }
}
