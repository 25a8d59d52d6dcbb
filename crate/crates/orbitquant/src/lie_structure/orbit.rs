use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{type_a_algebra, LieData, Matrix, Root, Weight};
use crate::algebra_core::{invert, GaussianRational as GR, Ring, Q};
use crate::error::{Error, Result};

/// Ordering choice for the built-in type A orbits: `Standard` makes L_i − L_j
/// positive for i < j, `Opposite` for i > j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeAOrdering {
    Standard,
    Opposite,
}

/// Orbit data: λ, the split Δ = Δ' ⊔ Δ̂, an invariant ordering and the Z-grading.
#[derive(Clone, Debug)]
pub struct OrbitSpec {
    pub lie: Arc<LieData>,
    /// λ restricted to the Cartan subalgebra.
    pub lambda: Weight,
    /// Λ_kl = λ(E_kl), the extension of λ to gl(N) used for orbit coordinates.
    pub lambda_gl: Matrix,
    pub delta_prime: Vec<usize>,
    pub delta_hat: Vec<usize>,
    pub positive: Vec<bool>,
    pub grading: Vec<i64>,
    /// Per-root compactness labels supplied by the caller.
    pub compact: Option<Vec<bool>>,
    pub label: String,
    grade_form: Vec<GR>,
    rho: Weight,
}

fn lex_positive(c: &[GR]) -> bool {
    for x in c {
        if !x.re.is_zero() {
            return x.re.is_positive();
        }
        if !x.im.is_zero() {
            return x.im.is_positive();
        }
    }
    false
}

impl OrbitSpec {
    /// Builds a spec once the sign of every root in Δ̂ has been decided.
    fn assemble(
        lie: Arc<LieData>,
        lambda: Weight,
        lambda_gl: Matrix,
        compact: Option<Vec<bool>>,
        label: String,
        hat_positive: impl Fn(usize, &GR) -> Result<bool>,
    ) -> Result<Self> {
        if lambda.coords.len() != lie.rank() {
            return Err(Error::InvalidSpec(format!("λ has {} coordinates, rank is {}", lambda.coords.len(), lie.rank())));
        }
        if lambda_gl.size() != lie.matrix_size {
            return Err(Error::InvalidSpec("λ extension has the wrong matrix size".into()));
        }
        for (k, h) in lie.cartan.iter().enumerate() {
            let v = lambda_gl.transpose().trace_product(h);
            if v != lambda.coords[k] {
                return Err(Error::InvalidSpec(format!("λ extension disagrees with λ on H_{k}")));
            }
        }
        if let Some(c) = &compact {
            if c.len() != lie.roots.len() {
                return Err(Error::InvalidSpec("one compactness label per root is required".into()));
            }
        }
        let n_roots = lie.roots.len();
        let mut delta_prime = Vec::new();
        let mut delta_hat = Vec::new();
        let mut positive = vec![false; n_roots];
        for i in 0..n_roots {
            let v = lie.bilinear(&lie.roots[i], &lambda);
            if v.is_zero() {
                delta_prime.push(i);
                positive[i] = lex_positive(&lie.sharp(&lie.roots[i]));
            } else {
                delta_hat.push(i);
                positive[i] = hat_positive(i, &v)?;
            }
        }
        let mut spec = OrbitSpec {
            lie,
            lambda,
            lambda_gl,
            delta_prime,
            delta_hat,
            positive,
            grading: Vec::new(),
            compact,
            label,
            grade_form: Vec::new(),
            rho: Weight::zero(0),
        };
        spec.validate_ordering()?;
        spec.compute_grading()?;
        Ok(spec)
    }

    fn validate_ordering(&self) -> Result<()> {
        let lie = &self.lie;
        let name = |i: usize| lie.root_labels[i].clone();
        for i in 0..lie.roots.len() {
            if self.positive[i] == self.positive[lie.negation(i)] {
                return Err(Error::NotAnOrdering(format!("exactly one of ±{} must be positive", name(i))));
            }
        }
        for i in 0..lie.roots.len() {
            for j in 0..lie.roots.len() {
                let Some(k) = lie.root_index(&lie.roots[i].add(&lie.roots[j])) else { continue };
                if self.positive[i] && self.positive[j] && !self.positive[k] {
                    return Err(Error::NotAnOrdering(format!("{} + {} is a negative root", name(i), name(j))));
                }
                let i_hat_pos = self.positive[i] && self.delta_hat.contains(&i);
                if i_hat_pos && self.delta_prime.contains(&j) && !self.positive[k] {
                    return Err(Error::NotAnOrdering(format!(
                        "not invariant: {} in the positive orbit roots, {} in the stabilizer, sum negative",
                        name(i),
                        name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    fn compute_grading(&mut self) -> Result<()> {
        let lie = self.lie.clone();
        let pos: Vec<usize> = (0..lie.roots.len()).filter(|&i| self.positive[i]).collect();
        let simple: Vec<usize> = pos
            .iter()
            .copied()
            .filter(|&i| {
                !pos.iter().any(|&j| lie.root_index(&lie.roots[i].sub(&lie.roots[j])).is_some_and(|k| self.positive[k]))
            })
            .collect();
        if simple.len() != lie.rank() {
            return Err(Error::NotAnOrdering(format!("{} simple roots for rank {}", simple.len(), lie.rank())));
        }
        let s: Vec<Vec<GR>> = simple.iter().map(|&i| lie.roots[i].coords.clone()).collect();
        let s_inv = invert(&s).ok_or_else(|| Error::NotAnOrdering("simple roots are linearly dependent".into()))?;
        let g: Vec<GR> = simple
            .iter()
            .map(|i| if self.delta_prime.contains(i) { GR::zero() } else { GR::one() })
            .collect();
        // grade(μ) = Σ_k v_k μ_k with S v = g.
        self.grade_form = s_inv
            .iter()
            .map(|row| row.iter().zip(&g).fold(GR::zero(), |a, (x, y)| a.plus(&x.times(y))))
            .collect();
        let mut grading = Vec::with_capacity(lie.roots.len());
        for (i, r) in lie.roots.iter().enumerate() {
            let v = self.weight_grade_exact(r);
            if !v.is_real() || !v.re.is_integer() {
                return Err(Error::NotAnOrdering(format!("non-integral grade for {}", lie.root_labels[i])));
            }
            let v: i64 = v.re.to_integer().try_into().map_err(|_| Error::NotAnOrdering("grade overflow".into()))?;
            let prime = self.delta_prime.contains(&i);
            if prime != (v == 0) || (self.positive[i] && !prime && v < 1) {
                return Err(Error::NotAnOrdering(format!("grade {v} of root {} breaks g_0 = g_λ", lie.root_labels[i])));
            }
            grading.push(v);
        }
        self.grading = grading;
        let half = GR::from_frac(1, 2);
        self.rho = pos.iter().fold(Weight::zero(lie.rank()), |a, &i| a.add(&lie.roots[i])).scale(&half);
        Ok(())
    }

    fn weight_grade_exact(&self, mu: &Weight) -> GR {
        self.grade_form.iter().zip(&mu.coords).fold(GR::zero(), |a, (x, y)| a.plus(&x.times(y)))
    }

    /// Grade of a weight in the root lattice.
    pub fn weight_grade(&self, mu: &Weight) -> i64 {
        let v = self.weight_grade_exact(mu);
        v.re.to_integer().try_into().unwrap_or(i64::MAX)
    }

    /// sl(n+1) orbit through λ(X) = −i·r·X₀₀.
    pub fn type_a(n: usize, r: Q, ordering: TypeAOrdering) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidSpec("orbit radius r must be nonzero".into()));
        }
        let lie = Arc::new(type_a_algebra(n)?);
        let size = n + 1;
        let minus_ir = GR::new(Q::zero(), -r.clone());
        let lambda_gl = Matrix::unit(size, 0, 0).scale(&minus_ir);
        let lambda = Weight { coords: (0..n).map(|k| if k == 0 { minus_ir.clone() } else { GR::zero() }).collect() };
        let compact: Vec<bool> = (0..lie.roots.len())
            .map(|i| {
                let (a, b) = type_a_indices(&lie.root_labels[i]);
                ordering == TypeAOrdering::Standard || (a != 0 && b != 0)
            })
            .collect();
        // (L_0 − L_j, λ) = −ir/(2(n+1)); picking c₂ = −sign(r) makes it positive.
        let sign: i8 = if r.is_positive() { 1 } else { -1 };
        let c2 = match ordering {
            TypeAOrdering::Standard => -sign,
            TypeAOrdering::Opposite => sign,
        };
        let label = format!("type A{n}, r = {}, {:?} ordering", crate::algebra_core::rational_to_string(&r), ordering)
            .to_lowercase();
        Self::assemble(lie, lambda, lambda_gl, Some(compact), label, move |_, v| Ok(standard_rule(1, c2, v)))
    }

    /// sl(n+1) orbit through λ(X) = −i·Σ d_k X_kk (regular when the d_k are distinct),
    /// with the standard ordering c₁ = 1, c₂ = −1.
    pub fn type_a_diagonal(d: &[Q]) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::InvalidSpec("need at least two diagonal entries".into()));
        }
        let n = d.len() - 1;
        let lie = Arc::new(type_a_algebra(n)?);
        let diag: Vec<GR> = d.iter().map(|x| GR::new(Q::zero(), -x.clone())).collect();
        let lambda_gl = Matrix::diagonal(&diag);
        let lambda = Weight { coords: (0..n).map(|k| diag[k].minus(&diag[k + 1])).collect() };
        let label = format!(
            "type A{n}, diagonal λ = -i·diag({})",
            d.iter().map(crate::algebra_core::rational_to_string).collect::<Vec<_>>().join(", ")
        );
        Self::assemble(lie, lambda, lambda_gl, None, label, |_, v| Ok(standard_rule(1, -1, v)))
    }

    /// Generic constructor: λ on the Cartan basis and (optionally) its gl(N) extension;
    /// without one, λ is extended through the Killing form.
    pub fn from_parts(lie: Arc<LieData>, lambda: Weight, lambda_gl: Option<Matrix>) -> Result<Self> {
        let lambda_gl = match lambda_gl {
            Some(m) => m,
            None => {
                let sharp = lie.sharp_matrix(&lambda);
                sharp.transpose().scale(&lie.killing_scale)
            }
        };
        Self::assemble(lie, lambda, lambda_gl, None, "custom".into(), |_, v| Ok(standard_rule(1, 1, v)))
    }

    pub fn with_compactness(mut self, compact: Vec<bool>) -> Result<Self> {
        if compact.len() != self.lie.roots.len() {
            return Err(Error::InvalidSpec("one compactness label per root is required".into()));
        }
        self.compact = Some(compact);
        Ok(self)
    }

    /// Standard ordering: α ∈ Δ̂⁺ iff c₁·Re(α,λ) > 0, or Re(α,λ) = 0 and c₂·Im(α,λ) > 0.
    /// Δ' is ordered lexicographically by the Cartan coordinates of α^♯.
    pub fn make_standard_ordering(&self, c1: i8, c2: i8) -> Result<Self> {
        if c1.abs() != 1 || c2.abs() != 1 {
            return Err(Error::InvalidSpec("orientation signs must be ±1".into()));
        }
        let label = format!("{} / standard ({c1:+}, {c2:+})", self.label);
        Self::assemble(
            self.lie.clone(),
            self.lambda.clone(),
            self.lambda_gl.clone(),
            self.compact.clone(),
            label,
            move |_, v| Ok(standard_rule(c1, c2, v)),
        )
    }

    /// Ordering induced by the invariant complex structure: a compact root is positive
    /// iff (α, iλ) > 0, a non-compact root iff (α, iλ) < 0.
    pub fn kaehler_ordering(&self, compact: &[bool]) -> Result<Self> {
        if compact.len() != self.lie.roots.len() {
            return Err(Error::InvalidSpec("one compactness label per root is required".into()));
        }
        let lie = self.lie.clone();
        let flags = compact.to_vec();
        let label = format!("{} / complex structure", self.label);
        Self::assemble(
            lie.clone(),
            self.lambda.clone(),
            self.lambda_gl.clone(),
            Some(flags.clone()),
            label,
            move |i, v| {
                let w = v.times(&GR::i());
                if !w.is_real() {
                    return Err(Error::NotAnOrdering(format!(
                        "(α, iλ) = {w} is not real for root {}",
                        lie.root_labels[i]
                    )));
                }
                Ok(if flags[i] { w.re.is_positive() } else { w.re.is_negative() })
            },
        )
    }

    pub fn is_regular(&self) -> bool {
        self.delta_prime.is_empty()
    }
    pub fn rank(&self) -> usize {
        self.lie.rank()
    }
    /// (α, λ) for a weight α.
    pub fn pair_lambda(&self, mu: &Weight) -> GR {
        self.lie.bilinear(mu, &self.lambda)
    }
    pub fn rho(&self) -> &Weight {
        &self.rho
    }
    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.lie.roots.len()).filter(|&i| self.positive[i]).collect()
    }
    pub fn hat_positive(&self) -> Vec<usize> {
        self.delta_hat.iter().copied().filter(|&i| self.positive[i]).collect()
    }
    pub fn prime_positive(&self) -> Vec<usize> {
        self.delta_prime.iter().copied().filter(|&i| self.positive[i]).collect()
    }
    pub fn root(&self, i: usize) -> &Root {
        &self.lie.roots[i]
    }
    pub fn is_hat(&self, i: usize) -> bool {
        self.delta_hat.contains(&i)
    }
    /// Diagonal signs J of the real form u(p, q) = {Z : Z = −J Z† J} consistent with the
    /// compactness labels (J = 1 when no labels are set).
    pub fn real_form_signs(&self) -> Result<Vec<i8>> {
        let n = self.lie.matrix_size;
        let Some(flags) = &self.compact else { return Ok(vec![1; n]) };
        let mut j = vec![0i8; n];
        j[0] = 1;
        for _ in 0..n {
            for (i, x) in self.lie.root_vectors.iter().enumerate() {
                let Some((a, b, _)) = x.nonzero().next() else { continue };
                let s = if flags[i] { 1 } else { -1 };
                if j[a] != 0 && j[b] == 0 {
                    j[b] = j[a] * s;
                } else if j[b] != 0 && j[a] == 0 {
                    j[a] = j[b] * s;
                }
            }
        }
        for (i, x) in self.lie.root_vectors.iter().enumerate() {
            let mut nz = x.nonzero();
            let (Some((a, b, _)), None) = (nz.next(), nz.next()) else {
                return Err(Error::InvalidSpec("real-form signs need elementary root vectors".into()));
            };
            let s = if flags[i] { 1 } else { -1 };
            if j[a] == 0 || j[b] == 0 || j[a] * j[b] != s {
                return Err(Error::InvalidSpec(format!(
                    "compactness labels are inconsistent at root {}",
                    self.lie.root_labels[i]
                )));
            }
        }
        Ok(j)
    }
}

fn standard_rule(c1: i8, c2: i8, v: &GR) -> bool {
    if !v.re.is_zero() {
        (c1 > 0) == v.re.is_positive()
    } else {
        (c2 > 0) == v.im.is_positive()
    }
}

/// Parses a type A root label "i_j".
pub(crate) fn type_a_indices(label: &str) -> (usize, usize) {
    let (a, b) = label.split_once('_').expect("type A label");
    (a.parse().expect("row index"), b.parse().expect("column index"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_structure::type_a_root;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn rank_one_is_regular() {
        let s = OrbitSpec::type_a(1, q(1), TypeAOrdering::Standard).unwrap();
        assert!(s.is_regular());
        assert!(s.positive[type_a_root(1, 0, 1)]);
        assert_eq!(s.grading[type_a_root(1, 0, 1)], 1);
    }

    #[test]
    fn cp2_stabilizer_and_orderings() {
        let s = OrbitSpec::type_a(2, q(1), TypeAOrdering::Standard).unwrap();
        let mut dp: Vec<String> = s.delta_prime.iter().map(|&i| s.lie.root_labels[i].clone()).collect();
        dp.sort();
        assert_eq!(dp, vec!["1_2", "2_1"]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(s.positive[type_a_root(2, i, j)], i < j);
                }
            }
        }
        let o = OrbitSpec::type_a(2, q(1), TypeAOrdering::Opposite).unwrap();
        assert!(o.positive[type_a_root(2, 1, 0)] && o.positive[type_a_root(2, 2, 0)]);
        assert!(o.positive[type_a_root(2, 1, 2)]);
        assert_eq!(s.pair_lambda(s.root(type_a_root(2, 0, 1))), GR::new(q(0), Q::new((-1).into(), 6.into())));
    }

    #[test]
    fn kaehler_rule_matches_examples() {
        let s = OrbitSpec::type_a(2, q(2), TypeAOrdering::Standard).unwrap();
        let all = vec![true; 6];
        let k = s.kaehler_ordering(&all).unwrap();
        assert_eq!(k.positive, s.positive);
        let non: Vec<bool> = (0..6)
            .map(|i| {
                let (a, b) = type_a_indices(&s.lie.root_labels[i]);
                a != 0 && b != 0
            })
            .collect();
        let d = s.kaehler_ordering(&non).unwrap();
        let o = OrbitSpec::type_a(2, q(2), TypeAOrdering::Opposite).unwrap();
        assert_eq!(d.positive, o.positive);
        assert_eq!(o.real_form_signs().unwrap(), vec![1, -1, -1]);
    }

    #[test]
    fn rho_pairs_positively_with_simple_roots() {
        let s = OrbitSpec::type_a_diagonal(&[q(3), q(1), q(0)]).unwrap();
        assert!(s.is_regular());
        for (a, b) in [(0, 1), (1, 2)] {
            let v = s.lie.bilinear(s.rho(), s.root(type_a_root(2, a, b)));
            assert!(v.is_real() && v.re.is_positive());
        }
        assert_eq!(s.grading[type_a_root(2, 0, 2)], 2);
    }
}
