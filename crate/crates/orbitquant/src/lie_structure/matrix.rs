use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra_core::{GaussianRational as GR, Ring};

/// Square matrix over Q(i), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<GR>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![GR::zero(); n * n] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = GR::one();
        }
        m
    }
    /// Elementary matrix E_ij.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[i * n + j] = GR::one();
        m
    }
    pub fn diagonal(d: &[GR]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.data[i * d.len() + i] = x.clone();
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<GR>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix { n, data: rows.into_iter().flatten().collect() })
    }
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> &GR {
        &self.data[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: GR) {
        self.data[i * self.n + j] = v;
    }
    pub fn entries(&self) -> &[GR] {
        &self.data
    }
    /// Nonzero entries as (row, column, value).
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &GR)> {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / self.n, k % self.n, v))
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GR::is_zero)
    }
    pub fn add(&self, o: &Self) -> Self {
        Matrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        Matrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() }
    }
    pub fn scale(&self, c: &GR) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|a| a.times(c)).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = out.data[i * n + j].plus(&a.times(b));
                    }
                }
            }
        }
        out
    }
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
    pub fn trace(&self) -> GR {
        (0..self.n).fold(GR::zero(), |acc, i| acc.plus(&self.data[i * self.n + i]))
    }
    /// tr(self · o) without forming the product.
    pub fn trace_product(&self, o: &Self) -> GR {
        let n = self.n;
        let mut acc = GR::zero();
        for (k, a) in self.data.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i, j) = (k / n, k % n);
            let b = &o.data[j * n + i];
            if !b.is_zero() {
                acc = acc.plus(&a.times(b));
            }
        }
        acc
    }
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }
    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        for x in t.data.iter_mut() {
            *x = x.conj();
        }
        t
    }
    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                data.push(self.data[i * n + j].clone());
            }
        }
        Matrix { n: n - 1, data }
    }
    pub fn det(&self) -> GR {
        match self.n {
            0 => GR::one(),
            1 => self.data[0].clone(),
            n => (0..n).fold(GR::zero(), |acc, j| {
                let a = &self.data[j];
                if a.is_zero() {
                    return acc;
                }
                let term = a.times(&self.minor(0, j).det());
                if j % 2 == 0 {
                    acc.plus(&term)
                } else {
                    acc.minus(&term)
                }
            }),
        }
    }
    /// Classical adjugate; equals the inverse when det = 1.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                out.data[i * n + j] = if (i + j) % 2 == 0 { c } else { c.negated() };
            }
        }
        out
    }
    /// exp of a nilpotent matrix scaled by t, as a finite sum; `None` if not nilpotent.
    pub fn exp_nilpotent(&self, t: &GR) -> Option<Self> {
        let x = self.scale(t);
        let mut term = Self::identity(self.n);
        let mut sum = term.clone();
        for k in 1..=self.n {
            term = term.mul(&x).scale(&GR::from_frac(1, k as i64));
            if term.is_zero() {
                return Some(sum);
            }
            sum = sum.add(&term);
        }
        term.mul(&x).is_zero().then_some(sum)
    }
    pub fn rows(&self) -> Vec<Vec<GR>> {
        self.data.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<GR>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).ok_or_else(|| D::Error::custom("matrix rows must form a square array"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_inverts_unimodular() {
        let g = Matrix::unit(3, 0, 1)
            .exp_nilpotent(&GR::from_frac(2, 3))
            .unwrap()
            .mul(&Matrix::unit(3, 2, 0).exp_nilpotent(&GR::from_int(-5)).unwrap());
        assert_eq!(g.det(), GR::one());
        assert_eq!(g.mul(&g.adjugate()), Matrix::identity(3));
    }

    #[test]
    fn commutator_of_units() {
        let c = Matrix::unit(2, 0, 1).commutator(&Matrix::unit(2, 1, 0));
        assert_eq!(c, Matrix::diagonal(&[GR::one(), GR::from_int(-1)]));
        assert_eq!(Matrix::unit(2, 0, 1).trace_product(&Matrix::unit(2, 1, 0)), GR::one());
    }
}
