use super::Field;

/// Inverse of a square matrix by Gauss-Jordan elimination; `None` when singular.
pub fn invert<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].try_inv()?;
        a[col] = a[col].iter().map(|x| x.times(&inv)).collect();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.minus(&f.times(p));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-tracking elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = det.negated();
        }
        let p = a[col][col].clone();
        det = det.times(&p);
        let inv = p.try_inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].times(&inv);
            let pivot_row = a[col].clone();
            for (x, q) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                if !q.is_zero() {
                    *x = x.minus(&f.times(q));
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{GaussianRational as GR, Ring};

    #[test]
    fn inverse_and_determinant_2x2() {
        let m = vec![vec![GR::from_int(2), GR::i()], vec![GR::one(), GR::from_int(3)]];
        let inv = invert(&m).unwrap();
        let det = determinant(&m);
        assert_eq!(det, GR::from_int(6).minus(&GR::i()));
        for i in 0..2 {
            for j in 0..2 {
                let e = (0..2).fold(GR::zero(), |acc, k| acc.plus(&m[i][k].times(&inv[k][j])));
                assert_eq!(e, if i == j { GR::one() } else { GR::zero() });
            }
        }
        assert!(invert(&[vec![GR::one(), GR::one()], vec![GR::one(), GR::one()]]).is_none());
    }
}
