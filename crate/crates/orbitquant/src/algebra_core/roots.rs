use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{GaussianRational as GR, HbarPoly, Ring, Q};

/// Gaussian-rational roots of a polynomial, with whatever could not be split off.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub roots: Vec<(GR, usize)>,
    pub unfactored: HbarPoly,
}

impl RootReport {
    pub fn fully_factored(&self) -> bool {
        self.unfactored.degree().unwrap_or(0) == 0
    }
}

/// Finds every root in Q(i): floating-point root isolation proposes candidates,
/// which are rationalized and then verified and divided out exactly.
pub fn gaussian_rational_roots(p: &HbarPoly) -> RootReport {
    let mut rest = p.clone();
    let mut roots: Vec<(GR, usize)> = Vec::new();
    if p.is_zero() {
        return RootReport { roots, unfactored: rest };
    }
    let zero_mult = rest.low_order();
    if zero_mult > 0 {
        rest = HbarPoly::from_coeffs(rest.coeffs()[zero_mult..].to_vec());
        roots.push((GR::zero(), zero_mult));
    }
    loop {
        let deg = rest.degree().unwrap_or(0);
        if deg == 0 {
            break;
        }
        let squarefree = rest.div_rem(&rest.gcd(&rest.derivative())).0;
        let mut found = false;
        for z in durand_kerner(&squarefree) {
            for cand in rationalize(z) {
                if rest.eval(&cand).is_zero() {
                    let lin = HbarPoly::linear_root(&cand);
                    let mut m = 0;
                    while let Some(q) = rest.checked_div_exact(&lin) {
                        rest = q;
                        m += 1;
                    }
                    roots.push((cand, m));
                    found = true;
                    break;
                }
            }
        }
        if !found {
            break;
        }
    }
    roots.sort_by(|a, b| a.0.lex_cmp(&b.0));
    RootReport { roots, unfactored: rest.make_monic() }
}

fn durand_kerner(p: &HbarPoly) -> Vec<Complex64> {
    let deg = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    let lead = p.leading().to_complex();
    let c: Vec<Complex64> = p.coeffs().iter().map(|x| x.to_complex() / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
    let bound = 1.0 + c[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for k in 0..deg {
            let mut den = Complex64::one();
            for j in 0..deg {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[k]) / den;
            z[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    z
}

/// Candidate Gaussian rationals near `z`, built from continued-fraction convergents.
fn rationalize(z: Complex64) -> Vec<GR> {
    let re = convergents(z.re);
    let im = convergents(z.im);
    let mut out = Vec::new();
    for a in &re {
        for b in &im {
            out.push(GR::new(a.clone(), b.clone()));
        }
    }
    out
}

fn convergents(x: f64) -> Vec<Q> {
    let mut out = vec![Q::zero()];
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Q::new(h2.clone(), k2.clone()));
        if k2 > BigInt::from(1_000_000_000i64) {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}
