use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra_core::{rational_to_string, GaussianRational as GR, RationalFunction, Q};
use crate::error::Result;
use crate::lie_structure::OrbitSpec;
use crate::starprod::{MPoly, Side, StarContext, VarKind};
use crate::twist::build_twist;

/// Bisection steps for the continuity constant.
pub const CONTINUITY_BISECTION_STEPS: usize = 24;

/// ‖Σ a_I x^I‖_R = Σ |a_I| R^|I| with |a| bounded above by |Re a| + |Im a|.
pub fn t0_norm_numeric(p: &MPoly<GR>, r: &Q) -> Q {
    p.terms
        .iter()
        .map(|(e, c)| {
            let d: u32 = e.iter().map(|&k| k as u32).sum();
            c.modulus_bound() * num_traits::pow(r.clone(), d as usize)
        })
        .fold(Q::zero(), |a, b| a + b)
}

/// T₀-norm of a product after substituting ħ = h.
pub fn t0_norm(p: &MPoly<RationalFunction>, r: &Q, h: &GR) -> Result<Q> {
    Ok(t0_norm_numeric(&p.at_hbar(h)?, r))
}

#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    pub pass: bool,
    pub spec: String,
    pub h: String,
    #[serde(rename = "R")]
    pub r: String,
    pub basis_degree: usize,
    pub twist_grade: usize,
    #[serde(rename = "M_estimate")]
    pub m_estimate: String,
    pub m_lower: String,
    pub pairs_checked: usize,
    pub worst_ratio: String,
    pub worst_pair: Option<(String, String)>,
}

/// All monomials in the N² matrix entries of total degree ≤ d.
pub fn entry_monomials(n: usize, d: usize) -> Vec<MPoly<GR>> {
    crate::starprod::coordinate_monomials(n, d)
        .into_iter()
        .map(|m| MPoly { size: m.size, kind: VarKind::Entry, terms: m.terms })
        .collect()
}

/// Smallest M (up to bisection) with ‖b_I *' b_J‖_R ≤ (RM)^{|I|+|J|} for all
/// entry monomials of degree ≤ `basis_degree`.
pub fn continuity_sweep(spec: &OrbitSpec, h: &GR, r: &Q, basis_degree: usize) -> Result<NormReport> {
    let basis = entry_monomials(spec.lie.matrix_size, basis_degree);
    let probe = StarContext::new(&build_twist(spec, 0)?);
    let grade = basis
        .iter()
        .map(|p| probe.reach(p, Side::Raise))
        .max()
        .unwrap_or(0)
        .min(basis.iter().map(|p| probe.reach(p, Side::Lower)).max().unwrap_or(0));
    let ctx = StarContext::new(&build_twist(spec, grade)?);
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    // (norm, |I| + |J|) per pair
    let norms: Vec<(Q, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let prod = ctx.star_ambient(&basis[i], &basis[j])?;
            Ok((t0_norm(&prod, r, h)?, basis[i].degree() + basis[j].degree()))
        })
        .collect::<Result<_>>()?;
    let holds = |m: &Q| norms.iter().all(|(nv, d)| *nv <= num_traits::pow(r * m, *d));
    let mut hi = Q::one();
    while !holds(&hi) {
        hi *= Q::from_integer(2.into());
    }
    let mut lo = Q::zero();
    for _ in 0..CONTINUITY_BISECTION_STEPS {
        let mid = (&lo + &hi) / Q::from_integer(2.into());
        if holds(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut worst = (Q::zero(), None);
    for (&(i, j), (nv, d)) in pairs.iter().zip(&norms) {
        let ratio = nv / num_traits::pow(r * &hi, *d);
        if ratio > worst.0 {
            worst = (ratio, Some((i, j)));
        }
    }
    Ok(NormReport {
        pass: worst.0 <= Q::one(),
        spec: spec.label.clone(),
        h: h.to_string(),
        r: rational_to_string(r),
        basis_degree,
        twist_grade: grade,
        m_estimate: rational_to_string(&hi),
        m_lower: rational_to_string(&lo),
        pairs_checked: pairs.len(),
        worst_ratio: rational_to_string(&worst.0),
        worst_pair: worst.1.map(|(i, j)| (format!("{:?}", basis[i]), format!("{:?}", basis[j]))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_structure::TypeAOrdering;

    fn p(i: usize, j: usize) -> MPoly<GR> {
        MPoly::var(2, VarKind::Entry, i, j)
    }

    #[test]
    fn norms_of_small_polynomials() {
        let two = Q::from_integer(2.into());
        assert_eq!(t0_norm_numeric(&MPoly::one(2, VarKind::Entry), &two), Q::one());
        assert_eq!(t0_norm_numeric(&p(0, 1), &two), two);
        let q = p(0, 0).plus(&p(0, 1).times(&p(1, 0)).scale(&GR::from_int(2)));
        assert_eq!(t0_norm_numeric(&q, &two), Q::from_integer(10.into()));
        let z = p(0, 0).scale(&GR::new(Q::from_integer(3.into()), Q::from_integer((-4).into())));
        assert_eq!(t0_norm_numeric(&z, &Q::one()), Q::from_integer(7.into()));
    }

    #[test]
    fn degree_zero_sweep_is_trivial() {
        let spec = OrbitSpec::type_a(1, Q::one(), TypeAOrdering::Standard).unwrap();
        let rep = continuity_sweep(&spec, &GR::from_frac(1, 7), &Q::one(), 0).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.pairs_checked, 1);
    }
}
