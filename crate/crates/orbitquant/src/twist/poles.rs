use std::sync::Arc;

use rayon::prelude::*;

use super::{gram_matrix, hat_monomials_by_weight, lower_of, p_parts};
use crate::algebra_core::{determinant, gaussian_rational_roots, GaussianRational as GR, Ring};
use crate::enveloping::{Engine, VermaPairing};
use crate::error::{Error, Result};
use crate::lie_structure::{OrbitSpec, Weight};

/// Values of ħ at which some coefficient of F_ħ up to `max_grade` is singular,
/// each with a weight μ witnessing it; sorted and deduplicated.
///
/// For regular λ every factor p(μ) has the single root ħ = i(λ,μ)/(½(μ,μ) − (ρ,μ));
/// otherwise the roots of the Gram determinants of the weight spaces are used.
pub fn pole_set(spec: &OrbitSpec, max_grade: usize) -> Result<Vec<(GR, Weight)>> {
    let engine = Arc::new(Engine::new(spec)?);
    let groups = hat_monomials_by_weight(spec, &engine, max_grade);
    let found: Vec<Vec<(GR, Weight)>> = if spec.is_regular() {
        groups
            .iter()
            .map(|(mu, _)| {
                let (a, b) = p_parts(mu, spec);
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => Err(Error::AssumptionViolated(mu.to_string())),
                    (false, false) => Ok(vec![(b.times(&GR::i()).checked_div(&a)?, mu.clone())]),
                    _ => Ok(Vec::new()),
                }
            })
            .collect::<Result<_>>()?
    } else {
        let pairing = VermaPairing::new(engine.clone());
        groups
            .par_iter()
            .map(|(mu, us)| {
                let vs: Vec<_> = us.iter().map(|u| lower_of(&engine, u)).collect();
                let det = determinant(&gram_matrix(&pairing, us, &vs));
                if det.is_zero() {
                    return Err(Error::AssumptionViolated(mu.to_string()));
                }
                let report = gaussian_rational_roots(det.num());
                if !report.fully_factored() {
                    return Err(Error::AssumptionViolated(format!(
                        "{mu}: Gram determinant has a factor without Gaussian-rational roots"
                    )));
                }
                Ok(report.roots.into_iter().filter(|(r, _)| !r.is_zero()).map(|(r, _)| (r, mu.clone())).collect())
            })
            .collect::<Result<_>>()?
    };
    let mut out: Vec<(GR, Weight)> = Vec::new();
    for (pole, mu) in found.into_iter().flatten() {
        if !out.iter().any(|(p, _)| *p == pole) {
            out.push((pole, mu));
        }
    }
    out.sort_by(|a, b| a.0.lex_cmp(&b.0));
    Ok(out)
}
