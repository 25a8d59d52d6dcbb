use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra_core::{rational_to_string, GaussianRational as GR, Q};
use crate::enveloping::Engine;
use crate::error::{Error, Result};
use crate::lie_structure::OrbitSpec;
use crate::starprod::{pair_grade, real_form_conjugate, MPoly, OrbitPoint, PointValues, StarContext};
use crate::twist::{build_twist, hat_monomials_by_weight, p_coeff};

#[derive(Debug, Clone, Serialize)]
pub struct PositivityValue {
    pub input: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    pub pass: bool,
    pub spec: String,
    pub h: String,
    pub twist_grade: usize,
    pub weights_checked: usize,
    pub values: Vec<PositivityValue>,
}

/// Checks that p(μ) at ħ = h is real and positive for every nonzero μ ∈ N₀Δ̂⁺ up to
/// `max_grade`. Returns the number of weights checked.
pub fn positivity_hypothesis(spec: &OrbitSpec, h: &Q, max_grade: usize) -> Result<usize> {
    let engine = Engine::new(spec)?;
    let hb = GR::real(h.clone());
    let mut checked = 0;
    for (mu, _) in hat_monomials_by_weight(spec, &engine, max_grade) {
        if mu.is_zero() {
            continue;
        }
        let v = p_coeff(&mu, spec).eval(&hb)?;
        if !v.is_real() || !v.re.is_positive() {
            return Err(Error::HypothesisFailed(format!("{mu} (p = {v})")));
        }
        checked += 1;
    }
    Ok(checked)
}

/// ev_λ(f̄ * f) for each input at ħ = h, after checking the coefficient hypothesis.
/// Conjugation is that of the real form selected by the compactness labels.
pub fn positivity_check(spec: &OrbitSpec, h: &Q, fs: &[MPoly<GR>]) -> Result<PositivityReport> {
    if !h.is_positive() {
        return Err(Error::InvalidSpec("positivity needs a positive ħ".into()));
    }
    let signs = spec.real_form_signs()?;
    let bars: Vec<MPoly<GR>> = fs.iter().map(|f| real_form_conjugate(f, &signs)).collect();
    let all: Vec<MPoly<GR>> = fs.iter().chain(&bars).cloned().collect();
    let grade = pair_grade(spec, &all)?;
    let weights_checked = positivity_hypothesis(spec, h, grade)?;
    let ctx = StarContext::new(&build_twist(spec, grade)?);
    let base = [OrbitPoint::identity(spec)];
    let hb = GR::real(h.clone());
    let mut values = Vec::new();
    for (f, bar) in fs.iter().zip(&bars) {
        let mut pv = PointValues::new(&ctx, vec![ctx.pullback.of_poly(bar), ctx.pullback.of_poly(f)], &base);
        let v = pv.star(0, 1)?.remove(0).eval(&hb)?;
        if !v.im.is_zero() || v.re.is_negative() {
            return Err(Error::NegativeValue { input: format!("{f:?}"), value: v.to_string() });
        }
        values.push(PositivityValue { input: format!("{f:?}"), value: rational_to_string(&v.re) });
    }
    Ok(PositivityReport {
        pass: true,
        spec: spec.label.clone(),
        h: rational_to_string(h),
        twist_grade: grade,
        weights_checked,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_structure::TypeAOrdering;
    use crate::starprod::{coordinate_monomials, VarKind};
    use num_traits::One;

    fn disc(r: i64) -> OrbitSpec {
        OrbitSpec::type_a(1, Q::from_integer(r.into()), TypeAOrdering::Opposite)
            .unwrap()
            .with_compactness(vec![false, false])
            .unwrap()
    }

    #[test]
    fn unit_has_value_one() {
        let rep = positivity_check(&disc(1), &Q::new(1.into(), 5.into()), &[MPoly::one(2, VarKind::Coord)]).unwrap();
        assert_eq!(rep.values[0].value, "1");
    }

    #[test]
    fn linear_inputs_on_the_disc() {
        let fs = coordinate_monomials(2, 1);
        let rep = positivity_check(&disc(1), &Q::new(1.into(), 5.into()), &fs).unwrap();
        assert!(rep.pass);
        assert!(rep.weights_checked > 0);
    }

    #[test]
    fn compact_ordering_violates_the_hypothesis() {
        let spec = OrbitSpec::type_a(1, Q::one(), TypeAOrdering::Standard).unwrap();
        let err = positivity_hypothesis(&spec, &Q::new(1.into(), 5.into()), 2).unwrap_err();
        assert!(matches!(err, Error::HypothesisFailed(_)));
    }
}
