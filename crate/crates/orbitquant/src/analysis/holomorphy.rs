use serde::Serialize;

use crate::algebra_core::{gaussian_rational_roots, GaussianRational as GR};
use crate::error::{Error, Result};
use crate::starprod::{MPoly, OrbitPoint, PointValues, StarContext};
use crate::twist::pole_set;

#[derive(Debug, Clone, Serialize)]
pub struct HolomorphyReport {
    pub pass: bool,
    pub spec: String,
    pub inputs: (String, String),
    pub value: String,
    pub denominator_roots: Vec<String>,
    pub samples: Vec<(String, String)>,
}

/// Evaluates f *ħ g at a point with ħ symbolic and checks that every root of the
/// denominator lies in the pole set of the twist; also evaluates at the samples.
pub fn holomorphy_probe(
    ctx: &StarContext,
    f: &MPoly<GR>,
    g: &MPoly<GR>,
    pt: &OrbitPoint,
    h_samples: &[GR],
) -> Result<HolomorphyReport> {
    let poles: Vec<GR> = pole_set(&ctx.spec, ctx.twist.max_grade)?.into_iter().map(|(h, _)| h).collect();
    let mut pv = PointValues::new(ctx, vec![ctx.pullback.of_poly(f), ctx.pullback.of_poly(g)], std::slice::from_ref(pt));
    let value = pv.star(0, 1)?.remove(0);
    let roots = gaussian_rational_roots(value.den());
    if !roots.fully_factored() {
        return Err(Error::UnexpectedPole(format!("irreducible factor {}", roots.unfactored.display_in("ħ"))));
    }
    for (z, _) in &roots.roots {
        if !poles.contains(z) {
            return Err(Error::UnexpectedPole(z.to_string()));
        }
    }
    let samples = h_samples.iter().map(|h| Ok((h.to_string(), value.eval(h)?.to_string()))).collect::<Result<_>>()?;
    Ok(HolomorphyReport {
        pass: true,
        spec: ctx.spec.label.clone(),
        inputs: (format!("{f:?}"), format!("{g:?}")),
        value: value.to_string(),
        denominator_roots: roots.roots.iter().map(|(z, m)| format!("{z} (multiplicity {m})")).collect(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Q;
    use crate::lie_structure::{OrbitSpec, TypeAOrdering};
    use crate::starprod::{coordinate_monomials, pair_grade, sample_orbit_points};
    use crate::twist::build_twist;
    use num_traits::One;

    #[test]
    fn constants_do_not_depend_on_hbar() {
        let spec = OrbitSpec::type_a(1, Q::one(), TypeAOrdering::Standard).unwrap();
        let ctx = StarContext::new(&build_twist(&spec, 1).unwrap());
        let one = coordinate_monomials(2, 0).remove(0);
        let rep = holomorphy_probe(&ctx, &one, &one, &OrbitPoint::identity(&spec), &[GR::from_frac(1, 7)]).unwrap();
        assert!(rep.denominator_roots.is_empty());
        assert_eq!(rep.value, "1");
    }

    #[test]
    fn linear_inputs_only_have_twist_poles() {
        let spec = OrbitSpec::type_a(1, Q::one(), TypeAOrdering::Standard).unwrap();
        let fs = coordinate_monomials(2, 1);
        let ctx = StarContext::new(&build_twist(&spec, pair_grade(&spec, &fs).unwrap()).unwrap());
        let pt = &sample_orbit_points(&spec, 3, 0)[2];
        let rep = holomorphy_probe(&ctx, &fs[2], &fs[3], pt, &[GR::from_frac(1, 7)]).unwrap();
        assert!(rep.pass);
    }
}
