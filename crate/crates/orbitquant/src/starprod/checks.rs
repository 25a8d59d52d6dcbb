use serde::Serialize;

use super::group::{sample_orbit_points, OrbitPoint};
use super::mpoly::{MPoly, VarKind};
use super::orbit_side::{coordinate_monomials, poisson_bracket};
use super::product::{PointValues, Side, StarContext};
use crate::algebra_core::{GaussianRational as GR, Ring};
use crate::error::{Error, Result};
use crate::lie_structure::OrbitSpec;
use crate::twist::build_twist;

#[derive(Debug, Clone, Serialize)]
pub struct StarCheckReport {
    pub check: String,
    pub pass: bool,
    pub spec: String,
    pub twist_grade: usize,
    pub inputs: usize,
    pub distinct: usize,
    pub cases: usize,
    pub points: usize,
    pub witness: Option<String>,
}

impl StarCheckReport {
    fn new(check: &str, ctx: &StarContext, inputs: usize, points: usize) -> Self {
        StarCheckReport {
            check: check.into(),
            pass: true,
            spec: ctx.spec.label.clone(),
            twist_grade: ctx.twist.max_grade,
            inputs,
            distinct: inputs,
            cases: 0,
            points,
            witness: None,
        }
    }
    fn fail(&mut self, w: String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(w);
        }
    }
}

/// The default input family: all coordinate monomials of degree ≤ `degree`.
pub fn orbit_generators(spec: &OrbitSpec, degree: usize) -> Vec<MPoly<GR>> {
    coordinate_monomials(spec.lie.matrix_size, degree)
}

fn reaches(ctx: &StarContext, fs: &[MPoly<GR>]) -> (Vec<usize>, Vec<usize>) {
    let pulled: Vec<MPoly<GR>> = fs.iter().map(|f| ctx.pullback.of_poly(f)).collect();
    (
        pulled.iter().map(|p| ctx.reach(p, Side::Raise)).collect(),
        pulled.iter().map(|p| ctx.reach(p, Side::Lower)).collect(),
    )
}

/// Twist grade needed for every product of two inputs.
pub fn pair_grade(spec: &OrbitSpec, fs: &[MPoly<GR>]) -> Result<usize> {
    let ctx = StarContext::new(&build_twist(spec, 0)?);
    let (rp, rm) = reaches(&ctx, fs);
    Ok(rp.iter().max().copied().unwrap_or(0).min(rm.iter().max().copied().unwrap_or(0)))
}

/// Twist grade needed for both bracketings of every triple of inputs.
pub fn triple_grade(spec: &OrbitSpec, fs: &[MPoly<GR>]) -> Result<usize> {
    let ctx = StarContext::new(&build_twist(spec, 0)?);
    let (rp, rm) = reaches(&ctx, fs);
    let mut best = 0;
    for &fp in &rp {
        for (&gp, &gm) in rp.iter().zip(&rm) {
            for &hm in &rm {
                best = best.max((fp + gp).min(hm)).max(fp.min(gm + hm));
            }
        }
    }
    Ok(best)
}

/// 1 *' p = p *' 1 = p exactly, for the pullbacks of the inputs.
pub fn check_unit(ctx: &StarContext, fs: &[MPoly<GR>]) -> Result<StarCheckReport> {
    let mut rep = StarCheckReport::new("unit", ctx, fs.len(), 0);
    let one = MPoly::one(ctx.spec.lie.matrix_size, VarKind::Entry);
    for f in fs {
        let p = ctx.pullback.of_poly(f);
        let expected = p.to_rf();
        rep.cases += 2;
        if ctx.star_ambient(&one, &p)? != expected || ctx.star_ambient(&p, &one)? != expected {
            rep.fail(format!("{f:?}"));
        }
    }
    Ok(rep)
}

/// The ħ⁰ Taylor coefficient of p *' q equals p·q exactly, for all ordered input pairs.
pub fn check_classical_limit(ctx: &StarContext, fs: &[MPoly<GR>]) -> Result<StarCheckReport> {
    let mut rep = StarCheckReport::new("classical-limit", ctx, fs.len(), 0);
    let pulled: Vec<MPoly<GR>> = fs.iter().map(|f| ctx.pullback.of_poly(f)).collect();
    for (i, p) in pulled.iter().enumerate() {
        for (j, q) in pulled.iter().enumerate() {
            rep.cases += 1;
            if ctx.star_ambient(p, q)?.taylor_coeff(0)? != p.times(q) {
                rep.fail(format!("{:?} * {:?}", fs[i], fs[j]));
            }
        }
    }
    Ok(rep)
}

/// (f*g)*h = f*(g*h) on the orbit for all ordered triples, at every sampled point,
/// with ħ kept symbolic.
pub fn check_associativity(ctx: &StarContext, fs: &[MPoly<GR>], points: &[OrbitPoint]) -> Result<StarCheckReport> {
    let mut rep = StarCheckReport::new("associativity", ctx, fs.len(), points.len());
    // Inputs with identical pullbacks are the same function on the orbit.
    let mut pulled: Vec<MPoly<GR>> = Vec::new();
    let mut source = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let p = ctx.pullback.of_poly(f);
        if !pulled.contains(&p) {
            pulled.push(p);
            source.push(i);
        }
    }
    rep.distinct = pulled.len();
    let mut pv = PointValues::new(ctx, pulled, points);
    let (checked, failure) = pv.associativity_scan()?;
    rep.cases = checked;
    if let Some((f, g, h, k)) = failure {
        rep.fail(format!("({:?}, {:?}, {:?}) at point {k}", fs[source[f]], fs[source[g]], fs[source[h]]));
    }
    Ok(rep)
}

/// ħ¹ coefficient of f*g − g*f at λ equals i{f,g}(λ) for all pairs of inputs.
pub fn check_first_order_bracket(ctx: &StarContext, fs: &[MPoly<GR>]) -> Result<StarCheckReport> {
    let mut rep = StarCheckReport::new("kks", ctx, fs.len(), 1);
    let base = [OrbitPoint::identity(&ctx.spec)];
    let pulled: Vec<MPoly<GR>> = fs.iter().map(|f| ctx.pullback.of_poly(f)).collect();
    let mut pv = PointValues::new(ctx, pulled, &base);
    let lam = ctx.spec.lambda_gl.entries();
    for i in 0..fs.len() {
        for j in (i + 1)..fs.len() {
            rep.cases += 1;
            let fg = pv.star(i, j)?.remove(0);
            let gf = pv.star(j, i)?.remove(0);
            let c1 = fg.minus(&gf).taylor(1)?[1].clone();
            let expected = poisson_bracket(&fs[i], &fs[j]).eval(lam).times(&GR::i());
            if c1 != expected {
                rep.fail(format!("{:?}, {:?}: {c1} vs {expected}", fs[i], fs[j]));
            }
        }
    }
    Ok(rep)
}

/// The ambient product evaluated at g = e agrees with the fundamental-vector-field
/// formula at λ for all ordered pairs.
pub fn check_cross_oracle(ctx: &StarContext, fs: &[MPoly<GR>]) -> Result<StarCheckReport> {
    let mut rep = StarCheckReport::new("cross-oracle", ctx, fs.len(), 1);
    let base = [OrbitPoint::identity(&ctx.spec)];
    let pulled: Vec<MPoly<GR>> = fs.iter().map(|f| ctx.pullback.of_poly(f)).collect();
    let mut pv = PointValues::new(ctx, pulled, &base);
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            rep.cases += 1;
            let ambient = pv.star(i, j)?.remove(0);
            let orbit = ctx.star_at_lambda_by_fundamental_fields(&fs[i], &fs[j])?;
            if ambient != orbit {
                rep.fail(format!("{:?}, {:?}: {ambient} vs {orbit}", fs[i], fs[j]));
            }
        }
    }
    Ok(rep)
}

/// Builds the context and points and runs the associativity check on the
/// coordinate monomials of degree ≤ `degree`.
pub fn verify_associativity(spec: &OrbitSpec, degree: usize, npoints: usize, seed: u64) -> Result<StarCheckReport> {
    let fs = orbit_generators(spec, degree);
    let ctx = StarContext::new(&build_twist(spec, triple_grade(spec, &fs)?)?);
    let points = sample_orbit_points(spec, npoints, seed);
    check_associativity(&ctx, &fs, &points)
}

/// Linear coordinate functions R_ij.
pub fn linear_generators(spec: &OrbitSpec) -> Vec<MPoly<GR>> {
    let n = spec.lie.matrix_size;
    (0..n * n).map(|v| MPoly::var(n, VarKind::Coord, v / n, v % n)).collect()
}

pub fn verify_first_order_bracket(spec: &OrbitSpec) -> Result<StarCheckReport> {
    let fs = linear_generators(spec);
    let ctx = StarContext::new(&build_twist(spec, pair_grade(spec, &fs)?.max(1))?);
    check_first_order_bracket(&ctx, &fs)
}

pub fn verify_cross_oracle(spec: &OrbitSpec, degree: usize) -> Result<StarCheckReport> {
    let fs = orbit_generators(spec, degree);
    let ctx = StarContext::new(&build_twist(spec, pair_grade(spec, &fs)?)?);
    check_cross_oracle(&ctx, &fs)
}

/// Turns a failed report into an error carrying its witness.
pub fn ensure(rep: StarCheckReport) -> Result<StarCheckReport> {
    if rep.pass {
        Ok(rep)
    } else {
        Err(Error::IdentityFailed(format!("{}: {}", rep.check, rep.witness.clone().unwrap_or_default())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Q;
    use crate::lie_structure::TypeAOrdering;

    fn a1() -> OrbitSpec {
        OrbitSpec::type_a(1, Q::from_integer(1.into()), TypeAOrdering::Standard).unwrap()
    }

    #[test]
    fn unit_and_classical_limit_rank_one() {
        let spec = a1();
        let fs = orbit_generators(&spec, 1);
        let ctx = StarContext::new(&build_twist(&spec, pair_grade(&spec, &fs).unwrap()).unwrap());
        assert!(check_unit(&ctx, &fs).unwrap().pass);
        assert!(check_classical_limit(&ctx, &fs).unwrap().pass);
    }

    #[test]
    fn first_order_and_cross_oracle_rank_one() {
        let spec = a1();
        assert!(verify_first_order_bracket(&spec).unwrap().pass);
        assert!(verify_cross_oracle(&spec, 1).unwrap().pass);
    }

    #[test]
    fn associativity_rank_one_linear() {
        let rep = verify_associativity(&a1(), 1, 4, 0).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.cases, 125);
    }

    #[test]
    fn corrupted_twist_breaks_associativity() {
        let spec = a1();
        let fs = orbit_generators(&spec, 2);
        let mut ctx = StarContext::new(&build_twist(&spec, triple_grade(&spec, &fs).unwrap()).unwrap());
        let t = ctx.terms.iter().position(|t| t.grade == 1).unwrap();
        ctx.terms[t].numer = ctx.terms[t].numer.plus(&ctx.denom);
        let rep = check_associativity(&ctx, &fs, &sample_orbit_points(&spec, 4, 0)).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn short_twist_is_rejected() {
        let spec = a1();
        let fs = orbit_generators(&spec, 2);
        let ctx = StarContext::new(&build_twist(&spec, 1).unwrap());
        let q = ctx.pullback.of_poly(&fs[fs.len() - 1]);
        assert!(matches!(ctx.star_ambient(&q, &q), Err(Error::TruncationInsufficient { .. })));
    }
}
