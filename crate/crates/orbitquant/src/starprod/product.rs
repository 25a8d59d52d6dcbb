use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{leftinv_apply, OrbitPoint, Pullback};
use super::mpoly::{Exponents, MPoly, VarKind};
use crate::algebra_core::{GaussianRational as GR, HbarPoly, RationalFunction, Ring};
use crate::enveloping::{Engine, Mono};
use crate::error::{Error, Result};
use crate::lie_structure::{Matrix, OrbitSpec};
use crate::twist::TruncatedTwist;

/// Frontier size above which reach falls back to the degree bound.
const REACH_FRONTIER_LIMIT: usize = 512;

/// One term F_ab·a⊗b of the twist, with F_ab = numer / (common denominator).
#[derive(Clone, Debug)]
pub struct StarTerm {
    pub left: Mono,
    pub right: Mono,
    pub coeff: RationalFunction,
    pub grade: usize,
    pub numer: HbarPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Derivations of ñ⁺, acting on the left argument.
    Raise,
    /// Derivations of ñ⁻, acting on the right argument.
    Lower,
}

/// Everything needed to evaluate p *' q = Σ F_ab (leftinv a p)(leftinv b q).
pub struct StarContext {
    pub spec: OrbitSpec,
    pub twist: TruncatedTwist,
    pub pullback: Pullback,
    pub terms: Vec<StarTerm>,
    pub denom: HbarPoly,
    engine: Arc<Engine>,
    side_gens: [Vec<(u8, usize)>; 2],
    max_chain_grade: [usize; 2],
}

impl StarContext {
    pub fn new(twist: &TruncatedTwist) -> Self {
        let spec = twist.spec.clone();
        let engine = twist.engine.clone();
        let mut raw: Vec<(Mono, Mono, RationalFunction, usize)> = twist
            .reduced
            .iter()
            .map(|((a, b), c)| (a.clone(), b.clone(), c.clone(), twist.term_grade(a).max(0) as usize))
            .collect();
        raw.sort_by(|x, y| x.3.cmp(&y.3).then_with(|| x.0.cmp(&y.0)).then_with(|| x.1.cmp(&y.1)));
        let mut denom = HbarPoly::one();
        for (_, _, c, _) in &raw {
            let g = denom.gcd(c.den());
            denom = denom.times(&c.den().checked_div_exact(&g).expect("gcd divides"));
        }
        let denom = denom.make_monic();
        let terms = raw
            .into_iter()
            .map(|(left, right, coeff, grade)| {
                let numer = coeff.num().times(&denom.checked_div_exact(coeff.den()).expect("common denominator"));
                StarTerm { left, right, coeff, grade, numer }
            })
            .collect();
        let mut side_gens = [Vec::new(), Vec::new()];
        for &i in &spec.hat_positive() {
            let g = spec.grading[i].max(0) as usize;
            side_gens[0].push((engine.raise_gen(i).expect("raising generator"), g));
            side_gens[1].push((engine.lower_gen(i).expect("lowering generator"), g));
        }
        let max_chain_grade = [
            max_chain_grade(&engine, &side_gens[0]),
            max_chain_grade(&engine, &side_gens[1]),
        ];
        StarContext {
            pullback: Pullback::new(&spec),
            spec,
            twist: twist.clone(),
            terms,
            denom,
            engine,
            side_gens,
            max_chain_grade,
        }
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn matrix(&self, g: u8) -> &Matrix {
        &self.engine.generator(g).matrix
    }

    /// leftinv of a PBW monomial (or any word): the last letter acts first.
    pub fn leftinv_mono<C: Ring>(&self, word: &[u8], p: &MPoly<C>) -> MPoly<C> {
        word.iter().rev().fold(p.clone(), |acc, &g| if acc.is_zero() { acc } else { leftinv_apply(self.matrix(g), &acc) })
    }

    /// Largest total grade of a word in the ñ^± derivations acting nontrivially on p.
    pub fn reach(&self, p: &MPoly<GR>, side: Side) -> usize {
        let k = side as usize;
        let bound = p.degree() * self.max_chain_grade[k];
        let mut best = 0;
        let mut frontier: Vec<(usize, MPoly<GR>)> = vec![(0, p.clone())];
        while !frontier.is_empty() {
            let mut next: Vec<(usize, MPoly<GR>)> = Vec::new();
            for (g, q) in &frontier {
                for &(gen, gg) in &self.side_gens[k] {
                    let d = leftinv_apply(self.matrix(gen), q);
                    if d.is_zero() {
                        continue;
                    }
                    let ng = g + gg;
                    best = best.max(ng);
                    if !next.iter().any(|(h, r)| *h == ng && *r == d) {
                        next.push((ng, d));
                    }
                }
            }
            if next.len() > REACH_FRONTIER_LIMIT {
                return bound;
            }
            frontier = next;
        }
        best.min(bound)
    }

    /// Fails unless the twist carries every grade up to `required`.
    pub fn require_grade(&self, required: usize) -> Result<()> {
        if required > self.twist.max_grade {
            Err(Error::TruncationInsufficient { required, available: self.twist.max_grade })
        } else {
            Ok(())
        }
    }

    fn combine(&self, per_term: &[(usize, GR)]) -> RationalFunction {
        let mut num = HbarPoly::zero();
        for (t, v) in per_term {
            num = num.plus(&self.terms[*t].numer.scaled(v));
        }
        RationalFunction::new(num, self.denom.clone()).expect("nonzero denominator")
    }

    /// p *' q as an exact polynomial over Q(i)(ħ).
    pub fn star_ambient(&self, p: &MPoly<GR>, q: &MPoly<GR>) -> Result<MPoly<RationalFunction>> {
        let required = self.reach(p, Side::Raise).min(self.reach(q, Side::Lower));
        self.require_grade(required)?;
        let mut acc: BTreeMap<Exponents, HbarPoly> = BTreeMap::new();
        for t in self.terms.iter().take_while(|t| t.grade <= required) {
            let a = self.leftinv_mono(&t.left, p);
            if a.is_zero() {
                continue;
            }
            let b = self.leftinv_mono(&t.right, q);
            for (e, c) in a.times(&b).terms {
                let slot = acc.entry(e).or_insert_with(HbarPoly::zero);
                *slot = slot.plus(&t.numer.scaled(&c));
            }
        }
        let mut out = MPoly::zero(p.size, VarKind::Entry);
        for (e, num) in acc {
            out.add_term(e, RationalFunction::new(num, self.denom.clone())?);
        }
        Ok(out)
    }

    /// π*f *' π*g for polynomials in the orbit coordinates.
    pub fn star_orbit(&self, f: &MPoly<GR>, g: &MPoly<GR>) -> Result<MPoly<RationalFunction>> {
        self.star_ambient(&self.pullback.of_poly(f), &self.pullback.of_poly(g))
    }

    /// Σ F_ab·[(S a)_O f](λ)·[(S b)_O g](λ), computed on the orbit side only.
    pub fn star_at_lambda_by_fundamental_fields(&self, f: &MPoly<GR>, g: &MPoly<GR>) -> Result<RationalFunction> {
        let mut per_term = Vec::new();
        let lam = self.spec.lambda_gl.entries();
        for (t, term) in self.terms.iter().enumerate() {
            if term.grade > self.twist.max_grade {
                break;
            }
            let a = super::orbit_side::antipode_action(&self.engine, &term.left, f);
            if a.is_zero() {
                continue;
            }
            let b = super::orbit_side::antipode_action(&self.engine, &term.right, g);
            let v = a.eval(lam).times(&b.eval(lam));
            if !v.is_zero() {
                per_term.push((t, v));
            }
        }
        Ok(self.combine(&per_term))
    }

    /// Grade bound for the first argument of a twist term on the orbit side,
    /// used to check that the truncation is sufficient.
    pub fn orbit_reach(&self, f: &MPoly<GR>, side: Side) -> usize {
        self.reach(&self.pullback.of_poly(f), side)
    }
}

/// Largest grade of a nonzero product of generator matrices of one side.
fn max_chain_grade(engine: &Engine, gens: &[(u8, usize)]) -> usize {
    let mut best = 0;
    let n = engine.spec.lie.matrix_size;
    let mut frontier: Vec<(Matrix, usize)> = vec![(Matrix::identity(n), 0)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (m, g) in &frontier {
            for &(gen, gg) in gens {
                let p = m.mul(&engine.generator(gen).matrix);
                if !p.is_zero() {
                    best = best.max(g + gg);
                    next.push((p, g + gg));
                }
            }
        }
        frontier = next;
        if frontier.len() > 4096 {
            break;
        }
    }
    best
}

/// Indices (f, g, h, point) of a failing associativity case.
pub type Triple = (usize, usize, usize, usize);

/// Cached values of leftinv words applied to a fixed family of entry polynomials,
/// at a fixed list of points.
pub struct PointValues<'a> {
    ctx: &'a StarContext,
    points: Vec<Vec<GR>>,
    funcs: Vec<MPoly<GR>>,
    symbolic: HashMap<(usize, Vec<u8>), Arc<MPoly<GR>>>,
    values: HashMap<(usize, Vec<u8>), Arc<Vec<GR>>>,
    reach: Vec<[usize; 2]>,
}

impl<'a> PointValues<'a> {
    pub fn new(ctx: &'a StarContext, funcs: Vec<MPoly<GR>>, points: &[OrbitPoint]) -> Self {
        let reach = funcs.iter().map(|f| [ctx.reach(f, Side::Raise), ctx.reach(f, Side::Lower)]).collect();
        PointValues {
            ctx,
            points: points.iter().map(|p| p.g.entries().to_vec()).collect(),
            funcs,
            symbolic: HashMap::new(),
            values: HashMap::new(),
            reach,
        }
    }

    pub fn npoints(&self) -> usize {
        self.points.len()
    }

    pub fn reach(&self, f: usize, side: Side) -> usize {
        self.reach[f][side as usize]
    }

    fn derivative(&mut self, f: usize, word: &[u8]) -> Arc<MPoly<GR>> {
        if word.is_empty() {
            return Arc::new(self.funcs[f].clone());
        }
        let key = (f, word.to_vec());
        if let Some(hit) = self.symbolic.get(&key) {
            return hit.clone();
        }
        let inner = self.derivative(f, &word[1..]);
        let out = Arc::new(if inner.is_zero() {
            MPoly::zero(inner.size, inner.kind)
        } else {
            leftinv_apply(self.ctx.matrix(word[0]), &inner)
        });
        self.symbolic.insert(key, out.clone());
        out
    }

    /// Values of leftinv(word) f at every point.
    pub fn values(&mut self, f: usize, word: &[u8]) -> Arc<Vec<GR>> {
        let key = (f, word.to_vec());
        if let Some(hit) = self.values.get(&key) {
            return hit.clone();
        }
        let d = self.derivative(f, word);
        let v: Vec<GR> = if d.is_zero() {
            vec![GR::zero(); self.points.len()]
        } else {
            self.points.iter().map(|pt| d.eval(pt)).collect()
        };
        let out = Arc::new(v);
        self.values.insert(key, out.clone());
        out
    }

    /// (f *' g) at every point, as rational functions of ħ.
    pub fn star(&mut self, f: usize, g: usize) -> Result<Vec<RationalFunction>> {
        let ctx = self.ctx;
        let required = self.reach(f, Side::Raise).min(self.reach(g, Side::Lower));
        ctx.require_grade(required)?;
        let mut per_point: Vec<Vec<(usize, GR)>> = vec![Vec::new(); self.points.len()];
        for (t, term) in ctx.terms.iter().enumerate().take_while(|(_, t)| t.grade <= required) {
            let a = self.values(f, &term.left);
            if a.iter().all(|x| x.is_zero()) {
                continue;
            }
            let b = self.values(g, &term.right);
            for (k, slot) in per_point.iter_mut().enumerate() {
                let v = a[k].times(&b[k]);
                if !v.is_zero() {
                    slot.push((t, v));
                }
            }
        }
        Ok(per_point.iter().map(|v| ctx.combine(v)).collect())
    }

    fn terms_upto(&self, grade: usize) -> usize {
        self.ctx.terms.iter().take_while(|t| t.grade <= grade).count()
    }

    /// Compares (f*g)*h and f*(g*h) at every point for all ordered triples of the
    /// loaded functions, with ħ symbolic. Returns the number of triples checked and
    /// the first failing (f, g, h, point), if any.
    pub fn associativity_scan(&mut self) -> Result<(usize, Option<Triple>)> {
        let ctx = self.ctx;
        let n = self.funcs.len();
        let npts = self.points.len();
        let rp: Vec<usize> = (0..n).map(|f| self.reach(f, Side::Raise)).collect();
        let rm: Vec<usize> = (0..n).map(|f| self.reach(f, Side::Lower)).collect();
        let (max_p, max_m) = (rp.iter().copied().max().unwrap_or(0), rm.iter().copied().max().unwrap_or(0));
        let mut needed = 0;
        for f in 0..n {
            for g in 0..n {
                needed = needed.max(rp[f].min(rm[g])).max((rp[f] + rp[g]).min(max_m)).max(rp[f].min(rm[g] + max_m));
            }
        }
        ctx.require_grade(needed)?;
        let mut iv = IntValues::new(self);
        let leg_words: [Vec<Mono>; 2] =
            [ctx.terms.iter().map(|t| t.left.clone()).collect(), ctx.terms.iter().map(|t| t.right.clone()).collect()];
        // legs[f][side][k]: values of the twist legs on f at point k, over a common denominator.
        let legs: Vec<[Vec<IntScalars>; 2]> =
            (0..n).map(|f| [iv.legs(self, f, &leg_words[0]), iv.legs(self, f, &leg_words[1])]).collect();
        let mut right_tables: Vec<Vec<Vec<IntPolys>>> = Vec::with_capacity(n);
        for g in 0..n {
            let mut row = Vec::with_capacity(n);
            for h in 0..n {
                let outer = self.terms_upto(max_p.min(rm[g] + rm[h]));
                let inner = self.terms_upto(rp[g].min(rm[h]));
                row.push(iv.distributed(self, g, h, outer, inner, true));
            }
            right_tables.push(row);
        }
        let mut checked = 0;
        for f in 0..n {
            for g in 0..n {
                let outer = self.terms_upto((rp[f] + rp[g]).min(max_m));
                let inner = self.terms_upto(rp[f].min(rm[g]));
                let left = iv.distributed(self, f, g, outer, inner, false);
                for h in 0..n {
                    checked += 1;
                    let lo = self.terms_upto((rp[f] + rp[g]).min(rm[h]));
                    let ro = self.terms_upto(rp[f].min(rm[g] + rm[h]));
                    for k in 0..npts {
                        let (l, hv) = (&left[k], &legs[h][1][k]);
                        let (r, fv) = (&right_tables[g][h][k], &legs[f][0][k]);
                        let lhs = l.dot(hv, lo);
                        let rhs = r.dot(fv, ro);
                        let ls = Complex::from(&fv.den * &r.den);
                        let rs = Complex::from(&l.den * &hv.den);
                        let len = lhs.len().max(rhs.len());
                        let zero = gauss_zero();
                        let equal = (0..len).all(|j| {
                            let a = lhs.get(j).unwrap_or(&zero);
                            let b = rhs.get(j).unwrap_or(&zero);
                            a * &ls == b * &rs
                        });
                        if !equal {
                            return Ok((checked, Some((f, g, h, k))));
                        }
                    }
                }
            }
        }
        Ok((checked, None))
    }
}

type GaussInt = Complex<BigInt>;
/// Values of one function-word pair at every point.
type PointVector = Vec<GaussInt>;

fn gauss_zero() -> GaussInt {
    Complex::new(BigInt::zero(), BigInt::zero())
}

fn is_gauss_zero(x: &GaussInt) -> bool {
    x.re.is_zero() && x.im.is_zero()
}

fn denominator_lcm<'a>(xs: impl Iterator<Item = &'a GR>) -> BigInt {
    let mut d = BigInt::one();
    for x in xs {
        d = d.lcm(x.re.denom()).lcm(x.im.denom());
    }
    d
}

fn scaled_gauss(x: &GR, d: &BigInt) -> GaussInt {
    let re = x.re.numer() * (d / x.re.denom());
    let im = x.im.numer() * (d / x.im.denom());
    Complex::new(re, im)
}

/// Exact-integer evaluation of leftinv words on the loaded functions.
///
/// A value V(f, w) at point k is stored as V·den_f·Q(w)·d_k^deg f ∈ Z[i], where den_f
/// clears the coefficients of f, Q(w) is the product of the letter denominators of w
/// and d_k clears the entries of point k. Derivations preserve degree and multiply
/// coefficient denominators by at most the letter denominator, so the scaled value
/// is integral.
struct IntValues {
    points: Vec<(Vec<GaussInt>, BigInt)>,
    fden: Vec<BigInt>,
    fdeg: Vec<usize>,
    letter_den: Vec<BigInt>,
    numers: Vec<Vec<GaussInt>>,
    nu: BigInt,
    cache: HashMap<(usize, Vec<u8>), Option<Arc<PointVector>>>,
}

impl IntValues {
    fn new(pv: &PointValues) -> Self {
        let points = pv
            .points
            .iter()
            .map(|pt| {
                let d = denominator_lcm(pt.iter());
                (pt.iter().map(|x| scaled_gauss(x, &d)).collect(), d)
            })
            .collect();
        let fden = pv.funcs.iter().map(|f| denominator_lcm(f.terms.values())).collect();
        let fdeg = pv.funcs.iter().map(|f| f.degree()).collect();
        let letter_den =
            (0..pv.ctx.engine.generators().len()).map(|g| denominator_lcm(pv.ctx.matrix(g as u8).entries().iter())).collect();
        let nu = denominator_lcm(pv.ctx.terms.iter().flat_map(|t| t.numer.coeffs().iter()));
        let numers = pv.ctx.terms.iter().map(|t| t.numer.coeffs().iter().map(|c| scaled_gauss(c, &nu)).collect()).collect();
        IntValues { points, fden, fdeg, letter_den, numers, nu, cache: HashMap::new() }
    }

    fn word_den(&self, w: &[u8]) -> BigInt {
        w.iter().fold(BigInt::one(), |acc, &g| acc * &self.letter_den[g as usize])
    }

    /// Scaled values of leftinv(word) f at every point; None when identically zero.
    fn values(&mut self, pv: &mut PointValues, f: usize, word: &[u8]) -> Option<Arc<Vec<GaussInt>>> {
        let key = (f, word.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let d = pv.derivative(f, word);
        let out = if d.is_zero() {
            None
        } else {
            let scale = &self.fden[f] * self.word_den(word);
            let deg = self.fdeg[f];
            let terms: Vec<(&Exponents, GaussInt, usize)> = d
                .terms
                .iter()
                .map(|(e, c)| (e, scaled_gauss(c, &scale), e.iter().map(|&x| x as usize).sum::<usize>()))
                .collect();
            let vals: Vec<GaussInt> = self
                .points
                .iter()
                .map(|(g, dk)| {
                    let mut acc = gauss_zero();
                    for (e, c, tdeg) in &terms {
                        let mut m = c.clone();
                        for (x, &k) in g.iter().zip(e.iter()) {
                            for _ in 0..k {
                                m *= x;
                            }
                        }
                        for _ in *tdeg..deg {
                            m = m.scale(dk.clone());
                        }
                        acc += m;
                    }
                    acc
                })
                .collect();
            if vals.iter().all(is_gauss_zero) {
                None
            } else {
                Some(Arc::new(vals))
            }
        };
        self.cache.insert(key, out.clone());
        out
    }

    /// d_k^deg for every point.
    fn point_scale(&self, deg: usize) -> Vec<BigInt> {
        self.points.iter().map(|(_, d)| num_traits::pow(d.clone(), deg)).collect()
    }

    /// The twist legs (one word per term) applied to f, per point over a common denominator.
    fn legs(&mut self, pv: &mut PointValues, f: usize, words: &[Mono]) -> Vec<IntScalars> {
        let lq = words.iter().fold(BigInt::one(), |acc, w| acc.lcm(&self.word_den(w)));
        let cols: Vec<Option<(Arc<Vec<GaussInt>>, BigInt)>> = words
            .iter()
            .map(|w| self.values(pv, f, w).map(|v| (v, &lq / self.word_den(w))))
            .collect();
        let dpow = self.point_scale(self.fdeg[f]);
        (0..self.points.len())
            .map(|k| IntScalars {
                vals: cols
                    .iter()
                    .map(|c| match c {
                        Some((v, m)) => v[k].scale(m.clone()),
                        None => gauss_zero(),
                    })
                    .collect(),
                den: &self.fden[f] * &lq * &dpow[k],
            })
            .collect()
    }

    /// For each point and outer term t': F_t'·Σ_t F_t·Σ_S (a'_S a_t · f)(a'_Sᶜ b_t · g),
    /// i.e. the outer left leg distributed over the inner product f*g. With `right`
    /// set, the outer right leg is distributed over g*h instead.
    fn distributed(&mut self, pv: &mut PointValues, f: usize, g: usize, outer_max: usize, inner_max: usize, right: bool) -> Vec<IntPolys> {
        let ctx = pv.ctx;
        let terms = &ctx.terms;
        let npts = self.points.len();
        let outer_den: Vec<BigInt> =
            terms[..outer_max].iter().map(|t| self.word_den(if right { &t.right } else { &t.left })).collect();
        let inner_den: Vec<BigInt> =
            terms[..inner_max].iter().map(|t| self.word_den(&t.left) * self.word_den(&t.right)).collect();
        let qcap = outer_den.iter().fold(BigInt::one(), |a, q| a.lcm(q)) * inner_den.iter().fold(BigInt::one(), |a, q| a.lcm(q));
        let mut polys: Vec<Vec<Vec<GaussInt>>> = vec![Vec::with_capacity(outer_max); npts];
        for to in 0..outer_max {
            let outer = &terms[to];
            let leg = if right { &outer.right } else { &outer.left };
            let splits = splittings(leg);
            let mut acc: Vec<Vec<GaussInt>> = vec![Vec::new(); npts];
            for (ti, inner) in terms[..inner_max].iter().enumerate() {
                let mut sum = vec![gauss_zero(); npts];
                let mut any = false;
                for (sub, rest) in &splits {
                    let Some(fv) = self.values(pv, f, &concat(sub, &inner.left)) else { continue };
                    let Some(gv) = self.values(pv, g, &concat(rest, &inner.right)) else { continue };
                    for k in 0..npts {
                        if !is_gauss_zero(&fv[k]) && !is_gauss_zero(&gv[k]) {
                            sum[k] += &fv[k] * &gv[k];
                            any = true;
                        }
                    }
                }
                if !any {
                    continue;
                }
                let mult = &qcap / (&outer_den[to] * &inner_den[ti]);
                let nt = &self.numers[ti];
                for k in 0..npts {
                    if is_gauss_zero(&sum[k]) {
                        continue;
                    }
                    let s = sum[k].scale(mult.clone());
                    if acc[k].len() < nt.len() {
                        acc[k].resize(nt.len(), gauss_zero());
                    }
                    for (a, c) in acc[k].iter_mut().zip(nt) {
                        *a += c * &s;
                    }
                }
            }
            let no = &self.numers[to];
            for k in 0..npts {
                polys[k].push(poly_mul(&acc[k], no));
            }
        }
        let base = &self.nu * &self.nu * &self.fden[f] * &self.fden[g] * &qcap;
        let dpow = self.point_scale(self.fdeg[f] + self.fdeg[g]);
        polys.into_iter().zip(dpow).map(|(polys, d)| IntPolys { polys, den: &base * d }).collect()
    }
}

fn poly_mul(a: &[GaussInt], b: &[GaussInt]) -> Vec<GaussInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![gauss_zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if is_gauss_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Gaussian-rational scalars written as Gaussian integers over one denominator.
struct IntScalars {
    vals: Vec<GaussInt>,
    den: BigInt,
}

/// Polynomials in ħ over Q(i) written with Gaussian-integer coefficients over one denominator.
struct IntPolys {
    polys: Vec<Vec<GaussInt>>,
    den: BigInt,
}

impl IntPolys {
    /// Σ_{t < upto} polys[t]·vals[t].
    fn dot(&self, s: &IntScalars, upto: usize) -> Vec<GaussInt> {
        let mut acc: Vec<GaussInt> = Vec::new();
        for (p, v) in self.polys.iter().zip(&s.vals).take(upto) {
            if is_gauss_zero(v) {
                continue;
            }
            if acc.len() < p.len() {
                acc.resize(p.len(), gauss_zero());
            }
            for (a, c) in acc.iter_mut().zip(p) {
                *a += c * v;
            }
        }
        acc
    }
}

/// All ways of splitting a word into two complementary subsequences.
fn splittings(w: &[u8]) -> Vec<(Vec<u8>, Vec<u8>)> {
    (0u32..(1 << w.len()))
        .map(|mask| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &x) in w.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            (a, b)
        })
        .collect()
}

fn concat(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}
