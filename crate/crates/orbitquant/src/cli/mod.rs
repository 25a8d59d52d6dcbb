//! Batch front-end: build specs, compute twists and products, run verification suites.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::algebra_core::{parse_rational, GaussianRational as GR, Ring, Q};
use crate::analysis::{continuity_sweep, positivity_check, wick_rotation_check};
use crate::error::{Error, Result};
use crate::lie_structure::{load_spec_json, OrbitSpec, TypeAOrdering};
use crate::starprod::{
    ensure, mpoly_from_json, orbit_generators, pair_grade, point_eval, sample_orbit_points, verify_associativity,
    verify_first_order_bracket, MPoly, Side, StarContext, VarKind,
};
use crate::twist::{build_twist, closed_form_check, pole_set, type_a_shape, verify_canonical};

#[derive(Parser, Debug)]
#[command(name = "orbitquant", version, about = "Exact star products on semisimple coadjoint orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Truncated twist with its pole list.
    Twist(RunConfig),
    /// Star product of two polynomials (JSON), with values at sampled orbit points.
    Star {
        #[command(flatten)]
        config: RunConfig,
        /// First factor: JSON file, or "-" for stdin.
        #[arg(long)]
        f: Option<String>,
        /// Second factor: JSON file, or "-" for stdin.
        #[arg(long)]
        g: Option<String>,
    },
    /// Runs one verification suite; exits with 1 on failure.
    Verify {
        suite: Suite,
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Canonical,
    Associativity,
    Kks,
    Closedform,
    Poles,
    Continuity,
    Positivity,
    Wick,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Suite as ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl std::str::FromStr for RealForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <RealForm as ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("unknown real form {s:?}")))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealForm {
    Compact,
    Noncompact,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Built-in type A orbit of sl(n+1) through λ = −i·r·E₀₀.
    #[arg(long = "type-a", value_name = "N")]
    pub type_a: Option<usize>,
    /// Scale r of the built-in orbit (nonzero rational).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub r: String,
    #[arg(long, value_enum, default_value = "standard")]
    pub ordering: OrderingArg,
    /// Orbit description as JSON instead of a built-in orbit.
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Maximal twist grade (word length for the canonical suite).
    #[arg(long)]
    pub grade: Option<usize>,
    /// Number of sampled orbit points.
    #[arg(long, default_value_t = 16)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Numeric ħ (Gaussian rational such as 1/7 or 1/2+3i), or "symbolic".
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    pub hbar: String,
    /// Degree of generator or monomial families.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Radius R of the T₀-norm.
    #[arg(long, default_value = "1")]
    pub radius: String,
    /// Real form used for conjugation in the positivity suite.
    /// Defaults to noncompact for built-in orbits; a JSON spec keeps its own labels.
    #[arg(long = "real-form", value_enum)]
    pub real_form: Option<RealForm>,
    /// Machine-readable JSON output.
    #[arg(long)]
    pub json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingArg {
    Standard,
    Opposite,
}

impl RunConfig {
    fn r(&self) -> Result<Q> {
        let r = parse_rational(&self.r)?;
        if r == Q::from_integer(0.into()) {
            return Err(Error::InvalidSpec("r must be nonzero".into()));
        }
        Ok(r)
    }

    fn ordering(&self) -> TypeAOrdering {
        match self.ordering {
            OrderingArg::Standard => TypeAOrdering::Standard,
            OrderingArg::Opposite => TypeAOrdering::Opposite,
        }
    }

    fn spec(&self) -> Result<OrbitSpec> {
        match (&self.spec, self.type_a) {
            (Some(_), Some(_)) => Err(Error::InvalidSpec("give either --spec or --type-a, not both".into())),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                load_spec_json(&text)
            }
            (None, Some(n)) => OrbitSpec::type_a(n, self.r()?, self.ordering()),
            (None, None) => Err(Error::InvalidSpec("no orbit given: use --type-a N or --spec PATH".into())),
        }
    }

    fn hbar(&self) -> Result<Option<GR>> {
        if self.hbar == "symbolic" {
            Ok(None)
        } else {
            GR::parse(&self.hbar).map(Some)
        }
    }
}

/// Computation parameters shared by the command line and the C ABI.
#[derive(Debug, Clone)]
pub struct Options {
    pub grade: Option<usize>,
    pub points: usize,
    pub seed: u64,
    pub hbar: Option<GR>,
    pub degree: Option<usize>,
    pub radius: Q,
    /// Real form imposed on a built-in type A orbit; None keeps the spec's own labels.
    pub real_form: Option<RealForm>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            grade: None,
            points: 16,
            seed: 0,
            hbar: None,
            degree: None,
            radius: Q::from_integer(1.into()),
            real_form: None,
        }
    }
}

impl RunConfig {
    fn options(&self) -> Result<Options> {
        Ok(Options {
            grade: self.grade,
            points: self.points,
            seed: self.seed,
            hbar: self.hbar()?,
            degree: self.degree,
            radius: parse_rational(&self.radius)?,
            real_form: self.real_form.or(self.type_a.map(|_| RealForm::Noncompact)),
        })
    }
}

/// Rejects a numeric ħ lying in the pole set, naming the weight responsible.
fn check_not_pole(spec: &OrbitSpec, grade: usize, h: &GR) -> Result<()> {
    if let Some((_, mu)) = pole_set(spec, grade)?.into_iter().find(|(p, _)| p == h) {
        return Err(Error::PoleHit { at: format!("{h} (weight {mu})") });
    }
    Ok(())
}

pub fn poles_json(spec: &OrbitSpec, grade: usize) -> Result<Value> {
    Ok(pole_set(spec, grade)?
        .into_iter()
        .map(|(h, mu)| json!({ "hbar": h, "weight": mu.to_string() }))
        .collect())
}

/// The truncated twist (default grade 2) together with its pole list.
pub fn twist_json(spec: &OrbitSpec, opts: &Options) -> Result<Value> {
    let grade = opts.grade.unwrap_or(2);
    let twist = build_twist(spec, grade)?;
    Ok(json!({ "twist": twist.to_json(), "poles": poles_json(spec, grade)? }))
}

fn read_source(src: &str, stdin: &mut Option<String>) -> Result<String> {
    if src == "-" {
        if stdin.is_none() {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            *stdin = Some(s);
        }
        return Ok(stdin.clone().unwrap_or_default());
    }
    std::fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

/// Reads the two factors. A single stdin payload may hold both as [f, g] or {"f": …, "g": …}.
fn read_factors(f: Option<&str>, g: Option<&str>) -> Result<(Value, Value)> {
    let mut stdin = None;
    let parse = |s: &str| serde_json::from_str::<Value>(s).map_err(|e| Error::Parse(e.to_string()));
    match (f, g) {
        (Some(f), Some(g)) if f != "-" || g != "-" => {
            Ok((parse(&read_source(f, &mut stdin)?)?, parse(&read_source(g, &mut stdin)?)?))
        }
        _ => {
            let v = parse(&read_source("-", &mut stdin)?)?;
            match v {
                Value::Array(mut a) if a.len() == 2 => {
                    let g = a.pop().expect("two entries");
                    Ok((a.pop().expect("two entries"), g))
                }
                Value::Object(ref o) if o.contains_key("f") && o.contains_key("g") => Ok((o["f"].clone(), o["g"].clone())),
                _ => Err(Error::Parse("stdin must hold [f, g] or {\"f\": …, \"g\": …}".into())),
            }
        }
    }
}

fn numeric_poly(v: &Value) -> Result<MPoly<GR>> {
    mpoly_from_json(v)?
        .as_constant_coeffs()
        .ok_or_else(|| Error::Parse("input coefficients must not depend on ħ".into()))
}

/// Ambient representative of f * g and its values at sampled orbit points. Inputs in
/// coordinate variables are pulled back first.
pub fn star_json(spec: &OrbitSpec, fj: &Value, gj: &Value, opts: &Options) -> Result<Value> {
    let (f, g) = (numeric_poly(fj)?, numeric_poly(gj)?);
    let n = spec.lie.matrix_size;
    if f.size != n || g.size != n || f.kind != g.kind {
        return Err(Error::Parse(format!("both factors must use the same {n}×{n} variables")));
    }
    let probe = StarContext::new(&build_twist(spec, 0)?);
    let lift = |p: &MPoly<GR>| if p.kind == VarKind::Coord { probe.pullback.of_poly(p) } else { p.clone() };
    let (pf, pg) = (lift(&f), lift(&g));
    let needed = probe.reach(&pf, Side::Raise).min(probe.reach(&pg, Side::Lower));
    let grade = opts.grade.unwrap_or(needed);
    let ctx = StarContext::new(&build_twist(spec, grade)?);
    let product = ctx.star_ambient(&pf, &pg)?;
    let h = &opts.hbar;
    if let Some(h) = h {
        check_not_pole(spec, grade, h)?;
    }
    let points = sample_orbit_points(spec, opts.points, opts.seed);
    let values = points
        .iter()
        .map(|pt| {
            let v = point_eval(&product, pt);
            Ok(match h {
                Some(h) => json!({ "point": pt.group_word, "value": v.eval(h)? }),
                None => json!({ "point": pt.group_word, "value": v }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let representative = match h {
        Some(h) => to_value(&product.at_hbar(h)?)?,
        None => to_value(&product)?,
    };
    Ok(json!({
        "spec": spec.label,
        "twist_grade": grade,
        "hbar": h.as_ref().map_or_else(|| "symbolic".to_string(), |h| h.to_string()),
        "product": representative,
        "values": values,
    }))
}

/// Compactness labels of the built-in type A real forms: compact means u(n+1),
/// noncompact means u(1, n), where a root is noncompact iff it links index 0 to the rest.
fn type_a_real_form(spec: &OrbitSpec, form: RealForm) -> Result<OrbitSpec> {
    let flags = spec
        .lie
        .root_vectors
        .iter()
        .map(|x| {
            let (a, b, _) = x.nonzero().next().ok_or_else(|| Error::InvalidSpec("zero root vector".into()))?;
            Ok(form == RealForm::Compact || (a == 0) == (b == 0))
        })
        .collect::<Result<Vec<_>>>()?;
    spec.clone().with_compactness(flags)
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| Error::Parse(e.to_string()))
}

/// Runs one verification suite and returns its report; a failed check is an error
/// carrying the first witness.
pub fn verify_json(spec: &OrbitSpec, suite: Suite, opts: &Options) -> Result<Value> {
    match suite {
        Suite::Canonical => to_value(&verify_canonical(spec, opts.grade.unwrap_or(3))?),
        Suite::Associativity => {
            to_value(&ensure(verify_associativity(spec, opts.degree.unwrap_or(2), opts.points, opts.seed)?)?)
        }
        Suite::Kks => to_value(&ensure(verify_first_order_bracket(spec)?)?),
        Suite::Closedform => to_value(&closed_form_check(spec, opts.grade.unwrap_or(4))?),
        Suite::Poles => {
            let grade = opts.grade.unwrap_or(8);
            if pole_set(spec, grade)?.iter().any(|(h, _)| h.is_zero()) {
                return Err(Error::IdentityFailed("pole at ħ = 0".into()));
            }
            Ok(json!({ "pass": true, "spec": spec.label, "max_grade": grade, "poles": poles_json(spec, grade)? }))
        }
        Suite::Continuity => {
            let h = match &opts.hbar {
                Some(h) => h.clone(),
                None => GR::real(type_a_shape(spec)?.1 / Q::from_integer(7.into())),
            };
            let rep = continuity_sweep(spec, &h, &opts.radius, opts.degree.unwrap_or(3))?;
            if !rep.pass {
                return Err(Error::IdentityFailed(format!("continuity: worst ratio {}", rep.worst_ratio)));
            }
            to_value(&rep)
        }
        Suite::Positivity => {
            let spec = match opts.real_form {
                Some(form) => type_a_real_form(spec, form)?,
                None => spec.clone(),
            };
            let h = match &opts.hbar {
                Some(h) if h.is_real() => h.re.clone(),
                Some(h) => return Err(Error::InvalidSpec(format!("positivity needs a real ħ, got {h}"))),
                None => type_a_shape(&spec)?.1.abs() / Q::from_integer(10.into()),
            };
            let fs = orbit_generators(&spec, opts.degree.unwrap_or(2));
            check_not_pole(&spec, pair_grade(&spec, &fs)?.max(1), &GR::real(h.clone()))?;
            to_value(&positivity_check(&spec, &h, &fs)?)
        }
        Suite::Wick => {
            let (n, r, _) = type_a_shape(spec)?;
            to_value(&wick_rotation_check(n, &r, opts.grade.unwrap_or(3))?)
        }
    }
}

/// Plain-text rendering: one `key: value` line per top-level field.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Array(a) => format!("{k}: {} entries", a.len()),
                Value::Object(_) => format!("{k}: {x}"),
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(config: &RunConfig, v: &Value) -> Result<()> {
    let text = if config.json {
        serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        render_text(v)
    };
    match &config.output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Parse(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("ORBITQUANT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    configure_threads();
    let (config, outcome) = match &cli.command {
        Command::Twist(c) => (c, c.spec().and_then(|spec| twist_json(&spec, &c.options()?))),
        Command::Star { config, f, g } => (
            config,
            config.spec().and_then(|spec| {
                let (fj, gj) = read_factors(f.as_deref(), g.as_deref())?;
                star_json(&spec, &fj, &gj, &config.options()?)
            }),
        ),
        Command::Verify { suite, config } => {
            (config, config.spec().and_then(|spec| verify_json(&spec, *suite, &config.options()?)))
        }
    };
    match outcome.and_then(|v| emit(config, &v)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses arguments and runs; clap usage errors exit with 2.
pub fn main_with_args<I: IntoIterator<Item = T>, T: Into<OsString> + Clone>(args: I) -> i32 {
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("orbitquant").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn grade_zero_twist_is_the_unit() {
        let cli = parse(&["twist", "--type-a", "1", "--grade", "0"]);
        let Command::Twist(c) = &cli.command else { panic!() };
        let v = twist_json(&c.spec().unwrap(), &c.options().unwrap()).unwrap();
        assert_eq!(v["twist"]["terms"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn unit_times_unit() {
        let cli = parse(&["star", "--type-a", "1", "--hbar", "1/7", "--points", "2"]);
        let Command::Star { config, .. } = &cli.command else { panic!() };
        let one = serde_json::to_value(MPoly::<GR>::one(2, VarKind::Coord).to_rf()).unwrap();
        let f = tempfile_json(&one, "one_f");
        let (fj, gj) = read_factors(Some(&f), Some(&f)).unwrap();
        let v = star_json(&config.spec().unwrap(), &fj, &gj, &config.options().unwrap()).unwrap();
        assert_eq!(v["values"][1]["value"], serde_json::to_value(GR::one()).unwrap());
    }

    #[test]
    fn numeric_hbar_at_a_pole_is_rejected() {
        let cli = parse(&["star", "--type-a", "1", "--hbar", "1", "--grade", "2"]);
        let Command::Star { config, .. } = &cli.command else { panic!() };
        let x = serde_json::to_value(MPoly::<GR>::var(2, VarKind::Coord, 0, 1).to_rf()).unwrap();
        let f = tempfile_json(&x, "pole_f");
        let (fj, gj) = read_factors(Some(&f), Some(&f)).unwrap();
        let err = star_json(&config.spec().unwrap(), &fj, &gj, &config.options().unwrap()).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn missing_orbit_is_a_spec_error() {
        let cli = parse(&["verify", "poles"]);
        let Command::Verify { config, .. } = &cli.command else { panic!() };
        assert_eq!(config.spec().unwrap_err().exit_code(), 2);
    }

    fn tempfile_json(v: &Value, name: &str) -> String {
        let path = std::env::temp_dir().join(format!("orbitquant_cli_{name}_{}.json", std::process::id()));
        std::fs::write(&path, v.to_string()).unwrap();
        path.to_string_lossy().into_owned()
    }
}
