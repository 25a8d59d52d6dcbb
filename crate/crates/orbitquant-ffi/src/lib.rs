//! C ABI over the orbitquant engine.
//!
//! Specs and twists are opaque handles. Every call returns an [`OqStatus`]; results
//! come back through out-pointers as JSON strings owned by the caller and released
//! with [`oq_string_free`]. After a non-zero status, [`oq_last_error_message`] holds
//! the message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbitquant::algebra_core::{parse_rational, GaussianRational as GR};
use orbitquant::cli::{poles_json, star_json, twist_json, verify_json, Options, RealForm, Suite};
use orbitquant::lie_structure::{load_spec_json, OrbitSpec, TypeAOrdering};
use orbitquant::twist::{build_twist, TruncatedTwist};
use orbitquant::Error;
use serde_json::Value;

/// Status codes. Values 0 to 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OqStatus {
    Ok = 0,
    VerifyFailed = 1,
    InvalidInput = 2,
    IdenticallyZeroFactor = 3,
    PoleHit = 4,
    NullPointer = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

/// An orbit specification.
pub struct OqSpec(OrbitSpec);

/// A truncated twist together with the spec it was built from.
pub struct OqTwist {
    spec: OrbitSpec,
    twist: TruncatedTwist,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(OqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            2 => OqStatus::InvalidInput,
            3 => OqStatus::IdenticallyZeroFactor,
            4 => OqStatus::PoleHit,
            _ => OqStatus::VerifyFailed,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OqStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure(OqStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            OqStatus::Ok
        }
        Err(Failure(status, msg)) => {
            set_last_error(&msg);
            status
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(OqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OqStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(OqStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(OqStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Result<(), Failure> {
    let s = CString::new(v.to_string()).map_err(|e| Failure(OqStatus::Panic, e.to_string()))?;
    write_out(out, s.into_raw())
}

fn parse_json(s: &str, what: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| Failure(OqStatus::InvalidInput, format!("{what}: {e}")))
}

fn invalid(msg: String) -> Failure {
    Failure(OqStatus::InvalidInput, msg)
}

/// Reads {"grade", "points", "seed", "hbar", "degree", "radius", "real_form"}; every key is optional.
fn parse_options(p: *const c_char) -> Result<Options, Failure> {
    let mut opts = Options::default();
    if p.is_null() {
        return Ok(opts);
    }
    let v = parse_json(unsafe { text(p, "options")? }, "options")?;
    let obj = v.as_object().ok_or_else(|| invalid("options must be a JSON object".into()))?;
    let uint = |key: &str| -> Result<Option<u64>, Failure> {
        obj.get(key)
            .map(|x| x.as_u64().ok_or_else(|| invalid(format!("option {key} must be a non-negative integer"))))
            .transpose()
    };
    let string = |key: &str| -> Result<Option<String>, Failure> {
        obj.get(key)
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(invalid(format!("option {key} must be a string or number"))),
            })
            .transpose()
    };
    for key in obj.keys() {
        if !["grade", "points", "seed", "hbar", "degree", "radius", "real_form"].contains(&key.as_str()) {
            return Err(invalid(format!("unknown option {key:?}")));
        }
    }
    opts.grade = uint("grade")?.map(|g| g as usize);
    opts.degree = uint("degree")?.map(|d| d as usize);
    if let Some(p) = uint("points")? {
        opts.points = p as usize;
    }
    if let Some(s) = uint("seed")? {
        opts.seed = s;
    }
    if let Some(h) = string("hbar")? {
        if h != "symbolic" {
            opts.hbar = Some(GR::parse(&h)?);
        }
    }
    if let Some(r) = string("radius")? {
        opts.radius = parse_rational(&r)?;
    }
    if let Some(f) = string("real_form")? {
        opts.real_form = Some(f.parse::<RealForm>()?);
    }
    Ok(opts)
}

/// Built-in type A orbit through −i·r·E00 in gl(n+1). `r` is a rational such as "3/2".
///
/// # Safety
/// `r` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_spec_type_a(n: u32, r: *const c_char, opposite: bool, out: *mut *mut OqSpec) -> OqStatus {
    guard(|| {
        let r = parse_rational(text(r, "r")?)?;
        let ordering = if opposite { TypeAOrdering::Opposite } else { TypeAOrdering::Standard };
        let spec = OrbitSpec::type_a(n as usize, r, ordering)?;
        write_out(out, Box::into_raw(Box::new(OqSpec(spec))))
    })
}

/// Parses an orbit spec from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_spec_from_json(json: *const c_char, out: *mut *mut OqSpec) -> OqStatus {
    guard(|| {
        let spec = load_spec_json(text(json, "spec")?)?;
        write_out(out, Box::into_raw(Box::new(OqSpec(spec))))
    })
}

/// # Safety
/// `spec` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn oq_spec_free(spec: *mut OqSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Builds the twist truncated at `max_grade`.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_twist_build(spec: *const OqSpec, max_grade: u32, out: *mut *mut OqTwist) -> OqStatus {
    guard(|| {
        let spec = &handle(spec, "spec")?.0;
        let twist = build_twist(spec, max_grade as usize)?;
        write_out(out, Box::into_raw(Box::new(OqTwist { spec: spec.clone(), twist })))
    })
}

/// Twist terms and the pole list up to its grade, as JSON.
///
/// # Safety
/// `twist` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_twist_to_json(twist: *const OqTwist, out: *mut *mut c_char) -> OqStatus {
    guard(|| {
        let t = handle(twist, "twist")?;
        let poles = poles_json(&t.spec, t.twist.max_grade)?;
        write_json(out, &serde_json::json!({ "twist": t.twist.to_json(), "poles": poles }))
    })
}

/// # Safety
/// `twist` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn oq_twist_free(twist: *mut OqTwist) {
    if !twist.is_null() {
        drop(Box::from_raw(twist));
    }
}

/// Twist built from a spec and an options object in one call, as JSON.
///
/// # Safety
/// `spec` must be a live handle, `options` null or a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn oq_twist_json(spec: *const OqSpec, options: *const c_char, out: *mut *mut c_char) -> OqStatus {
    guard(|| {
        let spec = &handle(spec, "spec")?.0;
        write_json(out, &twist_json(spec, &parse_options(options)?)?)
    })
}

/// Values of ħ up to `max_grade` at which the twist has a pole, as JSON.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_pole_set_json(spec: *const OqSpec, max_grade: u32, out: *mut *mut c_char) -> OqStatus {
    guard(|| {
        let spec = &handle(spec, "spec")?.0;
        write_json(out, &poles_json(spec, max_grade as usize)?)
    })
}

/// Star product of two polynomials given in their JSON form.
///
/// # Safety
/// `spec` must be a live handle, `f` and `g` NUL-terminated strings, `options` null or
/// a NUL-terminated string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_star_json(
    spec: *const OqSpec,
    f: *const c_char,
    g: *const c_char,
    options: *const c_char,
    out: *mut *mut c_char,
) -> OqStatus {
    guard(|| {
        let spec = &handle(spec, "spec")?.0;
        let f = parse_json(text(f, "f")?, "f")?;
        let g = parse_json(text(g, "g")?, "g")?;
        write_json(out, &star_json(spec, &f, &g, &parse_options(options)?)?)
    })
}

/// Runs a verification suite by name, e.g. "associativity" or "wick". A failed check
/// returns `VerifyFailed` with the witness in the last error message.
///
/// # Safety
/// `spec` must be a live handle, `suite` a NUL-terminated string, `options` null or a
/// NUL-terminated string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oq_verify_json(
    spec: *const OqSpec,
    suite: *const c_char,
    options: *const c_char,
    out: *mut *mut c_char,
) -> OqStatus {
    guard(|| {
        let spec = &handle(spec, "spec")?.0;
        let suite: Suite = text(suite, "suite")?.parse()?;
        write_json(out, &verify_json(spec, suite, &parse_options(options)?)?)
    })
}

/// # Safety
/// `s` must be a string returned by this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn oq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn oq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
