//! C ABI over `isospec`.
//!
//! Every function returns an [`IsospecStatus`]. On anything other than
//! `ISOSPEC_STATUS_OK` a message is available from [`isospec_last_error`] on the
//! same thread. Strings handed out by the library are owned by the caller and
//! must be released with [`isospec_string_free`]; polynomial handles with
//! [`isospec_poly_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_int};

use isospec::cli::{self, Format, GroupArg};
use isospec::poly::{parse_poly_in, Poly, Vars};
use isospec::suites::{run, Suite, SuiteConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsospecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    /// The computation ran and at least one check failed.
    CheckFailed = 4,
    Panic = 5,
}

/// Opaque polynomial with rational coefficients.
pub struct IsospecPoly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(IsospecStatus, String);

impl Fail {
    fn input(msg: impl ToString) -> Self {
        Fail(IsospecStatus::InvalidInput, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<IsospecStatus, Fail>) -> IsospecStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            IsospecStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(IsospecStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(IsospecStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(IsospecStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail::input("output contains a NUL byte"))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn poly_ref<'a>(p: *const IsospecPoly, what: &str) -> Result<&'a Poly, Fail> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Fail(IsospecStatus::NullPointer, format!("{what} is null")))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn isospec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn isospec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial; its variables are the identifiers that occur in
/// `text`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_parse(text: *const c_char, out: *mut *mut IsospecPoly) -> IsospecStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(Fail(IsospecStatus::NullPointer, "output pointer is null".into()));
        }
        let p = parse_poly_in(text, &[]).map_err(Fail::input)?;
        *out = Box::into_raw(Box::new(IsospecPoly(p)));
        Ok(IsospecStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_free(p: *mut IsospecPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_to_string(p: *const IsospecPoly, out: *mut *mut c_char) -> IsospecStatus {
    guard(|| {
        out_string(out, poly_ref(p, "poly")?.to_string())?;
        Ok(IsospecStatus::Ok)
    })
}

/// 1 if the polynomial is zero, 0 otherwise, -1 on a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_is_zero(p: *const IsospecPoly) -> c_int {
    p.as_ref().map_or(-1, |h| c_int::from(h.0.is_zero()))
}

fn common(a: &Poly, b: &Poly) -> Result<(Poly, Poly), Fail> {
    let vars = Vars::default_order(a.vars().names().iter().chain(b.vars().names()).cloned());
    Ok((
        a.embed(&vars).map_err(Fail::input)?,
        b.embed(&vars).map_err(Fail::input)?,
    ))
}

unsafe fn binary(
    a: *const IsospecPoly,
    b: *const IsospecPoly,
    out: *mut *mut IsospecPoly,
    op: fn(&Poly, &Poly) -> Poly,
) -> IsospecStatus {
    guard(|| {
        let (a, b) = common(poly_ref(a, "lhs")?, poly_ref(b, "rhs")?)?;
        if out.is_null() {
            return Err(Fail(IsospecStatus::NullPointer, "output pointer is null".into()));
        }
        *out = Box::into_raw(Box::new(IsospecPoly(op(&a, &b))));
        Ok(IsospecStatus::Ok)
    })
}

/// Sum in the union of both variable sets.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_add(
    a: *const IsospecPoly,
    b: *const IsospecPoly,
    out: *mut *mut IsospecPoly,
) -> IsospecStatus {
    binary(a, b, out, |x, y| x + y)
}

/// # Safety
/// As for [`isospec_poly_add`].
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_sub(
    a: *const IsospecPoly,
    b: *const IsospecPoly,
    out: *mut *mut IsospecPoly,
) -> IsospecStatus {
    binary(a, b, out, |x, y| x - y)
}

/// # Safety
/// As for [`isospec_poly_add`].
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_mul(
    a: *const IsospecPoly,
    b: *const IsospecPoly,
    out: *mut *mut IsospecPoly,
) -> IsospecStatus {
    binary(a, b, out, |x, y| x * y)
}

/// 1 if equal after embedding both in a common context, 0 if not, -1 on a
/// null handle.
///
/// # Safety
/// `a`, `b` must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn isospec_poly_equal(a: *const IsospecPoly, b: *const IsospecPoly) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => common(&a.0, &b.0).map_or(-1, |(x, y)| c_int::from(x == y)),
        _ => -1,
    }
}

fn report_status(code: i32) -> IsospecStatus {
    match code {
        cli::EXIT_OK => IsospecStatus::Ok,
        cli::EXIT_CHECK_FAILED => IsospecStatus::CheckFailed,
        _ => IsospecStatus::InvalidInput,
    }
}

fn finish(o: cli::Outcome, out: *mut *mut c_char) -> Result<IsospecStatus, Fail> {
    let status = report_status(o.code);
    if status == IsospecStatus::InvalidInput {
        return Err(Fail::input(o.stderr.trim_end()));
    }
    out_string(out, o.stdout)?;
    if status == IsospecStatus::CheckFailed {
        set_error("at least one check failed");
    }
    Ok(status)
}

/// Isogeny report for two traceless fields given as "a,b,c" or "a,b,c,d",
/// as line-delimited JSON records.
///
/// # Safety
/// `phi1`, `phi2` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isospec_isogeny(
    phi1: *const c_char,
    phi2: *const c_char,
    out: *mut *mut c_char,
) -> IsospecStatus {
    guard(|| {
        let (a, b) = (read_str(phi1, "phi1")?, read_str(phi2, "phi2")?);
        finish(cli::isogeny(a, b, Format::Structured), out)
    })
}

/// Strata rows as line-delimited JSON. `group` is "sl4" or "so4"; `dprime`
/// only affects SO(4).
///
/// # Safety
/// `group` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isospec_strata(
    group: *const c_char,
    genus: u32,
    dprime: i64,
    out: *mut *mut c_char,
) -> IsospecStatus {
    guard(|| {
        let group = match read_str(group, "group")? {
            "sl4" => GroupArg::Sl4,
            "so4" => GroupArg::So4,
            other => return Err(Fail::input(format!("unknown group `{other}`"))),
        };
        if genus < 2 {
            return Err(Fail::input("genus must be at least 2"));
        }
        finish(cli::strata(group, genus, dprime, Format::Structured), out)
    })
}

/// Runs a verification suite ("all", "ring", "matrix", "geometry",
/// "numerology") and writes the line-delimited JSON report.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isospec_verify(
    suite: *const c_char,
    genus: u32,
    trunc: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> IsospecStatus {
    guard(|| {
        let suite: Suite = read_str(suite, "suite")?.parse().map_err(Fail::input)?;
        if genus < 2 || trunc < 4 {
            return Err(Fail::input("genus must be at least 2 and trunc at least 4"));
        }
        let report = run(suite, &SuiteConfig { genus, trunc, seed });
        let code = if report.has_failures() {
            cli::EXIT_CHECK_FAILED
        } else {
            cli::EXIT_OK
        };
        finish(
            cli::Outcome {
                code,
                stdout: report.to_json_lines(),
                stderr: String::new(),
            },
            out,
        )
    })
}
