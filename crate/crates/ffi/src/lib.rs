//! C ABI over `itder`.
//!
//! Derivation tables are passed as opaque [`ItderHd`] handles. Every entry
//! point returns an [`ItderStatus`]; on failure a message is available from
//! [`itder_last_error`] until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! must be released with [`itder_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use itder::algebra::gf::Gf2;
use itder::cli::{point_calc, Format, PointOp};
use itder::construct::{construct, ChoiceSpec};
use itder::hd::HdData;
use itder::io::{hd_from_json, hd_to_json, render_elem};
use itder::verify::{run_suite, Report, Suite, VerifyOptions};
use itder::Error;

/// Result codes; the numeric values of the first five match the CLI exit
/// codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItderStatus {
    Ok = 0,
    SuiteFailed = 1,
    InvalidInput = 2,
    DigestMismatch = 3,
    Failure = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Opaque derivation table over `F_2`.
pub struct ItderHd {
    inner: HdData<Gf2>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ItderStatus {
    match e {
        Error::Parse(_) | Error::PointNotOnCurve | Error::BasePointNotOnCurve => ItderStatus::InvalidInput,
        Error::DigestMismatch => ItderStatus::DigestMismatch,
        _ => ItderStatus::Failure,
    }
}

fn guard(f: impl FnOnce() -> Result<ItderStatus, (ItderStatus, String)>) -> ItderStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ItderStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (ItderStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (ItderStatus, String) {
    (ItderStatus::NullPointer, format!("{name} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (ItderStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (ItderStatus::InvalidInput, format!("{name} is not UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (ItderStatus, String)> {
    let c = CString::new(s).map_err(|_| (ItderStatus::Failure, "interior NUL in output".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread; empty after a
/// successful call. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn itder_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn itder_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a table of order `order`. `choices_json` is a JSON array of
/// fraction strings in `s`, or null for all-zero choices.
///
/// # Safety
/// `choices_json` must be null or a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn itder_construct(
    order: usize,
    choices_json: *const c_char,
    out: *mut *mut ItderHd,
) -> ItderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if order == 0 {
            return Err((ItderStatus::InvalidInput, "order must be at least 1".into()));
        }
        let choices = if choices_json.is_null() {
            ChoiceSpec::zero()
        } else {
            let items =
                itder::io::parse_string_array(str_arg(choices_json, "choices_json")?).map_err(lib_err)?;
            ChoiceSpec::parse(&items).map_err(lib_err)?
        };
        let hd = construct(order, &choices).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ItderHd { inner: hd }));
        Ok(ItderStatus::Ok)
    })
}

/// Load a table from its JSON file contents, checking the stored digest.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn itder_hd_from_json(json: *const c_char, out: *mut *mut ItderHd) -> ItderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let hd = hd_from_json(str_arg(json, "json")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ItderHd { inner: hd }));
        Ok(ItderStatus::Ok)
    })
}

/// Serialize a table; byte-identical for identical tables.
///
/// # Safety
/// `hd` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn itder_hd_to_json(hd: *const ItderHd, out: *mut *mut c_char) -> ItderStatus {
    guard(|| {
        let hd = hd.as_ref().ok_or_else(|| null("hd"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, hd_to_json(&hd.inner))?;
        Ok(ItderStatus::Ok)
    })
}

/// Truncation order of a table, or 0 for a null handle.
///
/// # Safety
/// `hd` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn itder_hd_order(hd: *const ItderHd) -> usize {
    hd.as_ref().map_or(0, |h| h.inner.order())
}

/// `xi_m` for `1 <= m <= order`, rendered as text.
///
/// # Safety
/// `hd` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn itder_hd_xi(hd: *const ItderHd, m: usize, out: *mut *mut c_char) -> ItderStatus {
    guard(|| {
        let hd = hd.as_ref().ok_or_else(|| null("hd"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if m == 0 || m > hd.inner.order() {
            return Err((
                ItderStatus::InvalidInput,
                format!("index {m} outside 1..={}", hd.inner.order()),
            ));
        }
        put_string(out, render_elem(hd.inner.xi(m)))?;
        Ok(ItderStatus::Ok)
    })
}

/// Run the comma separated `suites` and write the JSON array of reports to
/// `report_out` (may be null). Returns `ITDER_STATUS_SUITE_FAILED` when a
/// check fails.
///
/// # Safety
/// `hd` must come from this library; `suites` must be a valid C string;
/// `report_out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn itder_verify(
    hd: *const ItderHd,
    suites: *const c_char,
    seed: u64,
    report_out: *mut *mut c_char,
) -> ItderStatus {
    guard(|| {
        let hd = hd.as_ref().ok_or_else(|| null("hd"))?;
        let suites = Suite::parse_list(str_arg(suites, "suites")?).map_err(lib_err)?;
        let opts = VerifyOptions {
            seed,
            ..VerifyOptions::default()
        };
        let reports = suites
            .iter()
            .map(|&s| run_suite(&hd.inner, s, &opts))
            .collect::<itder::Result<Vec<Report>>>()
            .map_err(lib_err)?;
        if !report_out.is_null() {
            let json = itder::io::reports_to_json(&reports);
            put_string(report_out, json)?;
        }
        Ok(if reports.iter().all(Report::passed) {
            ItderStatus::Ok
        } else {
            ItderStatus::SuiteFailed
        })
    })
}

/// Point arithmetic over GF(2^m) with neutral element `(0,0)`.
///
/// `op` is one of `add`, `sub`, `neg`, `mul`, `on-curve`; `p` and `q` use
/// the `(x, z)`, JSON or `infinity` forms (`q` is ignored unless the
/// operation is binary) and `n` is the multiplier for `mul`. The result is
/// written as JSON. For `on-curve` the status is `ITDER_STATUS_INVALID_INPUT`
/// when the point is off the curve.
///
/// # Safety
/// String arguments must be valid C strings (`q` may be null for unary
/// operations); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn itder_point_op(
    m: u32,
    op: *const c_char,
    p: *const c_char,
    q: *const c_char,
    n: u64,
    out: *mut *mut c_char,
) -> ItderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = str_arg(p, "p")?.to_string();
        let op = match str_arg(op, "op")? {
            "add" => PointOp::Add {
                p,
                q: str_arg(q, "q")?.to_string(),
            },
            "sub" => PointOp::Sub {
                p,
                q: str_arg(q, "q")?.to_string(),
            },
            "neg" => PointOp::Neg { p },
            "mul" => PointOp::Mul { n, p },
            "on-curve" => PointOp::OnCurve { p },
            other => return Err((ItderStatus::InvalidInput, format!("unknown operation `{other}`"))),
        };
        let (ok, text) = point_calc(m, &op, Format::Json).map_err(lib_err)?;
        put_string(out, text.trim_end().to_string())?;
        if ok {
            Ok(ItderStatus::Ok)
        } else {
            Err((ItderStatus::InvalidInput, "point is not on the curve".into()))
        }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `hd` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn itder_hd_free(hd: *mut ItderHd) {
    if !hd.is_null() {
        drop(Box::from_raw(hd));
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn itder_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
