//! C ABI over `rackcov`.
//!
//! Every fallible call returns an [`RcStatus`] and writes its result through an
//! out-pointer. On failure, [`rc_last_error`] describes the error for the
//! calling thread. Handles are opaque and must be released with their `_free`
//! function. Strings returned by the library are released with [`rc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rackcov::adjoint::{self, Verdict};
use rackcov::cover::{are_cohomologous, extend, is_quandle_cocycle, is_rack_cocycle};
use rackcov::terms::{sat_in_cover, satisfies, Identity};
use rackcov::{analysis, fixtures, io, ConstantCocycle, Error, LeftQuasigroup};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed table, cocycle, identity or string.
    InvalidInput = 2,
    /// A search or enumeration hit its cap.
    CapExceeded = 3,
    /// The operation does not apply to this input (not a rack, not connected, ...).
    Precondition = 4,
    /// Handles built over different bases or fibers.
    Mismatch = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcVerdict {
    No = 0,
    Yes = 1,
    Indeterminate = 2,
}

/// A finite left quasigroup (rack, quandle or neither).
pub struct RcQuandle(LeftQuasigroup);

/// A constant cocycle together with its base.
pub struct RcCocycle {
    base: LeftQuasigroup,
    theta: ConstantCocycle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RcStatus {
    match e {
        Error::CapExceeded { .. } => RcStatus::CapExceeded,
        Error::FiberMismatch(_) => RcStatus::Mismatch,
        Error::NotConnected
        | Error::PreconditionFailed(_)
        | Error::CriterionNotApplicable(_)
        | Error::NotACongruence
        | Error::NotUnderCayley
        | Error::NotUniform => RcStatus::Precondition,
        _ => RcStatus::InvalidInput,
    }
}

struct Fail(RcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            RcStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(RcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(RcStatus::InvalidInput, "string is not UTF-8".into()))
}

fn verdict(v: Verdict) -> RcVerdict {
    match v {
        Verdict::Yes => RcVerdict::Yes,
        Verdict::No => RcVerdict::No,
        Verdict::Indeterminate => RcVerdict::Indeterminate,
    }
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a structure from a row-major `n x n` table with `table[x*n + y] = x*y`.
///
/// # Safety
/// `table` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_from_table(
    n: usize,
    table: *const u32,
    out: *mut *mut RcQuandle,
) -> RcStatus {
    guard(|| {
        if table.is_null() || n == 0 {
            return Err(null());
        }
        let cells = std::slice::from_raw_parts(table, n * n);
        let rows: Vec<Vec<usize>> = cells
            .chunks(n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect();
        let q = LeftQuasigroup::from_table(n, &rows)?;
        write(out, boxed(RcQuandle(q)))
    })
}

/// Parses a table in JSON (`{"size", "table"}`) or whitespace-separated text.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_parse(
    text: *const c_char,
    out: *mut *mut RcQuandle,
) -> RcStatus {
    guard(|| {
        let q = io::parse_table(str_arg(text)?)?;
        write(out, boxed(RcQuandle(q)))
    })
}

/// Looks up a named structure such as `R3`, `Q4` or `Aff_7_3`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_fixture(
    name: *const c_char,
    out: *mut *mut RcQuandle,
) -> RcStatus {
    guard(|| {
        let q = fixtures::by_name(str_arg(name)?)?;
        write(out, boxed(RcQuandle(q)))
    })
}

/// # Safety
/// `q` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_free(q: *mut RcQuandle) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_size(q: *const RcQuandle) -> usize {
    q.as_ref().map_or(0, |q| q.0.size())
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_mul(
    q: *const RcQuandle,
    x: u32,
    y: u32,
    out: *mut u32,
) -> RcStatus {
    guard(|| {
        let q = &deref(q)?.0;
        let (x, y) = (x as usize, y as usize);
        if x >= q.size() || y >= q.size() {
            return Err(Fail(RcStatus::InvalidInput, "element out of range".into()));
        }
        write(out, q.mul(x, y) as u32)
    })
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_is_rack(q: *const RcQuandle, out: *mut bool) -> RcStatus {
    guard(|| write(out, deref(q)?.0.is_rack()))
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_is_quandle(q: *const RcQuandle, out: *mut bool) -> RcStatus {
    guard(|| write(out, deref(q)?.0.is_quandle()))
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_is_connected(q: *const RcQuandle, out: *mut bool) -> RcStatus {
    guard(|| write(out, analysis::is_connected(&deref(q)?.0)))
}

/// Whether the identity (`"lhs = rhs"` or a builtin name) holds.
///
/// # Safety
/// `q` must be a live handle, `identity` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_satisfies(
    q: *const RcQuandle,
    identity: *const c_char,
    out: *mut bool,
) -> RcStatus {
    guard(|| {
        let id = Identity::from_spec(str_arg(identity)?)?;
        write(out, satisfies(&deref(q)?.0, &id)?)
    })
}

/// Simple connectedness by coset enumeration with at most `cap` cosets.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_simply_connected(
    q: *const RcQuandle,
    cap: usize,
    out: *mut RcVerdict,
) -> RcStatus {
    guard(|| {
        let r = adjoint::simply_connected_report(&deref(q)?.0, cap)?;
        write(out, verdict(r.verdict))
    })
}

/// The structure report as a JSON string, freed with [`rc_string_free`].
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_quandle_report_json(
    q: *const RcQuandle,
    out: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let report = analysis::report(&deref(q)?.0)?;
        let json = serde_json::to_string(&report).map_err(Error::from)?;
        let c = CString::new(json).expect("JSON has no nul");
        write(out, c.into_raw())
    })
}

/// Parses a cocycle file whose base is inline or a named structure.
///
/// # Safety
/// `text` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_cocycle_parse(
    text: *const c_char,
    out: *mut *mut RcCocycle,
) -> RcStatus {
    guard(|| {
        let loaded = io::parse_cocycle(str_arg(text)?, None)?;
        write(
            out,
            boxed(RcCocycle {
                base: loaded.base,
                theta: loaded.cocycle,
            }),
        )
    })
}

/// # Safety
/// `c` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rc_cocycle_free(c: *mut RcCocycle) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn rc_cocycle_check(
    c: *const RcCocycle,
    rack: *mut bool,
    quandle: *mut bool,
) -> RcStatus {
    guard(|| {
        let c = deref(c)?;
        write(rack, is_rack_cocycle(&c.base, &c.theta))?;
        write(quandle, is_quandle_cocycle(&c.base, &c.theta))
    })
}

/// The covering extension; element `(x, a)` has index `x * m + a`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_cocycle_extend(
    c: *const RcCocycle,
    out: *mut *mut RcQuandle,
) -> RcStatus {
    guard(|| {
        let c = deref(c)?;
        let e = extend(&c.base, &c.theta)?;
        write(out, boxed(RcQuandle(e.total)))
    })
}

/// Whether the extension satisfies the identity, decided on the base.
///
/// # Safety
/// `c` must be a live handle, `identity` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_cocycle_satisfies(
    c: *const RcCocycle,
    identity: *const c_char,
    out: *mut bool,
) -> RcStatus {
    guard(|| {
        let c = deref(c)?;
        let id = Identity::from_spec(str_arg(identity)?)?;
        write(out, sat_in_cover(&c.base, &c.theta, &id)?)
    })
}

/// Whether two cocycles over the same base are cohomologous.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_cocycle_cohomologous(
    a: *const RcCocycle,
    b: *const RcCocycle,
    out: *mut bool,
) -> RcStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        if a.base != b.base {
            return Err(Fail(
                RcStatus::Mismatch,
                "cocycles have different bases".into(),
            ));
        }
        write(
            out,
            are_cohomologous(&a.base, &a.theta, &b.theta)?.is_some(),
        )
    })
}
