//! C ABI for pcarr.
//!
//! Objects cross the boundary as opaque handles; each handle is released
//! with its `_free` function and strings returned by the library with
//! `pcarr_string_free`. Every fallible call returns a `PcarrStatus` and
//! writes its result only on `PCARR_STATUS_OK`. The message of the most
//! recent failure on the calling thread is returned by `pcarr_last_error`.

use std::cell::RefCell;
use std::collections::HashSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pcarr::canon::{automorphism_order, CanonicalCode};
use pcarr::classifier::{filter_krupp_triangles, filter_nonkrupp_triangles, ClassifyError};
use pcarr::enumerate::{enumerate_class_with, ArrClass, EnumError, EnumOptions};
use pcarr::geom::{Circle, CircleArrangement};
use pcarr::realizer::{minimize_certificate, random_search, CertError, Certificate, RealizationBudget};
use pcarr::store::svg;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcarrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidString = 2,
    Parse = 3,
    Precondition = 4,
    Mismatch = 5,
    BudgetExceeded = 6,
    Unsupported = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// Arrangement classes accepted by `pcarr_enumerate`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcarrClass {
    Connected = 0,
    ConnectedDigonFree = 1,
    ConnectedCylindrical = 2,
    Intersecting = 3,
    IntersectingDigonFree = 4,
    IntersectingCylindrical = 5,
    Great = 6,
}

const CLASSES: [ArrClass; 7] = [
    ArrClass::Connected,
    ArrClass::ConnectedDigonFree,
    ArrClass::ConnectedCylindrical,
    ArrClass::Intersecting,
    ArrClass::IntersectingDigonFree,
    ArrClass::IntersectingCylindrical,
    ArrClass::Great,
];

/// Canonical code of an arrangement.
pub struct PcarrCode(CanonicalCode);

/// Sorted list of canonical codes.
pub struct PcarrCodeList(Vec<CanonicalCode>);

/// Verified integer circle realization of a code.
pub struct PcarrCertificate(Certificate);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PcarrFlags {
    pub connected: bool,
    pub intersecting: bool,
    pub digon_free: bool,
    pub cylindrical: bool,
    pub great: bool,
    pub num_circles: usize,
    pub num_crossings: usize,
    /// Order of the automorphism group, reflections included.
    pub symmetry: usize,
    pub triangles: usize,
    pub digons: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PcarrStatus, String);

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        let status = match e {
            EnumError::BudgetExceeded { .. } => PcarrStatus::BudgetExceeded,
            EnumError::TooFewCircles(_) => PcarrStatus::Precondition,
            _ => PcarrStatus::Unsupported,
        };
        Failure(status, e.to_string())
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        let status = match e {
            CertError::Mismatch { .. } => PcarrStatus::Mismatch,
            CertError::Geometry(_) => PcarrStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Failure(PcarrStatus::Precondition, e.to_string())
    }
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn run(body: impl FnOnce() -> Result<(), Failure>) -> PcarrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PcarrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PcarrStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(PcarrStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|e| Failure(PcarrStatus::InvalidString, e.to_string()))?;
    put(out, s.into_raw())
}

unsafe fn scene_from(params: *const i64, num_circles: usize) -> Result<CircleArrangement, Failure> {
    if params.is_null() {
        return Err(null());
    }
    let p = std::slice::from_raw_parts(params, 3 * num_circles);
    Ok(CircleArrangement::new(p.chunks_exact(3).map(|c| Circle::new(c[0], c[1], c[2])).collect()))
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pcarr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pcarr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text form of a canonical code.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_parse(text: *const c_char, out: *mut *mut PcarrCode) -> PcarrStatus {
    run(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Failure(PcarrStatus::InvalidString, e.to_string()))?;
        let code: CanonicalCode =
            s.trim().parse().map_err(|e: pcarr::canon::CodeError| Failure(PcarrStatus::Parse, e.to_string()))?;
        put_box(out, PcarrCode(code))
    })
}

/// # Safety
/// `code` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_free(code: *mut PcarrCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Text form of a code; release it with `pcarr_string_free`.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_to_string(code: *const PcarrCode, out: *mut *mut c_char) -> PcarrStatus {
    run(|| put_string(out, deref(code)?.0.to_string()))
}

/// Whether two codes describe isomorphic arrangements.
///
/// # Safety
/// Both handles must be live or null; null compares unequal.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_equal(a: *const PcarrCode, b: *const PcarrCode) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// Structural properties of the arrangement behind a code.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_flags(code: *const PcarrCode, out: *mut PcarrFlags) -> PcarrStatus {
    run(|| {
        let code = &deref(code)?.0;
        let arr = code.to_arrangement().map_err(|e| Failure(PcarrStatus::Parse, e.to_string()))?;
        let f = arr.flags();
        put(
            out,
            PcarrFlags {
                connected: f.connected,
                intersecting: f.intersecting,
                digon_free: f.digon_free,
                cylindrical: f.cylindrical,
                great: f.great,
                num_circles: arr.n(),
                num_crossings: arr.num_crossings(),
                symmetry: automorphism_order(&arr),
                triangles: f.cells(3),
                digons: f.cells(2),
            },
        )
    })
}

/// Whether every triangle is bounded by a NonKrupp triple. Fails with
/// `PCARR_STATUS_PRECONDITION` if the arrangement has digons.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_filter_nonkrupp_triangles(code: *const PcarrCode, out: *mut bool) -> PcarrStatus {
    run(|| {
        let arr = deref(code)?.0.to_arrangement().map_err(|e| Failure(PcarrStatus::Parse, e.to_string()))?;
        put(out, filter_nonkrupp_triangles(&arr)?)
    })
}

/// Whether every triangle is bounded by a Krupp triple. Fails with
/// `PCARR_STATUS_PRECONDITION` unless the arrangement is intersecting and
/// not great.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_filter_krupp_triangles(code: *const PcarrCode, out: *mut bool) -> PcarrStatus {
    run(|| {
        let arr = deref(code)?.0.to_arrangement().map_err(|e| Failure(PcarrStatus::Parse, e.to_string()))?;
        put(out, filter_krupp_triangles(&arr)?)
    })
}

/// All arrangements of `n` pseudocircles in a class, sorted by code.
/// `class_` is a `PcarrClass` value.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_enumerate(
    n: usize,
    class_: u32,
    long_run: bool,
    out: *mut *mut PcarrCodeList,
) -> PcarrStatus {
    run(|| {
        let class = *CLASSES
            .get(class_ as usize)
            .ok_or_else(|| Failure(PcarrStatus::OutOfRange, format!("unknown class {class_}")))?;
        let codes = enumerate_class_with(n, class, EnumOptions { long_run, ..Default::default() })?;
        put_box(out, PcarrCodeList(codes))
    })
}

/// # Safety
/// `list` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_list_len(list: *const PcarrCodeList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// A new handle for the `i`-th code of a list.
///
/// # Safety
/// `list` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_list_get(
    list: *const PcarrCodeList,
    i: usize,
    out: *mut *mut PcarrCode,
) -> PcarrStatus {
    run(|| {
        let list = &deref(list)?.0;
        let code =
            list.get(i).ok_or_else(|| Failure(PcarrStatus::OutOfRange, format!("index {i} of {}", list.len())))?;
        put_box(out, PcarrCode(code.clone()))
    })
}

/// # Safety
/// `list` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pcarr_code_list_free(list: *mut PcarrCodeList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Certificate for whatever the scene realizes. `params` holds
/// `num_circles` triples `x, y, r`.
///
/// # Safety
/// `params` must point to `3 * num_circles` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_from_scene(
    params: *const i64,
    num_circles: usize,
    out: *mut *mut PcarrCertificate,
) -> PcarrStatus {
    run(|| {
        let cert = Certificate::from_scene(scene_from(params, num_circles)?)?;
        put_box(out, PcarrCertificate(cert))
    })
}

/// Certificate that the scene realizes `code`; fails with
/// `PCARR_STATUS_MISMATCH` if it realizes something else.
///
/// # Safety
/// As for `pcarr_certificate_from_scene`; `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_new(
    code: *const PcarrCode,
    params: *const i64,
    num_circles: usize,
    out: *mut *mut PcarrCertificate,
) -> PcarrStatus {
    run(|| {
        let cert = Certificate { code: deref(code)?.0.clone(), scene: scene_from(params, num_circles)? };
        cert.verify()?;
        put_box(out, PcarrCertificate(cert))
    })
}

/// # Safety
/// `cert` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_free(cert: *mut PcarrCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_code(
    cert: *const PcarrCertificate,
    out: *mut *mut PcarrCode,
) -> PcarrStatus {
    run(|| put_box(out, PcarrCode(deref(cert)?.0.code.clone())))
}

/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_num_circles(cert: *const PcarrCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.scene.len())
}

/// Writes `x, y, r` of circle `i` to `out[0..3]`.
///
/// # Safety
/// `cert` must be a live handle; `out` must have room for three integers.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_circle(
    cert: *const PcarrCertificate,
    i: usize,
    out: *mut i64,
) -> PcarrStatus {
    run(|| {
        let circles = &deref(cert)?.0.scene.circles;
        let c = circles
            .get(i)
            .ok_or_else(|| Failure(PcarrStatus::OutOfRange, format!("circle {i} of {}", circles.len())))?;
        if out.is_null() {
            return Err(null());
        }
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&[c.x, c.y, c.r]);
        Ok(())
    })
}

/// SVG drawing of a certificate; release it with `pcarr_string_free`.
///
/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_certificate_svg(cert: *const PcarrCertificate, out: *mut *mut c_char) -> PcarrStatus {
    run(|| {
        let text = svg(&deref(cert)?.0).map_err(|e| Failure(PcarrStatus::Mismatch, e.to_string()))?;
        put_string(out, text)
    })
}

/// Random search for a certificate of `code` with parameters in `1..=k`,
/// minimized on success. Fails with `PCARR_STATUS_BUDGET_EXCEEDED` if
/// `max_samples` scenes or `max_seconds` pass without a hit.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcarr_realize(
    code: *const PcarrCode,
    k: i64,
    max_samples: usize,
    max_seconds: f64,
    seed: u64,
    out: *mut *mut PcarrCertificate,
) -> PcarrStatus {
    run(|| {
        let code = &deref(code)?.0;
        if k < 1 {
            return Err(Failure(PcarrStatus::OutOfRange, "k must be positive".into()));
        }
        let budget = RealizationBudget { max_seconds, max_restarts: max_samples, k, ..Default::default() };
        let targets: HashSet<CanonicalCode> = [code.clone()].into_iter().collect();
        let cert = random_search(&targets, code.n(), &budget, seed)
            .pop()
            .ok_or_else(|| Failure(PcarrStatus::BudgetExceeded, "no certificate within the budget".into()))?;
        put_box(out, PcarrCertificate(minimize_certificate(&cert)))
    })
}
