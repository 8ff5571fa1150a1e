//! C ABI over `hjlab`.
//!
//! Objects cross the boundary as opaque handles created by `hj_*_new` /
//! `hj_*_load` / computing functions and released with the matching
//! `hj_*_free`. Every fallible call returns an [`HjStatus`]; on failure the
//! message is available from [`hj_last_error_message`] on the same thread.
//! Strings returned as `char *` belong to the caller and go back through
//! [`hj_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hjlab::growth::{tower_build, tower_compare, GrowthBudget, TowerSource};
use hjlab::{
    compute_number, exists_bad_coloring, Budget, Certificate, Error, Kind, KindSpec, NumberResult, SearchOptions,
    SearchVerdict,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HjStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    VerificationFailed = 3,
    BudgetExceeded = 4,
    NotFound = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HjVerdict {
    Bad = 0,
    NoneExists = 1,
    BudgetExceeded = 2,
}

/// A partition number with its alphabet and color counts.
pub struct HjSpec {
    inner: KindSpec,
}

/// Outcome of [`hj_compute`].
pub struct HjResult {
    inner: NumberResult,
}

pub struct HjCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HjStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::RejectedResult(_) | Error::InvalidInputWitness(_) | Error::InconsistentModel(_) => {
                HjStatus::VerificationFailed
            }
            Error::BudgetExceeded { .. } | Error::UnknownOrdering(_) => HjStatus::BudgetExceeded,
            Error::Io(_) | Error::Json(_) => HjStatus::Io,
            _ => HjStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HjStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HjStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(HjStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(HjStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hj_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn hj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `kind` (`hj:1`, `f9sn:2,1`, `oplus`, ...) into a new spec.
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_spec_new(kind: *const c_char, h: usize, c: usize, out: *mut *mut HjSpec) -> HjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind: Kind = str_arg(kind, "kind")?.parse()?;
        let inner = KindSpec::new(kind, h, c)?;
        *out = Box::into_raw(Box::new(HjSpec { inner }));
        Ok(())
    })
}

/// # Safety
/// `spec` must come from [`hj_spec_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn hj_spec_free(spec: *mut HjSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Display form such as `hj(1;2,2)`; NULL if `spec` is NULL.
///
/// # Safety
/// `spec` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn hj_spec_to_string(spec: *const HjSpec) -> *mut c_char {
    spec.as_ref().map_or(ptr::null_mut(), |s| owned_string(s.inner.to_string()))
}

/// Computes the number by scanning sizes `1..=max_k`. `max_seconds <= 0`
/// means no time limit; `threads == 0` means one.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_compute(
    spec: *const HjSpec,
    max_k: usize,
    max_seconds: f64,
    threads: usize,
    out: *mut *mut HjResult,
) -> HjStatus {
    guard(|| {
        let spec = handle(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let budget = if max_seconds > 0.0 {
            Budget::seconds(max_seconds)
        } else {
            Budget::unlimited()
        };
        let opts = SearchOptions {
            threads: threads.max(1),
            ..SearchOptions::default()
        };
        let inner = compute_number(&spec.inner, max_k, budget, &opts)?;
        *out = Box::into_raw(Box::new(HjResult { inner }));
        Ok(())
    })
}

/// # Safety
/// `result` must come from [`hj_compute`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn hj_result_free(result: *mut HjResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// The exact value, or `HJ_STATUS_NOT_FOUND` when only bounds are known.
///
/// # Safety
/// `result` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_result_value(result: *const HjResult, value: *mut usize) -> HjStatus {
    guard(|| {
        let r = handle(result, "result")?;
        if value.is_null() {
            return Err(null("value"));
        }
        let v = r.inner.value.ok_or_else(|| Failure(HjStatus::NotFound, "value not determined".into()))?;
        *value = v;
        Ok(())
    })
}

/// Lower bound, and the upper bound when `has_upper` is set.
///
/// # Safety
/// `result` must be a live handle and the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn hj_result_bounds(
    result: *const HjResult,
    lower: *mut usize,
    upper: *mut usize,
    has_upper: *mut bool,
) -> HjStatus {
    guard(|| {
        let r = handle(result, "result")?;
        if lower.is_null() || upper.is_null() || has_upper.is_null() {
            return Err(null("out"));
        }
        *lower = r.inner.lower;
        *has_upper = r.inner.upper.is_some();
        *upper = r.inner.upper.unwrap_or(0);
        Ok(())
    })
}

/// The bad-coloring certificate behind the lower bound.
///
/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_result_lower_certificate(result: *const HjResult, out: *mut *mut HjCertificate) -> HjStatus {
    guard(|| {
        let r = handle(result, "result")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let b = r.inner.bad.as_ref().ok_or_else(|| Failure(HjStatus::NotFound, "no bad coloring".into()))?;
        let inner = Certificate::bad(&r.inner.spec, b.size, &b.coloring, b.stats);
        *out = Box::into_raw(Box::new(HjCertificate { inner }));
        Ok(())
    })
}

/// Searches for a coloring without a witness at size `k`. `max_nodes == 0`
/// means unlimited. A certificate is stored in `cert` (if non-NULL) unless
/// the budget ran out, in which case `*cert` is set to NULL.
///
/// # Safety
/// `spec` must be a live handle, `verdict` writable, `cert` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn hj_find_bad(
    spec: *const HjSpec,
    k: usize,
    max_nodes: u64,
    verdict: *mut HjVerdict,
    cert: *mut *mut HjCertificate,
) -> HjStatus {
    guard(|| {
        let spec = handle(spec, "spec")?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let budget = if max_nodes > 0 {
            Budget::nodes(max_nodes)
        } else {
            Budget::unlimited()
        };
        let v = exists_bad_coloring(&spec.inner, k, budget, &SearchOptions::default())?;
        *verdict = match v {
            SearchVerdict::Bad { .. } => HjVerdict::Bad,
            SearchVerdict::NoneExists { .. } => HjVerdict::NoneExists,
            SearchVerdict::BudgetExceeded { .. } => HjVerdict::BudgetExceeded,
        };
        if !cert.is_null() {
            *cert = Certificate::from_verdict(&spec.inner, k, &v)
                .map_or(ptr::null_mut(), |inner| Box::into_raw(Box::new(HjCertificate { inner })));
        }
        Ok(())
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_certificate_load(path: *const c_char, out: *mut *mut HjCertificate) -> HjStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = Certificate::load(Path::new(path))?;
        *out = Box::into_raw(Box::new(HjCertificate { inner }));
        Ok(())
    })
}

/// # Safety
/// `cert` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hj_certificate_save(cert: *const HjCertificate, path: *const c_char) -> HjStatus {
    guard(|| {
        let cert = handle(cert, "cert")?;
        cert.inner.save(Path::new(str_arg(path, "path")?))?;
        Ok(())
    })
}

/// Re-checks the certificate; `deep` reruns exhaustive searches.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hj_certificate_verify(cert: *const HjCertificate, deep: bool) -> HjStatus {
    guard(|| {
        let cert = handle(cert, "cert")?;
        cert.inner
            .verify(deep)
            .map_err(|e| Failure(HjStatus::VerificationFailed, e.to_string()))
    })
}

/// The certificate as JSON; NULL on failure.
///
/// # Safety
/// `cert` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn hj_certificate_to_json(cert: *const HjCertificate) -> *mut c_char {
    match cert.as_ref().map(|c| c.inner.to_json()) {
        Some(Ok(s)) => owned_string(s),
        Some(Err(e)) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `cert` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn hj_certificate_free(cert: *mut HjCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Orders two bounds (`shelah24`, `gowers:2,3`, `lit:N`, expressions):
/// `*ordering` is -1, 0 or 1. `max_bits == 0` uses the default.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `ordering` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_tower_compare(
    a: *const c_char,
    b: *const c_char,
    max_bits: u64,
    ordering: *mut i32,
) -> HjStatus {
    guard(|| {
        let a: TowerSource = str_arg(a, "a")?.parse()?;
        let b: TowerSource = str_arg(b, "b")?.parse()?;
        if ordering.is_null() {
            return Err(null("ordering"));
        }
        let budget = if max_bits == 0 {
            GrowthBudget::default()
        } else {
            GrowthBudget::new(max_bits, GrowthBudget::default().max_steps)?
        };
        *ordering = tower_compare(&tower_build(&a), &tower_build(&b), budget)? as i32;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let p = hj_last_error_message();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn compute_through_handles() {
        unsafe {
            let mut spec = ptr::null_mut();
            assert_eq!(hj_spec_new(c"hj:1".as_ptr(), 2, 2, &mut spec), HjStatus::Ok);
            let name = hj_spec_to_string(spec);
            assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "hj(1;2,2)");
            hj_string_free(name);

            let mut result = ptr::null_mut();
            assert_eq!(hj_compute(spec, 4, 0.0, 1, &mut result), HjStatus::Ok);
            let mut v = 0;
            assert_eq!(hj_result_value(result, &mut v), HjStatus::Ok);
            assert_eq!(v, 2);
            let (mut lo, mut hi, mut has) = (0, 0, false);
            assert_eq!(hj_result_bounds(result, &mut lo, &mut hi, &mut has), HjStatus::Ok);
            assert_eq!((lo, hi, has), (2, 2, true));

            let mut cert = ptr::null_mut();
            assert_eq!(hj_result_lower_certificate(result, &mut cert), HjStatus::Ok);
            assert_eq!(hj_certificate_verify(cert, false), HjStatus::Ok);
            let json = hj_certificate_to_json(cert);
            assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"verdict\": \"bad\""));
            hj_string_free(json);
            hj_certificate_free(cert);
            hj_result_free(result);
            hj_spec_free(spec);
        }
    }

    #[test]
    fn certificate_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("c.json").to_str().unwrap()).unwrap();
        unsafe {
            let mut spec = ptr::null_mut();
            assert_eq!(hj_spec_new(c"vdw:3".as_ptr(), 1, 2, &mut spec), HjStatus::Ok);
            let mut verdict = HjVerdict::BudgetExceeded;
            let mut cert = ptr::null_mut();
            assert_eq!(hj_find_bad(spec, 8, 0, &mut verdict, &mut cert), HjStatus::Ok);
            assert_eq!(verdict, HjVerdict::Bad);
            assert_eq!(hj_certificate_save(cert, path.as_ptr()), HjStatus::Ok);
            hj_certificate_free(cert);

            let mut back = ptr::null_mut();
            assert_eq!(hj_certificate_load(path.as_ptr(), &mut back), HjStatus::Ok);
            assert_eq!(hj_certificate_verify(back, false), HjStatus::Ok);
            hj_certificate_free(back);

            assert_eq!(hj_find_bad(spec, 9, 0, &mut verdict, &mut cert), HjStatus::Ok);
            assert_eq!(verdict, HjVerdict::NoneExists);
            assert!(!cert.is_null());
            hj_certificate_free(cert);
            hj_spec_free(spec);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut spec = ptr::null_mut();
            assert_eq!(hj_spec_new(c"nope:1".as_ptr(), 2, 2, &mut spec), HjStatus::InvalidArgument);
            assert!(last_error().contains("nope"));
            assert!(spec.is_null());
            assert_eq!(hj_spec_new(ptr::null(), 2, 2, &mut spec), HjStatus::NullArgument);
            assert_eq!(hj_spec_new(c"f8:2".as_ptr(), 2, 2, ptr::null_mut()), HjStatus::NullArgument);

            assert_eq!(hj_spec_new(c"hj:1".as_ptr(), 2, 2, &mut spec), HjStatus::Ok);
            let mut result = ptr::null_mut();
            assert_eq!(hj_compute(spec, 1, 0.0, 1, &mut result), HjStatus::Ok);
            let mut v = 0;
            assert_eq!(hj_result_value(result, &mut v), HjStatus::NotFound);
            hj_result_free(result);
            hj_spec_free(spec);

            let mut missing = ptr::null_mut();
            assert_eq!(hj_certificate_load(c"/nonexistent/c.json".as_ptr(), &mut missing), HjStatus::Io);
            hj_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn tower_ordering() {
        let mut o = 0;
        let status = unsafe { hj_tower_compare(c"shelah24".as_ptr(), c"gowers:2,3".as_ptr(), 0, &mut o) };
        assert_eq!(status, HjStatus::Ok);
        assert_eq!(o, 1);
        assert!(!hj_version().is_null());
    }
}
