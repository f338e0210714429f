//! C interface to `foliate-core`.
//!
//! Surfaces are opaque `FolSurface` handles created by
//! [`fol_surface_parse`] and released with [`fol_surface_free`]. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with [`fol_string_free`]. Every function returns a
//! [`FolStatus`]; on failure [`fol_last_error`] describes what went wrong
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use foliate_core::homeo::uk_eval;
use foliate_core::io::{decomposition_report, leaf_space_dot, parse, serialize, IoError};
use foliate_core::{build_leaf_space, canonical_code, canonicalize, decompose, is_isomorphic, CutMode, StripedSurface};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidSurface = 4,
    Disconnected = 5,
    InvalidArgument = 6,
    Panic = 7,
}

/// `Interior` cuts along special leaves only, `WithBoundary` also along
/// boundary leaves.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolCutMode {
    Interior = 0,
    WithBoundary = 1,
}

/// Opaque surface handle.
pub struct FolSurface {
    inner: StripedSurface,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn guard(f: impl FnOnce() -> Result<(), (FolStatus, String)>) -> FolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FolStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FolStatus::Panic
        }
    }
}

fn null(what: &str) -> (FolStatus, String) {
    (FolStatus::NullPointer, format!("{what} is null"))
}

unsafe fn surface<'a>(p: *const FolSurface, what: &str) -> Result<&'a StripedSurface, (FolStatus, String)> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(what))
}

unsafe fn give_string(out: *mut *mut c_char, text: String) -> Result<(), (FolStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(text).map_err(|_| (FolStatus::InvalidArgument, "output contains a nul byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a surface document. On success `*out` receives a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_surface_parse(json: *const c_char, out: *mut *mut FolSurface) -> FolStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (FolStatus::InvalidUtf8, e.to_string()))?;
        let s = parse(text).map_err(|e| {
            let status = match e {
                IoError::Parse { .. } => FolStatus::ParseError,
                IoError::Surface(_) => FolStatus::InvalidSurface,
            };
            (status, format!("{}: {e}", e.rule()))
        })?;
        *out = Box::into_raw(Box::new(FolSurface { inner: s }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `s` must come from [`fol_surface_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fol_surface_free(s: *mut FolSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fol_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Number of strips.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_surface_strip_count(s: *const FolSurface, out: *mut usize) -> FolStatus {
    guard(|| {
        let s = surface(s, "surface")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = s.strips().len();
        Ok(())
    })
}

/// The surface document, as written by the command line tool.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_surface_serialize(s: *const FolSurface, out: *mut *mut c_char) -> FolStatus {
    guard(|| give_string(out, serialize(surface(s, "surface")?)))
}

/// Hex canonical code of the merged surface; equal codes mean equivalent
/// surfaces.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_canonical_code(s: *const FolSurface, out: *mut *mut c_char) -> FolStatus {
    guard(|| {
        let s = surface(s, "surface")?;
        give_string(out, canonical_code(&canonicalize(s)).to_hex())
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_is_isomorphic(a: *const FolSurface, b: *const FolSurface, out: *mut bool) -> FolStatus {
    guard(|| {
        let (a, b) = (surface(a, "a")?, surface(b, "b")?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = is_isomorphic(a, b);
        Ok(())
    })
}

/// JSON decomposition report, as printed by `foliate decompose`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_decompose_json(
    s: *const FolSurface,
    mode: FolCutMode,
    out: *mut *mut c_char,
) -> FolStatus {
    guard(|| {
        let s = surface(s, "surface")?;
        let mode = match mode {
            FolCutMode::Interior => CutMode::Interior,
            FolCutMode::WithBoundary => CutMode::WithBoundary,
        };
        let d = decompose(s, mode).map_err(|e| (FolStatus::Disconnected, e.to_string()))?;
        let mut text = serde_json::to_string_pretty(&decomposition_report(s, &d)).expect("report serializes");
        text.push('\n');
        give_string(out, text)
    })
}

/// DOT drawing of the leaf space.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fol_leaf_space_dot(s: *const FolSurface, out: *mut *mut c_char) -> FolStatus {
    guard(|| give_string(out, leaf_space_dot(&build_leaf_space(surface(s, "surface")?))))
}

/// Piecewise-linear line homeomorphism sending `y[i]` to `q[i]`.
///
/// # Safety
/// `y` and `q` must point to `k` doubles each and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fol_uk_eval(x: f64, y: *const f64, q: *const f64, k: usize, out: *mut f64) -> FolStatus {
    guard(|| {
        if y.is_null() || q.is_null() {
            return Err(null("y or q"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let (ys, qs) = (std::slice::from_raw_parts(y, k), std::slice::from_raw_parts(q, k));
        *out = uk_eval(x, ys, qs).map_err(|e| (FolStatus::InvalidArgument, e.to_string()))?;
        Ok(())
    })
}
