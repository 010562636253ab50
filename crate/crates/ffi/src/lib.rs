//! C interface to `homeolab`.
//!
//! Every fallible call returns an [`HlStatus`]; on failure `hl_last_error` gives the message for
//! the calling thread. Handles are opaque and must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homeolab::bicomplex::{build, Variant};
use homeolab::complex::{complex_from_json, complex_from_text, complex_to_json, generate, Generator, SimplicialComplex};
use homeolab::exact_algebra::Coefficients;
use homeolab::spectral::{SpectralPage, SpectralSequence};
use homeolab::Error;

pub const HL_ABI_VERSION: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Precondition = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlVariant {
    Cohomeology = 0,
    Homeology = 1,
}

pub struct HlComplex(SimplicialComplex);

pub struct HlPage {
    page: SpectralPage,
    entries: Vec<(i32, i32)>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: HlStatus, msg: impl Into<String>) -> HlStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> HlStatus {
    let status = match e {
        Error::Parse(_) | Error::UnknownVertex(_) | Error::DuplicateVertex(_) => HlStatus::ParseError,
        _ => HlStatus::Precondition,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> HlStatus) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == HlStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(HlStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HlStatus> {
    if p.is_null() {
        return Err(fail(HlStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(HlStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn put_complex(out: *mut *mut HlComplex, k: Result<SimplicialComplex, Error>) -> HlStatus {
    if out.is_null() {
        return fail(HlStatus::NullArgument, "null output pointer");
    }
    *out = ptr::null_mut();
    match k {
        Ok(k) => {
            *out = Box::into_raw(Box::new(HlComplex(k)));
            HlStatus::Ok
        }
        Err(e) => from_core(e),
    }
}

#[no_mangle]
pub extern "C" fn hl_abi_version() -> u32 {
    HL_ABI_VERSION
}

/// Message of the last failed call on this thread; empty after a success. Valid until the next call.
#[no_mangle]
pub extern "C" fn hl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_complex_from_json(json: *const c_char, out: *mut *mut HlComplex) -> HlStatus {
    guard(|| match text(json) {
        Ok(s) => put_complex(out, complex_from_json(s)),
        Err(st) => st,
    })
}

/// One facet per line, whitespace-separated vertex names.
///
/// # Safety
/// As for [`hl_complex_from_json`].
#[no_mangle]
pub unsafe extern "C" fn hl_complex_from_text(src: *const c_char, out: *mut *mut HlComplex) -> HlStatus {
    guard(|| match text(src) {
        Ok(s) => put_complex(out, complex_from_text(s)),
        Err(st) => st,
    })
}

/// Built-in complexes: `disk:3`, `sphere:2`, `cycle:5`, `point`, ...
///
/// # Safety
/// As for [`hl_complex_from_json`].
#[no_mangle]
pub unsafe extern "C" fn hl_complex_generate(spec: *const c_char, out: *mut *mut HlComplex) -> HlStatus {
    guard(|| match text(spec) {
        Ok(s) => put_complex(out, s.parse::<Generator>().and_then(generate)),
        Err(st) => st,
    })
}

/// # Safety
/// `k` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hl_complex_free(k: *mut HlComplex) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// # Safety
/// `k` must be a live handle and `vertices`, `dim` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hl_complex_shape(k: *const HlComplex, vertices: *mut usize, dim: *mut i32) -> HlStatus {
    guard(|| {
        if k.is_null() || vertices.is_null() || dim.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        let k = &(*k).0;
        *vertices = k.num_vertices();
        *dim = k.dim();
        HlStatus::Ok
    })
}

/// The complex as JSON, to be released with [`hl_string_free`].
///
/// # Safety
/// `k` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_complex_to_json(k: *const HlComplex, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        if k.is_null() || out.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        *out = CString::new(complex_to_json(&(*k).0)).expect("no NUL in JSON").into_raw();
        HlStatus::Ok
    })
}

/// Page `r` of the (reduced) homeology or cohomeology spectral sequence over `coeff` (`Z`, `Q`, `Z2`, ...).
///
/// # Safety
/// `k` must be a live handle, `coeff` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_page_compute(
    k: *const HlComplex,
    variant: HlVariant,
    reduced: bool,
    r: usize,
    coeff: *const c_char,
    out: *mut *mut HlPage,
) -> HlStatus {
    guard(|| {
        if k.is_null() || out.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let coeff: Coefficients = match text(coeff).map(str::parse) {
            Ok(Ok(c)) => c,
            Ok(Err(e)) => return from_core(e),
            Err(st) => return st,
        };
        let variant = match variant {
            HlVariant::Cohomeology => Variant::Cohomeology,
            HlVariant::Homeology => Variant::Homeology,
        };
        match SpectralSequence::new(&build(&(*k).0, variant, reduced), coeff).page(r) {
            Ok(p) => {
                let page = p.as_ref().clone();
                let entries = page.nonzero().map(|(b, _)| b).collect();
                *out = Box::into_raw(Box::new(HlPage { page, entries }));
                HlStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// # Safety
/// `p` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hl_page_free(p: *mut HlPage) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of nonzero entries, listed in `(s, t)` order.
///
/// # Safety
/// `p` must be a live handle and `n` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_page_len(p: *const HlPage, n: *mut usize) -> HlStatus {
    guard(|| {
        if p.is_null() || n.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        *n = (*p).entries.len();
        HlStatus::Ok
    })
}

/// Bidegree, free rank and number of torsion summands of the `i`-th nonzero entry.
///
/// # Safety
/// `p` must be a live handle and the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hl_page_entry(
    p: *const HlPage,
    i: usize,
    s: *mut i32,
    t: *mut i32,
    free_rank: *mut usize,
    torsion: *mut usize,
) -> HlStatus {
    guard(|| {
        if p.is_null() || s.is_null() || t.is_null() || free_rank.is_null() || torsion.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        let p = &*p;
        let Some(&b) = p.entries.get(i) else {
            return fail(HlStatus::OutOfRange, format!("entry {i} of {}", p.entries.len()));
        };
        let g = p.page.group(b);
        (*s, *t, *free_rank, *torsion) = (b.0, b.1, g.free_rank, g.torsion.len());
        HlStatus::Ok
    })
}

/// Free rank and number of torsion summands at `(s, t)`; zero outside the support.
///
/// # Safety
/// `p` must be a live handle and the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hl_page_group(p: *const HlPage, s: i32, t: i32, free_rank: *mut usize, torsion: *mut usize) -> HlStatus {
    guard(|| {
        if p.is_null() || free_rank.is_null() || torsion.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        let g = (*p).page.group((s, t));
        (*free_rank, *torsion) = (g.free_rank, g.torsion.len());
        HlStatus::Ok
    })
}

/// The page in the JSON report schema, to be released with [`hl_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_page_to_json(p: *const HlPage, with_differentials: bool, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(HlStatus::NullArgument, "null argument");
        }
        let s = (*p).page.to_json(with_differentials).to_string();
        *out = CString::new(s).expect("no NUL in JSON").into_raw();
        HlStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
