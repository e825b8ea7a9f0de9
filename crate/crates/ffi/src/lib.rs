//! C ABI over `coalg`.
//!
//! Objects cross the boundary as opaque `CoalgObject` handles created from
//! document text. Every fallible call returns a `CoalgStatus`; on failure the
//! message is kept per thread and read with `coalg_last_error_message`.
//! Strings returned to the caller are freed with `coalg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coalg::cli::check_document;
use coalg::coalgebra::{comatrix_coalgebra, dual_algebra, dual_coalgebra, subcoalgebra_generated};
use coalg::io::{Document, Object};
use coalg::{Error, Field};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidStructure = 4,
    DimensionMismatch = 5,
    BudgetExceeded = 6,
    NotFound = 7,
    WrongKind = 8,
    Io = 9,
    Panic = 10,
}

/// A parsed document: an object together with its name.
pub struct CoalgObject {
    name: String,
    object: Object,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> CoalgStatus {
    match e {
        Error::Parse { .. } | Error::DocumentField { .. } | Error::InvalidScalar { .. } => CoalgStatus::Parse,
        Error::DimensionMismatch { .. } | Error::FieldMismatch(..) => CoalgStatus::DimensionMismatch,
        Error::BudgetExceeded { .. } => CoalgStatus::BudgetExceeded,
        Error::NotFound(_) => CoalgStatus::NotFound,
        Error::Io(_) => CoalgStatus::Io,
        _ => CoalgStatus::InvalidStructure,
    }
}

/// Runs `f`, recording its error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (CoalgStatus, String)>) -> CoalgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CoalgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CoalgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (CoalgStatus, String) {
    (status_of(&e), e.to_string())
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (CoalgStatus, String)> {
    if s.is_null() {
        return Err((CoalgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (CoalgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a handle returned by this library and not yet freed.
unsafe fn read_obj<'a>(p: *const CoalgObject, what: &str) -> Result<&'a CoalgObject, (CoalgStatus, String)> {
    p.as_ref().ok_or_else(|| (CoalgStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), (CoalgStatus, String)> {
    if out.is_null() {
        Err((CoalgStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn give(name: String, object: Object) -> *mut CoalgObject {
    Box::into_raw(Box::new(CoalgObject { name, object }))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn coalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the calling thread's last error message, or null if the last call
/// succeeded. Free with `coalg_string_free`.
#[no_mangle]
pub extern "C" fn coalg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(s) => s.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn coalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a document into a new handle.
///
/// # Safety
/// `text` must be a valid nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_object_parse(text: *const c_char, out: *mut *mut CoalgObject) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        let text = read_str(text, "text")?;
        let doc = Document::parse(text).map_err(lib_err)?;
        let object = doc.to_object().map_err(lib_err)?;
        *out = give(doc.name, object);
        Ok(())
    })
}

/// # Safety
/// `obj` must be null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn coalg_object_free(obj: *mut CoalgObject) {
    if !obj.is_null() {
        drop(Box::from_raw(obj));
    }
}

/// Canonical document text of a handle. Free with `coalg_string_free`.
///
/// # Safety
/// `obj` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_object_to_text(obj: *const CoalgObject, out: *mut *mut c_char) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        let o = read_obj(obj, "object")?;
        *out = to_c_string(Document::from_object(o.name.clone(), &o.object).to_text());
        Ok(())
    })
}

/// Kind of a handle, e.g. `coalgebra`. Free with `coalg_string_free`.
///
/// # Safety
/// `obj` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_object_kind(obj: *const CoalgObject, out: *mut *mut c_char) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = to_c_string(read_obj(obj, "object")?.object.kind().to_string());
        Ok(())
    })
}

/// Dimension of an algebra, coalgebra or subspace handle.
///
/// # Safety
/// `obj` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_object_dim(obj: *const CoalgObject, out: *mut usize) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = match &read_obj(obj, "object")?.object {
            Object::Algebra(a) => a.dim(),
            Object::Coalgebra(c) => c.dim(),
            Object::Subspace(s) => s.dim(),
            o => return Err((CoalgStatus::WrongKind, format!("{} has no single dimension", o.kind()))),
        };
        Ok(())
    })
}

/// Runs every axiom check for the handle's kind. `passed` is set to 1 when
/// all certificates pass and 0 otherwise; `failures` receives the number of
/// failed identities.
///
/// # Safety
/// `obj` must be a live handle; `passed` and `failures` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn coalg_object_check(
    obj: *const CoalgObject,
    passed: *mut c_int,
    failures: *mut usize,
) -> CoalgStatus {
    guard(|| {
        out_ptr(passed)?;
        out_ptr(failures)?;
        let o = read_obj(obj, "object")?;
        let certs = check_document(&Document::from_object(o.name.clone(), &o.object)).map_err(lib_err)?;
        let failed: usize = certs.iter().map(|c| c.failed).sum();
        *passed = c_int::from(failed == 0);
        *failures = failed;
        Ok(())
    })
}

/// The comatrix coalgebra on `n²` basis elements over `field` (`Q`, `F2`, `Fp:5`, …).
///
/// # Safety
/// `field` must be a valid string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_comatrix(field: *const c_char, n: usize, out: *mut *mut CoalgObject) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        let f: Field = read_str(field, "field")?.parse().map_err(lib_err)?;
        let c = comatrix_coalgebra(n, f);
        *out = give(c.name.clone(), Object::Coalgebra(c));
        Ok(())
    })
}

/// Dual of an algebra or coalgebra handle.
///
/// # Safety
/// `obj` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_dual(obj: *const CoalgObject, out: *mut *mut CoalgObject) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        let o = read_obj(obj, "object")?;
        let dual = match &o.object {
            Object::Algebra(a) => Object::Coalgebra(dual_coalgebra(a)),
            Object::Coalgebra(c) => Object::Algebra(dual_algebra(c)),
            other => return Err((CoalgStatus::WrongKind, format!("cannot dualize a {}", other.kind()))),
        };
        *out = give(format!("{}-dual", o.name), dual);
        Ok(())
    })
}

/// Subcoalgebra of `coalgebra` generated by the subspace handle `seed`.
///
/// # Safety
/// Both handles must be live and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn coalg_subcoalgebra_generated(
    coalgebra: *const CoalgObject,
    seed: *const CoalgObject,
    out: *mut *mut CoalgObject,
) -> CoalgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = read_obj(coalgebra, "coalgebra")?;
        let s = read_obj(seed, "seed")?;
        let (Object::Coalgebra(c_obj), Object::Subspace(s_obj)) = (&c.object, &s.object) else {
            return Err((CoalgStatus::WrongKind, "expected a coalgebra and a subspace".into()));
        };
        let d = subcoalgebra_generated(c_obj, s_obj).map_err(lib_err)?;
        *out = give(format!("{}-closure", c.name), Object::Subspace(d));
        Ok(())
    })
}
