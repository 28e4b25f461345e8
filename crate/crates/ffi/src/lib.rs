//! C ABI over the `vassiliev` crate.
//!
//! Every fallible function returns a [`VslStatus`] and writes its result through
//! an out pointer. On failure [`vsl_last_error`] describes the error. Strings
//! returned through `char **` belong to the caller and go back through
//! [`vsl_string_free`]; handles go back through their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use vassiliev::cli::resolve_algebra;
use vassiliev::diagram::{parse_diagram, DiagramVector, JacobiGraph, Kind};
use vassiliev::liealg::{builtin, parse_algebra, MetricLieAlgebra};
use vassiliev::rational::fmt_q;
use vassiliev::relations;
use vassiliev::ribbon::{closure_invariant, BraidWord};
use vassiliev::weights::WeightSystem;
use vassiliev::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VslStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Structural = 5,
    KindMismatch = 6,
    Grading = 7,
    IndexOutOfRange = 8,
    UnknownName = 9,
    Budget = 10,
    Io = 11,
    Panic = 12,
}

/// A metric Lie (super)algebra with its representations.
pub struct VslAlgebra(MetricLieAlgebra);

/// A Jacobi diagram.
pub struct VslDiagram(JacobiGraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> VslStatus {
    match e {
        Error::Structural(_) => VslStatus::Structural,
        Error::KindMismatch { .. } => VslStatus::KindMismatch,
        Error::Parse { .. } => VslStatus::Parse,
        Error::Validation(_) => VslStatus::Validation,
        Error::Budget(_) => VslStatus::Budget,
        Error::Grading(_) => VslStatus::Grading,
        Error::IndexOutOfRange(_) => VslStatus::IndexOutOfRange,
        Error::Unknown(_) => VslStatus::UnknownName,
        Error::Io(_) => VslStatus::Io,
    }
}

struct Fail(VslStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VslStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            VslStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            VslStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(VslStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(VslStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(VslStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(VslStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(VslStatus::Structural, "output contains a NUL byte".into()))?;
    if out.is_null() {
        return Err(Fail(VslStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

/// The message of the last failed call on this thread, or an empty string.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn vsl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn vsl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a built-in algebra such as `sl2`, `gl(3)`, `so(5)`, `abelian(2)` or `gl(1|1)`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_algebra_builtin(name: *const c_char, out: *mut *mut VslAlgebra) -> VslStatus {
    guard(|| {
        let g = builtin(text(name, "name")?)?;
        put(out, Box::into_raw(Box::new(VslAlgebra(g))))
    })
}

/// Parses a JSON algebra description.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_algebra_from_json(json: *const c_char, out: *mut *mut VslAlgebra) -> VslStatus {
    guard(|| {
        let g = parse_algebra(text(json, "json")?)?;
        put(out, Box::into_raw(Box::new(VslAlgebra(g))))
    })
}

/// A built-in name or the path of a JSON algebra file.
///
/// # Safety
/// `name_or_path` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_algebra_load(name_or_path: *const c_char, out: *mut *mut VslAlgebra) -> VslStatus {
    guard(|| {
        let g = resolve_algebra(text(name_or_path, "algebra")?)?;
        put(out, Box::into_raw(Box::new(VslAlgebra(g))))
    })
}

/// # Safety
/// `alg` is null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn vsl_algebra_free(alg: *mut VslAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra.
///
/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_algebra_dim(alg: *const VslAlgebra, out: *mut usize) -> VslStatus {
    guard(|| put(out, handle(alg, "algebra")?.0.dim()))
}

/// Checks every axiom; `passed` receives the outcome and `report` the failures, or `ok`.
///
/// # Safety
/// `alg` is a live handle; `passed` and `report` are writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_algebra_validate(alg: *const VslAlgebra, passed: *mut bool, report: *mut *mut c_char) -> VslStatus {
    guard(|| {
        let r = handle(alg, "algebra")?.0.validate();
        put(passed, r.passed())?;
        put_string(report, r.to_string())
    })
}

/// Parses a diagram in the line-oriented DSL.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_parse(src: *const c_char, out: *mut *mut VslDiagram) -> VslStatus {
    guard(|| {
        let d = parse_diagram(text(src, "source")?)?;
        put(out, Box::into_raw(Box::new(VslDiagram(d))))
    })
}

/// # Safety
/// `d` is null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_free(d: *mut VslDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of trivalent plus univalent vertices.
///
/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_degree(d: *const VslDiagram, out: *mut usize) -> VslStatus {
    guard(|| put(out, handle(d, "diagram")?.0.degree()))
}

/// Whether the diagram has a Wilson loop (`kind A`).
///
/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_is_closed(d: *const VslDiagram, out: *mut bool) -> VslStatus {
    guard(|| put(out, handle(d, "diagram")?.0.kind() == Kind::A))
}

/// `dim A` in the given (even) degree.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_dim_a(degree: usize, out: *mut usize) -> VslStatus {
    guard(|| {
        if degree % 2 == 1 {
            return put(out, 0);
        }
        put(out, relations::dim_a(degree / 2)?)
    })
}

/// `dim B` with `v` trivalent vertices and `legs` legs.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_dim_b(v: usize, legs: usize, out: *mut usize) -> VslStatus {
    guard(|| put(out, relations::dim_b(v, legs)?))
}

/// The scalar weight of a closed diagram in representation `rep`, as `p/q`.
///
/// # Safety
/// `alg` and `d` are live handles; `rep` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_eval_scalar(
    alg: *const VslAlgebra,
    rep: *const c_char,
    d: *const VslDiagram,
    out: *mut *mut c_char,
) -> VslStatus {
    guard(|| {
        let g = &handle(alg, "algebra")?.0;
        let d = &handle(d, "diagram")?.0;
        if d.kind() != Kind::A {
            return Err(Error::KindMismatch { expected: "A", found: d.kind().name() }.into());
        }
        let w = WeightSystem::new(g);
        let value = w.closed_a(text(rep, "rep")?, &DiagramVector::from_graph(d))?;
        put_string(out, fmt_q(&value))
    })
}

/// The image in `U(g)` of an A diagram, or in `S(g)` of a B diagram, one
/// `coefficient<TAB>monomial` line per term.
///
/// # Safety
/// `alg` and `d` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_eval_tensor(alg: *const VslAlgebra, d: *const VslDiagram, out: *mut *mut c_char) -> VslStatus {
    guard(|| {
        let g = &handle(alg, "algebra")?.0;
        let d = &handle(d, "diagram")?.0;
        let w = WeightSystem::new(g);
        let v = DiagramVector::from_graph(d);
        let s = match d.kind() {
            Kind::A => w.a_to_u(&v)?.render(g.basis_names()),
            Kind::B => w.b_to_s(&v)?.0.render(g.basis_names()),
        };
        put_string(out, s)
    })
}

/// The truncated invariant of the closure of `braid` on `strands` strands,
/// every strand colored by `rep`, as a series in `h` up to `order`.
///
/// # Safety
/// `alg` is a live handle; `rep` and `braid` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_link_invariant(
    alg: *const VslAlgebra,
    rep: *const c_char,
    braid: *const c_char,
    strands: usize,
    order: usize,
    normalize: bool,
    out: *mut *mut c_char,
) -> VslStatus {
    guard(|| {
        let g = &handle(alg, "algebra")?.0;
        let rep = text(rep, "rep")?;
        let word = BraidWord::parse(text(braid, "braid")?, strands)?;
        let labels = vec![rep; strands];
        let value = closure_invariant(g, &labels, &word, order, normalize)?;
        put_string(out, value.to_string())
    })
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn vsl_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn null_arguments_are_reported() {
        let mut out: *mut VslAlgebra = ptr::null_mut();
        assert_eq!(unsafe { vsl_algebra_builtin(ptr::null(), &mut out) }, VslStatus::NullPointer);
        assert!(out.is_null());
        let msg = unsafe { CStr::from_ptr(vsl_last_error()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }

    #[test]
    fn status_follows_error_kind() {
        assert_eq!(status_of(&Error::Budget("x".into())), VslStatus::Budget);
        assert_eq!(status_of(&Error::Parse { line: 1, column: 1, message: "x".into() }), VslStatus::Parse);
    }
}
