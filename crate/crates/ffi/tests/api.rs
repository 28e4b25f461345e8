use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vassiliev_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { vsl_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vsl_last_error()) }.to_str().unwrap().to_owned()
}

fn algebra(name: &str) -> *mut VslAlgebra {
    let name = CString::new(name).unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { vsl_algebra_builtin(name.as_ptr(), &mut alg) }, VslStatus::Ok);
    alg
}

fn diagram(src: &str) -> *mut VslDiagram {
    let src = CString::new(src).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { vsl_diagram_parse(src.as_ptr(), &mut d) }, VslStatus::Ok, "{}", last_error());
    d
}

#[test]
fn one_chord_scalar() {
    let alg = algebra("sl2");
    let d = diagram("kind A\nlegs 2\nloop l1 l2\nedge l1 l2\n");
    let rep = CString::new("fund").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vsl_eval_scalar(alg, rep.as_ptr(), d, &mut out) }, VslStatus::Ok);
    assert_eq!(take(out), "3");
    let mut degree = 0;
    assert_eq!(unsafe { vsl_diagram_degree(d, &mut degree) }, VslStatus::Ok);
    assert_eq!(degree, 2);
    unsafe {
        vsl_diagram_free(d);
        vsl_algebra_free(alg);
    }
}

#[test]
fn strut_tensor() {
    let alg = algebra("sl2");
    let d = diagram("kind B\nlegs 2\nedge l1 l2\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vsl_eval_tensor(alg, d, &mut out) }, VslStatus::Ok);
    assert_eq!(take(out), "1/2\tH H\n2\tE F\n");
    let rep = CString::new("fund").unwrap();
    let mut scalar = ptr::null_mut();
    assert_eq!(unsafe { vsl_eval_scalar(alg, rep.as_ptr(), d, &mut scalar) }, VslStatus::KindMismatch);
    assert!(scalar.is_null());
    unsafe {
        vsl_diagram_free(d);
        vsl_algebra_free(alg);
    }
}

#[test]
fn dimensions() {
    let expect = [1, 1, 2, 3];
    for (n, want) in expect.iter().enumerate() {
        let mut dim = 0;
        assert_eq!(unsafe { vsl_dim_a(2 * n, &mut dim) }, VslStatus::Ok);
        assert_eq!(dim, *want);
    }
    let mut dim = 7;
    assert_eq!(unsafe { vsl_dim_a(3, &mut dim) }, VslStatus::Ok);
    assert_eq!(dim, 0);
    assert_eq!(unsafe { vsl_dim_a(40, &mut dim) }, VslStatus::Budget);
    assert!(last_error().contains("budget"));
    assert_eq!(unsafe { vsl_dim_b(0, 2, &mut dim) }, VslStatus::Ok);
    assert_eq!(dim, 1);
}

#[test]
fn link_and_parse_errors() {
    let alg = algebra("sl2");
    let rep = CString::new("fund").unwrap();
    let unknot = CString::new("").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vsl_link_invariant(alg, rep.as_ptr(), unknot.as_ptr(), 1, 2, false, &mut out) }, VslStatus::Ok);
    assert_eq!(take(out), "2");
    let bad = CString::new("1 q").unwrap();
    assert_eq!(unsafe { vsl_link_invariant(alg, rep.as_ptr(), bad.as_ptr(), 2, 2, false, &mut out) }, VslStatus::Parse);
    assert!(last_error().contains("column 3"));
    let far = CString::new("3").unwrap();
    assert_eq!(
        unsafe { vsl_link_invariant(alg, rep.as_ptr(), far.as_ptr(), 2, 2, false, &mut out) },
        VslStatus::IndexOutOfRange
    );
    unsafe { vsl_algebra_free(alg) };
}

#[test]
fn algebra_loading_and_validation() {
    let json = CString::new(
        r#"{"dim": 1, "parity": [0], "f": [], "metric": [[0, 0, 1]], "reps": {"fund": {"dim": 1, "parity": [0], "rho": [[0, 0, 0, 1]]}}}"#,
    )
    .unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { vsl_algebra_from_json(json.as_ptr(), &mut alg) }, VslStatus::Ok, "{}", last_error());
    let mut dim = 0;
    assert_eq!(unsafe { vsl_algebra_dim(alg, &mut dim) }, VslStatus::Ok);
    assert_eq!(dim, 1);
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { vsl_algebra_validate(alg, &mut passed, &mut report) }, VslStatus::Ok);
    assert!(passed);
    assert_eq!(take(report), "ok");
    unsafe { vsl_algebra_free(alg) };

    let bad = CString::new("{\"dim\": 1}").unwrap();
    let mut none = ptr::null_mut();
    assert_ne!(unsafe { vsl_algebra_from_json(bad.as_ptr(), &mut none) }, VslStatus::Ok);
    assert!(none.is_null());
    let unknown = CString::new("e8").unwrap();
    assert_eq!(unsafe { vsl_algebra_load(unknown.as_ptr(), &mut none) }, VslStatus::UnknownName);
}

#[test]
fn null_handles() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vsl_eval_tensor(ptr::null(), ptr::null(), &mut out) }, VslStatus::NullPointer);
    let mut dim = 0;
    assert_eq!(unsafe { vsl_algebra_dim(ptr::null(), &mut dim) }, VslStatus::NullPointer);
    unsafe {
        vsl_string_free(ptr::null_mut());
        vsl_algebra_free(ptr::null_mut());
        vsl_diagram_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(vsl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
