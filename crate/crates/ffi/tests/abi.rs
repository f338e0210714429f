use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use foliate_core::fixtures;
use foliate_core::io::serialize;
use foliate_ffi::*;

fn parse(text: &str) -> (FolStatus, *mut FolSurface) {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { fol_surface_parse(c.as_ptr(), &mut out) };
    (status, out)
}

fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { fol_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fol_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn parse_and_query() {
    let (status, s) = parse(&serialize(&fixtures::kaplan5()));
    assert_eq!(status, FolStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { fol_surface_strip_count(s, &mut n) }, FolStatus::Ok);
    assert_eq!(n, 5);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { fol_surface_serialize(s, &mut text) }, FolStatus::Ok);
    assert_eq!(take(text), serialize(&fixtures::kaplan5()));

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { fol_leaf_space_dot(s, &mut dot) }, FolStatus::Ok);
    assert_eq!(take(dot).matches("style=dashed").count(), 3);

    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { fol_decompose_json(s, FolCutMode::WithBoundary, &mut json) },
        FolStatus::Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(report["components"].as_array().unwrap().len(), 5);
    unsafe { fol_surface_free(s) };
}

#[test]
fn codes_and_isomorphism() {
    let (_, a) = parse(&serialize(&fixtures::kaplan5()));
    let (_, b) = parse(&serialize(&fixtures::kaplan5().mirror()));
    let (_, c) = parse(&serialize(&fixtures::cylinder()));
    let mut iso = false;
    assert_eq!(unsafe { fol_is_isomorphic(a, b, &mut iso) }, FolStatus::Ok);
    assert!(iso);
    assert_eq!(unsafe { fol_is_isomorphic(a, c, &mut iso) }, FolStatus::Ok);
    assert!(!iso);
    let (mut ca, mut cb) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        fol_canonical_code(a, &mut ca);
        fol_canonical_code(b, &mut cb);
    }
    let (ca, cb) = (take(ca), take(cb));
    assert_eq!(ca, cb);
    assert!(ca.chars().all(|ch| ch.is_ascii_hexdigit()));
    for s in [a, b, c] {
        unsafe { fol_surface_free(s) };
    }
}

#[test]
fn error_statuses() {
    let (status, s) = parse("{ not json");
    assert_eq!(status, FolStatus::ParseError);
    assert!(s.is_null());
    assert!(last_error().starts_with("ParseError"));

    let (status, _) = parse(
        r#"{"strips":[{"id":"A","lower":[],"upper":[{"id":"a"},{"id":"b"}]}],"gluings":[{"a":"a","b":"b","orientation":"preserving"}]}"#,
    );
    assert_eq!(status, FolStatus::InvalidSurface);
    assert!(last_error().contains("SameSideGluing"));

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { fol_surface_parse(ptr::null(), &mut out) },
        FolStatus::NullPointer
    );
    let mut n = 0usize;
    assert_eq!(
        unsafe { fol_surface_strip_count(ptr::null(), &mut n) },
        FolStatus::NullPointer
    );

    let (_, two) =
        parse(r#"{"strips":[{"id":"A","lower":[],"upper":[]},{"id":"B","lower":[],"upper":[]}],"gluings":[]}"#);
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { fol_decompose_json(two, FolCutMode::Interior, &mut json) },
        FolStatus::Disconnected
    );
    assert!(json.is_null());
    unsafe { fol_surface_free(two) };

    let bad = CString::new(vec![0xffu8, 0xfe]).unwrap();
    assert_eq!(
        unsafe { fol_surface_parse(bad.as_ptr(), &mut out) },
        FolStatus::InvalidUtf8
    );
    unsafe {
        fol_surface_free(ptr::null_mut());
        fol_string_free(ptr::null_mut());
    }
}

#[test]
fn uk_through_the_abi() {
    let mut v = 0.0;
    let (y, q) = ([1.0, 5.0], [0.0, 2.0]);
    assert_eq!(
        unsafe { fol_uk_eval(3.0, y.as_ptr(), q.as_ptr(), 2, &mut v) },
        FolStatus::Ok
    );
    assert_eq!(v, 1.0);
    assert_eq!(
        unsafe { fol_uk_eval(5.0, [2.0].as_ptr(), [0.0].as_ptr(), 1, &mut v) },
        FolStatus::Ok
    );
    assert_eq!(v, 3.0);
    let bad = [2.0, 1.0];
    assert_eq!(
        unsafe { fol_uk_eval(0.0, bad.as_ptr(), q.as_ptr(), 2, &mut v) },
        FolStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { fol_uk_eval(0.0, y.as_ptr(), q.as_ptr(), 0, &mut v) },
        FolStatus::InvalidArgument
    );
}

#[test]
fn errors_are_per_thread() {
    let _ = parse("nope");
    assert!(!last_error().is_empty());
    std::thread::spawn(|| assert!(last_error().is_empty())).join().unwrap();
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"foliate.h\"\n\
         int main(void) {\n\
           FolSurface *s = NULL;\n\
           FolStatus st = fol_surface_parse(\"{}\", &s);\n\
           double v; double y[1] = {2.0}, q[1] = {0.0};\n\
           fol_uk_eval(5.0, y, q, 1, &v);\n\
           fol_surface_free(s);\n\
           return st == FOL_STATUS_OK;\n\
         }\n",
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&header)
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
