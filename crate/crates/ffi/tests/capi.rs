use reconfig_ffi::*;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::process::Command;
use std::ptr;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { rc_string_free(p) };
    s
}

fn last_error() -> String {
    let p = rc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn complement_path(n: usize) -> *mut RcGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { rc_graph_new(n, &mut g) }, RcStatus::Ok);
    for u in 0..n {
        for v in u + 2..n {
            assert_eq!(unsafe { rc_graph_add_edge(g, u, v) }, RcStatus::Ok);
        }
    }
    g
}

#[test]
fn build_query_free() {
    let g = complement_path(6);
    let mut count = 0;
    assert_eq!(unsafe { rc_graph_edge_count(g, &mut count) }, RcStatus::Ok);
    assert_eq!(count, 10);
    let mut alpha = 0;
    assert_eq!(unsafe { rc_independence_number(g, 0, &mut alpha) }, RcStatus::Ok);
    assert_eq!(alpha, 2);
    let (a, b) = ([0usize, 1], [4usize, 5]);
    let mut d = 0i64;
    let st = unsafe { rc_distance(g, a.as_ptr(), b.as_ptr(), 2, RcRule::TokenJumping, 0, &mut d) };
    assert_eq!(st, RcStatus::Ok);
    assert_eq!(d, 4);
    let mut reach = false;
    assert_eq!(unsafe { rc_decide_k2(g, a.as_ptr(), b.as_ptr(), &mut reach) }, RcStatus::Ok);
    assert!(reach);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { rc_max_diameter_json(g, 2, RcRule::TokenJumping, 0, &mut json) }, RcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["diameter"], 4);
    unsafe { rc_graph_free(g) };
}

#[test]
fn error_codes() {
    let g = complement_path(4);
    assert_eq!(unsafe { rc_graph_add_edge(g, 0, 9) }, RcStatus::InvalidInput);
    assert!(last_error().contains("bad edge"));
    let mut out = 0usize;
    assert_eq!(unsafe { rc_graph_vertex_count(ptr::null(), &mut out) }, RcStatus::NullPointer);
    let (a, b) = ([0usize, 2], [2usize, 3]);
    let mut reach = false;
    assert_eq!(unsafe { rc_decide_k2(g, a.as_ptr(), b.as_ptr(), &mut reach) }, RcStatus::InvalidInput);
    let mut tiny = ptr::null_mut();
    unsafe { rc_graph_new(8, &mut tiny) };
    let (a, b) = ([0usize, 1, 2], [5usize, 6, 7]);
    let mut d = 0i64;
    let st = unsafe { rc_distance(tiny, a.as_ptr(), b.as_ptr(), 3, RcRule::TokenJumping, 3, &mut d) };
    assert_eq!(st, RcStatus::Capped);
    unsafe {
        rc_graph_free(g);
        rc_graph_free(tiny);
        rc_graph_free(ptr::null_mut());
        rc_string_free(ptr::null_mut());
    }
}

#[test]
fn constructions_and_text() {
    let kind = CString::new("circulant").unwrap();
    let params = CString::new(r#"{"p": 17, "s": [1]}"#).unwrap();
    let (mut g, mut report) = (ptr::null_mut(), ptr::null_mut());
    let st = unsafe { rc_construct(kind.as_ptr(), params.as_ptr(), 0, &mut g, &mut report) };
    assert_eq!(st, RcStatus::Ok);
    let r: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(r["claim"]["value"], 13);
    let mut n = 0;
    unsafe { rc_graph_vertex_count(g, &mut n) };
    assert_eq!(n, 16);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { rc_graph_to_edge_list(g, &mut text) }, RcStatus::Ok);
    let text = CString::new(take_string(text)).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { rc_graph_parse(text.as_ptr(), &mut h) }, RcStatus::Ok);
    let mut m = 0;
    unsafe { rc_graph_edge_count(h, &mut m) };
    // 120 pairs minus 15 at distance 1 and 15 at distance 2, cyclically
    assert_eq!(m, 90);
    unsafe {
        rc_graph_free(g);
        rc_graph_free(h);
    }

    let bad = CString::new(r#"{"p": 40, "s": [1]}"#).unwrap();
    let st = unsafe { rc_construct(kind.as_ptr(), bad.as_ptr(), 0, &mut g, &mut report) };
    assert_eq!(st, RcStatus::Precondition);
    assert!(last_error().contains("not prime"));

    let mut ap = ptr::null_mut();
    assert_eq!(unsafe { rc_apset_json(9, 40, &mut ap) }, RcStatus::Ok);
    assert_eq!(take_string(ap), "[1,2,4,8,9]");
    let v = unsafe { CStr::from_ptr(rc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/reconfig.h");
    let src = format!("#include \"{header}\"\nint main(void) {{ return RC_STATUS_OK; }}\n");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.c");
    std::fs::write(&file, src).unwrap();
    match Command::new("cc").arg("-std=c99").arg("-fsyntax-only").arg(&file).status() {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipping header check"),
    }
}
