use std::ffi::{CStr, CString};
use std::ptr;

use gcdgraph_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gg_string_free(s);
    out
}

unsafe fn field(q: u32) -> *mut GgField {
    let mut f = ptr::null_mut();
    assert_eq!(gg_field_new(q, &mut f), GgStatus::Ok);
    f
}

#[test]
fn charpoly_and_spectrum() {
    unsafe {
        let f3 = field(3);
        let mut s = ptr::null_mut();
        assert_eq!(gg_charpoly(f3, c("x*(x+1)").as_ptr(), c("1, x").as_ptr(), &mut s), GgStatus::Ok);
        assert_eq!(take(s), "(x - 6)*(x + 3)^2*x^6");
        assert_eq!(gg_spectrum_json(f3, c("x").as_ptr(), c("").as_ptr(), &mut s), GgStatus::Ok);
        let json = take(s);
        assert!(json.contains("\"eigenvalues\":[{\"value\":0,\"multiplicity\":3}]"), "{json}");
        gg_field_free(f3);
    }
}

#[test]
fn ramanujan_and_unitary() {
    unsafe {
        let f2 = field(2);
        let mut v = 0i64;
        assert_eq!(gg_ramanujan_sum(f2, c("0").as_ptr(), c("x^2").as_ptr(), &mut v), GgStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(gg_ramanujan_sum(f2, c("1").as_ptr(), c("x^2").as_ptr(), &mut v), GgStatus::Ok);
        assert_eq!(v, 0);
        gg_field_free(f2);
        let mut n = 0u64;
        assert_eq!(gg_unitary_class_count(3, 4, &mut n), GgStatus::Ok);
        assert_eq!(n, 9);
        assert_eq!(gg_unitary_class_count(11, 6, &mut n), GgStatus::Ok);
        assert_eq!(n, 26);
    }
}

#[test]
fn graphs_and_isomorphism() {
    unsafe {
        let f3 = field(3);
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(gg_graph_build(f3, c("x*(x+1)").as_ptr(), c("1").as_ptr(), 0, &mut a), GgStatus::Ok);
        assert_eq!(gg_graph_build(f3, c("x*(x+2)").as_ptr(), c("1").as_ptr(), 0, &mut b), GgStatus::Ok);
        assert_eq!(gg_graph_vertex_count(a), 9);
        let mut adj = true;
        assert_eq!(gg_graph_is_adjacent(a, 0, 0, &mut adj), GgStatus::Ok);
        assert!(!adj);
        assert_eq!(gg_graph_is_adjacent(a, 0, 9, &mut adj), GgStatus::InvalidArgument);
        let mut iso = false;
        assert_eq!(gg_graph_is_isomorphic(a, b, &mut iso), GgStatus::Ok);
        assert!(iso);
        let mut s = ptr::null_mut();
        assert_eq!(gg_graph_json(a, &mut s), GgStatus::Ok);
        assert!(take(s).starts_with("{\"modulus\":"));
        gg_graph_free(a);
        gg_graph_free(b);
        gg_field_free(f3);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(gg_field_new(6, &mut f), GgStatus::InvalidArgument);
        assert_eq!(gg_field_new(64, &mut f), GgStatus::CapExceeded);
        assert_eq!(gg_field_new(3, ptr::null_mut()), GgStatus::NullPointer);
        let f3 = field(3);
        let mut s = ptr::null_mut();
        assert_eq!(gg_charpoly(f3, c("x^").as_ptr(), c("").as_ptr(), &mut s), GgStatus::Parse);
        assert!(!CStr::from_ptr(gg_last_error()).to_bytes().is_empty());
        assert_eq!(gg_charpoly(f3, c("x").as_ptr(), c("x").as_ptr(), &mut s), GgStatus::InvalidArgument);
        assert_eq!(gg_charpoly(f3, ptr::null(), c("").as_ptr(), &mut s), GgStatus::NullPointer);
        assert_eq!(gg_charpoly(ptr::null(), c("x").as_ptr(), c("").as_ptr(), &mut s), GgStatus::NullPointer);
        let mut g = ptr::null_mut();
        assert_eq!(gg_graph_build(f3, c("x^7").as_ptr(), c("").as_ptr(), 0, &mut g), GgStatus::CapExceeded);
        assert_eq!(gg_graph_vertex_count(ptr::null()), 0);
        gg_field_free(f3);
        gg_field_free(ptr::null_mut());
        gg_string_free(ptr::null_mut());
        assert!(CStr::from_ptr(gg_version()).to_str().unwrap().starts_with("0."));
    }
}
