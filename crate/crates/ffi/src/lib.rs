//! C ABI over `gcdgraph`.
//!
//! Every fallible function returns a [`GgStatus`] and writes its result
//! through an out-pointer. On failure, `gg_last_error` describes the most
//! recent error on the calling thread. Strings handed out by this library
//! are NUL-terminated UTF-8 and must be released with `gg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gcdgraph::census::unitary_classes;
use gcdgraph::graph::DEFAULT_MAX_VERTICES;
use gcdgraph::iso::{is_isomorphic, DEFAULT_ISO_CAP};
use gcdgraph::parse::{parse_poly, parse_poly_list};
use gcdgraph::{build_graph, char_poly_spectral, ramanujan_sum, spectral_vector, Error, Field, GcdGraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    CapExceeded = 3,
    DivisionByZero = 4,
    Internal = 5,
    NullPointer = 6,
}

/// A finite field F_q.
pub struct GgField(Field);

/// A materialized gcd-graph.
pub struct GgGraph(GcdGraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GgStatus {
    match e {
        Error::Parse { .. } => GgStatus::Parse,
        Error::CapExceeded { .. } | Error::SearchBudget(_) => GgStatus::CapExceeded,
        Error::DivisionByZero => GgStatus::DivisionByZero,
        Error::Inconsistency(_) => GgStatus::Internal,
        _ => GgStatus::InvalidArgument,
    }
}

struct Fail(GgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(GgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, turning errors and panics into a status plus a thread-local message.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside gcdgraph");
            GgStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(GgStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(GgStatus::Internal, "interior NUL".into()))?;
    write_out(out, c.into_raw())
}

/// Message for the last failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates F_q for a prime power `q`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gg_field_new(q: u32, out: *mut *mut GgField) -> GgStatus {
    guard(|| {
        let field = Field::from_order(q)?;
        write_out(out, Box::into_raw(Box::new(GgField(field))))
    })
}

/// # Safety
/// `field` must come from `gg_field_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn gg_field_free(field: *mut GgField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Characteristic polynomial of G_f(D) in factored form, e.g. `(x - 6)*(x + 3)^2*x^6`.
/// `d` is a comma-separated list of divisors and may be empty.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gg_charpoly(
    field: *const GgField,
    f: *const c_char,
    d: *const c_char,
    out: *mut *mut c_char,
) -> GgStatus {
    guard(|| {
        let field = &ref_arg(field, "field")?.0;
        let f = parse_poly(field, str_arg(f, "f")?)?;
        let d = parse_poly_list(field, str_arg(d, "d")?)?;
        write_string(out, char_poly_spectral(&f, &d)?.factored_string())
    })
}

/// Spectrum of G_f(D) as JSON.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gg_spectrum_json(
    field: *const GgField,
    f: *const c_char,
    d: *const c_char,
    out: *mut *mut c_char,
) -> GgStatus {
    guard(|| {
        let field = &ref_arg(field, "field")?.0;
        let f = parse_poly(field, str_arg(f, "f")?)?;
        let d = parse_poly_list(field, str_arg(d, "d")?)?;
        let json = serde_json_string(&spectral_vector(&f, &d)?.to_json());
        write_string(out, json)
    })
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Ramanujan sum c(g, f).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gg_ramanujan_sum(
    field: *const GgField,
    g: *const c_char,
    f: *const c_char,
    out: *mut i64,
) -> GgStatus {
    guard(|| {
        let field = &ref_arg(field, "field")?.0;
        let g = parse_poly(field, str_arg(g, "g")?)?;
        let f = parse_poly(field, str_arg(f, "f")?)?;
        write_out(out, ramanujan_sum(&g, &f)?)
    })
}

/// Number of isospectral classes of unitary gcd-graphs for moduli of degree `n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gg_unitary_class_count(q: u64, n: usize, out: *mut u64) -> GgStatus {
    guard(|| write_out(out, unitary_classes(q, n)?.count as u64))
}

/// Builds G_f(D). `max_vertices` of 0 selects the default cap.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gg_graph_build(
    field: *const GgField,
    f: *const c_char,
    d: *const c_char,
    max_vertices: usize,
    out: *mut *mut GgGraph,
) -> GgStatus {
    guard(|| {
        let field = &ref_arg(field, "field")?.0;
        let f = parse_poly(field, str_arg(f, "f")?)?;
        let d = parse_poly_list(field, str_arg(d, "d")?)?;
        let cap = if max_vertices == 0 { DEFAULT_MAX_VERTICES } else { max_vertices };
        let g = build_graph(&f, &d, cap)?;
        write_out(out, Box::into_raw(Box::new(GgGraph(g))))
    })
}

/// # Safety
/// `graph` must come from `gg_graph_build`, or be null.
#[no_mangle]
pub unsafe extern "C" fn gg_graph_free(graph: *mut GgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gg_graph_vertex_count(graph: *const GgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.graph().vertex_count())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gg_graph_is_adjacent(graph: *const GgGraph, u: usize, v: usize, out: *mut bool) -> GgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?.0.graph();
        let n = g.vertex_count();
        if u >= n || v >= n {
            return Err(Fail(GgStatus::InvalidArgument, format!("vertex out of range: {u}, {v} with n = {n}")));
        }
        write_out(out, g.has_edge(u, v))
    })
}

/// Edge list and labels as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gg_graph_json(graph: *const GgGraph, out: *mut *mut c_char) -> GgStatus {
    guard(|| {
        let g = ref_arg(graph, "graph")?;
        write_string(out, serde_json_string(&g.0.to_json()))
    })
}

/// Decides isomorphism exactly. Graphs above 256 vertices are refused.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gg_graph_is_isomorphic(a: *const GgGraph, b: *const GgGraph, out: *mut bool) -> GgStatus {
    guard(|| {
        let a = ref_arg(a, "a")?.0.graph();
        let b = ref_arg(b, "b")?.0.graph();
        write_out(out, is_isomorphic(a, b, DEFAULT_ISO_CAP)?.is_some())
    })
}


/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gg_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr().cast()
}
