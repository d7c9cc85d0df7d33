//! C ABI over the `reconfig` library.
//!
//! Graphs are opaque `RcGraph` handles. Every function returns an
//! `RcStatus`; on failure the message is available from
//! `rc_last_error_message` on the same thread. Strings handed out by the
//! library must be released with `rc_string_free`, graphs with
//! `rc_graph_free`.

#![allow(clippy::missing_safety_doc)]

use reconfig::apfree;
use reconfig::constructions;
use reconfig::engine::DEFAULT_NODE_CAP;
use reconfig::io::{self, Format};
use reconfig::mis;
use reconfig::verify;
use reconfig::{Engine, Error, Graph, IndependentSet, ReconfigRule};
use serde_json::Value;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

/// Opaque graph handle.
pub struct RcGraph(Graph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Precondition = 3,
    Capped = 4,
    Io = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcRule {
    TokenJumping = 0,
    TokenSliding = 1,
}

impl From<RcRule> for ReconfigRule {
    fn from(r: RcRule) -> Self {
        match r {
            RcRule::TokenJumping => ReconfigRule::TokenJumping,
            RcRule::TokenSliding => ReconfigRule::TokenSliding,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RcStatus {
    match e {
        Error::InvalidInput(_) | Error::Parse { .. } | Error::LimitExceeded { .. } => RcStatus::InvalidInput,
        Error::Precondition(_) => RcStatus::Precondition,
        Error::Capped { .. } => RcStatus::Capped,
        Error::Io(_) => RcStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            RcStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            RcStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const RcGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.0).ok_or(Fail::Null("graph"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn slice_arg<'a>(p: *const usize, len: usize, what: &'static str) -> Result<&'a [usize], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn give_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail::Lib(Error::InvalidInput("string contains a nul byte".into())))
}

fn give_graph(g: Graph) -> *mut RcGraph {
    Box::into_raw(Box::new(RcGraph(g)))
}

fn cap_or_default(cap: usize) -> usize {
    if cap == 0 {
        DEFAULT_NODE_CAP
    } else {
        cap
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_new(n: usize, out: *mut *mut RcGraph) -> RcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if n > reconfig::engine::MAX_VERTICES {
            return Err(Fail::Lib(Error::InvalidInput(format!("{n} vertices is too many"))));
        }
        *out = give_graph(Graph::empty(n));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_free(g: *mut RcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_add_edge(g: *mut RcGraph, u: usize, v: usize) -> RcStatus {
    guard(|| {
        let g = &mut g.as_mut().ok_or(Fail::Null("graph"))?.0;
        if u >= g.n() || v >= g.n() || u == v {
            return Err(Fail::Lib(Error::InvalidInput(format!("bad edge ({u}, {v}) for {} vertices", g.n()))));
        }
        g.add_edge(u, v);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_vertex_count(g: *const RcGraph, out: *mut usize) -> RcStatus {
    guard(|| {
        *out_ref(out, "out")? = graph_ref(g)?.n();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_edge_count(g: *const RcGraph, out: *mut usize) -> RcStatus {
    guard(|| {
        *out_ref(out, "out")? = graph_ref(g)?.edge_count();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_has_edge(g: *const RcGraph, u: usize, v: usize, out: *mut bool) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if u >= g.n() || v >= g.n() {
            return Err(Fail::Lib(Error::InvalidInput(format!("vertex out of range for {} vertices", g.n()))));
        }
        *out_ref(out, "out")? = g.has_edge(u, v);
        Ok(())
    })
}

/// Parses edge-list or graph6 text (detected).
#[no_mangle]
pub unsafe extern "C" fn rc_graph_parse(text: *const c_char, out: *mut *mut RcGraph) -> RcStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let out = out_ref(out, "out")?;
        *out = give_graph(io::parse_graph(text, None)?);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_read(path: *const c_char, out: *mut *mut RcGraph) -> RcStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let out = out_ref(out, "out")?;
        *out = give_graph(io::read_graph(Path::new(path), None)?);
        Ok(())
    })
}

/// Writes the canonical edge list (or graph6 when `graph6` is true).
#[no_mangle]
pub unsafe extern "C" fn rc_graph_write(g: *const RcGraph, path: *const c_char, graph6: bool) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let path = str_arg(path, "path")?;
        let fmt = if graph6 { Format::Graph6 } else { Format::EdgeList };
        io::write_graph(g, Path::new(path), fmt)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_to_edge_list(g: *const RcGraph, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        *out_ref(out, "out")? = give_string(io::to_edge_list_string(g))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_graph_complement(g: *const RcGraph, out: *mut *mut RcGraph) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        *out_ref(out, "out")? = give_graph(g.complement());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_is_independent(
    g: *const RcGraph,
    vertices: *const usize,
    len: usize,
    out: *mut bool,
) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let vs = slice_arg(vertices, len, "vertices")?;
        *out_ref(out, "out")? = g.is_independent(vs)?;
        Ok(())
    })
}

/// Exact independence number; refuses graphs above `limit` vertices
/// (0 for the library default).
#[no_mangle]
pub unsafe extern "C" fn rc_independence_number(g: *const RcGraph, limit: usize, out: *mut usize) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let limit = if limit == 0 { mis::DEFAULT_MIS_LIMIT } else { limit };
        *out_ref(out, "out")? = mis::independence_number_with_limit(g, limit)?;
        Ok(())
    })
}

/// Distance between two independent k-sets in R_k; -1 when unreachable.
/// `cap` of 0 means the default node cap.
#[no_mangle]
pub unsafe extern "C" fn rc_distance(
    g: *const RcGraph,
    from: *const usize,
    to: *const usize,
    k: usize,
    rule: RcRule,
    cap: usize,
    out: *mut i64,
) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let a = IndependentSet::new(g, slice_arg(from, k, "from")?.to_vec())?;
        let b = IndependentSet::new(g, slice_arg(to, k, "to")?.to_vec())?;
        let d = Engine::new(g, k, rule.into())?.with_cap(cap_or_default(cap)).distance(&a, &b)?;
        *out_ref(out, "out")? = d.map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Largest component diameter of R_k as a JSON report.
#[no_mangle]
pub unsafe extern "C" fn rc_max_diameter_json(
    g: *const RcGraph,
    k: usize,
    rule: RcRule,
    cap: usize,
    out: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let rep = Engine::new(g, k, rule.into())?.with_cap(cap_or_default(cap)).max_component_diameter()?;
        let text = serde_json::to_string(&rep).expect("report serializes");
        *out_ref(out, "out")? = give_string(text)?;
        Ok(())
    })
}

/// Whether the independent pair `from` reaches `to` (two vertices each).
#[no_mangle]
pub unsafe extern "C" fn rc_decide_k2(
    g: *const RcGraph,
    from: *const usize,
    to: *const usize,
    out: *mut bool,
) -> RcStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let a = IndependentSet::new(g, slice_arg(from, 2, "from")?.to_vec())?;
        let b = IndependentSet::new(g, slice_arg(to, 2, "to")?.to_vec())?;
        *out_ref(out, "out")? = verify::decide_k2_fast(g, &a, &b)?;
        Ok(())
    })
}

fn param(p: &Value, key: &str) -> Result<u64, Fail> {
    p.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Fail::Lib(Error::InvalidInput(format!("missing integer parameter {key:?}"))))
}

/// Builds a named construction. `kind` is one of `comp-path {n}`,
/// `circulant {p, s}`, `k3 {budget}`, `toll {base, steps, booths}`,
/// `triple {base, p}`, `general {k, budget}`; `params` is a JSON object.
/// On success `out_graph` receives the graph and `out_report` its JSON report.
#[no_mangle]
pub unsafe extern "C" fn rc_construct(
    kind: *const c_char,
    params: *const c_char,
    cap: usize,
    out_graph: *mut *mut RcGraph,
    out_report: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let kind = str_arg(kind, "kind")?;
        let params: Value = serde_json::from_str(str_arg(params, "params")?)
            .map_err(|e| Fail::Lib(Error::InvalidInput(format!("params: {e}"))))?;
        let out_graph = out_ref(out_graph, "out_graph")?;
        let out_report = out_ref(out_report, "out_report")?;
        let cap = cap_or_default(cap);
        let (g, r) = match kind {
            "comp-path" => constructions::complement_path(param(&params, "n")? as usize)?,
            "circulant" => {
                let s: Vec<u64> = params
                    .get("s")
                    .and_then(Value::as_array)
                    .map(|a| a.iter().filter_map(Value::as_u64).collect())
                    .ok_or_else(|| Fail::Lib(Error::InvalidInput("missing array parameter \"s\"".into())))?;
                constructions::circulant_ap_graph(param(&params, "p")?, &s)?
            }
            "k3" => constructions::build_k3_extremal(param(&params, "budget")? as usize, cap)?,
            "toll" => constructions::iterate_toll(
                param(&params, "base")? as usize,
                param(&params, "steps")? as usize,
                param(&params, "booths")? as usize,
            )?,
            "triple" => {
                let (g, r) = constructions::complement_path(param(&params, "base")? as usize)?;
                constructions::triple_extend(&g, 2, &r.start, &r.target, param(&params, "p")?, None, cap)?
            }
            "general" => constructions::build_general(
                param(&params, "k")? as usize,
                param(&params, "budget")? as usize,
                cap,
            )?,
            other => return Err(Fail::Lib(Error::InvalidInput(format!("unknown construction {other:?}")))),
        };
        let text = serde_json::to_string(&r).expect("report serializes");
        *out_report = give_string(text)?;
        *out_graph = give_graph(g);
        Ok(())
    })
}

/// Best available 3-AP-free subset of `[1, n]` as a JSON array.
#[no_mangle]
pub unsafe extern "C" fn rc_apset_json(n: u64, exact_limit: u64, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let (s, _) = apfree::best_available(n, exact_limit);
        let text = serde_json::to_string(s.elements()).expect("integers serialize");
        *out_ref(out, "out")? = give_string(text)?;
        Ok(())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
