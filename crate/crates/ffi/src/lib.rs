//! C ABI over `graphcap`.
//!
//! Graphs are opaque `GraphcapGraph` handles owned by the caller and released
//! with `graphcap_graph_free`. Every fallible call returns a
//! `GraphcapStatus`; on failure `graphcap_last_error` describes the problem
//! until the next call on the same thread. Strings returned by the library
//! are released with `graphcap_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use graphcap::alpha::{alpha, SolverConfig};
use graphcap::capacity::{capacity_interval, CapacityConfig};
use graphcap::graph::{complement, emit_graph6, parse_graph6, power, strong_product, sum, GraphSpec};
use graphcap::poly::SizeBudget;
use graphcap::theta::{theta, ThetaConfig};
use graphcap::{Error, Graph};

/// Opaque graph handle.
pub struct GraphcapGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphcapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Format = 3,
    Budget = 4,
    Convergence = 5,
    BufferTooSmall = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GraphcapTheta {
    pub value: f64,
    pub lower_cert: f64,
    pub upper_cert: f64,
    pub gap: f64,
    pub iterations: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GraphcapInterval {
    pub lower: f64,
    pub upper: f64,
    /// Power whose stable set number gave the lower end.
    pub k: u32,
    pub alpha: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GraphcapStatus {
    match e {
        Error::Format { .. } => GraphcapStatus::Format,
        Error::Budget { .. } | Error::Size { .. } | Error::NoLowerBound { .. } => GraphcapStatus::Budget,
        Error::Convergence { .. } => GraphcapStatus::Convergence,
        Error::Io(_) => GraphcapStatus::Io,
        _ => GraphcapStatus::InvalidArgument,
    }
}

struct Fail(GraphcapStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GraphcapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GraphcapStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GraphcapStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(GraphcapStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const GraphcapGraph, what: &str) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(GraphcapStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put_graph(out: *mut *mut GraphcapGraph, g: Graph) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(GraphcapGraph { inner: g }));
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn graphcap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph from a generator spec such as `c5`, `k7`, `e3`,
/// `petersen`, `kneser:5,2` or `schlafli`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_generate(spec: *const c_char, out: *mut *mut GraphcapGraph) -> GraphcapStatus {
    guard(|| {
        let spec = str_arg(spec, "spec")?;
        let g = spec.parse::<GraphSpec>()?.build()?;
        put_graph(out, g)
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_from_graph6(
    text: *const c_char,
    out: *mut *mut GraphcapGraph,
) -> GraphcapStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        put_graph(out, parse_graph6(text)?)
    })
}

/// Writes a newly allocated graph6 string to `*out`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_to_graph6(g: *const GraphcapGraph, out: *mut *mut c_char) -> GraphcapStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = CString::new(emit_graph6(g)).expect("graph6 is ASCII").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn graphcap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle or null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_free(g: *mut GraphcapGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_vertex_count(g: *const GraphcapGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_edge_count(g: *const GraphcapGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.edge_count())
}

/// Disjoint union.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_sum(
    a: *const GraphcapGraph,
    b: *const GraphcapGraph,
    out: *mut *mut GraphcapGraph,
) -> GraphcapStatus {
    guard(|| {
        let (a, b) = (graph_ref(a, "a")?, graph_ref(b, "b")?);
        put_graph(out, sum(a, b))
    })
}

/// Strong product; vertex (u, v) has index u·|b| + v.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_strong_product(
    a: *const GraphcapGraph,
    b: *const GraphcapGraph,
    out: *mut *mut GraphcapGraph,
) -> GraphcapStatus {
    guard(|| {
        let (a, b) = (graph_ref(a, "a")?, graph_ref(b, "b")?);
        SizeBudget::default().check_product(a, b)?;
        put_graph(out, strong_product(a, b))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_power(
    g: *const GraphcapGraph,
    k: u32,
    out: *mut *mut GraphcapGraph,
) -> GraphcapStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        SizeBudget::default().check_power(g, k)?;
        put_graph(out, power(g, k))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_graph_complement(
    g: *const GraphcapGraph,
    out: *mut *mut GraphcapGraph,
) -> GraphcapStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        put_graph(out, complement(g))
    })
}

/// Exact stable set number. A zero budget means the library default.
///
/// The witness is copied into `witness` when `witness_cap` is large enough;
/// `*witness_len` always receives its length. With a short buffer the call
/// returns `BufferTooSmall` after setting `*value` and `*witness_len`.
///
/// # Safety
/// `g` must be a live handle; `value` and `witness_len` must be writable;
/// `witness` must hold `witness_cap` elements or be null.
#[no_mangle]
pub unsafe extern "C" fn graphcap_alpha(
    g: *const GraphcapGraph,
    max_nodes: u64,
    max_seconds: u64,
    value: *mut usize,
    witness: *mut usize,
    witness_cap: usize,
    witness_len: *mut usize,
) -> GraphcapStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        if value.is_null() || witness_len.is_null() {
            return Err(null("value or witness_len"));
        }
        let mut cfg = SolverConfig::default();
        if max_nodes > 0 {
            cfg.max_nodes = max_nodes;
        }
        if max_seconds > 0 {
            cfg.max_time = Duration::from_secs(max_seconds);
        }
        let r = alpha(g, &cfg)?;
        *value = r.value;
        let w = r.witness.vertices();
        *witness_len = w.len();
        if witness.is_null() || witness_cap < w.len() {
            if witness.is_null() && witness_cap == 0 {
                return Ok(());
            }
            return Err(Fail(
                GraphcapStatus::BufferTooSmall,
                format!("witness needs {} slots", w.len()),
            ));
        }
        ptr::copy_nonoverlapping(w.as_ptr(), witness, w.len());
        Ok(())
    })
}

/// Lovász theta with certified bounds. `tol <= 0` selects the default.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_theta(g: *const GraphcapGraph, tol: f64, out: *mut GraphcapTheta) -> GraphcapStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = if tol > 0.0 {
            ThetaConfig::with_tol(tol)
        } else {
            ThetaConfig::default()
        };
        let r = theta(g, &cfg)?;
        *out = GraphcapTheta {
            value: r.value,
            lower_cert: r.lower_cert,
            upper_cert: r.upper_cert,
            gap: r.gap,
            iterations: r.iterations,
        };
        Ok(())
    })
}

/// Certified Shannon capacity enclosure using powers up to `kmax`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphcap_capacity(
    g: *const GraphcapGraph,
    kmax: u32,
    out: *mut GraphcapInterval,
) -> GraphcapStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = CapacityConfig {
            kmax,
            ..CapacityConfig::default()
        };
        let iv = capacity_interval(g, &cfg)?;
        *out = GraphcapInterval {
            lower: iv.lower,
            upper: iv.upper,
            k: iv.lower_provenance.k,
            alpha: iv.lower_provenance.alpha,
        };
        Ok(())
    })
}
