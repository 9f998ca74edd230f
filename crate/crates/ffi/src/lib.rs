//! C ABI over `knodeldom`.
//!
//! Graphs and solve results are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`KdStatus`]; on failure
//! `kd_last_error_message` describes the error on the calling thread.
//! Variable-length outputs use caller buffers: pass `out`, its capacity and
//! `out_len`. When the buffer is too small the call returns
//! `KD_STATUS_BUFFER_TOO_SMALL` and still stores the required length.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knodeldom::{
    construct_optimal_tds, gamma_t_formula, is_dominating, is_total_dominating,
    side_lower_bound, solve, Certificate, DominationKind, Error, KnodelGraph, Side,
    SolveOptions, SolveResult, Strategy, Vertex,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameters = 2,
    OutOfRange = 3,
    Contract = 4,
    OutOfDomain = 5,
    TooLarge = 6,
    Incomplete = 7,
    Parse = 8,
    Io = 9,
    BufferTooSmall = 10,
    InvalidArgument = 11,
    Panic = 12,
}

pub const KD_SIDE_U: u8 = 0;
pub const KD_SIDE_V: u8 = 1;

pub const KD_KIND_TOTAL: u8 = 0;
pub const KD_KIND_DOMINATING: u8 = 1;

pub const KD_STRATEGY_EXHAUSTIVE: u8 = 0;
pub const KD_STRATEGY_PRUNED: u8 = 1;
pub const KD_STRATEGY_CONSTRUCTION: u8 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KdCertificate {
    BoundMatched = 0,
    Exhausted = 1,
}

/// A vertex `u_index` (side `KD_SIDE_U`) or `v_index` (side `KD_SIDE_V`); indices are 1-based.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KdVertex {
    pub side: u8,
    pub index: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KdSolveOptions {
    /// One of the `KD_STRATEGY_*` constants.
    pub strategy: u8,
    /// One of the `KD_KIND_*` constants.
    pub kind: u8,
    /// 0 uses the global thread pool.
    pub threads: usize,
    /// 0 means unlimited.
    pub max_nodes: u64,
    pub exhaust_below_bound: bool,
    pub override_guard: bool,
}

/// Opaque graph handle.
pub struct KdGraph(KnodelGraph);

/// Opaque solve result handle.
pub struct KdSolveResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(err: Error) -> KdStatus {
    let status = match err {
        Error::InvalidParameters(_) => KdStatus::InvalidParameters,
        Error::OutOfRange { .. } => KdStatus::OutOfRange,
        Error::Contract(_) => KdStatus::Contract,
        Error::OutOfDomain { .. } => KdStatus::OutOfDomain,
        Error::TooLarge(_) => KdStatus::TooLarge,
        Error::Incomplete { .. } => KdStatus::Incomplete,
        Error::Parse(_) => KdStatus::Parse,
        Error::Io(_) => KdStatus::Io,
    };
    set_error(err.to_string());
    status
}

fn bad_argument(msg: &str) -> KdStatus {
    set_error(msg.to_string());
    KdStatus::InvalidArgument
}

fn null(what: &str) -> KdStatus {
    set_error(format!("{what} is null"));
    KdStatus::NullPointer
}

/// Runs `body`, turning panics into `KD_STATUS_PANIC`.
fn guarded(body: impl FnOnce() -> KdStatus) -> KdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".into());
            KdStatus::Panic
        }
    }
}

fn to_vertex(v: KdVertex) -> Result<Vertex, KdStatus> {
    match v.side {
        KD_SIDE_U => Ok(Vertex::u(v.index)),
        KD_SIDE_V => Ok(Vertex::v(v.index)),
        s => Err(bad_argument(&format!("side must be 0 (U) or 1 (V), got {s}"))),
    }
}

fn from_vertex(v: Vertex) -> KdVertex {
    KdVertex {
        side: match v.side {
            Side::U => KD_SIDE_U,
            Side::V => KD_SIDE_V,
        },
        index: v.index,
    }
}

/// # Safety
/// `set` must point to `len` readable vertices unless `len` is 0.
unsafe fn read_set(set: *const KdVertex, len: usize) -> Result<Vec<Vertex>, KdStatus> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if set.is_null() {
        return Err(null("set"));
    }
    std::slice::from_raw_parts(set, len).iter().map(|&v| to_vertex(v)).collect()
}

/// # Safety
/// `out` must have room for `cap` vertices (or be null with `cap` 0) and
/// `out_len` must be writable.
unsafe fn write_set(items: &[Vertex], out: *mut KdVertex, cap: usize, out_len: *mut usize) -> KdStatus {
    if out_len.is_null() {
        return null("out_len");
    }
    *out_len = items.len();
    if items.len() > cap {
        set_error(format!("buffer holds {cap} vertices, {} needed", items.len()));
        return KdStatus::BufferTooSmall;
    }
    if items.is_empty() {
        return KdStatus::Ok;
    }
    if out.is_null() {
        return null("out");
    }
    for (k, &v) in items.iter().enumerate() {
        *out.add(k) = from_vertex(v);
    }
    KdStatus::Ok
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static nul-terminated string.
#[no_mangle]
pub extern "C" fn kd_version() -> *const c_char {
    VERSION.as_ptr().cast()
}

/// Creates `W(delta, n)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_new(delta: u32, n: usize, out: *mut *mut KdGraph) -> KdStatus {
    guarded(|| {
        if out.is_null() {
            return null("out");
        }
        match KnodelGraph::new(delta, n) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(KdGraph(g)));
                KdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must come from `kd_graph_new` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_free(g: *mut KdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_graph_delta(g: *const KdGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.0.delta())
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_graph_n(g: *const KdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_graph_half(g: *const KdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.half())
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_graph_edge_count(g: *const KdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Neighbours of `w` in canonical order.
///
/// # Safety
/// `g` must be a live handle; see the module notes for `out`/`out_len`.
#[no_mangle]
pub unsafe extern "C" fn kd_graph_neighbors(
    g: *const KdGraph,
    w: KdVertex,
    out: *mut KdVertex,
    cap: usize,
    out_len: *mut usize,
) -> KdStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        let w = match to_vertex(w) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match g.0.neighbors(w) {
            Ok(mut nb) => {
                nb.sort_unstable();
                write_set(&nb, out, cap, out_len)
            }
            Err(e) => fail(e),
        }
    })
}

/// Cyclic index distance of two same-side vertices.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kd_index_distance(g: *const KdGraph, a: KdVertex, b: KdVertex, out: *mut usize) -> KdStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out.is_null() {
            return null("out");
        }
        let (a, b) = match (to_vertex(a), to_vertex(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match g.0.index_distance(a, b) {
            Ok(d) => {
                *out = d;
                KdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

unsafe fn dominates(
    g: *const KdGraph,
    set: *const KdVertex,
    len: usize,
    out_holds: *mut bool,
    kind: DominationKind,
) -> KdStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out_holds.is_null() {
            return null("out_holds");
        }
        let d = match read_set(set, len) {
            Ok(d) => d,
            Err(s) => return s,
        };
        let r = match kind {
            DominationKind::TotalDominating => is_total_dominating(&g.0, &d),
            DominationKind::Dominating => is_dominating(&g.0, &d),
        };
        match r {
            Ok(r) => {
                *out_holds = r.holds;
                KdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must be a live handle, `set` must hold `len` vertices, `out_holds` writable.
#[no_mangle]
pub unsafe extern "C" fn kd_is_total_dominating(
    g: *const KdGraph,
    set: *const KdVertex,
    len: usize,
    out_holds: *mut bool,
) -> KdStatus {
    dominates(g, set, len, out_holds, DominationKind::TotalDominating)
}

/// # Safety
/// `g` must be a live handle, `set` must hold `len` vertices, `out_holds` writable.
#[no_mangle]
pub unsafe extern "C" fn kd_is_dominating(
    g: *const KdGraph,
    set: *const KdVertex,
    len: usize,
    out_holds: *mut bool,
) -> KdStatus {
    dominates(g, set, len, out_holds, DominationKind::Dominating)
}

unsafe fn scalar(out: *mut usize, value: knodeldom::Result<usize>) -> KdStatus {
    if out.is_null() {
        return null("out");
    }
    match value {
        Ok(v) => {
            *out = v;
            KdStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Total domination number of `W(3, n)` from the closed form.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_gamma_t_formula(n: usize, out: *mut usize) -> KdStatus {
    guarded(|| scalar(out, gamma_t_formula(n)))
}

/// Least possible size of one side of a total dominating set of `W(3, n)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_side_lower_bound(n: usize, out: *mut usize) -> KdStatus {
    guarded(|| scalar(out, side_lower_bound(n)))
}

/// Optimal total dominating set of `W(3, n)`, canonical order.
///
/// # Safety
/// See the module notes for `out`/`out_len`.
#[no_mangle]
pub unsafe extern "C" fn kd_construct_optimal_tds(n: usize, out: *mut KdVertex, cap: usize, out_len: *mut usize) -> KdStatus {
    guarded(|| match construct_optimal_tds(n) {
        Ok(d) => write_set(&d, out, cap, out_len),
        Err(e) => fail(e),
    })
}

/// Defaults: pruned search, total domination, global pool, no node limit.
#[no_mangle]
pub extern "C" fn kd_solve_options_default() -> KdSolveOptions {
    KdSolveOptions {
        strategy: KD_STRATEGY_PRUNED,
        kind: KD_KIND_TOTAL,
        threads: 0,
        max_nodes: 0,
        exhaust_below_bound: false,
        override_guard: false,
    }
}

/// Exact minimum (total) dominating set. `opts` may be null for defaults.
///
/// # Safety
/// `g` must be a live handle, `opts` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kd_solve(g: *const KdGraph, opts: *const KdSolveOptions, out: *mut *mut KdSolveResult) -> KdStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out.is_null() {
            return null("out");
        }
        let o = opts.as_ref().copied().unwrap_or_else(|| kd_solve_options_default());
        let strategy = match o.strategy {
            KD_STRATEGY_EXHAUSTIVE => Strategy::Exhaustive,
            KD_STRATEGY_PRUNED => Strategy::Pruned,
            KD_STRATEGY_CONSTRUCTION => Strategy::Construction,
            s => return bad_argument(&format!("unknown strategy {s}")),
        };
        let kind = match o.kind {
            KD_KIND_TOTAL => DominationKind::TotalDominating,
            KD_KIND_DOMINATING => DominationKind::Dominating,
            k => return bad_argument(&format!("unknown kind {k}")),
        };
        let options = SolveOptions {
            strategy,
            max_nodes: (o.max_nodes > 0).then_some(o.max_nodes),
            threads: (o.threads > 0).then_some(o.threads),
            exhaust_below_bound: o.exhaust_below_bound,
            override_guard: o.override_guard,
        };
        match solve(&g.0, kind, &options) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(KdSolveResult(r)));
                KdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` must be a live result handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_solve_result_optimum(r: *const KdSolveResult) -> usize {
    r.as_ref().map_or(0, |r| r.0.optimum)
}

/// # Safety
/// `r` must be a live result handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_solve_result_nodes_explored(r: *const KdSolveResult) -> u64 {
    r.as_ref().map_or(0, |r| r.0.nodes_explored)
}

/// # Safety
/// `r` must be a live result handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_solve_result_elapsed_us(r: *const KdSolveResult) -> u64 {
    r.as_ref()
        .map_or(0, |r| u64::try_from(r.0.elapsed.as_micros()).unwrap_or(u64::MAX))
}

/// # Safety
/// `r` must be a live result handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kd_solve_result_certificate(r: *const KdSolveResult, out: *mut KdCertificate) -> KdStatus {
    let Some(r) = r.as_ref() else { return null("result") };
    if out.is_null() {
        return null("out");
    }
    *out = match r.0.certificate {
        Certificate::BoundMatched => KdCertificate::BoundMatched,
        Certificate::Exhausted => KdCertificate::Exhausted,
    };
    KdStatus::Ok
}

/// The lexicographically least optimal set, canonical order.
///
/// # Safety
/// `r` must be a live result handle; see the module notes for `out`/`out_len`.
#[no_mangle]
pub unsafe extern "C" fn kd_solve_result_witness(
    r: *const KdSolveResult,
    out: *mut KdVertex,
    cap: usize,
    out_len: *mut usize,
) -> KdStatus {
    let Some(r) = r.as_ref() else { return null("result") };
    write_set(&r.0.witness, out, cap, out_len)
}

/// # Safety
/// `r` must come from `kd_solve` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kd_solve_result_free(r: *mut KdSolveResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
