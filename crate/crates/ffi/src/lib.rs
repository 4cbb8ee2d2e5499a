//! C ABI for the sepgraph library: opaque handles for graphs and
//! decompositions, status codes, and a thread-local last-error message.
//!
//! Conventions:
//! - every fallible function returns [`SgStatus`]; "not found" outcomes are
//!   reported through output parameters, not as errors;
//! - output buffers are caller-allocated with documented capacities;
//! - handles are freed exactly once with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use sepgraph::apsp::{self, MinPlusKernel, UNREACHABLE};
use sepgraph::cycles;
use sepgraph::graph::{
    build_decomposition, exact_vertex_integrity, greedy_separator, validate_separator, Graph,
    SeparatorDecomposition,
};
use sepgraph::matching;
use sepgraph::subgraph4::{self, FourGraph};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    SgOk = 0,
    SgErrNullArgument = 1,
    SgErrInvalidArgument = 2,
    SgErrParse = 3,
    SgErrInvalidSeparator = 4,
    SgErrUnsupported = 5,
    SgErrProbabilisticFailure = 6,
    SgErrBufferTooSmall = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn fail(code: SgStatus, msg: &str) -> SgStatus {
    set_error(msg);
    code
}

/// Opaque graph handle.
pub struct SgGraph {
    inner: Graph,
}

/// Opaque decomposition handle (separator plus packed parts).
pub struct SgDecomposition {
    inner: SeparatorDecomposition,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent error on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a graph from an edge list (`2 * m` entries: `u0 v0 u1 v1 ...`).
///
/// # Safety
/// `edges` must point to `2 * m` readable `uint32_t`s and `out` must be a
/// valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_new(
    n: u32,
    edges: *const u32,
    m: usize,
    out: *mut *mut SgGraph,
) -> SgStatus {
    if out.is_null() || (m > 0 && edges.is_null()) {
        return fail(SgStatus::SgErrNullArgument, "null pointer");
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .map(|i| {
            let u = unsafe { *edges.add(2 * i) } as usize;
            let v = unsafe { *edges.add(2 * i + 1) } as usize;
            (u, v)
        })
        .collect();
    match Graph::new(n as usize, &pairs) {
        Ok(g) => {
            unsafe { *out = Box::into_raw(Box::new(SgGraph { inner: g })) };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// Parses the text format (`p <n> <m>` header plus `u v` lines).
///
/// # Safety
/// `text` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_parse(text: *const c_char, out: *mut *mut SgGraph) -> SgStatus {
    if text.is_null() || out.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null pointer");
    }
    let s = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(s) => s,
        Err(_) => return fail(SgStatus::SgErrParse, "input is not UTF-8"),
    };
    match Graph::parse_text(s) {
        Ok(g) => {
            unsafe { *out = Box::into_raw(Box::new(SgGraph { inner: g })) };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrParse, &e.to_string()),
    }
}

/// # Safety
/// `g` must come from a constructor of this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_free(g: *mut SgGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_n(g: *const SgGraph) -> u32 {
    unsafe { &*g }.inner.n() as u32
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_m(g: *const SgGraph) -> usize {
    unsafe { &*g }.inner.m()
}

/// Validates `separator` as a `k`-separator of `g` and packs the
/// decomposition.
///
/// # Safety
/// `separator` must point to `sep_len` readable entries; handles live.
#[no_mangle]
pub unsafe extern "C" fn sg_decomposition_new(
    g: *const SgGraph,
    separator: *const u32,
    sep_len: usize,
    k: u32,
    out: *mut *mut SgDecomposition,
) -> SgStatus {
    if g.is_null() || out.is_null() || (sep_len > 0 && separator.is_null()) {
        return fail(SgStatus::SgErrNullArgument, "null pointer");
    }
    let graph = &unsafe { &*g }.inner;
    let sep: Vec<usize> = (0..sep_len)
        .map(|i| unsafe { *separator.add(i) } as usize)
        .collect();
    match validate_separator(graph, &sep, k as usize) {
        Ok(true) => {}
        Ok(false) => {
            return fail(
                SgStatus::SgErrInvalidSeparator,
                "not a valid k-separator of the graph",
            )
        }
        Err(e) => return fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
    match build_decomposition(graph, &sep, k as usize) {
        Ok(d) => {
            unsafe { *out = Box::into_raw(Box::new(SgDecomposition { inner: d })) };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidSeparator, &e.to_string()),
    }
}

/// Finds a separator automatically (exact vertex integrity for small
/// budgets, greedy otherwise) and returns the decomposition plus its `k`.
///
/// # Safety
/// Handles and out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sg_decomposition_auto(
    g: *const SgGraph,
    out: *mut *mut SgDecomposition,
    out_k: *mut u32,
) -> SgStatus {
    if g.is_null() || out.is_null() || out_k.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null pointer");
    }
    let graph = &unsafe { &*g }.inner;
    let budget = 6.min(graph.n().max(1));
    let (sep, k) = match exact_vertex_integrity(graph, budget) {
        Some((iota, sep)) => (sep, iota),
        None => greedy_separator(graph),
    };
    match build_decomposition(graph, &sep, k) {
        Ok(d) => {
            unsafe {
                *out = Box::into_raw(Box::new(SgDecomposition { inner: d }));
                *out_k = k as u32;
            }
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidSeparator, &e.to_string()),
    }
}

/// # Safety
/// `d` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sg_decomposition_free(d: *mut SgDecomposition) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

unsafe fn graph_and_decomposition<'a>(
    g: *const SgGraph,
    d: *const SgDecomposition,
) -> Option<(&'a Graph, &'a SeparatorDecomposition)> {
    if g.is_null() || d.is_null() {
        None
    } else {
        Some((&unsafe { &*g }.inner, &unsafe { &*d }.inner))
    }
}

/// Girth of the graph: `*out_length` is set to the shortest cycle length,
/// or -1 for a forest. When `cycle_buf` is non-null with capacity
/// `cycle_cap >= length`, the witness cycle is written there.
///
/// # Safety
/// Handles must be live; `cycle_buf` (if non-null) must hold `cycle_cap`
/// writable entries.
#[no_mangle]
pub unsafe extern "C" fn sg_girth(
    g: *const SgGraph,
    d: *const SgDecomposition,
    out_length: *mut i64,
    cycle_buf: *mut u32,
    cycle_cap: usize,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_length.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_length");
    }
    match cycles::girth(graph, dec) {
        Ok(Some(report)) => {
            unsafe { *out_length = report.length as i64 };
            write_cycle(&report.vertices, cycle_buf, cycle_cap)
        }
        Ok(None) => {
            unsafe { *out_length = -1 };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidSeparator, &e.to_string()),
    }
}

/// Shortest even cycle; same conventions as [`sg_girth`].
///
/// # Safety
/// As for [`sg_girth`].
#[no_mangle]
pub unsafe extern "C" fn sg_even_girth(
    g: *const SgGraph,
    d: *const SgDecomposition,
    out_length: *mut i64,
    cycle_buf: *mut u32,
    cycle_cap: usize,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_length.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_length");
    }
    match cycles::even_girth(graph, dec) {
        Ok(Some(report)) => {
            unsafe { *out_length = report.length as i64 };
            write_cycle(&report.vertices, cycle_buf, cycle_cap)
        }
        Ok(None) => {
            unsafe { *out_length = -1 };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidSeparator, &e.to_string()),
    }
}

fn write_cycle(vertices: &[usize], buf: *mut u32, cap: usize) -> SgStatus {
    if buf.is_null() {
        return SgStatus::SgOk;
    }
    if cap < vertices.len() {
        return fail(
            SgStatus::SgErrBufferTooSmall,
            "cycle buffer smaller than the witness",
        );
    }
    for (i, &v) in vertices.iter().enumerate() {
        unsafe { *buf.add(i) = v as u32 };
    }
    SgStatus::SgOk
}

/// Randomized search for a cycle of exactly `length` (between 3 and 8).
/// `*out_found` reports the outcome; a found cycle is written to
/// `cycle_buf` (capacity at least `length`). One-sided error: a found
/// cycle is always genuine.
///
/// # Safety
/// Handles live; `cycle_buf` writable with the stated capacity.
#[no_mangle]
pub unsafe extern "C" fn sg_find_cycle(
    g: *const SgGraph,
    d: *const SgDecomposition,
    length: usize,
    failure_prob: f64,
    seed: u64,
    cycle_buf: *mut u32,
    cycle_cap: usize,
    out_found: *mut bool,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_found.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_found");
    }
    match cycles::find_cycle_of_length(graph, dec, length, failure_prob, seed) {
        Ok(Some(report)) => {
            unsafe { *out_found = true };
            write_cycle(&report.vertices, cycle_buf, cycle_cap)
        }
        Ok(None) => {
            unsafe { *out_found = false };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

fn pattern_from(token: *const c_char) -> Result<FourGraph, SgStatus> {
    if token.is_null() {
        return Err(fail(SgStatus::SgErrNullArgument, "null pattern token"));
    }
    let s = match unsafe { CStr::from_ptr(token) }.to_str() {
        Ok(s) => s,
        Err(_) => return Err(fail(SgStatus::SgErrParse, "pattern token is not UTF-8")),
    };
    FourGraph::from_token(s).ok_or_else(|| {
        fail(
            SgStatus::SgErrInvalidArgument,
            &format!("unknown pattern token `{}`", s),
        )
    })
}

/// Number of induced copies of the pattern modulo its per-pattern modulus.
/// Supported tokens: diamond, co-diamond, claw, co-claw, paw, co-paw, p4.
///
/// # Safety
/// Handles live; `token` NUL-terminated; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn sg_count_mod(
    g: *const SgGraph,
    d: *const SgDecomposition,
    token: *const c_char,
    out_residue: *mut u64,
    out_modulus: *mut u64,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_residue.is_null() || out_modulus.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null output");
    }
    let h = match pattern_from(token) {
        Ok(h) => h,
        Err(code) => return code,
    };
    match subgraph4::count_mod(graph, dec, h) {
        Ok((r, q)) => {
            unsafe {
                *out_residue = r;
                *out_modulus = q;
            }
            SgStatus::SgOk
        }
        Err(subgraph4::SubgraphError::Unsupported(_)) => {
            fail(SgStatus::SgErrUnsupported, "pattern has no counting modulus")
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// One-sided induced-subgraph detection (any token except k4 / co-k4).
///
/// # Safety
/// Handles live; `token` NUL-terminated; `out_found` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_detect_induced(
    g: *const SgGraph,
    d: *const SgDecomposition,
    token: *const c_char,
    failure_prob: f64,
    seed: u64,
    out_found: *mut bool,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_found.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_found");
    }
    let h = match pattern_from(token) {
        Ok(h) => h,
        Err(code) => return code,
    };
    match subgraph4::detect_induced(graph, dec, h, failure_prob, seed) {
        Ok(found) => {
            unsafe { *out_found = found };
            SgStatus::SgOk
        }
        Err(subgraph4::SubgraphError::Unsupported(_)) => fail(
            SgStatus::SgErrUnsupported,
            "k4 / co-k4 go through sg_detect_clique / sg_detect_independent_set",
        ),
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// Finds an induced copy; on success writes the four witness vertices (role
/// order of the pattern) into `out_vertices`.
///
/// # Safety
/// Handles live; `out_vertices` holds four writable entries.
#[no_mangle]
pub unsafe extern "C" fn sg_find_induced(
    g: *const SgGraph,
    d: *const SgDecomposition,
    token: *const c_char,
    failure_prob: f64,
    seed: u64,
    out_vertices: *mut u32,
    out_found: *mut bool,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_found.is_null() || out_vertices.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null output");
    }
    let h = match pattern_from(token) {
        Ok(h) => h,
        Err(code) => return code,
    };
    match subgraph4::find_induced(graph, dec, h, failure_prob, seed) {
        Ok(Some(e)) => {
            unsafe {
                *out_found = true;
                for (i, &v) in e.vertices.iter().enumerate() {
                    *out_vertices.add(i) = v as u32;
                }
            }
            SgStatus::SgOk
        }
        Ok(None) => {
            unsafe { *out_found = false };
            SgStatus::SgOk
        }
        Err(subgraph4::SubgraphError::Unsupported(_)) => {
            fail(SgStatus::SgErrUnsupported, "no finder for k4 / co-k4")
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// Exact clique detection (`K_ell` inside some `G[S + T_i]`).
///
/// # Safety
/// Handles live; `out_found` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_detect_clique(
    g: *const SgGraph,
    d: *const SgDecomposition,
    ell: usize,
    out_found: *mut bool,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_found.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_found");
    }
    match subgraph4::detect_clique(graph, dec, ell) {
        Ok(found) => {
            unsafe { *out_found = found };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// Exact independent-set detection.
///
/// # Safety
/// Handles live; `out_found` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_detect_independent_set(
    g: *const SgGraph,
    d: *const SgDecomposition,
    ell: usize,
    out_found: *mut bool,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_found.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_found");
    }
    match subgraph4::detect_independent_set(graph, dec, ell) {
        Ok(found) => {
            unsafe { *out_found = found };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// One-sided perfect matching test ("yes" is always correct).
///
/// # Safety
/// Handles live; `out_has` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_has_perfect_matching(
    g: *const SgGraph,
    d: *const SgDecomposition,
    trials: usize,
    seed: u64,
    out_has: *mut bool,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_has.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null out_has");
    }
    match matching::has_perfect_matching(graph, dec, trials, seed) {
        Ok(has) => {
            unsafe { *out_has = has };
            SgStatus::SgOk
        }
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// Maximum matching. `edge_buf` receives `2 * size` endpoints
/// (`u0 v0 u1 v1 ...`, ascending); a capacity of `n` entries always
/// suffices. `*out_size` is the number of edges.
///
/// # Safety
/// Handles live; `edge_buf` holds `edge_cap` writable entries.
#[no_mangle]
pub unsafe extern "C" fn sg_max_matching(
    g: *const SgGraph,
    d: *const SgDecomposition,
    seed: u64,
    edge_buf: *mut u32,
    edge_cap: usize,
    out_size: *mut usize,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    if out_size.is_null() || edge_buf.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null output");
    }
    match matching::max_matching(graph, dec, seed) {
        Ok(m) => {
            if edge_cap < 2 * m.size() {
                return fail(SgStatus::SgErrBufferTooSmall, "edge buffer too small");
            }
            unsafe {
                for (i, &(u, v)) in m.edges.iter().enumerate() {
                    *edge_buf.add(2 * i) = u as u32;
                    *edge_buf.add(2 * i + 1) = v as u32;
                }
                *out_size = m.size();
            }
            SgStatus::SgOk
        }
        Err(matching::MatchingError::ProbabilisticFailure(_)) => fail(
            SgStatus::SgErrProbabilisticFailure,
            "matching retries exhausted",
        ),
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// All-pairs shortest paths: writes the row-major `n * n` distance matrix
/// with -1 for unreachable pairs. `use_bd_kernel` selects the
/// bounded-difference min-plus kernel (outputs are identical).
///
/// # Safety
/// Handles live; `dist_buf` holds `dist_cap >= n * n` writable entries.
#[no_mangle]
pub unsafe extern "C" fn sg_apsp(
    g: *const SgGraph,
    d: *const SgDecomposition,
    use_bd_kernel: bool,
    dist_buf: *mut i64,
    dist_cap: usize,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    let kernel = if use_bd_kernel {
        MinPlusKernel::BoundedDifference
    } else {
        MinPlusKernel::Naive
    };
    match apsp::apsp_with_kernel(graph, dec, kernel) {
        Ok(m) => write_distances(graph.n(), &m, dist_buf, dist_cap),
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

/// Distances up to `d_max`; pairs further than that (or disconnected) get
/// -1.
///
/// # Safety
/// As for [`sg_apsp`].
#[no_mangle]
pub unsafe extern "C" fn sg_apsp_bounded(
    g: *const SgGraph,
    d: *const SgDecomposition,
    d_max: usize,
    dist_buf: *mut i64,
    dist_cap: usize,
) -> SgStatus {
    let (graph, dec) = match unsafe { graph_and_decomposition(g, d) } {
        Some(x) => x,
        None => return fail(SgStatus::SgErrNullArgument, "null handle"),
    };
    match apsp::apsp_bounded_diameter(graph, dec, d_max) {
        Ok(m) => write_distances(graph.n(), &m, dist_buf, dist_cap),
        Err(e) => fail(SgStatus::SgErrInvalidArgument, &e.to_string()),
    }
}

fn write_distances(n: usize, m: &apsp::DistanceMatrix, buf: *mut i64, cap: usize) -> SgStatus {
    if buf.is_null() {
        return fail(SgStatus::SgErrNullArgument, "null distance buffer");
    }
    if cap < n * n {
        return fail(SgStatus::SgErrBufferTooSmall, "distance buffer too small");
    }
    for u in 0..n {
        for v in 0..n {
            let d = m.get(u, v);
            let val = if d == UNREACHABLE { -1 } else { d as i64 };
            unsafe { *buf.add(u * n + v) = val };
        }
    }
    SgStatus::SgOk
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn build(edges: &[(u32, u32)], n: u32) -> (*mut SgGraph, *mut SgDecomposition) {
        let flat: Vec<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let mut g: *mut SgGraph = ptr::null_mut();
        assert_eq!(
            unsafe { sg_graph_new(n, flat.as_ptr(), edges.len(), &mut g) },
            SgStatus::SgOk
        );
        let mut d: *mut SgDecomposition = ptr::null_mut();
        let mut k = 0u32;
        assert_eq!(unsafe { sg_decomposition_auto(g, &mut d, &mut k) }, SgStatus::SgOk);
        (g, d)
    }

    #[test]
    fn girth_through_the_c_abi() {
        unsafe {
            let (g, d) = build(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5);
            let mut len = 0i64;
            let mut cycle = [0u32; 8];
            assert_eq!(
                sg_girth(g, d, &mut len, cycle.as_mut_ptr(), cycle.len()),
                SgStatus::SgOk
            );
            assert_eq!(len, 5);
            let mut even = 0i64;
            assert_eq!(
                sg_even_girth(g, d, &mut even, ptr::null_mut(), 0),
                SgStatus::SgOk
            );
            assert_eq!(even, -1);
            sg_decomposition_free(d);
            sg_graph_free(g);
        }
    }

    #[test]
    fn parse_and_apsp_through_the_c_abi() {
        unsafe {
            let text = CString::new("p 4 3\n0 1\n1 2\n2 3\n").unwrap();
            let mut g: *mut SgGraph = ptr::null_mut();
            assert_eq!(sg_graph_parse(text.as_ptr(), &mut g), SgStatus::SgOk);
            assert_eq!(sg_graph_n(g), 4);
            assert_eq!(sg_graph_m(g), 3);
            let mut d: *mut SgDecomposition = ptr::null_mut();
            let mut k = 0u32;
            assert_eq!(sg_decomposition_auto(g, &mut d, &mut k), SgStatus::SgOk);
            let mut dist = [0i64; 16];
            assert_eq!(sg_apsp(g, d, false, dist.as_mut_ptr(), 16), SgStatus::SgOk);
            assert_eq!(dist[3], 3); // 0 -> 3 along the path
            let mut dist_bd = [0i64; 16];
            assert_eq!(sg_apsp(g, d, true, dist_bd.as_mut_ptr(), 16), SgStatus::SgOk);
            assert_eq!(dist, dist_bd);
            sg_decomposition_free(d);
            sg_graph_free(g);
        }
    }

    #[test]
    fn matching_and_patterns_through_the_c_abi() {
        unsafe {
            let (g, d) = build(&[(0, 1), (1, 2), (2, 3), (3, 0)], 4);
            let mut has = false;
            assert_eq!(sg_has_perfect_matching(g, d, 3, 1, &mut has), SgStatus::SgOk);
            assert!(has);
            let mut buf = [0u32; 8];
            let mut size = 0usize;
            assert_eq!(
                sg_max_matching(g, d, 1, buf.as_mut_ptr(), 8, &mut size),
                SgStatus::SgOk
            );
            assert_eq!(size, 2);
            let token = CString::new("c4").unwrap();
            let mut found = false;
            assert_eq!(
                sg_detect_induced(g, d, token.as_ptr(), 0.05, 1, &mut found),
                SgStatus::SgOk
            );
            assert!(found);
            // Counting is unsupported for c4: error path plus a message.
            let mut r = 0u64;
            let mut q = 0u64;
            assert_eq!(
                sg_count_mod(g, d, token.as_ptr(), &mut r, &mut q),
                SgStatus::SgErrUnsupported
            );
            let msg = CStr::from_ptr(sg_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
            sg_decomposition_free(d);
            sg_graph_free(g);
        }
    }

    #[test]
    fn separator_rejection_sets_error() {
        unsafe {
            let flat = [0u32, 1, 1, 2, 2, 3, 3, 4, 4, 0, 0, 2];
            let mut g: *mut SgGraph = ptr::null_mut();
            assert_eq!(sg_graph_new(5, flat.as_ptr(), 6, &mut g), SgStatus::SgOk);
            let sep = [0u32];
            let mut d: *mut SgDecomposition = ptr::null_mut();
            assert_eq!(
                sg_decomposition_new(g, sep.as_ptr(), 1, 1, &mut d),
                SgStatus::SgErrInvalidSeparator
            );
            assert!(d.is_null());
            sg_graph_free(g);
        }
    }

    #[test]
    fn cycle_and_clique_through_the_c_abi() {
        unsafe {
            let (g, d) = build(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], 6);
            let mut found = false;
            let mut cyc = [0u32; 6];
            assert_eq!(
                sg_find_cycle(g, d, 6, 0.01, 3, cyc.as_mut_ptr(), 6, &mut found),
                SgStatus::SgOk
            );
            assert!(found);
            assert_eq!(
                sg_find_cycle(g, d, 4, 0.05, 3, cyc.as_mut_ptr(), 6, &mut found),
                SgStatus::SgOk
            );
            assert!(!found);
            let mut has = false;
            assert_eq!(sg_detect_clique(g, d, 2, &mut has), SgStatus::SgOk);
            assert!(has);
            assert_eq!(sg_detect_independent_set(g, d, 3, &mut has), SgStatus::SgOk);
            assert!(has);
            sg_decomposition_free(d);
            sg_graph_free(g);
        }
    }
}
