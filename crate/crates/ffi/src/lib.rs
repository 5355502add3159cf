//! C ABI over `graph-energy`.
//!
//! Graphs cross the boundary as opaque `GeGraph` handles owned by the caller
//! and released with `ge_graph_free`. Every fallible function returns a
//! `GE_*` status code; on failure `ge_last_error_message` describes the most
//! recent error on the calling thread. Strings returned by the library are
//! released with `ge_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graph_energy::invariants::{self, verify_all, ModeSelection};
use graph_energy::ops::parse_op_list;
use graph_energy::spectral::{self, MatrixKind};
use graph_energy::{Error, GeneratorSpec, Graph, OperationKind, Tolerances};

pub const GE_OK: i32 = 0;
/// Some record of a verification report is a fatal MISMATCH.
pub const GE_MISMATCH: i32 = 1;
/// Malformed input: bad spec string, bad UTF-8, invalid tolerances.
pub const GE_PARSE_ERROR: i32 = 2;
/// Mathematical domain error: disconnected graph, isolated vertex, m out of range.
pub const GE_DOMAIN_ERROR: i32 = 3;
pub const GE_NULL_POINTER: i32 = 4;
/// The output buffer is too small; the required length was written.
pub const GE_BUFFER_TOO_SMALL: i32 = 5;
pub const GE_INVALID_ARGUMENT: i32 = 6;
pub const GE_PANIC: i32 = 7;

pub const GE_MATRIX_ADJACENCY: i32 = 0;
pub const GE_MATRIX_RANDIC: i32 = 1;
pub const GE_MATRIX_NORMALIZED_LAPLACIAN: i32 = 2;

pub const GE_MODE_AS_PRINTED: i32 = 0;
pub const GE_MODE_CORRECTED: i32 = 1;
pub const GE_MODE_BOTH: i32 = 2;

/// Opaque graph handle.
pub struct GeGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_domain() {
            GE_DOMAIN_ERROR
        } else {
            GE_PARSE_ERROR
        };
        Failure(code, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            GE_PANIC
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(GE_NULL_POINTER, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const GeGraph) -> FfiResult<&'a Graph> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| null("graph"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(GE_PARSE_ERROR, format!("{what} is not valid UTF-8")))
}

fn kind(k: i32) -> FfiResult<MatrixKind> {
    match k {
        GE_MATRIX_ADJACENCY => Ok(MatrixKind::Adjacency),
        GE_MATRIX_RANDIC => Ok(MatrixKind::Randic),
        GE_MATRIX_NORMALIZED_LAPLACIAN => Ok(MatrixKind::NormalizedLaplacian),
        _ => Err(Failure(
            GE_INVALID_ARGUMENT,
            format!("unknown matrix kind {k}"),
        )),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<i32> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(GE_OK)
}

unsafe fn emit_graph(g: Graph, out: *mut *mut GeGraph) -> FfiResult<i32> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(GeGraph(g))));
    Ok(GE_OK)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ge_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph on `p` vertices from `q` pairs stored as `edges[2k]`,
/// `edges[2k+1]`.
///
/// # Safety
/// `edges` must point to `2 * q` readable values (or be null when `q == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_from_edges(
    p: usize,
    edges: *const usize,
    q: usize,
    out: *mut *mut GeGraph,
) -> i32 {
    guard(|| {
        let flat: &[usize] = if q == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * q)
        };
        let g = Graph::from_edge_list(p, flat.chunks_exact(2).map(|c| (c[0], c[1])))?;
        emit_graph(g, out)
    })
}

/// Builds a named graph: `k:n`, `cycle:n`, `star:n`, `path:n`, `petersen`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_generate(spec: *const c_char, out: *mut *mut GeGraph) -> i32 {
    guard(|| {
        let spec: GeneratorSpec = text(spec, "spec")?.parse()?;
        emit_graph(spec.build()?, out)
    })
}

/// Applies an operation such as `shadow:3` or `h1:4:0:3`, producing a new graph.
///
/// # Safety
/// `g` must be a live handle, `op` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_apply(
    g: *const GeGraph,
    op: *const c_char,
    out: *mut *mut GeGraph,
) -> i32 {
    guard(|| {
        let g = graph_ref(g)?;
        let op: OperationKind = text(op, "operation")?.parse()?;
        emit_graph(op.apply(g)?, out)
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_order(g: *const GeGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.order())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_size(g: *const GeGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.size())
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ge_graph_free(g: *mut GeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Energy (sum of absolute eigenvalues) of the chosen matrix.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_energy(g: *const GeGraph, matrix: i32, out: *mut f64) -> i32 {
    guard(|| {
        let e = spectral::energy(graph_ref(g)?, kind(matrix)?)?;
        write_out(out, e.value)
    })
}

/// Writes the ascending eigenvalues into `buf` and their count into `len`.
/// If `cap` is too small only `len` is written and `GE_BUFFER_TOO_SMALL`
/// returned.
///
/// # Safety
/// `g` must be a live handle, `buf` writable for `cap` values (may be null
/// when `cap == 0`), `len` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_eigenvalues(
    g: *const GeGraph,
    matrix: i32,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> i32 {
    guard(|| {
        let g = graph_ref(g)?;
        if len.is_null() {
            return Err(null("len"));
        }
        let eigs = spectral::eigenvalues(g, kind(matrix)?, &Tolerances::default())?;
        len.write(eigs.len());
        if cap < eigs.len() {
            return Err(Failure(
                GE_BUFFER_TOO_SMALL,
                format!("buffer holds {cap} values, {} needed", eigs.len()),
            ));
        }
        if !eigs.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(eigs.as_ptr(), buf, eigs.len());
        }
        Ok(GE_OK)
    })
}

/// Kemeny's constant of a connected graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_kemeny(g: *const GeGraph, out: *mut f64) -> i32 {
    guard(|| write_out(out, invariants::kemeny(graph_ref(g)?)?))
}

/// Degree Kirchhoff index of a connected graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_kirchhoff(g: *const GeGraph, out: *mut f64) -> i32 {
    guard(|| write_out(out, invariants::degree_kirchhoff(graph_ref(g)?)?))
}

/// Spectral spanning-tree count of a connected graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_spanning_trees(g: *const GeGraph, out: *mut f64) -> i32 {
    guard(|| write_out(out, invariants::spanning_trees(graph_ref(g)?)?.value))
}

/// Exact spanning-tree count by integer elimination; fails with
/// `GE_DOMAIN_ERROR` on overflow of 64 bits.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_matrix_tree_count(g: *const GeGraph, out: *mut u64) -> i32 {
    guard(|| {
        let count = invariants::matrix_tree_count(graph_ref(g)?)?;
        let count = u64::try_from(count).map_err(|_| Failure::from(Error::Overflow))?;
        write_out(out, count)
    })
}

/// Predicted energy of `op(G)` from the energy of `G`.
///
/// # Safety
/// `op` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_predict_energy(
    base_energy: f64,
    op: *const c_char,
    matrix: i32,
    out: *mut f64,
) -> i32 {
    guard(|| {
        let op: OperationKind = text(op, "operation")?.parse()?;
        write_out(
            out,
            spectral::predict_energy(base_energy, &op, kind(matrix)?)?,
        )
    })
}

/// Verification records for a comma-separated operation list, as a JSON
/// array in `*out` (release with `ge_string_free`). Returns `GE_MISMATCH`
/// when a non-printed record mismatches; the report is written either way.
///
/// # Safety
/// `g` must be a live handle, `ops` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ge_verify_json(
    g: *const GeGraph,
    ops: *const c_char,
    mode: i32,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let ops = parse_op_list(text(ops, "ops")?)?;
        let mode = match mode {
            GE_MODE_AS_PRINTED => ModeSelection::AsPrinted,
            GE_MODE_CORRECTED => ModeSelection::Corrected,
            GE_MODE_BOTH => ModeSelection::Both,
            _ => return Err(Failure(GE_INVALID_ARGUMENT, format!("unknown mode {mode}"))),
        };
        let records = verify_all(g, &ops, mode, &Tolerances::default())?;
        let json = graph_energy::format::to_json_string(&records)?;
        out.write(
            CString::new(json)
                .map_err(|e| Failure(GE_PANIC, e.to_string()))?
                .into_raw(),
        );
        Ok(if records.iter().any(|r| r.is_fatal_mismatch()) {
            GE_MISMATCH
        } else {
            GE_OK
        })
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
