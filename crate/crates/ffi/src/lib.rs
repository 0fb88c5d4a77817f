//! C ABI for the consets toolkit.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every call returns a
//! [`ConsetsStatus`]; on failure a message is available from
//! [`consets_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with
//! [`consets_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use consets::counting::{self, CountMode, Engine, Limits};
use consets::families::{self, Gadget};
use consets::transfer::{self, BuildOptions, Mode, SpectralOptions, TransferMatrix};
use consets::{Error, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsetsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Graph6 = 3,
    Capacity = 4,
    Budget = 5,
    NoConvergence = 6,
    EngineMismatch = 7,
    Io = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsetsCountMode {
    Connected = 0,
    DominatingConnected = 1,
    Independent = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsetsEngine {
    Brute = 0,
    Recursive = 1,
    Both = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsetsTransferMode {
    Connected = 0,
    Dominating = 1,
}

/// A simple graph on at most 64 vertices.
pub struct ConsetsGraph(Graph);

/// A base graph together with its marked cycle.
pub struct ConsetsGadget(Gadget);

/// A built transfer matrix.
pub struct ConsetsTransfer(TransferMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul bytes were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ConsetsStatus {
    match e {
        Error::Graph6(_) => ConsetsStatus::Graph6,
        Error::Capacity { .. } => ConsetsStatus::Capacity,
        Error::Invalid(_) | Error::Contract(_) => ConsetsStatus::InvalidArgument,
        Error::Budget(_) => ConsetsStatus::Budget,
        Error::NoConvergence { .. } => ConsetsStatus::NoConvergence,
        Error::EngineMismatch { .. } => ConsetsStatus::EngineMismatch,
        Error::Io(_) => ConsetsStatus::Io,
    }
}

struct Fail(ConsetsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ConsetsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ConsetsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ConsetsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            ConsetsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ConsetsStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn slice_arg<'a>(p: *const usize, len: usize, what: &str) -> Result<&'a [usize], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("generated text has no nul bytes").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn consets_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn consets_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one graph6 line.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn consets_graph_from_graph6(text: *const c_char, out: *mut *mut ConsetsGraph) -> ConsetsStatus {
    guard(|| {
        let g = consets::parse_graph6(str_arg(text, "text")?).map_err(Error::from)?;
        put(out, Box::into_raw(Box::new(ConsetsGraph(g))), "out")
    })
}

/// Builds a named graph family member, e.g. `"complete_bipartite"` with
/// parameters `{4, 4}`.
///
/// # Safety
/// `name` must be a nul-terminated string, `params` must point to
/// `n_params` values (or be null when `n_params` is 0), `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn consets_graph_family(
    name: *const c_char,
    params: *const usize,
    n_params: usize,
    out: *mut *mut ConsetsGraph,
) -> ConsetsStatus {
    guard(|| {
        let g = families::standard_family(str_arg(name, "name")?, slice_arg(params, n_params, "params")?)?;
        put(out, Box::into_raw(Box::new(ConsetsGraph(g))), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn consets_graph_free(g: *mut ConsetsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn consets_graph_order(g: *const ConsetsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Encodes the graph as graph6; free the result with
/// [`consets_string_free`].
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn consets_graph_to_graph6(g: *const ConsetsGraph, out: *mut *mut c_char) -> ConsetsStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        put(out, c_string(consets::to_graph6(&g.0)), "out")
    })
}

/// Counts vertex sets of `g`. The exact count is written as a decimal
/// string (free with [`consets_string_free`]) and `count^(1/n)` to
/// `out_c`, which may be null.
///
/// # Safety
/// `g` must be a live graph handle; `out_count` must be writable;
/// `out_c` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn consets_count(
    g: *const ConsetsGraph,
    mode: ConsetsCountMode,
    engine: ConsetsEngine,
    out_count: *mut *mut c_char,
    out_c: *mut f64,
) -> ConsetsStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        if out_count.is_null() {
            return Err(null("out_count"));
        }
        let mode = match mode {
            ConsetsCountMode::Connected => CountMode::Connected,
            ConsetsCountMode::DominatingConnected => CountMode::DominatingConnected,
            ConsetsCountMode::Independent => CountMode::Independent,
        };
        let engine = match engine {
            ConsetsEngine::Brute => Engine::Brute,
            ConsetsEngine::Recursive => Engine::Recursive,
            ConsetsEngine::Both => Engine::Both,
        };
        let r = counting::count(&g.0, mode, engine, Limits::default())?;
        if !out_c.is_null() {
            out_c.write(r.c);
        }
        put(out_count, c_string(r.count.to_string()), "out_count")
    })
}

/// Pairs a copy of `base` with the cycle `cycle[0..len]`.
///
/// # Safety
/// `base` must be a live graph handle, `cycle` must point to `len` values,
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn consets_gadget_new(
    base: *const ConsetsGraph,
    cycle: *const usize,
    len: usize,
    out: *mut *mut ConsetsGadget,
) -> ConsetsStatus {
    guard(|| {
        let base = handle(base, "base")?;
        let gadget = Gadget::new(base.0.clone(), slice_arg(cycle, len, "cycle")?.to_vec())?;
        put(out, Box::into_raw(Box::new(ConsetsGadget(gadget))), "out")
    })
}

/// # Safety
/// `g` must be null or a gadget handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn consets_gadget_free(g: *mut ConsetsGadget) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Glues `k` copies of the gadget along its cycle.
///
/// # Safety
/// `gadget` must be a live gadget handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn consets_glue(gadget: *const ConsetsGadget, k: usize, out: *mut *mut ConsetsGraph) -> ConsetsStatus {
    guard(|| {
        let g = families::glue(&handle(gadget, "gadget")?.0, k)?;
        put(out, Box::into_raw(Box::new(ConsetsGraph(g))), "out")
    })
}

/// Builds the transfer matrix of a gadget.
///
/// # Safety
/// `gadget` must be a live gadget handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn consets_transfer_build(
    gadget: *const ConsetsGadget,
    mode: ConsetsTransferMode,
    merge: bool,
    trim: bool,
    out: *mut *mut ConsetsTransfer,
) -> ConsetsStatus {
    guard(|| {
        let mode = match mode {
            ConsetsTransferMode::Connected => Mode::Connected,
            ConsetsTransferMode::Dominating => Mode::Dominating,
        };
        let opts = BuildOptions { merge, trim, ..Default::default() };
        let t = transfer::build_matrix(&handle(gadget, "gadget")?.0, mode, opts)?;
        put(out, Box::into_raw(Box::new(ConsetsTransfer(t))), "out")
    })
}

/// # Safety
/// `t` must be null or a transfer handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn consets_transfer_free(t: *mut ConsetsTransfer) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live transfer handle.
#[no_mangle]
pub unsafe extern "C" fn consets_transfer_dim(t: *const ConsetsTransfer) -> usize {
    t.as_ref().map_or(0, |t| t.0.dim())
}

/// Dominant eigenvalue and the bound `lambda^(1/n0)`. A nonpositive `tol`
/// or zero `max_iter` selects the defaults. `out_bound` may be null.
///
/// # Safety
/// `t` must be a live transfer handle; `out_lambda` must be writable;
/// `out_bound` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn consets_transfer_spectral(
    t: *const ConsetsTransfer,
    tol: f64,
    max_iter: usize,
    out_lambda: *mut f64,
    out_bound: *mut f64,
) -> ConsetsStatus {
    guard(|| {
        let t = handle(t, "transfer")?;
        let mut opts = SpectralOptions::default();
        if tol > 0.0 {
            opts.tol = tol;
        }
        if max_iter > 0 {
            opts.max_iter = max_iter;
        }
        let r = t.0.spectral(opts)?;
        if !out_bound.is_null() {
            out_bound.write(r.bound);
        }
        put(out_lambda, r.lambda, "out_lambda")
    })
}

/// Exact number of length-`k` walks from the full column back to itself,
/// as a decimal string.
///
/// # Safety
/// `t` must be a live transfer handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn consets_transfer_path_count(t: *const ConsetsTransfer, k: usize, out: *mut *mut c_char) -> ConsetsStatus {
    guard(|| {
        let t = handle(t, "transfer")?;
        put(out, c_string(t.0.path_count(k).to_string()), "out")
    })
}
