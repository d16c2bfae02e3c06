//! C ABI over `ramsey-lab`.
//!
//! Colorings are opaque `RlColoring` handles owned by the caller and freed
//! with `rl_coloring_free`. Strings returned through out-parameters are
//! freed with `rl_string_free`. Every function returns an `RlStatus`; on
//! failure `rl_last_error` describes the most recent error on the calling
//! thread. Vertex labels are 1-based and edges are addressed by colex rank.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ramsey_lab::coloring::{lower_bound_witness, Color, PairKind, TwoColoring};
use ramsey_lab::embed::{count_copies, find_embedding, SearchOptions, SearchResult};
use ramsey_lab::prover::{
    decide_arrowing, export_dimacs, verify_certificate, ArrowOptions, Budget, Status,
};
use ramsey_lab::template::{Kind, LooseTemplate};
use ramsey_lab::Error;

/// Opaque 2-coloring of a complete k-uniform host.
pub struct RlColoring(TwoColoring);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    HypothesisViolation = 3,
    ProofGap = 4,
    MalformedInput = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlKind {
    Path = 0,
    Cycle = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlColor {
    Blue = 0,
    Red = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlPair {
    PP = 0,
    PC = 1,
    CC = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlArrowStatus {
    Sat = 0,
    Unsat = 1,
    Unknown = 2,
}

/// Limits and switches for `rl_decide_arrowing`. Zero limits mean none.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RlArrowConfig {
    pub max_nodes: u64,
    pub max_secs: f64,
    pub threads: u32,
    pub symmetry: bool,
}

/// Counters reported by `rl_decide_arrowing`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RlArrowStats {
    pub nodes: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub wall_ms: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).expect("no interior nul"));
}

fn status_of(e: &Error) -> RlStatus {
    match e {
        Error::HypothesisViolation(_)
        | Error::BlueEdgeEncountered(_)
        | Error::MonochromaticColoring
        | Error::HostTooSmall { .. }
        | Error::PreconditionViolation(_) => RlStatus::HypothesisViolation,
        Error::ProofGap { .. } => RlStatus::ProofGap,
        Error::MalformedCertificate(_) | Error::Json(_) => RlStatus::MalformedInput,
        Error::InternalAssertion(_) | Error::Io(_) => RlStatus::Internal,
        _ => RlStatus::InvalidArgument,
    }
}

struct Fail(RlStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        set_error(e.to_string());
        Fail(status_of(&e))
    }
}

fn fail(status: RlStatus, msg: &str) -> Fail {
    set_error(msg);
    Fail(status)
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RlStatus::Ok,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("panic inside ramsey-lab");
            RlStatus::Panic
        }
    }
}

unsafe fn coloring<'a>(c: *const RlColoring) -> Result<&'a TwoColoring, Fail> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| fail(RlStatus::NullPointer, "null coloring handle"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(fail(RlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(RlStatus::MalformedInput, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(RlStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

fn handle(c: TwoColoring) -> *mut RlColoring {
    Box::into_raw(Box::new(RlColoring(c)))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(RlStatus::Internal, "string contains nul"))
}

fn template(k: usize, kind: RlKind, len: usize) -> Result<LooseTemplate, Fail> {
    let kind = match kind {
        RlKind::Path => Kind::Path,
        RlKind::Cycle => Kind::Cycle,
    };
    Ok(LooseTemplate::new(kind, k, len)?)
}

fn color(c: RlColor) -> Color {
    match c {
        RlColor::Red => Color::Red,
        RlColor::Blue => Color::Blue,
    }
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn rl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `c` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_free(c: *mut RlColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// One-color coloring of `K^k_N`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_uniform(k: u32, n_vertices: u32, c: RlColor, out: *mut *mut RlColoring) -> RlStatus {
    guard(|| {
        let col = TwoColoring::uniform(k as usize, n_vertices, color(c))?;
        put(out, handle(col))
    })
}

/// Parses the JSON coloring format (hex bits or explicit red edges).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_from_json(json: *const c_char, out: *mut *mut RlColoring) -> RlStatus {
    guard(|| {
        let col = TwoColoring::from_json_str(text(json)?)?;
        put(out, handle(col))
    })
}

/// Serializes a coloring; free the result with `rl_string_free`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_to_json(c: *const RlColoring, explicit: bool, out: *mut *mut c_char) -> RlStatus {
    guard(|| {
        let s = coloring(c)?.to_json(explicit).to_string();
        put(out, c_string(s)?)
    })
}

/// # Safety
/// `c` must be a live handle; outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_shape(c: *const RlColoring, k: *mut u32, n_vertices: *mut u32, edges: *mut u64) -> RlStatus {
    guard(|| {
        let col = coloring(c)?;
        put(k, col.k() as u32)?;
        put(n_vertices, col.n_vertices())?;
        put(edges, col.edge_count() as u64)
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_get(c: *const RlColoring, rank: u64, out: *mut RlColor) -> RlStatus {
    guard(|| {
        let col = coloring(c)?;
        if rank >= col.edge_count() as u64 {
            return Err(fail(RlStatus::InvalidArgument, "edge rank out of range"));
        }
        let v = match col.color_of_rank(rank as usize) {
            Color::Red => RlColor::Red,
            Color::Blue => RlColor::Blue,
        };
        put(out, v)
    })
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_coloring_set(c: *mut RlColoring, rank: u64, value: RlColor) -> RlStatus {
    guard(|| {
        let col = c
            .as_mut()
            .map(|c| &mut c.0)
            .ok_or_else(|| fail(RlStatus::NullPointer, "null coloring handle"))?;
        if rank >= col.edge_count() as u64 {
            return Err(fail(RlStatus::InvalidArgument, "edge rank out of range"));
        }
        col.set_rank(rank as usize, color(value));
        Ok(())
    })
}

/// Verified lower-bound coloring for `R(n, m)` of the given pair kind.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_lower_bound_witness(k: u32, n: u32, m: u32, pair: RlPair, out: *mut *mut RlColoring) -> RlStatus {
    guard(|| {
        let pair = match pair {
            RlPair::PP => PairKind::PP,
            RlPair::PC => PairKind::PC,
            RlPair::CC => PairKind::CC,
        };
        let w = lower_bound_witness(k as usize, n as usize, m as usize, pair)?;
        put(out, handle(w.coloring))
    })
}

/// Number of copies of a loose path or cycle in `K^k_N`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_count_copies(k: u32, n_vertices: u32, kind: RlKind, len: u32, out: *mut u64) -> RlStatus {
    guard(|| {
        let t = template(k as usize, kind, len as usize)?;
        put(out, count_copies(n_vertices, k as usize, &t)? as u64)
    })
}

/// Searches for a monochromatic copy. On success `*found` tells whether one
/// exists; if so its vertex sequence is written to `assignment` (capacity
/// `cap`) and its length to `*len`.
///
/// # Safety
/// `c` must be a live handle; `assignment` must hold `cap` values; outputs
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_find_embedding(
    c: *const RlColoring,
    value: RlColor,
    kind: RlKind,
    length: u32,
    assignment: *mut u32,
    cap: usize,
    len: *mut usize,
    found: *mut bool,
) -> RlStatus {
    guard(|| {
        let col = coloring(c)?;
        let t = template(col.k(), kind, length as usize)?;
        match find_embedding(col, color(value), &t, SearchOptions::default())? {
            SearchResult::Found(e) => {
                let n = e.assignment.len();
                put(len, n)?;
                if cap < n || assignment.is_null() {
                    return Err(fail(RlStatus::BufferTooSmall, "assignment buffer too small"));
                }
                ptr::copy_nonoverlapping(e.assignment.as_ptr(), assignment, n);
                put(found, true)
            }
            _ => {
                put(len, 0)?;
                put(found, false)
            }
        }
    })
}

/// Decides `K^k_N -> (red target, blue target)`. When SAT and `witness` is
/// not null, a witness handle is written there; otherwise it is set to null.
///
/// # Safety
/// Outputs must be valid for writes; `witness` and `stats` may be null.
#[no_mangle]
pub unsafe extern "C" fn rl_decide_arrowing(
    k: u32,
    n_vertices: u32,
    red_kind: RlKind,
    red_len: u32,
    blue_kind: RlKind,
    blue_len: u32,
    config: RlArrowConfig,
    status: *mut RlArrowStatus,
    witness: *mut *mut RlColoring,
    stats: *mut RlArrowStats,
) -> RlStatus {
    guard(|| {
        let k = k as usize;
        let rt = template(k, red_kind, red_len as usize)?;
        let bt = template(k, blue_kind, blue_len as usize)?;
        let budget = Budget {
            max_nodes: (config.max_nodes > 0).then_some(config.max_nodes),
            max_secs: (config.max_secs > 0.0).then_some(config.max_secs),
        };
        let options = ArrowOptions {
            symmetry: config.symmetry,
            threads: config.threads.max(1) as usize,
            ..ArrowOptions::default()
        };
        let v = decide_arrowing(k, n_vertices, &rt, &bt, budget, options)?;
        put(
            status,
            match v.status {
                Status::Sat => RlArrowStatus::Sat,
                Status::Unsat => RlArrowStatus::Unsat,
                Status::Unknown => RlArrowStatus::Unknown,
            },
        )?;
        if !stats.is_null() {
            stats.write(RlArrowStats {
                nodes: v.stats.nodes,
                propagations: v.stats.propagations,
                conflicts: v.stats.conflicts,
                wall_ms: v.stats.wall_ms,
            });
        }
        if !witness.is_null() {
            witness.write(v.witness.map_or(ptr::null_mut(), handle));
        }
        Ok(())
    })
}

/// DIMACS CNF text of the arrowing instance; free with `rl_string_free`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_export_dimacs(
    k: u32,
    n_vertices: u32,
    red_kind: RlKind,
    red_len: u32,
    blue_kind: RlKind,
    blue_len: u32,
    out: *mut *mut c_char,
) -> RlStatus {
    guard(|| {
        let k = k as usize;
        let rt = template(k, red_kind, red_len as usize)?;
        let bt = template(k, blue_kind, blue_len as usize)?;
        let doc = export_dimacs(k, n_vertices, &rt, &bt)?;
        put(out, c_string(doc.text)?)
    })
}

/// Re-validates a certificate document. `*reason` receives null when
/// accepted, otherwise a string to free with `rl_string_free`.
///
/// # Safety
/// `json` must be a nul-terminated string; outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rl_verify_certificate(json: *const c_char, accepted: *mut bool, reason: *mut *mut c_char) -> RlStatus {
    guard(|| {
        let r = verify_certificate(text(json)?)?;
        put(accepted, r.accepted)?;
        let why = match r.reason {
            Some(s) => c_string(s)?,
            None => ptr::null_mut(),
        };
        put(reason, why)
    })
}
