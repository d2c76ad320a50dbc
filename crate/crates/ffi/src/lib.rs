//! C interface to `distpoly`.
//!
//! Scenarios and distributions cross the boundary as opaque handles created by
//! the `*_parse` / `*_load` functions and released with the matching `*_free`.
//! Every fallible call returns a [`DpStatus`]; on failure a message is
//! available from [`dp_last_error`] on the same thread until the next call.
//! Strings returned to the caller are owned by the caller and must be released
//! with [`dp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use distpoly::collapse::{collapse_with, spanning_tree_count, CountEngine, Counter};
use distpoly::criteria::{dipole_is_vertex, rose_is_vertex, Family, Shape};
use distpoly::polytope::{enumerate_vertices, is_vertex};
use distpoly::scenario::{
    build_polytope, is_contextual, parse_distribution, parse_distribution_str, parse_scenario,
    parse_scenario_str, write_distribution, write_scenario,
};
use distpoly::{Error, GraphDistribution, Scenario};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed scenario, distribution or argument text.
    Parse = 3,
    /// Well-formed input that violates a precondition (infeasible point,
    /// unknown edge, cyclic edge set, ...).
    InvalidInput = 4,
    /// The operation needs a dipole or rose scenario.
    WrongShape = 5,
    BudgetExceeded = 6,
    Io = 7,
    /// A count does not fit the output type.
    Overflow = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpFamily {
    Rose = 0,
    Dipole = 1,
}

/// Opaque scenario handle.
pub struct DpScenario(Scenario);

/// Opaque distribution handle; remembers the scenario it was parsed against.
pub struct DpDistribution {
    scenario: Scenario,
    dist: GraphDistribution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DpStatus {
    match e {
        Error::Parse { .. } => DpStatus::Parse,
        Error::WrongShape(_) => DpStatus::WrongShape,
        Error::BudgetExceeded(_) => DpStatus::BudgetExceeded,
        Error::Io(_) | Error::Read { .. } => DpStatus::Io,
        _ => DpStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (DpStatus, String)>) -> DpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DpStatus::Panic
        }
    }
}

fn lib(e: Error) -> (DpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DpStatus, String) {
    (DpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (DpStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DpStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses scenario text (the `.scn` format).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_parse(text: *const c_char, out_scenario: *mut *mut DpScenario) -> DpStatus {
    guard(|| {
        let t = c_str(text, "text")?;
        let o = out(out_scenario, "out_scenario")?;
        let s = parse_scenario_str(t, Path::new("<memory>")).map_err(lib)?;
        *o = Box::into_raw(Box::new(DpScenario(s)));
        Ok(())
    })
}

/// Reads a scenario file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_load(path: *const c_char, out_scenario: *mut *mut DpScenario) -> DpStatus {
    guard(|| {
        let p = c_str(path, "path")?;
        let o = out(out_scenario, "out_scenario")?;
        let s = parse_scenario(Path::new(p)).map_err(lib)?;
        *o = Box::into_raw(Box::new(DpScenario(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_free(s: *mut DpScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Node count, edge count and outcome count. Any output may be NULL.
///
/// # Safety
/// `s` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_info(
    s: *const DpScenario,
    out_nodes: *mut usize,
    out_edges: *mut usize,
    out_outcomes: *mut usize,
) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        if let Some(o) = out_nodes.as_mut() {
            *o = s.nodes().len();
        }
        if let Some(o) = out_edges.as_mut() {
            *o = s.edges().len();
        }
        if let Some(o) = out_outcomes.as_mut() {
            *o = s.outcomes();
        }
        Ok(())
    })
}

/// Canonical scenario text; free with [`dp_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_to_string(s: *const DpScenario, out_text: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        *out(out_text, "out_text")? = owned_string(write_scenario(s));
        Ok(())
    })
}

/// Number of vertices of Dist(X, m), by double description.
///
/// # Safety
/// `s` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_vertex_count(s: *const DpScenario, out_count: *mut usize) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        let o = out(out_count, "out_count")?;
        *o = enumerate_vertices(&build_polytope(s).map_err(lib)?).map_err(lib)?.len();
        Ok(())
    })
}

/// Spanning trees of the underlying multigraph, as a decimal string; free
/// with [`dp_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_spanning_tree_count(s: *const DpScenario, out_text: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        let o = out(out_text, "out_text")?;
        *o = owned_string(spanning_tree_count(s).map_err(lib)?.to_string());
        Ok(())
    })
}

/// Contracts the comma-separated edges `edges`. With `allow_cycles`, edges
/// whose endpoints are already identified are contracted too.
///
/// # Safety
/// `s` must be a live handle, `edges` a NUL-terminated string and `out_quotient` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_collapse(
    s: *const DpScenario,
    edges: *const c_char,
    allow_cycles: bool,
    out_quotient: *mut *mut DpScenario,
) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        let ids: Vec<&str> = c_str(edges, "edges")?.split(',').map(str::trim).filter(|e| !e.is_empty()).collect();
        let o = out(out_quotient, "out_quotient")?;
        let map = collapse_with(s, &ids, allow_cycles).map_err(lib)?;
        *o = Box::into_raw(Box::new(DpScenario(map.quotient().clone())));
        Ok(())
    })
}

/// Parses distribution text against a scenario.
///
/// # Safety
/// `s` must be a live handle, `text` a NUL-terminated string and `out_dist` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_distribution_parse(
    s: *const DpScenario,
    text: *const c_char,
    out_dist: *mut *mut DpDistribution,
) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        let t = c_str(text, "text")?;
        let o = out(out_dist, "out_dist")?;
        let dist = parse_distribution_str(t, Path::new("<memory>"), s).map_err(lib)?;
        *o = Box::into_raw(Box::new(DpDistribution {
            scenario: s.clone(),
            dist,
        }));
        Ok(())
    })
}

/// Reads a distribution file against a scenario.
///
/// # Safety
/// `s` must be a live handle, `path` a NUL-terminated string and `out_dist` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_distribution_load(
    s: *const DpScenario,
    path: *const c_char,
    out_dist: *mut *mut DpDistribution,
) -> DpStatus {
    guard(|| {
        let s = &handle(s, "scenario")?.0;
        let p = c_str(path, "path")?;
        let o = out(out_dist, "out_dist")?;
        let dist = parse_distribution(Path::new(p), s).map_err(lib)?;
        *o = Box::into_raw(Box::new(DpDistribution {
            scenario: s.clone(),
            dist,
        }));
        Ok(())
    })
}

/// # Safety
/// `d` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dp_distribution_free(d: *mut DpDistribution) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical distribution text; free with [`dp_string_free`].
///
/// # Safety
/// `d` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_distribution_to_string(d: *const DpDistribution, out_text: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let d = handle(d, "distribution")?;
        *out(out_text, "out_text")? = owned_string(write_distribution(&d.scenario, &d.dist));
        Ok(())
    })
}

/// Direct vertex test: the support columns are linearly independent.
///
/// # Safety
/// `d` must be a live handle; `out_vertex` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_is_vertex(d: *const DpDistribution, out_vertex: *mut bool) -> DpStatus {
    guard(|| {
        let d = handle(d, "distribution")?;
        let o = out(out_vertex, "out_vertex")?;
        *o = is_vertex(&build_polytope(&d.scenario).map_err(lib)?, &d.dist.flatten()).map_err(lib)?;
        Ok(())
    })
}

/// Acyclicity and rank test on a dipole or rose. `out_rank` may be NULL.
///
/// # Safety
/// `d` must be a live handle; `out_vertex` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_criterion_is_vertex(
    d: *const DpDistribution,
    out_vertex: *mut bool,
    out_rank: *mut usize,
) -> DpStatus {
    guard(|| {
        let d = handle(d, "distribution")?;
        let o = out(out_vertex, "out_vertex")?;
        let r = match Shape::of(&d.scenario) {
            Shape::Rose => rose_is_vertex(&d.scenario, &d.dist),
            _ => dipole_is_vertex(&d.scenario, &d.dist),
        }
        .map_err(lib)?;
        *o = r.is_vertex;
        if let Some(k) = out_rank.as_mut() {
            *k = r.rank;
        }
        Ok(())
    })
}

/// Whether the distribution is not a mixture of deterministic ones.
///
/// # Safety
/// `d` must be a live handle; `out_contextual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_is_contextual(d: *const DpDistribution, out_contextual: *mut bool) -> DpStatus {
    guard(|| {
        let d = handle(d, "distribution")?;
        let o = out(out_contextual, "out_contextual")?;
        *o = is_contextual(&d.scenario, &d.dist).map_err(lib)?;
        Ok(())
    })
}

/// Vertex count of Dist(R_n, m) or Dist(D_n, m); with `tilde`, the count of
/// contextual vertices without collapsed edges. `budget` caps the forest
/// search, 0 for the default.
///
/// # Safety
/// `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_count(
    family: DpFamily,
    n: usize,
    m: usize,
    tilde: bool,
    budget: u64,
    out_count: *mut u64,
) -> DpStatus {
    guard(|| {
        let o = out(out_count, "out_count")?;
        let family = match family {
            DpFamily::Rose => Family::Rose,
            DpFamily::Dipole => Family::Dipole,
        };
        let mut counter = Counter {
            engine: CountEngine::Auto,
            ..Counter::default()
        };
        if budget > 0 {
            counter.budget = budget;
        }
        let c = if tilde {
            counter.kappa_tilde(family, n, m).map_err(lib)?
        } else {
            counter.kappa(family, n, m).map_err(lib)?.total
        };
        *o = u64::try_from(c).map_err(|_| (DpStatus::Overflow, format!("{c} does not fit in 64 bits")))?;
        Ok(())
    })
}
