//! C interface to `blade-arrangements`.
//!
//! Every function returns a [`BaStatus`]; on failure the message is kept in
//! thread-local storage and can be fetched with [`ba_last_error`]. Strings
//! handed out by the library must be released with [`ba_string_free`], and
//! each handle with its matching `*_free` function. Labels are `1..=n`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use blade_arrangements::enumeration::{
    build_graph_on, count_maximal_collections, CompatibilityGraph, EnumerationOptions, NodeFilter,
};
use blade_arrangements::{
    blade_from_vertex, blade_membership, induce_subdivision, Blade, BladeArrangement, DecoratedOsp, Error,
    GroundSet, KSubset, MembershipMethod, RationalPoint, Subdivision, WSCollection,
};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Malformed text input (OSP, point, UTF-8).
    ParseError = 2,
    /// Input rejected by the mathematics (bad labels, wrong level, …).
    DomainError = 3,
    TimeBudgetExceeded = 4,
    /// Index past the end of a handle's contents.
    OutOfRange = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Membership oracle selector for [`ba_blade_contains`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaMethod {
    Chain = 0,
    Minkowski = 1,
    Tropical = 2,
}

/// Node filter selector for [`ba_graph_new`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaFilter {
    All = 0,
    TwoInterval = 1,
}

/// Opaque blade arrangement on `Δ(k,n)`.
pub struct BaArrangement(BladeArrangement);

/// Opaque induced subdivision.
pub struct BaSubdivision(Subdivision);

/// Opaque weak separation graph.
pub struct BaGraph(CompatibilityGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(BaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => BaStatus::ParseError,
            Error::TimeBudgetExceeded => BaStatus::TimeBudgetExceeded,
            _ => BaStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside blade-arrangements".into());
            BaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(BaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BaStatus::ParseError, format!("{what} is not UTF-8")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).expect("library strings have no NULs").into_raw()
}

/// `sigma` may be null for the identity order `1..n`.
unsafe fn ground(n: usize, sigma: *const u32) -> Result<GroundSet, Failure> {
    Ok(if sigma.is_null() {
        GroundSet::new(n)?
    } else {
        GroundSet::from_order(std::slice::from_raw_parts(sigma, n).to_vec())?
    })
}

/// The last error message on this thread, or null. Free with [`ba_string_free`].
#[no_mangle]
pub extern "C" fn ba_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ba_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Weak separation of `count` subsets of size `k`, given as a flat array of
/// `count * k` labels.
///
/// # Safety
/// `sigma` is null or holds `n` labels; `labels` holds `count * k` labels.
#[no_mangle]
pub unsafe extern "C" fn ba_is_weakly_separated(
    n: usize,
    sigma: *const u32,
    k: usize,
    labels: *const u32,
    count: usize,
    out: *mut bool,
) -> BaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = ground(n, sigma)?;
        let total = count
            .checked_mul(k)
            .ok_or_else(|| Failure(BaStatus::DomainError, "count * k overflows".into()))?;
        let flat = slice(labels, total, "labels")?;
        let sets: Vec<Vec<u32>> = flat.chunks(k.max(1)).map(<[u32]>::to_vec).collect();
        *out = WSCollection::from_labels(g, k, &sets)?.is_weakly_separated();
        Ok(())
    })
}

/// The blade of the vertex `e_I` as OSP text. Free `*out` with [`ba_string_free`].
///
/// # Safety
/// `sigma` is null or holds `n` labels; `labels` holds `len` labels.
#[no_mangle]
pub unsafe extern "C" fn ba_blade_from_vertex(
    n: usize,
    sigma: *const u32,
    labels: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> BaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = ground(n, sigma)?;
        let v = g.subset(slice(labels, len, "labels")?)?;
        *out = to_c(blade_from_vertex(&g, v)?.to_string());
        Ok(())
    })
}

/// Whether the point `coords` (text such as `"1/2,1/2,0,1"`) lies on the
/// blade written in OSP notation.
///
/// # Safety
/// `osp` and `coords` are NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ba_blade_contains(
    osp: *const c_char,
    coords: *const c_char,
    method: BaMethod,
    out: *mut bool,
) -> BaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let blade = Blade::parse(text(osp, "osp")?)?;
        let x = RationalPoint::parse(text(coords, "coords")?)?;
        let method = match method {
            BaMethod::Chain => MembershipMethod::Chain,
            BaMethod::Minkowski => MembershipMethod::Minkowski,
            BaMethod::Tropical => MembershipMethod::Tropical,
        };
        *out = blade_membership(&blade, &x, method)?;
        Ok(())
    })
}

/// An empty arrangement on `Δ(k,n)`. Free with [`ba_arrangement_free`].
///
/// # Safety
/// `sigma` is null or holds `n` labels.
#[no_mangle]
pub unsafe extern "C" fn ba_arrangement_new(
    n: usize,
    sigma: *const u32,
    k: usize,
    out: *mut *mut BaArrangement,
) -> BaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let arr = BladeArrangement::new(ground(n, sigma)?, k)?;
        *out = Box::into_raw(Box::new(BaArrangement(arr)));
        Ok(())
    })
}

/// Adds the translate of the blade `((σ_1 … σ_n))` to the vertex `e_I`.
///
/// # Safety
/// `arr` is a live handle; `labels` holds `len` labels.
#[no_mangle]
pub unsafe extern "C" fn ba_arrangement_push_vertex(arr: *mut BaArrangement, labels: *const u32, len: usize) -> BaStatus {
    guard(|| {
        let arr = &mut out_ref(arr, "arrangement")?.0;
        let v: KSubset = arr.ground().subset(slice(labels, len, "labels")?)?;
        arr.push_vertex(v)?;
        Ok(())
    })
}

/// Adds an explicit blade written in OSP notation.
///
/// # Safety
/// `arr` is a live handle; `osp` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ba_arrangement_push_osp(arr: *mut BaArrangement, osp: *const c_char) -> BaStatus {
    guard(|| {
        let arr = &mut out_ref(arr, "arrangement")?.0;
        let parsed = DecoratedOsp::parse_with_ground(text(osp, "osp")?, arr.ground())?;
        arr.push_blade(Blade::new(parsed))?;
        Ok(())
    })
}

/// Number of blades in the arrangement.
///
/// # Safety
/// `arr` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_arrangement_len(arr: *const BaArrangement, out: *mut usize) -> BaStatus {
    guard(|| {
        let arr = arr.as_ref().ok_or_else(|| null("arrangement"))?;
        *out_ref(out, "out")? = arr.0.len();
        Ok(())
    })
}

/// # Safety
/// `arr` is null or a handle from [`ba_arrangement_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn ba_arrangement_free(arr: *mut BaArrangement) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// The subdivision induced by the arrangement. Free with [`ba_subdivision_free`].
///
/// # Safety
/// `arr` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivide(arr: *const BaArrangement, out: *mut *mut BaSubdivision) -> BaStatus {
    guard(|| {
        let arr = arr.as_ref().ok_or_else(|| null("arrangement"))?;
        let out = out_ref(out, "out")?;
        *out = Box::into_raw(Box::new(BaSubdivision(induce_subdivision(&arr.0)?)));
        Ok(())
    })
}

unsafe fn subdivision<'a>(sub: *const BaSubdivision) -> Result<&'a Subdivision, Failure> {
    Ok(&sub.as_ref().ok_or_else(|| null("subdivision"))?.0)
}

/// Number of maximal cells.
///
/// # Safety
/// `sub` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivision_cell_count(sub: *const BaSubdivision, out: *mut usize) -> BaStatus {
    guard(|| {
        *out_ref(out, "out")? = subdivision(sub)?.len();
        Ok(())
    })
}

/// Vertices of cell `i` as bitmasks (bit `l - 1` for label `l`). Writes at
/// most `cap` masks into `buf` and the full count into `len`; pass
/// `cap = 0` to query the count.
///
/// # Safety
/// `sub` is a live handle; `buf` has room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivision_cell_vertices(
    sub: *const BaSubdivision,
    i: usize,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> BaStatus {
    guard(|| {
        let cell = subdivision(sub)?
            .cells()
            .get(i)
            .ok_or_else(|| Failure(BaStatus::OutOfRange, format!("no cell {i}")))?;
        let vs = cell.vertices();
        *out_ref(len, "len")? = vs.len();
        if cap > 0 {
            if buf.is_null() {
                return Err(null("buf"));
            }
            for (slot, v) in std::slice::from_raw_parts_mut(buf, cap).iter_mut().zip(vs) {
                *slot = v.mask();
            }
        }
        Ok(())
    })
}

/// Whether cell `i` is a matroid polytope.
///
/// # Safety
/// `sub` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivision_cell_is_matroid(sub: *const BaSubdivision, i: usize, out: *mut bool) -> BaStatus {
    guard(|| {
        let cell = subdivision(sub)?
            .cells()
            .get(i)
            .ok_or_else(|| Failure(BaStatus::OutOfRange, format!("no cell {i}")))?;
        *out_ref(out, "out")? = cell.is_matroid();
        Ok(())
    })
}

/// Whether every cell is a matroid polytope.
///
/// # Safety
/// `sub` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivision_is_matroidal(sub: *const BaSubdivision, out: *mut bool) -> BaStatus {
    guard(|| {
        *out_ref(out, "out")? = subdivision(sub)?.cells().iter().all(|c| c.is_matroid());
        Ok(())
    })
}

/// The dual graph as DOT text. Free `*out` with [`ba_string_free`].
///
/// # Safety
/// `sub` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivision_dual_dot(sub: *const BaSubdivision, out: *mut *mut c_char) -> BaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = to_c(subdivision(sub)?.dual_graph()?.to_dot());
        Ok(())
    })
}

/// # Safety
/// `sub` is null or a handle from [`ba_subdivide`], freed once.
#[no_mangle]
pub unsafe extern "C" fn ba_subdivision_free(sub: *mut BaSubdivision) {
    if !sub.is_null() {
        drop(Box::from_raw(sub));
    }
}

/// The weak separation graph on the nonfrozen `k`-subsets of `1..n`. Free
/// with [`ba_graph_free`].
///
/// # Safety
/// `sigma` is null or holds `n` labels.
#[no_mangle]
pub unsafe extern "C" fn ba_graph_new(
    k: usize,
    n: usize,
    sigma: *const u32,
    filter: BaFilter,
    out: *mut *mut BaGraph,
) -> BaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let filter = match filter {
            BaFilter::All => NodeFilter::All,
            BaFilter::TwoInterval => NodeFilter::TwoInterval,
        };
        let g = build_graph_on(&ground(n, sigma)?, k, filter)?;
        *out = Box::into_raw(Box::new(BaGraph(g)));
        Ok(())
    })
}

/// Node and edge counts of the graph.
///
/// # Safety
/// `g` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_graph_size(g: *const BaGraph, nodes: *mut usize, edges: *mut usize) -> BaStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.0;
        *out_ref(nodes, "nodes")? = g.node_count();
        *out_ref(edges, "edges")? = g.edge_count();
        Ok(())
    })
}

/// Counts maximal weakly separated collections. `threads = 0` uses every
/// core; `budget_ms = 0` means no time limit.
///
/// # Safety
/// `g` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ba_graph_count_maximal(
    g: *const BaGraph,
    threads: usize,
    budget_ms: u64,
    out: *mut u64,
) -> BaStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.0;
        let out = out_ref(out, "out")?;
        let opts = EnumerationOptions {
            threads,
            time_budget: (budget_ms > 0).then(|| Duration::from_millis(budget_ms)),
            ..Default::default()
        };
        *out = count_maximal_collections(g, &opts)?.count;
        Ok(())
    })
}

/// # Safety
/// `g` is null or a handle from [`ba_graph_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn ba_graph_free(g: *mut BaGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}
