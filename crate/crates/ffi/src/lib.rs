//! C ABI for `egraphsim`.
//!
//! Objects cross the boundary as opaque handles created by `egs_*_new`-style
//! constructors and released with the matching `egs_*_free`. Fallible calls
//! return an [`EgsStatus`] and write results through out-pointers; on failure
//! the out-pointers are left untouched and [`egs_last_error_message`] describes
//! the error. Strings returned by the library must be released with
//! [`egs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use egraphsim::accounting::{
    avg_links_per_edge, formula_complete, formula_hsw, formula_lattice, formula_ring,
};
use egraphsim::analysis::{compute_metrics, prune_links, realized_egraph};
use egraphsim::planner::{
    execute_plan, plan_complete, plan_hierarchical, plan_lattice, plan_random, plan_ring,
    LatticeEmbedding, Plan,
};
use egraphsim::swap::{average_scp, perform_swap, swap_outcomes, BellLabel, SwapMode};
use egraphsim::{Error, LinkId, NetworkState, NodeId, SchmidtPair};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EgsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter or document is invalid.
    InvalidArgument = 2,
    /// A node, segment or numeric result is out of range.
    OutOfRange = 3,
    /// A link id does not name a live link.
    MissingLink = 4,
    /// The links cannot be swapped at the given node.
    SwapRejected = 5,
    /// Executing a plan did not produce its target.
    PlanCorruption = 6,
    /// A value could not be converted to or from JSON or a C string.
    Serialization = 7,
    /// The library panicked; the handle involved should be freed and not reused.
    Panic = 8,
}

impl From<&Error> for EgsStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::InvalidTopology(_)
            | Error::InvalidSchmidt { .. }
            | Error::DegenerateLink(_)
            | Error::Domain(_) => EgsStatus::InvalidArgument,
            Error::SegmentOutOfRange { .. } | Error::NodeOutOfRange { .. } | Error::Range(_) => {
                EgsStatus::OutOfRange
            }
            Error::MissingLink(_) => EgsStatus::MissingLink,
            Error::Aliasing(_) | Error::SwapTopology(_) | Error::NotMaximallyEntangled(_) => {
                EgsStatus::SwapRejected
            }
            Error::PlanCorruption(_) => EgsStatus::PlanCorruption,
        }
    }
}

/// Node-ordering used to place a square lattice on the line.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EgsLatticeEmbedding {
    RowMajor = 0,
    Snake = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EgsBellLabel {
    PsiPlus = 0,
    PsiMinus = 1,
    PhiPlus = 2,
    PhiMinus = 3,
}

impl From<BellLabel> for EgsBellLabel {
    fn from(label: BellLabel) -> Self {
        match label {
            BellLabel::PsiPlus => EgsBellLabel::PsiPlus,
            BellLabel::PsiMinus => EgsBellLabel::PsiMinus,
            BellLabel::PhiPlus => EgsBellLabel::PhiPlus,
            BellLabel::PhiMinus => EgsBellLabel::PhiMinus,
        }
    }
}

/// One row of a swap outcome table.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgsBellOutcome {
    pub label: EgsBellLabel,
    pub probability: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EgsLedger {
    pub initial_links_created: u64,
    pub swaps_performed: u64,
    pub links_destroyed: u64,
    pub live_links: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgsLink {
    pub id: u64,
    pub a: usize,
    pub b: usize,
    pub lambda1: f64,
    pub lambda2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EgsSwapRecord {
    pub produced: u64,
    /// False for ideal and average swaps, which draw no outcome.
    pub has_outcome: bool,
    pub outcome: EgsBellLabel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EgsMetrics {
    pub edge_count: usize,
    pub num_components: usize,
    pub mean_degree: f64,
    pub clustering_coefficient: f64,
    pub avg_path_length: f64,
}

/// Swap schedule for a target entanglement graph.
pub struct EgsPlan(Plan);

/// Nodes on a line with their live links and cost ledger.
pub struct EgsNetwork(NetworkState);

/// How swaps resolve; sampled modes own their random stream.
pub struct EgsSwapMode(SwapMode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(status: EgsStatus, message: impl Into<String>) -> EgsStatus {
    set_last_error(message.into());
    status
}

fn core_err(err: Error) -> EgsStatus {
    fail(EgsStatus::from(&err), err.to_string())
}

/// Runs `body`, converting panics into [`EgsStatus::Panic`].
fn guard(body: impl FnOnce() -> Result<(), EgsStatus>) -> EgsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => EgsStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(EgsStatus::Panic, message)
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, EgsStatus> {
    p.as_ref()
        .ok_or_else(|| fail(EgsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, EgsStatus> {
    p.as_mut()
        .ok_or_else(|| fail(EgsStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), EgsStatus> {
    if p.is_null() {
        Err(fail(EgsStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, EgsStatus> {
    if s.is_null() {
        return Err(fail(EgsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(EgsStatus::Serialization, format!("{what}: {e}")))
}

fn to_c_string(s: String) -> Result<*mut c_char, EgsStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| fail(EgsStatus::Serialization, e.to_string()))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<*mut c_char, EgsStatus> {
    let json =
        serde_json::to_string(value).map_err(|e| fail(EgsStatus::Serialization, e.to_string()))?;
    to_c_string(json)
}

fn from_json<T: serde::de::DeserializeOwned>(json: &str) -> Result<T, EgsStatus> {
    serde_json::from_str(json).map_err(|e| fail(EgsStatus::Serialization, e.to_string()))
}

fn schmidt(lambda2: f64) -> Result<SchmidtPair, EgsStatus> {
    SchmidtPair::from_lambda2(lambda2).map_err(core_err)
}

/// Copies `items` into a caller buffer of `capacity` elements and reports the
/// full length through `len`, so a first call with `capacity = 0` sizes the buffer.
unsafe fn copy_out<T: Copy>(
    items: &[T],
    out: *mut T,
    capacity: usize,
    len: *mut usize,
) -> Result<(), EgsStatus> {
    let len = deref_mut(len, "len")?;
    *len = items.len();
    if capacity > 0 {
        check_out(out, "out")?;
        let n = capacity.min(items.len());
        ptr::copy_nonoverlapping(items.as_ptr(), out, n);
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn egs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on the calling thread, or null if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn egs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn egs_status_name(status: EgsStatus) -> *const c_char {
    let name: &'static str = match status {
        EgsStatus::Ok => "ok\0",
        EgsStatus::NullPointer => "null pointer\0",
        EgsStatus::InvalidArgument => "invalid argument\0",
        EgsStatus::OutOfRange => "out of range\0",
        EgsStatus::MissingLink => "missing link\0",
        EgsStatus::SwapRejected => "swap rejected\0",
        EgsStatus::PlanCorruption => "plan corruption\0",
        EgsStatus::Serialization => "serialization\0",
        EgsStatus::Panic => "panic\0",
    };
    name.as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn egs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- plans ----

unsafe fn emit_plan(plan: egraphsim::Result<Plan>, out: *mut *mut EgsPlan) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let plan = plan.map_err(core_err)?;
        *out = Box::into_raw(Box::new(EgsPlan(plan)));
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_ring(nodes: usize, out: *mut *mut EgsPlan) -> EgsStatus {
    emit_plan(plan_ring(nodes), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_complete(nodes: usize, out: *mut *mut EgsPlan) -> EgsStatus {
    emit_plan(plan_complete(nodes), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_lattice(
    side: usize,
    embedding: EgsLatticeEmbedding,
    out: *mut *mut EgsPlan,
) -> EgsStatus {
    let embedding = match embedding {
        EgsLatticeEmbedding::RowMajor => LatticeEmbedding::RowMajor,
        EgsLatticeEmbedding::Snake => LatticeEmbedding::Snake,
    };
    emit_plan(plan_lattice(side, embedding), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_hierarchical(levels: u32, out: *mut *mut EgsPlan) -> EgsStatus {
    emit_plan(plan_hierarchical(levels), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_random(
    nodes: usize,
    keep_prob: f64,
    seed: u64,
    out: *mut *mut EgsPlan,
) -> EgsStatus {
    emit_plan(plan_random(nodes, keep_prob, seed), out)
}

/// Plan for an arbitrary target given as `{"num_nodes", "edges", "name"}` JSON.
///
/// # Safety
/// `egraph_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_for_target_json(
    egraph_json: *const c_char,
    out: *mut *mut EgsPlan,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let target = from_json(read_str(egraph_json, "egraph_json")?)?;
        let plan = Plan::for_target(target).map_err(core_err)?;
        *out = Box::into_raw(Box::new(EgsPlan(plan)));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_from_json(
    json: *const c_char,
    out: *mut *mut EgsPlan,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let plan: Plan = from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(EgsPlan(plan)));
        Ok(())
    })
}

/// # Safety
/// `plan` must be null or a live plan handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_free(plan: *mut EgsPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Number of nodes on the line, or 0 for a null handle.
///
/// # Safety
/// `plan` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_num_nodes(plan: *const EgsPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.num_nodes())
}

/// Nearest-neighbour links the plan creates, or 0 for a null handle.
///
/// # Safety
/// `plan` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_predicted_cost(plan: *const EgsPlan) -> u64 {
    plan.as_ref().map_or(0, |p| p.0.predicted_cost())
}

/// # Safety
/// `plan` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_swap_count(plan: *const EgsPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.swap_count())
}

/// # Safety
/// `plan` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_edge_count(plan: *const EgsPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.target().edge_count())
}

/// Links per segment. `len` receives the segment count and up to `capacity`
/// entries are copied into `out`.
///
/// # Safety
/// `plan` must be a live plan handle, `len` valid for writes and `out` valid
/// for `capacity` writes when `capacity > 0`.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_allocation(
    plan: *const EgsPlan,
    out: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> EgsStatus {
    guard(|| copy_out(deref(plan, "plan")?.0.allocation(), out, capacity, len))
}

/// # Safety
/// `plan` must be a live plan handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_to_json(
    plan: *const EgsPlan,
    out: *mut *mut c_char,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = to_json(&deref(plan, "plan")?.0)?;
        Ok(())
    })
}

/// Executes the plan on a fresh network.
///
/// # Safety
/// `plan` and `mode` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_plan_execute(
    plan: *const EgsPlan,
    mode: *mut EgsSwapMode,
    out: *mut *mut EgsNetwork,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let plan = deref(plan, "plan")?;
        let mode = deref_mut(mode, "mode")?;
        let ex = execute_plan(&plan.0, &mut mode.0).map_err(core_err)?;
        *out = Box::into_raw(Box::new(EgsNetwork(ex.state)));
        Ok(())
    })
}

// ---- swap modes ----

/// Swaps of maximally entangled links that always yield a maximally entangled link.
#[no_mangle]
pub extern "C" fn egs_swap_mode_ideal() -> *mut EgsSwapMode {
    Box::into_raw(Box::new(EgsSwapMode(SwapMode::Ideal)))
}

/// Swaps that yield a link with the outcome-averaged concurrence.
#[no_mangle]
pub extern "C" fn egs_swap_mode_average() -> *mut EgsSwapMode {
    Box::into_raw(Box::new(EgsSwapMode(SwapMode::Average)))
}

/// Swaps that draw a Bell outcome from a stream seeded with `seed`.
#[no_mangle]
pub extern "C" fn egs_swap_mode_sampled(seed: u64) -> *mut EgsSwapMode {
    Box::into_raw(Box::new(EgsSwapMode(SwapMode::sampled(seed))))
}

/// # Safety
/// `mode` must be null or a live swap-mode handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn egs_swap_mode_free(mode: *mut EgsSwapMode) {
    if !mode.is_null() {
        drop(Box::from_raw(mode));
    }
}

// ---- networks ----

unsafe fn emit_network(
    state: impl FnOnce() -> egraphsim::Result<NetworkState>,
    out: *mut *mut EgsNetwork,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let state = state().map_err(core_err)?;
        *out = Box::into_raw(Box::new(EgsNetwork(state)));
        Ok(())
    })
}

/// Empty network of `nodes` nodes.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_new(nodes: usize, out: *mut *mut EgsNetwork) -> EgsStatus {
    emit_network(|| NetworkState::new(nodes), out)
}

/// Network with `k` maximally entangled links on every segment.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_chain(
    nodes: usize,
    k: u64,
    out: *mut *mut EgsNetwork,
) -> EgsStatus {
    emit_network(|| NetworkState::chain(nodes, k), out)
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_from_json(
    json: *const c_char,
    out: *mut *mut EgsNetwork,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let state: NetworkState = from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(EgsNetwork(state)));
        Ok(())
    })
}

/// # Safety
/// `net` must be null or a live network handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn egs_network_free(net: *mut EgsNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// # Safety
/// `net` must be null or a live network handle.
#[no_mangle]
pub unsafe extern "C" fn egs_network_num_nodes(net: *const EgsNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.num_nodes())
}

/// # Safety
/// `net` must be null or a live network handle.
#[no_mangle]
pub unsafe extern "C" fn egs_network_link_count(net: *const EgsNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.link_count())
}

/// # Safety
/// `net` must be a live network handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_ledger(
    net: *const EgsNetwork,
    out: *mut EgsLedger,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let net = deref(net, "net")?;
        let l = net.0.ledger();
        *out = EgsLedger {
            initial_links_created: l.initial_links_created(),
            swaps_performed: l.swaps_performed(),
            links_destroyed: l.links_destroyed(),
            live_links: net.0.link_count() as u64,
        };
        Ok(())
    })
}

/// Live link ids in ascending order. `len` receives the number of live links
/// and up to `capacity` ids are copied into `out`.
///
/// # Safety
/// `net` must be a live network handle, `len` valid for writes and `out`
/// valid for `capacity` writes when `capacity > 0`.
#[no_mangle]
pub unsafe extern "C" fn egs_network_link_ids(
    net: *const EgsNetwork,
    out: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> EgsStatus {
    guard(|| {
        let ids: Vec<u64> = deref(net, "net")?.0.links().map(|l| l.id().0).collect();
        copy_out(&ids, out, capacity, len)
    })
}

/// # Safety
/// `net` must be a live network handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_link(
    net: *const EgsNetwork,
    id: u64,
    out: *mut EgsLink,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let link = deref(net, "net")?
            .0
            .link(LinkId(id))
            .ok_or_else(|| core_err(Error::MissingLink(LinkId(id))))?;
        *out = EgsLink {
            id,
            a: link.a().0,
            b: link.b().0,
            lambda1: link.state().lambda1(),
            lambda2: link.state().lambda2(),
        };
        Ok(())
    })
}

/// Creates a link across `segment` (nodes `segment` and `segment + 1`) with
/// smaller Schmidt coefficient `lambda2`.
///
/// # Safety
/// `net` must be a live network handle; `out_id` may be null.
#[no_mangle]
pub unsafe extern "C" fn egs_network_add_local_link(
    net: *mut EgsNetwork,
    segment: usize,
    lambda2: f64,
    out_id: *mut u64,
) -> EgsStatus {
    guard(|| {
        let net = deref_mut(net, "net")?;
        let link = net
            .0
            .add_local_link(segment, schmidt(lambda2)?)
            .map_err(core_err)?;
        if let Some(out) = out_id.as_mut() {
            *out = link.id().0;
        }
        Ok(())
    })
}

/// # Safety
/// `net` must be a live network handle.
#[no_mangle]
pub unsafe extern "C" fn egs_network_destroy_link(net: *mut EgsNetwork, id: u64) -> EgsStatus {
    guard(|| {
        deref_mut(net, "net")?
            .0
            .destroy_link(LinkId(id))
            .map_err(core_err)?;
        Ok(())
    })
}

/// Swaps links `link_a` and `link_b` at `node`.
///
/// # Safety
/// `net` and `mode` must be live handles; `out` may be null.
#[no_mangle]
pub unsafe extern "C" fn egs_network_swap(
    net: *mut EgsNetwork,
    mode: *mut EgsSwapMode,
    node: usize,
    link_a: u64,
    link_b: u64,
    out: *mut EgsSwapRecord,
) -> EgsStatus {
    guard(|| {
        let net = deref_mut(net, "net")?;
        let mode = deref_mut(mode, "mode")?;
        let rec = perform_swap(
            &mut net.0,
            NodeId(node),
            LinkId(link_a),
            LinkId(link_b),
            &mut mode.0,
        )
        .map_err(core_err)?;
        if let Some(out) = out.as_mut() {
            *out = EgsSwapRecord {
                produced: rec.produced.0,
                has_outcome: rec.outcome_label.is_some(),
                outcome: rec.outcome_label.map_or(EgsBellLabel::PsiPlus, Into::into),
            };
        }
        Ok(())
    })
}

/// Keeps each live link independently with probability `keep_prob`.
///
/// # Safety
/// `net` must be a live network handle; `out_destroyed` may be null.
#[no_mangle]
pub unsafe extern "C" fn egs_network_prune(
    net: *mut EgsNetwork,
    keep_prob: f64,
    seed: u64,
    out_destroyed: *mut usize,
) -> EgsStatus {
    guard(|| {
        let destroyed =
            prune_links(&mut deref_mut(net, "net")?.0, keep_prob, seed).map_err(core_err)?;
        if let Some(out) = out_destroyed.as_mut() {
            *out = destroyed;
        }
        Ok(())
    })
}

/// Structural metrics of the graph formed by the live links.
///
/// # Safety
/// `net` must be a live network handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_metrics(
    net: *const EgsNetwork,
    out: *mut EgsMetrics,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let m = compute_metrics(&realized_egraph(&deref(net, "net")?.0));
        *out = EgsMetrics {
            edge_count: m.edge_count,
            num_components: m.num_components,
            mean_degree: m.mean_degree,
            clustering_coefficient: m.clustering_coefficient,
            avg_path_length: m.avg_path_length,
        };
        Ok(())
    })
}

/// # Safety
/// `net` must be a live network handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_to_json(
    net: *const EgsNetwork,
    out: *mut *mut c_char,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = to_json(&deref(net, "net")?.0)?;
        Ok(())
    })
}

/// The realized graph as `{"num_nodes", "edges", "name"}` JSON.
///
/// # Safety
/// `net` must be a live network handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_network_egraph_json(
    net: *const EgsNetwork,
    out: *mut *mut c_char,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = to_json(&realized_egraph(&deref(net, "net")?.0))?;
        Ok(())
    })
}

// ---- swap physics ----

/// Outcome table for swapping links with smaller Schmidt coefficients
/// `lambda2_a` and `lambda2_b`, in the order PsiPlus, PsiMinus, PhiPlus, PhiMinus.
///
/// # Safety
/// `out` must be valid for 4 writes.
#[no_mangle]
pub unsafe extern "C" fn egs_swap_outcomes(
    lambda2_a: f64,
    lambda2_b: f64,
    out: *mut EgsBellOutcome,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        let table = swap_outcomes(schmidt(lambda2_a)?, schmidt(lambda2_b)?);
        for (i, o) in table.iter().enumerate() {
            *out.add(i) = EgsBellOutcome {
                label: o.label.into(),
                probability: o.probability,
                lambda1: o.result.lambda1(),
                lambda2: o.result.lambda2(),
            };
        }
        Ok(())
    })
}

/// Outcome-averaged concurrence after a swap.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_average_scp(
    lambda2_a: f64,
    lambda2_b: f64,
    out: *mut f64,
) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = average_scp(schmidt(lambda2_a)?, schmidt(lambda2_b)?);
        Ok(())
    })
}

// ---- cost formulas ----

unsafe fn emit_u64(value: egraphsim::Result<u64>, out: *mut u64) -> EgsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = value.map_err(core_err)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_formula_ring(nodes: u64, out: *mut u64) -> EgsStatus {
    emit_u64(formula_ring(nodes), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_formula_lattice(side: u64, out: *mut u64) -> EgsStatus {
    emit_u64(formula_lattice(side), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_formula_complete(nodes: u64, out: *mut u64) -> EgsStatus {
    emit_u64(formula_complete(nodes), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_formula_hierarchical(nodes: u64, out: *mut u64) -> EgsStatus {
    emit_u64(formula_hsw(nodes), out)
}

/// Average links per complete-graph edge as a reduced fraction.
///
/// # Safety
/// `numer` and `denom` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn egs_avg_links_per_edge(
    nodes: u64,
    numer: *mut u64,
    denom: *mut u64,
) -> EgsStatus {
    guard(|| {
        check_out(numer, "numer")?;
        check_out(denom, "denom")?;
        let r = avg_links_per_edge(nodes).map_err(core_err)?;
        *numer = *r.numer();
        *denom = *r.denom();
        Ok(())
    })
}
