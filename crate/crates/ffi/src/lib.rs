//! C ABI over the simulator.
//!
//! Workloads and runs are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`DynrrStatus`]; on failure [`dynrr_last_error`] describes what went wrong
//! on the calling thread. Strings returned by the library are released with
//! [`dynrr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dynrr::engine::simulate;
use dynrr::format::{parse_workload, FormatError, WorkloadFormat};
use dynrr::gantt::render_gantt;
use dynrr::metrics::compute_metrics;
use dynrr::model::{ExecutionTrace, PolicyDescriptor, Termination, Workload};
use dynrr::policies::from_descriptor;
use dynrr::reproduce::reproduce_paper;
use dynrr::workloads::{fixture, CaseId};
use dynrr::RunMetrics;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynrrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidWorkload = 4,
    UnknownAlgorithm = 5,
    SimulationFailed = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynrrFormat {
    Csv = 0,
    Json = 1,
}

/// One dispatch slice. `process_index` is the position of the process in
/// the workload's submission order.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DynrrSlice {
    pub process_index: usize,
    pub start: u64,
    pub end: u64,
    pub cycle: u32,
    pub quantum: u64,
    pub completed: bool,
}

/// Opaque validated workload.
pub struct DynrrWorkload {
    inner: Workload,
}

/// Opaque result of one simulation.
pub struct DynrrRun {
    workload: Workload,
    trace: ExecutionTrace,
    metrics: RunMetrics,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: DynrrStatus, msg: impl Into<String>) -> DynrrStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> DynrrStatus) -> DynrrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(DynrrStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, DynrrStatus> {
    if s.is_null() {
        return Err(fail(DynrrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(DynrrStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn dynrr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dynrr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in fixture: `I`..`VI` or `ILL`.
///
/// # Safety
/// `id` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dynrr_workload_from_case(
    id: *const c_char,
    out: *mut *mut DynrrWorkload,
) -> DynrrStatus {
    guarded(|| {
        if out.is_null() {
            return fail(DynrrStatus::NullPointer, "out is null");
        }
        let id = match read_str(id, "id") {
            Ok(s) => s,
            Err(st) => return st,
        };
        match fixture(id) {
            Some(w) => {
                *out = Box::into_raw(Box::new(DynrrWorkload { inner: w }));
                DynrrStatus::Ok
            }
            None => fail(DynrrStatus::InvalidArgument, format!("unknown case {id:?}")),
        }
    })
}

/// Parses CSV (`pid,arrival_ms,burst_ms`) or JSON workload bytes.
///
/// # Safety
/// `bytes` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_workload_parse(
    bytes: *const u8,
    len: usize,
    format: DynrrFormat,
    out: *mut *mut DynrrWorkload,
) -> DynrrStatus {
    guarded(|| {
        if out.is_null() || (bytes.is_null() && len > 0) {
            return fail(DynrrStatus::NullPointer, "null buffer or out pointer");
        }
        let data = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(bytes, len)
        };
        let format = match format {
            DynrrFormat::Csv => WorkloadFormat::Csv,
            DynrrFormat::Json => WorkloadFormat::Json,
        };
        match parse_workload(data, format) {
            Ok(w) => {
                *out = Box::into_raw(Box::new(DynrrWorkload { inner: w }));
                DynrrStatus::Ok
            }
            Err(e @ FormatError::Parse { .. }) => fail(DynrrStatus::ParseError, e.to_string()),
            Err(e) => fail(DynrrStatus::InvalidWorkload, e.to_string()),
        }
    })
}

/// Builds a workload from parallel arrays of length `n`.
///
/// # Safety
/// `pids` must point to `n` valid NUL-terminated strings, `arrivals` and
/// `bursts` to `n` values each, and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_workload_from_arrays(
    pids: *const *const c_char,
    arrivals: *const u64,
    bursts: *const u64,
    n: usize,
    out: *mut *mut DynrrWorkload,
) -> DynrrStatus {
    guarded(|| {
        if out.is_null() || (n > 0 && (pids.is_null() || arrivals.is_null() || bursts.is_null())) {
            return fail(DynrrStatus::NullPointer, "null array or out pointer");
        }
        let mut records = Vec::with_capacity(n);
        for i in 0..n {
            let pid = match read_str(*pids.add(i), "pid") {
                Ok(s) => s.to_string(),
                Err(st) => return st,
            };
            let a = i64::try_from(*arrivals.add(i)).unwrap_or(i64::MAX);
            let b = i64::try_from(*bursts.add(i)).unwrap_or(i64::MAX);
            records.push((pid, a, b));
        }
        match Workload::validate("", records) {
            Ok(w) => {
                *out = Box::into_raw(Box::new(DynrrWorkload { inner: w }));
                DynrrStatus::Ok
            }
            Err(e) => fail(DynrrStatus::InvalidWorkload, e.to_string()),
        }
    })
}

/// Number of processes, or 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynrr_workload_len(w: *const DynrrWorkload) -> usize {
    w.as_ref().map_or(0, |w| w.inner.len())
}

/// # Safety
/// `w` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dynrr_workload_free(w: *mut DynrrWorkload) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Simulates `algo` (e.g. `"rr:q=25"`, `"dabrr"`) on `w`.
///
/// # Safety
/// `w` must be a live handle, `algo` a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dynrr_simulate(
    w: *const DynrrWorkload,
    algo: *const c_char,
    out: *mut *mut DynrrRun,
) -> DynrrStatus {
    guarded(|| {
        let Some(w) = w.as_ref() else {
            return fail(DynrrStatus::NullPointer, "workload is null");
        };
        if out.is_null() {
            return fail(DynrrStatus::NullPointer, "out is null");
        }
        let algo = match read_str(algo, "algo") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let desc: PolicyDescriptor = match algo.parse() {
            Ok(d) => d,
            Err(e) => return fail(DynrrStatus::UnknownAlgorithm, e.to_string()),
        };
        let policy = from_descriptor(&desc);
        let trace = match simulate(&w.inner, policy.as_ref()) {
            Ok(t) => t,
            Err(e) => return fail(DynrrStatus::SimulationFailed, e.to_string()),
        };
        let metrics = match compute_metrics(&trace, &w.inner) {
            Ok(m) => m,
            Err(e) => return fail(DynrrStatus::SimulationFailed, e.to_string()),
        };
        *out = Box::into_raw(Box::new(DynrrRun {
            workload: w.inner.clone(),
            trace,
            metrics,
        }));
        DynrrStatus::Ok
    })
}

/// # Safety
/// `run` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_free(run: *mut DynrrRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_context_switches(run: *const DynrrRun) -> u64 {
    run.as_ref().map_or(0, |r| r.metrics.context_switches)
}

/// Exact sums behind the averages: Σ waiting, Σ turnaround and the process
/// count. Any output pointer may be null.
///
/// # Safety
/// `run` must be a live handle; non-null outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_totals(
    run: *const DynrrRun,
    waiting_sum: *mut u64,
    turnaround_sum: *mut u64,
    count: *mut usize,
) -> DynrrStatus {
    let Some(r) = run.as_ref() else {
        return fail(DynrrStatus::NullPointer, "run is null");
    };
    let per = &r.metrics.per_process;
    if let Some(p) = waiting_sum.as_mut() {
        *p = per.iter().map(|m| m.waiting).sum();
    }
    if let Some(p) = turnaround_sum.as_mut() {
        *p = per.iter().map(|m| m.turnaround).sum();
    }
    if let Some(p) = count.as_mut() {
        *p = per.len();
    }
    DynrrStatus::Ok
}

/// Average waiting, turnaround and response time in ms. Any output pointer
/// may be null.
///
/// # Safety
/// `run` must be a live handle; non-null outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_averages(
    run: *const DynrrRun,
    waiting: *mut f64,
    turnaround: *mut f64,
    response: *mut f64,
) -> DynrrStatus {
    let Some(r) = run.as_ref() else {
        return fail(DynrrStatus::NullPointer, "run is null");
    };
    let as_f64 = |v: dynrr::metrics::Rational| *v.numer() as f64 / *v.denom() as f64;
    if let Some(p) = waiting.as_mut() {
        *p = as_f64(r.metrics.avg_waiting);
    }
    if let Some(p) = turnaround.as_mut() {
        *p = as_f64(r.metrics.avg_turnaround);
    }
    if let Some(p) = response.as_mut() {
        *p = as_f64(r.metrics.avg_response);
    }
    DynrrStatus::Ok
}

/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_quantum_count(run: *const DynrrRun) -> usize {
    run.as_ref().map_or(0, |r| r.trace.quantum_log.len())
}

/// # Safety
/// `run` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_quantum_at(
    run: *const DynrrRun,
    index: usize,
    out: *mut u64,
) -> DynrrStatus {
    let (Some(r), Some(out)) = (run.as_ref(), out.as_mut()) else {
        return fail(DynrrStatus::NullPointer, "null run or out pointer");
    };
    match r.trace.quantum_log.get(index) {
        Some(e) => {
            *out = e.quantum;
            DynrrStatus::Ok
        }
        None => fail(
            DynrrStatus::OutOfRange,
            format!("quantum index {index} out of range"),
        ),
    }
}

/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_slice_count(run: *const DynrrRun) -> usize {
    run.as_ref().map_or(0, |r| r.trace.slices.len())
}

/// # Safety
/// `run` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_slice_at(
    run: *const DynrrRun,
    index: usize,
    out: *mut DynrrSlice,
) -> DynrrStatus {
    let (Some(r), Some(out)) = (run.as_ref(), out.as_mut()) else {
        return fail(DynrrStatus::NullPointer, "null run or out pointer");
    };
    let Some(s) = r.trace.slices.get(index) else {
        return fail(
            DynrrStatus::OutOfRange,
            format!("slice index {index} out of range"),
        );
    };
    *out = DynrrSlice {
        process_index: r.workload.index_of(&s.pid).unwrap_or(usize::MAX),
        start: s.start,
        end: s.end,
        cycle: s.cycle,
        quantum: s.quantum_in_effect,
        completed: s.termination == Termination::Completed,
    };
    DynrrStatus::Ok
}

/// Completion time of the process at `process_index` (submission order).
///
/// # Safety
/// `run` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_completion(
    run: *const DynrrRun,
    process_index: usize,
    out: *mut u64,
) -> DynrrStatus {
    let (Some(r), Some(out)) = (run.as_ref(), out.as_mut()) else {
        return fail(DynrrStatus::NullPointer, "null run or out pointer");
    };
    match r.metrics.per_process.get(process_index) {
        Some(m) => {
            *out = m.completion;
            DynrrStatus::Ok
        }
        None => fail(
            DynrrStatus::OutOfRange,
            format!("process index {process_index} out of range"),
        ),
    }
}

/// ASCII Gantt chart; free with [`dynrr_string_free`]. Null on a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_gantt(run: *const DynrrRun, width: usize) -> *mut c_char {
    match run.as_ref() {
        Some(r) => into_c_string(render_gantt(&r.trace, width)),
        None => {
            set_error("run is null");
            ptr::null_mut()
        }
    }
}

/// Metrics and trace as JSON; free with [`dynrr_string_free`].
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynrr_run_json(run: *const DynrrRun) -> *mut c_char {
    let Some(r) = run.as_ref() else {
        set_error("run is null");
        return ptr::null_mut();
    };
    let doc = serde_json::json!({ "metrics": r.metrics, "trace": r.trace });
    into_c_string(doc.to_string())
}

/// Grades every published table cell over all six cases. `exit_status`
/// receives 0 when nothing mismatches, 1 otherwise; `report_json`, when not
/// null, receives the full report (free with [`dynrr_string_free`]).
///
/// # Safety
/// Non-null pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dynrr_reproduce_paper(
    exit_status: *mut i32,
    report_json: *mut *mut c_char,
) -> DynrrStatus {
    guarded(|| {
        let report = match reproduce_paper(&CaseId::ALL) {
            Ok(r) => r,
            Err(e) => return fail(DynrrStatus::SimulationFailed, e.to_string()),
        };
        if let Some(p) = exit_status.as_mut() {
            *p = report.exit_status;
        }
        if let Some(p) = report_json.as_mut() {
            *p = into_c_string(serde_json::to_string(&report).unwrap_or_default());
        }
        DynrrStatus::Ok
    })
}
