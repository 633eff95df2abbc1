//! C ABI for the `blowup` crate.
//!
//! Instances and networks are opaque handles built from the same JSON the
//! CLI reads. Every call returns a [`BlowupStatus`]; on failure the message
//! is available from [`blowup_last_error`] on the calling thread. Strings
//! handed out by this library are owned by the caller and released with
//! [`blowup_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blowup::cli::{
    cmd_kf, cmd_resist, cmd_tau, cmd_transform, CliError, InstanceSpec, PairSelection, Record,
    Report, Script,
};
use blowup::netcore::{resistance, tau_matrix_tree, NetworkFile, WeightedNetwork};
use blowup::rational::format_rational;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupStatus {
    /// Success; for comparisons, closed form and oracle agree.
    Ok = 0,
    /// The call succeeded but some closed form differs from its oracle.
    Mismatch = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    /// Malformed JSON, out-of-range index or unsupported request.
    Usage = 4,
    /// A mathematical precondition failed (disconnected, singular, ...).
    Precondition = 5,
    Panic = 6,
}

/// Which comparison [`blowup_instance_report`] runs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupCommand {
    Tau = 0,
    Resist = 1,
    Kf = 2,
}

/// A validated graph-family instance.
pub struct BlowupInstance {
    spec: InstanceSpec,
    vertices: usize,
}

/// A weighted network with exact rational conductances.
pub struct BlowupNetwork {
    net: WeightedNetwork,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(BlowupStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Usage(_)
            | CliError::Io(_)
            | CliError::Lib(blowup::Error::VertexOutOfRange { .. }) => BlowupStatus::Usage,
            CliError::Lib(_) | CliError::Step { .. } => BlowupStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

impl From<blowup::Error> for Failure {
    fn from(e: blowup::Error) -> Self {
        CliError::from(e).into()
    }
}

fn guard(f: impl FnOnce() -> Result<BlowupStatus, Failure>) -> BlowupStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            BlowupStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(BlowupStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(BlowupStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(BlowupStatus::NullPointer, "null handle".into()))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(
            BlowupStatus::NullPointer,
            "null output pointer".into(),
        ))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior nul removed")
        .into_raw()
}

unsafe fn put(out: *mut *mut c_char, s: String) {
    *out = c_string(s);
}

fn verdict(equal: bool) -> BlowupStatus {
    if equal {
        BlowupStatus::Ok
    } else {
        BlowupStatus::Mismatch
    }
}

unsafe fn put_record(
    r: &Record,
    closed: *mut *mut c_char,
    oracle: *mut *mut c_char,
) -> BlowupStatus {
    put(closed, r.closed_form.clone());
    put(oracle, r.oracle.clone());
    verdict(r.equal)
}

fn first(report: Report) -> Result<Record, Failure> {
    report
        .records
        .into_iter()
        .next()
        .ok_or_else(|| Failure(BlowupStatus::Usage, "no record produced".into()))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn blowup_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn blowup_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance description (the `--spec` JSON of the CLI).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_parse(
    json: *const c_char,
    out: *mut *mut BlowupInstance,
) -> BlowupStatus {
    guard(|| {
        check_out(out)?;
        let spec = InstanceSpec::parse(read_str(json)?)?;
        let vertices = spec.resolve()?.vertex_count();
        *out = Box::into_raw(Box::new(BlowupInstance { spec, vertices }));
        Ok(BlowupStatus::Ok)
    })
}

/// # Safety
/// `inst` must come from [`blowup_instance_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_free(inst: *mut BlowupInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_vertex_count(
    inst: *const BlowupInstance,
    out: *mut usize,
) -> BlowupStatus {
    guard(|| {
        check_out(out)?;
        *out = deref(inst)?.vertices;
        Ok(BlowupStatus::Ok)
    })
}

/// Spanning-tree count: closed form and matrix-tree value as decimal
/// strings. Requires a blow-up on a complete host.
///
/// # Safety
/// `inst` must be a live handle; `closed` and `oracle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_tau(
    inst: *const BlowupInstance,
    closed: *mut *mut c_char,
    oracle: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(closed)?;
        check_out(oracle)?;
        let r = first(cmd_tau(&deref(inst)?.spec, false)?)?;
        Ok(put_record(&r, closed, oracle))
    })
}

/// Resistance between vertices `u` and `v` (canonical 0-based order):
/// closed form and Laplacian-solve value as `num/den` strings.
///
/// # Safety
/// `inst` must be a live handle; `closed` and `oracle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_resistance(
    inst: *const BlowupInstance,
    u: usize,
    v: usize,
    closed: *mut *mut c_char,
    oracle: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(closed)?;
        check_out(oracle)?;
        let r = first(cmd_resist(&deref(inst)?.spec, PairSelection::Pair(u, v))?)?;
        Ok(put_record(&r, closed, oracle))
    })
}

/// Kirchhoff index: closed form and pair-sum value as `num/den` strings.
///
/// # Safety
/// `inst` must be a live handle; `closed` and `oracle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_kirchhoff(
    inst: *const BlowupInstance,
    closed: *mut *mut c_char,
    oracle: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(closed)?;
        check_out(oracle)?;
        let r = first(cmd_kf(&deref(inst)?.spec)?)?;
        Ok(put_record(&r, closed, oracle))
    })
}

/// Full JSON report of one command, as the CLI would print it.
///
/// # Safety
/// `inst` must be a live handle; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_instance_report(
    inst: *const BlowupInstance,
    command: BlowupCommand,
    json: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(json)?;
        let spec = &deref(inst)?.spec;
        let report = match command {
            BlowupCommand::Tau => cmd_tau(spec, false)?,
            BlowupCommand::Resist => cmd_resist(spec, PairSelection::All)?,
            BlowupCommand::Kf => cmd_kf(spec)?,
        };
        put(json, report.to_json());
        Ok(verdict(report.all_equal()))
    })
}

/// Parses a network file (`{"vertices": [...], "edges": [...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_network_parse(
    json: *const c_char,
    out: *mut *mut BlowupNetwork,
) -> BlowupStatus {
    guard(|| {
        check_out(out)?;
        let file: NetworkFile = serde_json_from(read_str(json)?)?;
        let net = WeightedNetwork::try_from(file).map_err(|e| Failure(BlowupStatus::Usage, e))?;
        *out = Box::into_raw(Box::new(BlowupNetwork { net }));
        Ok(BlowupStatus::Ok)
    })
}

fn serde_json_from<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure(BlowupStatus::Usage, e.to_string()))
}

/// # Safety
/// `net` must come from [`blowup_network_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn blowup_network_free(net: *mut BlowupNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_network_vertex_count(
    net: *const BlowupNetwork,
    out: *mut usize,
) -> BlowupStatus {
    guard(|| {
        check_out(out)?;
        *out = deref(net)?.net.vertex_count();
        Ok(BlowupStatus::Ok)
    })
}

/// Weighted spanning-tree count as a `num/den` string.
///
/// # Safety
/// `net` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_network_tau(
    net: *const BlowupNetwork,
    value: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(value)?;
        put(value, format_rational(&tau_matrix_tree(&deref(net)?.net)));
        Ok(BlowupStatus::Ok)
    })
}

/// Exact resistance between `u` and `v` as a `num/den` string.
///
/// # Safety
/// `net` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_network_resistance(
    net: *const BlowupNetwork,
    u: usize,
    v: usize,
    value: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(value)?;
        let r = resistance(&deref(net)?.net, u, v)?;
        put(value, format_rational(&r));
        Ok(BlowupStatus::Ok)
    })
}

/// Runs a rewrite script and returns the transform report as JSON. The
/// handle itself is left unchanged.
///
/// # Safety
/// `net` must be a live handle, `script` a NUL-terminated string and
/// `json` writable.
#[no_mangle]
pub unsafe extern "C" fn blowup_network_transform(
    net: *const BlowupNetwork,
    script: *const c_char,
    json: *mut *mut c_char,
) -> BlowupStatus {
    guard(|| {
        check_out(json)?;
        let script: Script = serde_json_from(read_str(script)?)?;
        let report = cmd_transform(&deref(net)?.net, &script)?;
        put(json, report.to_json());
        Ok(verdict(report.all_equal()))
    })
}
