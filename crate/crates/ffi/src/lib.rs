//! C interface to the quasi-potential library.
//!
//! Handles are opaque: a [`QpotModel`] owns a flux/entropy pair together with
//! its boundary densities, a [`QpotField`] owns a space-time density field
//! ρ(t, x) on the uniform cell grid over (0, 1). Every fallible entry point
//! returns a [`QpotStatus`]; on failure a message is kept in thread-local
//! storage and can be read through [`qpot_last_error`] until the next call
//! from the same thread. Density data crosses the boundary as plain `double`
//! buffers of cell averages, time-major for full fields.
//!
//! The generated header lives in `include/qpot.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::{fs, io, ptr, slice};

use qpot::action::total_action;
use qpot::fields::{Profile, SpaceTimeField};
use qpot::model::{BoundarySpec, Model, Phase};
use qpot::paths::{
    build_path, default_horizon, relaxation_time_bound, stationary_profile, PathOptions, Snapshots,
};
use qpot::statics::quasi_potential_static;
use qpot::tol;

/// Result code of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpotStatus {
    /// The call succeeded and any output arguments are filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// The model descriptor was rejected.
    BadModel = 3,
    /// A density buffer or field was rejected.
    BadField = 4,
    /// An index or buffer length does not match the handle.
    BadIndex = 5,
    /// The computation itself failed; see `qpot_last_error`.
    ComputeFailed = 6,
    /// A file could not be read or written.
    Io = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

/// Phase of a boundary pair, as reported by [`qpot_model_phase`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpotPhase {
    Invalid = -1,
    LowDensity = 0,
    HighDensity = 1,
    MaximalCurrent = 2,
    Coexistence = 3,
}

/// A flux/entropy pair together with its boundary densities.
pub struct QpotModel {
    model: Model,
    spec: BoundarySpec,
}

/// A density field ρ(t, x) on the uniform cell grid over (0, 1).
pub struct QpotField {
    field: SpaceTimeField,
}

/// Action of a field split into its interior and boundary parts.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QpotAction {
    /// Entropy produced against the field's own dynamics.
    pub bulk: f64,
    /// Cost of the left boundary trace against the left datum.
    pub left: f64,
    /// Cost of the right boundary trace against the right datum.
    pub right: f64,
    /// bulk + left + right.
    pub total: f64,
    /// Resolution floor of the estimate at this grid; differences smaller
    /// than this are not meaningful.
    pub floor: f64,
}

/// Shape of a constructed relaxation path.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QpotPathInfo {
    /// Evolution horizon actually used.
    pub horizon: f64,
    /// Time the reverse jump spends inside the domain; +inf for a standing
    /// jump, 0 when the jump merges immediately.
    pub theta: f64,
    /// Position of the grown jump in path coordinates, NaN when the
    /// construction grows none.
    pub anchor: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn ok() -> QpotStatus {
    LAST_ERROR.with(|e| e.borrow_mut().take());
    QpotStatus::Ok
}

fn fail(status: QpotStatus, msg: impl ToString) -> QpotStatus {
    let text = CString::new(msg.to_string())
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn null_arg(name: &str) -> QpotStatus {
    fail(QpotStatus::NullArgument, format!("{name} must not be null"))
}

fn guarded(body: impl FnOnce() -> QpotStatus) -> QpotStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(QpotStatus::Panic, "internal panic caught at the C boundary"),
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, QpotStatus> {
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(QpotStatus::Utf8, format!("{name} is not valid UTF-8")))
}

fn profile_from(values: &[f64]) -> Result<Profile, QpotStatus> {
    Profile::from_values(values.to_vec()).map_err(|e| fail(QpotStatus::BadField, e))
}

/// Message describing the most recent failure on the calling thread, or null
/// when the most recent call succeeded.
///
/// The pointer stays valid until the next `qpot_` call from the same thread.
#[no_mangle]
pub extern "C" fn qpot_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qpot_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Size the worker pool used by parallel computations: `n` threads, or with
/// `n = 0` the `QPOT_THREADS` environment variable, falling back to one
/// thread per core. Only the first call in a process takes effect.
#[no_mangle]
pub extern "C" fn qpot_init_threads(n: usize) {
    qpot::cli::init_threads((n > 0).then_some(n));
}

/// Parse a JSON model descriptor into a fresh handle.
///
/// The descriptor matches the CLI format:
/// `{"flux": "asep" | {"cubic": a} | {"table": [[rho, f], ...]},`
/// ` "entropy": "asep" | {"table": [[rho, h2], ...]} (optional),`
/// ` "rho_l": x, "rho_r": y}`.
///
/// # Safety
/// `descriptor` must point to a NUL-terminated string and `out` to a valid
/// location. On success `*out` owns the handle and must be released with
/// [`qpot_model_free`].
#[no_mangle]
pub unsafe extern "C" fn qpot_model_new(
    descriptor: *const c_char,
    out: *mut *mut QpotModel,
) -> QpotStatus {
    if descriptor.is_null() {
        return null_arg("descriptor");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| {
        let text = match str_arg(descriptor, "descriptor") {
            Ok(t) => t,
            Err(status) => return status,
        };
        match Model::from_json(text) {
            Ok((model, spec)) => {
                *out = Box::into_raw(Box::new(QpotModel { model, spec }));
                ok()
            }
            Err(e) => fail(QpotStatus::BadModel, e),
        }
    })
}

/// Release a model handle. Null is ignored.
///
/// # Safety
/// `model` must be null or a pointer obtained from [`qpot_model_new`] that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qpot_model_free(model: *mut QpotModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Phase of the model's boundary pair, or `Invalid` on a null handle.
///
/// # Safety
/// `model` must be null or a live handle from [`qpot_model_new`].
#[no_mangle]
pub unsafe extern "C" fn qpot_model_phase(model: *const QpotModel) -> QpotPhase {
    match model.as_ref() {
        None => QpotPhase::Invalid,
        Some(h) => match h.spec.phase {
            Phase::LowDensity => QpotPhase::LowDensity,
            Phase::HighDensity => QpotPhase::HighDensity,
            Phase::MaximalCurrent => QpotPhase::MaximalCurrent,
            Phase::Coexistence => QpotPhase::Coexistence,
        },
    }
}

/// Maximal density K of the model, or NaN on a null handle.
///
/// # Safety
/// `model` must be null or a live handle from [`qpot_model_new`].
#[no_mangle]
pub unsafe extern "C" fn qpot_model_capacity(model: *const QpotModel) -> f64 {
    model.as_ref().map_or(f64::NAN, |h| h.model.capacity())
}

/// Quasi-potential of a density profile: the minimal action needed to reach
/// it from the stationary state. `rho` holds `n` cell averages.
///
/// # Safety
/// `model` must be a live handle, `rho` must point to `n` readable doubles
/// and `out` to a writable double.
#[no_mangle]
pub unsafe extern "C" fn qpot_static_value(
    model: *const QpotModel,
    rho: *const f64,
    n: usize,
    out: *mut f64,
) -> QpotStatus {
    let Some(h) = model.as_ref() else {
        return null_arg("model");
    };
    if rho.is_null() {
        return null_arg("rho");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| {
        let profile = match profile_from(slice::from_raw_parts(rho, n)) {
            Ok(p) => p,
            Err(status) => return status,
        };
        match quasi_potential_static(&h.model, &h.spec, &profile) {
            Ok(value) => {
                *out = value.value;
                ok()
            }
            Err(e) => fail(QpotStatus::ComputeFailed, e),
        }
    })
}

/// Fill `out` with `n` cell averages of the stationary profile. On the
/// coexistence line `anchor` selects the standing-jump position (NaN for
/// 1/2); elsewhere it is ignored.
///
/// # Safety
/// `model` must be a live handle and `out` must point to `n` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn qpot_stationary_profile(
    model: *const QpotModel,
    anchor: f64,
    out: *mut f64,
    n: usize,
) -> QpotStatus {
    let Some(h) = model.as_ref() else {
        return null_arg("model");
    };
    if out.is_null() {
        return null_arg("out");
    }
    if n == 0 {
        return fail(QpotStatus::BadIndex, "profile needs at least one cell");
    }
    guarded(|| {
        let y = if anchor.is_finite() { anchor.clamp(0.0, 1.0) } else { 0.5 };
        let profile = stationary_profile(&h.model, &h.spec, n, y);
        slice::from_raw_parts_mut(out, n).copy_from_slice(profile.values());
        ok()
    })
}

/// Upper bound on the time the conservation law needs to relax `rho` to the
/// stationary profile. Writes +inf when no finite a-priori bound applies to
/// this initial condition.
///
/// # Safety
/// `model` must be a live handle, `rho` must point to `n` readable doubles
/// and `out` to a writable double.
#[no_mangle]
pub unsafe extern "C" fn qpot_relaxation_bound(
    model: *const QpotModel,
    rho: *const f64,
    n: usize,
    out: *mut f64,
) -> QpotStatus {
    let Some(h) = model.as_ref() else {
        return null_arg("model");
    };
    if rho.is_null() {
        return null_arg("rho");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| {
        let profile = match profile_from(slice::from_raw_parts(rho, n)) {
            Ok(p) => p,
            Err(status) => return status,
        };
        *out = relaxation_time_bound(&h.model, &h.spec, &profile).unwrap_or(f64::INFINITY);
        ok()
    })
}

/// Build the minimal-action relaxation path from the stationary profile to
/// the target, returned as a field handle running forward in time.
///
/// `target` holds `n` cell averages. `horizon` and `cfl` use defaults when
/// NaN or nonpositive (a long enough phase-dependent horizon, Courant number
/// 0.9). `anchor` overrides the grown-jump position when finite. With
/// `n_snapshots = 0` the field keeps every time step; otherwise it keeps
/// `max(n_snapshots, 2)` evenly spaced instants. `info` may be null.
///
/// # Safety
/// `model` must be a live handle, `target` must point to `n` readable
/// doubles, `out` to a valid location and `info` to a writable struct or
/// null. On success `*out` owns the field and must be released with
/// [`qpot_field_free`].
#[no_mangle]
pub unsafe extern "C" fn qpot_path_build(
    model: *const QpotModel,
    target: *const f64,
    n: usize,
    horizon: f64,
    cfl: f64,
    anchor: f64,
    n_snapshots: usize,
    out: *mut *mut QpotField,
    info: *mut QpotPathInfo,
) -> QpotStatus {
    let Some(h) = model.as_ref() else {
        return null_arg("model");
    };
    if target.is_null() {
        return null_arg("target");
    }
    if out.is_null() {
        return null_arg("out");
    }
    if cfl.is_finite() && cfl > 1.0 {
        return fail(QpotStatus::BadField, format!("cfl must lie in (0, 1], got {cfl}"));
    }
    guarded(|| {
        let profile = match profile_from(slice::from_raw_parts(target, n)) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let mut opts = PathOptions {
            cfl: if cfl.is_finite() && cfl > 0.0 { cfl } else { tol::CFL },
            horizon: (horizon.is_finite() && horizon > 0.0).then_some(horizon),
            shock_anchor: anchor.is_finite().then_some(anchor),
            snapshots: Snapshots::EveryStep,
        };
        if n_snapshots > 0 {
            let k = n_snapshots.max(2);
            let t_end = match opts.horizon {
                Some(t) => t,
                None => match default_horizon(&h.model, &h.spec, &profile, &opts) {
                    Ok(t) => t,
                    Err(e) => return fail(QpotStatus::ComputeFailed, e),
                },
            };
            let times = (0..k).map(|i| t_end * i as f64 / (k - 1) as f64).collect();
            opts.snapshots = Snapshots::Times(times);
        }
        match build_path(&h.model, &h.spec, &profile, &opts) {
            Ok(result) => {
                if let Some(slot) = info.as_mut() {
                    *slot = QpotPathInfo {
                        horizon: result.horizon,
                        theta: result.theta,
                        anchor: result.anchor.unwrap_or(f64::NAN),
                    };
                }
                *out = Box::into_raw(Box::new(QpotField { field: result.path }));
                ok()
            }
            Err(e) => fail(QpotStatus::ComputeFailed, e),
        }
    })
}

/// Assemble a field handle from raw data: `times` holds `n_times` strictly
/// increasing instants, `values` holds `n_times * n_cells` densities laid
/// out time-major, so `values[j * n_cells + i]` is the density at time `j`
/// in cell `i`.
///
/// # Safety
/// `times` and `values` must point to that many readable doubles and `out`
/// to a valid location. On success `*out` owns the field and must be
/// released with [`qpot_field_free`].
#[no_mangle]
pub unsafe extern "C" fn qpot_field_new(
    times: *const f64,
    n_times: usize,
    values: *const f64,
    n_cells: usize,
    out: *mut *mut QpotField,
) -> QpotStatus {
    if times.is_null() {
        return null_arg("times");
    }
    if values.is_null() {
        return null_arg("values");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| {
        let times = slice::from_raw_parts(times, n_times).to_vec();
        let flat = slice::from_raw_parts(values, n_times.saturating_mul(n_cells));
        let mut profiles = Vec::with_capacity(n_times);
        for row in flat.chunks_exact(n_cells.max(1)) {
            match profile_from(row) {
                Ok(p) => profiles.push(p),
                Err(status) => return status,
            }
        }
        match SpaceTimeField::new(times, profiles) {
            Ok(field) => {
                *out = Box::into_raw(Box::new(QpotField { field }));
                ok()
            }
            Err(e) => fail(QpotStatus::BadField, e),
        }
    })
}

/// Release a field handle. Null is ignored.
///
/// # Safety
/// `field` must be null or an owning pointer returned by this library that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qpot_field_free(field: *mut QpotField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of recorded instants, or 0 on a null handle.
///
/// # Safety
/// `field` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn qpot_field_n_times(field: *const QpotField) -> usize {
    field.as_ref().map_or(0, |h| h.field.n_times())
}

/// Number of grid cells per profile, or 0 on a null handle.
///
/// # Safety
/// `field` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn qpot_field_n_cells(field: *const QpotField) -> usize {
    field.as_ref().map_or(0, |h| h.field.n_cells())
}

/// Instant recorded at index `j`, or NaN when the handle is null or the
/// index is out of range.
///
/// # Safety
/// `field` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn qpot_field_time(field: *const QpotField, j: usize) -> f64 {
    field
        .as_ref()
        .and_then(|h| h.field.times().get(j).copied())
        .unwrap_or(f64::NAN)
}

/// Copy the profile recorded at index `j` into `out`, which must hold
/// exactly `qpot_field_n_cells` doubles.
///
/// # Safety
/// `field` must be a live field handle and `out` must point to `n` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn qpot_field_profile(
    field: *const QpotField,
    j: usize,
    out: *mut f64,
    n: usize,
) -> QpotStatus {
    let Some(h) = field.as_ref() else {
        return null_arg("field");
    };
    if out.is_null() {
        return null_arg("out");
    }
    if j >= h.field.n_times() {
        return fail(
            QpotStatus::BadIndex,
            format!("time index {j} out of range for {} instants", h.field.n_times()),
        );
    }
    if n != h.field.n_cells() {
        return fail(
            QpotStatus::BadIndex,
            format!("buffer holds {n} cells, field has {}", h.field.n_cells()),
        );
    }
    slice::from_raw_parts_mut(out, n).copy_from_slice(h.field.profile(j).values());
    ok()
}

/// Read a field from a `t,x,rho` CSV file, the format written by the CLI.
///
/// # Safety
/// `path` must point to a NUL-terminated string and `out` to a valid
/// location. On success `*out` owns the field and must be released with
/// [`qpot_field_free`].
#[no_mangle]
pub unsafe extern "C" fn qpot_field_read_csv(
    path: *const c_char,
    out: *mut *mut QpotField,
) -> QpotStatus {
    if path.is_null() {
        return null_arg("path");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| {
        let path = match str_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        let file = match fs::File::open(path) {
            Ok(f) => f,
            Err(e) => return fail(QpotStatus::Io, format!("{path}: {e}")),
        };
        match SpaceTimeField::read_csv(io::BufReader::new(file)) {
            Ok(field) => {
                *out = Box::into_raw(Box::new(QpotField { field }));
                ok()
            }
            Err(e) => fail(QpotStatus::BadField, format!("{path}: {e}")),
        }
    })
}

/// Write a field as `t,x,rho` CSV, the format the CLI reads back.
///
/// # Safety
/// `field` must be a live field handle and `path` must point to a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qpot_field_write_csv(
    field: *const QpotField,
    path: *const c_char,
) -> QpotStatus {
    let Some(h) = field.as_ref() else {
        return null_arg("field");
    };
    if path.is_null() {
        return null_arg("path");
    }
    guarded(|| {
        let path = match str_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        let file = match fs::File::create(path) {
            Ok(f) => f,
            Err(e) => return fail(QpotStatus::Io, format!("{path}: {e}")),
        };
        match h.field.write_csv(io::BufWriter::new(file)) {
            Ok(()) => ok(),
            Err(e) => fail(QpotStatus::Io, format!("{path}: {e}")),
        }
    })
}

/// Score a field against the model's boundary data: interior entropy
/// production plus the two boundary costs. The field's instants must be
/// uniformly spaced at the resolution the field was computed with, so score
/// paths built with `n_snapshots = 0`.
///
/// # Safety
/// `model` and `field` must be live handles and `out` must point to a
/// writable struct.
#[no_mangle]
pub unsafe extern "C" fn qpot_action(
    model: *const QpotModel,
    field: *const QpotField,
    out: *mut QpotAction,
) -> QpotStatus {
    let Some(m) = model.as_ref() else {
        return null_arg("model");
    };
    let Some(f) = field.as_ref() else {
        return null_arg("field");
    };
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| match total_action(&m.model, &m.spec, &f.field) {
        Ok(b) => {
            *out = QpotAction {
                bulk: b.bulk,
                left: b.left,
                right: b.right,
                total: b.total,
                floor: b.floor,
            };
            ok()
        }
        Err(e) => fail(QpotStatus::ComputeFailed, e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asep(rho_l: f64, rho_r: f64) -> *mut QpotModel {
        let text = CString::new(format!(
            r#"{{"flux": "asep", "rho_l": {rho_l}, "rho_r": {rho_r}}}"#
        ))
        .unwrap();
        let mut handle = ptr::null_mut();
        let status = unsafe { qpot_model_new(text.as_ptr(), &mut handle) };
        assert_eq!(status, QpotStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    fn message() -> String {
        let p = qpot_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
    }

    #[test]
    fn version_is_a_static_string() {
        let p = qpot_version();
        assert!(!p.is_null());
        let v = unsafe { CStr::from_ptr(p) }.to_str().unwrap();
        assert!(v.split('.').count() >= 2);
    }

    #[test]
    fn model_round_trip_reports_phase_and_capacity() {
        let m = asep(0.2, 0.6);
        unsafe {
            assert_eq!(qpot_model_phase(m), QpotPhase::LowDensity);
            assert_eq!(qpot_model_capacity(m), 1.0);
            qpot_model_free(m);
        }
        unsafe {
            assert_eq!(qpot_model_phase(ptr::null()), QpotPhase::Invalid);
            assert!(qpot_model_capacity(ptr::null()).is_nan());
        }
    }

    #[test]
    fn rejected_descriptor_leaves_a_message() {
        let text = CString::new(r#"{"flux": "asep", "rho_l": 1.4, "rho_r": 0.6}"#).unwrap();
        let mut handle = ptr::null_mut();
        let status = unsafe { qpot_model_new(text.as_ptr(), &mut handle) };
        assert_eq!(status, QpotStatus::BadModel);
        assert!(handle.is_null());
        assert!(message().contains("1.4"));

        let m = asep(0.2, 0.6);
        assert!(qpot_last_error().is_null());
        unsafe { qpot_model_free(m) };
    }

    #[test]
    fn null_arguments_are_reported_not_dereferenced() {
        let mut out = ptr::null_mut();
        let status = unsafe { qpot_model_new(ptr::null(), &mut out) };
        assert_eq!(status, QpotStatus::NullArgument);

        let mut value = 0.0;
        let status = unsafe { qpot_static_value(ptr::null(), &value, 1, &mut value) };
        assert_eq!(status, QpotStatus::NullArgument);
        assert!(message().contains("model"));
    }

    #[test]
    fn static_value_vanishes_on_the_stationary_profile() {
        let m = asep(0.2, 0.6);
        let rho = vec![0.2; 128];
        let mut value = f64::NAN;
        let status = unsafe { qpot_static_value(m, rho.as_ptr(), rho.len(), &mut value) };
        assert_eq!(status, QpotStatus::Ok);
        assert!(value.abs() < 1e-9, "got {value}");
        unsafe { qpot_model_free(m) };
    }

    #[test]
    fn stationary_profile_holds_the_standing_jump() {
        let m = asep(0.3, 0.7);
        let mut out = vec![0.0; 100];
        let status = unsafe { qpot_stationary_profile(m, 0.4, out.as_mut_ptr(), out.len()) };
        assert_eq!(status, QpotStatus::Ok);
        assert_eq!(out[0], 0.3);
        assert_eq!(out[39], 0.3);
        assert_eq!(out[40], 0.7);
        assert_eq!(out[99], 0.7);
        unsafe { qpot_model_free(m) };
    }

    #[test]
    fn relaxation_bound_is_finite_below_the_left_shadow() {
        let m = asep(0.2, 0.6);
        let rho = vec![0.3; 64];
        let mut bound = f64::NAN;
        let status = unsafe { qpot_relaxation_bound(m, rho.as_ptr(), rho.len(), &mut bound) };
        assert_eq!(status, QpotStatus::Ok);
        assert!(bound.is_finite() && bound > 0.0, "got {bound}");
        unsafe { qpot_model_free(m) };
    }

    #[test]
    fn path_runs_from_stationary_to_target_and_scores_positive() {
        let m = asep(0.2, 0.6);
        let target = vec![0.45; 64];
        let mut field = ptr::null_mut();
        let mut info = QpotPathInfo { horizon: 0.0, theta: 0.0, anchor: 0.0 };
        let status = unsafe {
            qpot_path_build(
                m,
                target.as_ptr(),
                target.len(),
                f64::NAN,
                f64::NAN,
                f64::NAN,
                0,
                &mut field,
                &mut info,
            )
        };
        assert_eq!(status, QpotStatus::Ok);
        assert!(info.horizon > 0.0);
        assert!(info.theta >= 0.0);
        assert!(info.anchor.is_finite());

        let n = unsafe { qpot_field_n_cells(field) };
        assert_eq!(n, 64);
        let steps = unsafe { qpot_field_n_times(field) };
        assert!(steps > 2);
        assert_eq!(unsafe { qpot_field_time(field, 0) }, 0.0);

        let mut first = vec![0.0; n];
        let mut last = vec![0.0; n];
        unsafe {
            assert_eq!(qpot_field_profile(field, 0, first.as_mut_ptr(), n), QpotStatus::Ok);
            assert_eq!(
                qpot_field_profile(field, steps - 1, last.as_mut_ptr(), n),
                QpotStatus::Ok
            );
        }
        assert!(first.iter().all(|&v| (v - 0.2).abs() < 1e-12));
        assert!(last.iter().all(|&v| (v - 0.45).abs() < 1e-9));

        let mut action = QpotAction { bulk: 0.0, left: 0.0, right: 0.0, total: 0.0, floor: 0.0 };
        let status = unsafe { qpot_action(m, field, &mut action) };
        assert_eq!(status, QpotStatus::Ok);
        assert!(action.total > 0.0);
        assert!(action.total >= action.bulk - 1e-12);
        assert!((action.total - (action.bulk + action.left + action.right)).abs() < 1e-12);

        unsafe {
            qpot_field_free(field);
            qpot_model_free(m);
        }
    }

    #[test]
    fn field_round_trips_through_csv() {
        let times = [0.0, 0.5];
        let values = [0.2, 0.4, 0.6, 0.8, 0.25, 0.45, 0.65, 0.85];
        let mut field = ptr::null_mut();
        let status = unsafe { qpot_field_new(times.as_ptr(), 2, values.as_ptr(), 4, &mut field) };
        assert_eq!(status, QpotStatus::Ok);

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("f.csv").to_str().unwrap()).unwrap();
        unsafe {
            assert_eq!(qpot_field_write_csv(field, path.as_ptr()), QpotStatus::Ok);
        }

        let mut back = ptr::null_mut();
        unsafe {
            assert_eq!(qpot_field_read_csv(path.as_ptr(), &mut back), QpotStatus::Ok);
            assert_eq!(qpot_field_n_times(back), 2);
            assert_eq!(qpot_field_n_cells(back), 4);
            assert_eq!(qpot_field_time(back, 1), 0.5);
            let mut row = vec![0.0; 4];
            assert_eq!(qpot_field_profile(back, 1, row.as_mut_ptr(), 4), QpotStatus::Ok);
            assert_eq!(row, values[4..]);
            qpot_field_free(back);
            qpot_field_free(field);
        }
    }

    #[test]
    fn mismatched_buffer_is_an_index_error() {
        let times = [0.0, 1.0];
        let values = [0.5; 8];
        let mut field = ptr::null_mut();
        unsafe {
            assert_eq!(
                qpot_field_new(times.as_ptr(), 2, values.as_ptr(), 4, &mut field),
                QpotStatus::Ok
            );
            let mut row = vec![0.0; 3];
            assert_eq!(
                qpot_field_profile(field, 0, row.as_mut_ptr(), 3),
                QpotStatus::BadIndex
            );
            assert_eq!(
                qpot_field_profile(field, 5, row.as_mut_ptr(), 4),
                QpotStatus::BadIndex
            );
            assert!(qpot_field_time(field, 7).is_nan());
            qpot_field_free(field);
        }
    }

    #[test]
    fn unevenly_sampled_fields_cannot_be_scored() {
        let m = asep(0.2, 0.6);
        let times = [0.0, 0.1, 0.35];
        let values = [0.4; 12];
        let mut field = ptr::null_mut();
        unsafe {
            assert_eq!(
                qpot_field_new(times.as_ptr(), 3, values.as_ptr(), 4, &mut field),
                QpotStatus::Ok
            );
            let mut action = QpotAction { bulk: 0.0, left: 0.0, right: 0.0, total: 0.0, floor: 0.0 };
            assert_eq!(qpot_action(m, field, &mut action), QpotStatus::ComputeFailed);
            assert!(message().contains("uniform"));
            qpot_field_free(field);
            qpot_model_free(m);
        }
    }

    #[test]
    fn bad_csv_reports_io_and_format_separately() {
        let missing = CString::new("/no/such/file.csv").unwrap();
        let mut out = ptr::null_mut();
        unsafe {
            assert_eq!(qpot_field_read_csv(missing.as_ptr(), &mut out), QpotStatus::Io);
        }
        assert!(message().contains("file.csv"));

        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.csv");
        fs::write(&bad, "t,x,rho\n0,0.5,not-a-number\n").unwrap();
        let bad = CString::new(bad.to_str().unwrap()).unwrap();
        unsafe {
            assert_eq!(qpot_field_read_csv(bad.as_ptr(), &mut out), QpotStatus::BadField);
        }
    }
}
