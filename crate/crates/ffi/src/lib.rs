//! C ABI over `ambientflow`.
//!
//! Objects cross the boundary as opaque handles created by `af_*_new*` /
//! `af_evolve` and released by the matching `af_*_free`. Every fallible call
//! returns an `AfStatus`; on failure `af_last_error` describes the cause for
//! the calling thread. Output pointers are written only on success.

use ambientflow::constants::{curvature_threshold_k, length_threshold_m, ConfinementCase, LengthThreshold};
use ambientflow::flow::{estimate_extinction, evolve, DtPolicy, FlowParams, StepControl, StopReason, Trajectory};
use ambientflow::geometry::{compute_geometry, ClosedCurve, Point2};
use ambientflow::{AmbientField, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidCurve = 3,
    Domain = 4,
    ConvexityRequired = 5,
    MissingInput = 6,
    InsufficientData = 7,
    Unbounded = 8,
    OutOfRange = 9,
    Internal = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AfStopReason {
    Extinct = 0,
    Nonembedded = 1,
    NonconvexEvent = 2,
    MaxTime = 3,
    MaxSteps = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AfCase {
    A = 0,
    B = 1,
    C = 2,
}

/// Step control. `dt_fixed > 0` selects a fixed step, otherwise the CFL rule
/// with `c_cfl`, `c_adv`. Non-positive `dt_max` means no cap; a non-finite
/// `max_time` means no time limit.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct AfStepControl {
    pub dt_fixed: f64,
    pub c_cfl: f64,
    pub c_adv: f64,
    pub dt_max: f64,
    pub resample_every: usize,
    pub max_time: f64,
    pub max_steps: usize,
    pub area_floor: f64,
    pub snapshot_every: usize,
    pub stop_on_nonconvex: bool,
    pub nonconvex_factor: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AfSeriesRow {
    pub t: f64,
    pub length: f64,
    pub area: f64,
    pub winding: f64,
    pub kmin: f64,
    pub kmax: f64,
    pub fmin: f64,
}

/// Opaque closed curve.
pub struct AfCurve(ClosedCurve);
/// Opaque ambient field.
pub struct AfField(AmbientField);
/// Opaque evolution result.
pub struct AfTrajectory(Trajectory);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AfStatus {
    match e {
        Error::InvalidCurve(_) => AfStatus::InvalidCurve,
        Error::ConvexityRequired(_) => AfStatus::ConvexityRequired,
        Error::Domain(_) | Error::Config(_) => AfStatus::Domain,
        Error::MissingInput(_) => AfStatus::MissingInput,
        Error::InsufficientData(_) | Error::EstimatorInapplicable(_) => AfStatus::InsufficientData,
        Error::UnboundedField(_) => AfStatus::Unbounded,
        _ => AfStatus::Internal,
    }
}

fn fail(status: AfStatus, msg: impl Into<String>) -> AfStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), AfStatus>) -> AfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AfStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(AfStatus::Panic, msg)
        }
    }
}

trait OrStatus<T> {
    fn st(self) -> Result<T, AfStatus>;
}

impl<T> OrStatus<T> for ambientflow::Result<T> {
    fn st(self) -> Result<T, AfStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, AfStatus> {
    p.as_ref().ok_or_else(|| fail(AfStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out<T>(p: *mut T, name: &str) -> Result<&'static mut T, AfStatus> {
    p.as_mut().ok_or_else(|| fail(AfStatus::NullPointer, format!("{name} is null")))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn af_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `cap > 0`). Returns the full message length in
/// bytes excluding the NUL, or 0 when there is no error.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn af_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && cap > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

// ---- curves

/// Curve from `n` interleaved points `x0, y0, x1, y1, ...`.
///
/// # Safety
/// `xy` must point to `2n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_curve_new(xy: *const f64, n: usize, out_curve: *mut *mut AfCurve) -> AfStatus {
    guard(|| {
        let o = out(out_curve, "out_curve")?;
        if xy.is_null() {
            return Err(fail(AfStatus::NullPointer, "xy is null"));
        }
        let s = std::slice::from_raw_parts(xy, 2 * n);
        let pts = s.chunks_exact(2).map(|p| Point2::new(p[0], p[1])).collect();
        *o = boxed(AfCurve(ClosedCurve::new(pts).st()?));
        Ok(())
    })
}

/// # Safety
/// `out_curve` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_curve_new_circle(cx: f64, cy: f64, r: f64, n: usize, out_curve: *mut *mut AfCurve) -> AfStatus {
    guard(|| {
        let o = out(out_curve, "out_curve")?;
        *o = boxed(AfCurve(ClosedCurve::circle(Point2::new(cx, cy), r, n).st()?));
        Ok(())
    })
}

/// # Safety
/// `out_curve` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_curve_new_ellipse(cx: f64, cy: f64, a: f64, b: f64, n: usize, out_curve: *mut *mut AfCurve) -> AfStatus {
    guard(|| {
        let o = out(out_curve, "out_curve")?;
        *o = boxed(AfCurve(ClosedCurve::ellipse(Point2::new(cx, cy), a, b, n).st()?));
        Ok(())
    })
}

/// # Safety
/// `curve` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn af_curve_free(curve: *mut AfCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_curve_len(curve: *const AfCurve) -> usize {
    curve.as_ref().map(|c| c.0.len()).unwrap_or(0)
}

/// Copies the vertices into `xy` (interleaved, `cap` doubles available).
///
/// # Safety
/// `curve` must be live; `xy` must point to `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn af_curve_points(curve: *const AfCurve, xy: *mut f64, cap: usize) -> AfStatus {
    guard(|| {
        let c = deref(curve, "curve")?;
        let v = c.0.vertices();
        if xy.is_null() {
            return Err(fail(AfStatus::NullPointer, "xy is null"));
        }
        if cap < 2 * v.len() {
            return Err(fail(AfStatus::OutOfRange, format!("need {} doubles, got {cap}", 2 * v.len())));
        }
        let dst = std::slice::from_raw_parts_mut(xy, 2 * v.len());
        for (d, p) in dst.chunks_exact_mut(2).zip(v) {
            d[0] = p.x;
            d[1] = p.y;
        }
        Ok(())
    })
}

/// Length, enclosed area and turning number of the discrete curve.
///
/// # Safety
/// `curve` must be live; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_curve_measures(curve: *const AfCurve, length: *mut f64, area: *mut f64, winding: *mut f64) -> AfStatus {
    guard(|| {
        let c = deref(curve, "curve")?;
        let (l, a, w) = (out(length, "length")?, out(area, "area")?, out(winding, "winding")?);
        let g = compute_geometry(&c.0).st()?;
        (*l, *a, *w) = (g.length, g.area, g.turning_number);
        Ok(())
    })
}

// ---- fields

fn new_field(f: AmbientField, out_field: *mut *mut AfField) -> AfStatus {
    guard(|| {
        let o = unsafe { out(out_field, "out_field")? };
        *o = boxed(AfField(f));
        Ok(())
    })
}

/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_field_new_zero(out_field: *mut *mut AfField) -> AfStatus {
    new_field(AmbientField::Zero, out_field)
}

/// `V = (b, c)`.
///
/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_field_new_constant(b: f64, c: f64, out_field: *mut *mut AfField) -> AfStatus {
    new_field(AmbientField::Constant { b, c }, out_field)
}

/// `V = a·(y, −x) + (b, c)`.
///
/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_field_new_killing(a: f64, b: f64, c: f64, out_field: *mut *mut AfField) -> AfStatus {
    new_field(AmbientField::Killing { a, b, c }, out_field)
}

/// `V = (x, −x²)`.
///
/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_field_new_saddle(out_field: *mut *mut AfField) -> AfStatus {
    new_field(AmbientField::Saddle, out_field)
}

/// `V = (1 + |x|²)^{p/2}·x`.
///
/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_field_new_radial_power(p: f64, out_field: *mut *mut AfField) -> AfStatus {
    new_field(AmbientField::RadialPower { p }, out_field)
}

/// `V = ⟨α, x⟩·x`.
///
/// # Safety
/// `out_field` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_field_new_radial_linear(ax: f64, ay: f64, out_field: *mut *mut AfField) -> AfStatus {
    new_field(AmbientField::RadialLinear { alpha: [ax, ay] }, out_field)
}

/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_field_free(field: *mut AfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be live; `v` must point to 2 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn af_field_eval(field: *const AfField, x: f64, y: f64, v: *mut f64) -> AfStatus {
    guard(|| {
        let f = deref(field, "field")?;
        if v.is_null() {
            return Err(fail(AfStatus::NullPointer, "v is null"));
        }
        let w = f.0.value(Point2::new(x, y));
        *v = w.x;
        *v.add(1) = w.y;
        Ok(())
    })
}

// ---- evolution

/// Fills `ctl` with the library defaults.
///
/// # Safety
/// `ctl` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_step_control_default(ctl: *mut AfStepControl) -> AfStatus {
    guard(|| {
        let o = out(ctl, "ctl")?;
        let d = StepControl::default();
        let (c_cfl, c_adv) = match d.dt {
            DtPolicy::Cfl { c_cfl, c_adv } => (c_cfl, c_adv),
            DtPolicy::Fixed { .. } => (0.2, 0.5),
        };
        *o = AfStepControl {
            dt_fixed: 0.0,
            c_cfl,
            c_adv,
            dt_max: 0.0,
            resample_every: d.resample_every,
            max_time: d.max_time,
            max_steps: d.max_steps,
            area_floor: d.area_floor,
            snapshot_every: d.snapshot_every,
            stop_on_nonconvex: d.stop_on_nonconvex,
            nonconvex_factor: d.nonconvex_factor,
        };
        Ok(())
    })
}

fn to_control(c: &AfStepControl) -> StepControl {
    StepControl {
        dt: if c.dt_fixed > 0.0 { DtPolicy::Fixed { dt: c.dt_fixed } } else { DtPolicy::Cfl { c_cfl: c.c_cfl, c_adv: c.c_adv } },
        dt_max: (c.dt_max > 0.0).then_some(c.dt_max),
        resample_every: c.resample_every,
        max_time: if c.max_time.is_nan() { f64::INFINITY } else { c.max_time },
        max_steps: c.max_steps,
        area_floor: c.area_floor,
        stop_on_nonconvex: c.stop_on_nonconvex,
        nonconvex_factor: c.nonconvex_factor,
        snapshot_every: c.snapshot_every,
        snapshot_times: Vec::new(),
    }
}

/// Evolves `curve` under `F = σ1·k + σ2 + ⟨V, ν⟩`. A null `ctl` uses the
/// defaults.
///
/// # Safety
/// Handles must be live; `ctl` null or readable; `out_traj` writable.
#[no_mangle]
pub unsafe extern "C" fn af_evolve(
    curve: *const AfCurve,
    field: *const AfField,
    sigma1: f64,
    sigma2: f64,
    ctl: *const AfStepControl,
    out_traj: *mut *mut AfTrajectory,
) -> AfStatus {
    guard(|| {
        let (c, f) = (deref(curve, "curve")?, deref(field, "field")?);
        let o = out(out_traj, "out_traj")?;
        let params = FlowParams::new(sigma1, sigma2).st()?;
        let control = ctl.as_ref().map(to_control).unwrap_or_default();
        control.validate().st()?;
        *o = boxed(AfTrajectory(evolve(&c.0, &f.0, &params, &control).st()?));
        Ok(())
    })
}

/// # Safety
/// `traj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_free(traj: *mut AfTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// # Safety
/// `traj` must be live; `reason` writable.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_stop_reason(traj: *const AfTrajectory, reason: *mut AfStopReason) -> AfStatus {
    guard(|| {
        let t = deref(traj, "traj")?;
        *out(reason, "reason")? = match t.0.stop_reason {
            StopReason::Extinct => AfStopReason::Extinct,
            StopReason::Nonembedded => AfStopReason::Nonembedded,
            StopReason::NonconvexEvent => AfStopReason::NonconvexEvent,
            StopReason::MaxTime => AfStopReason::MaxTime,
            StopReason::MaxSteps => AfStopReason::MaxSteps,
        };
        Ok(())
    })
}

/// First nonconvex event time; writes NaN when there was none.
///
/// # Safety
/// `traj` must be live; `t` writable.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_nonconvex_time(traj: *const AfTrajectory, t: *mut f64) -> AfStatus {
    guard(|| {
        let tr = deref(traj, "traj")?;
        *out(t, "t")? = tr.0.nonconvex_time.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Number of rows of the per-step series; 0 for a null handle.
///
/// # Safety
/// `traj` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_series_len(traj: *const AfTrajectory) -> usize {
    traj.as_ref().map(|t| t.0.series.len()).unwrap_or(0)
}

/// # Safety
/// `traj` must be live; `row` writable.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_series_row(traj: *const AfTrajectory, i: usize, row: *mut AfSeriesRow) -> AfStatus {
    guard(|| {
        let t = deref(traj, "traj")?;
        let o = out(row, "row")?;
        let r = t.0.series.get(i).ok_or_else(|| fail(AfStatus::OutOfRange, format!("row {i} of {}", t.0.series.len())))?;
        *o = AfSeriesRow { t: r.t, length: r.length, area: r.area, winding: r.winding, kmin: r.kmin, kmax: r.kmax, fmin: r.fmin };
        Ok(())
    })
}

/// Number of stored snapshots; 0 for a null handle.
///
/// # Safety
/// `traj` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_snapshot_count(traj: *const AfTrajectory) -> usize {
    traj.as_ref().map(|t| t.0.snapshots.len()).unwrap_or(0)
}

/// Copies snapshot `i` into a new curve handle and writes its time.
///
/// # Safety
/// `traj` must be live; `t` and `out_curve` writable.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_snapshot(traj: *const AfTrajectory, i: usize, t: *mut f64, out_curve: *mut *mut AfCurve) -> AfStatus {
    guard(|| {
        let tr = deref(traj, "traj")?;
        let (ot, oc) = (out(t, "t")?, out(out_curve, "out_curve")?);
        let s = tr.0.snapshots.get(i).ok_or_else(|| fail(AfStatus::OutOfRange, format!("snapshot {i} of {}", tr.0.snapshots.len())))?;
        *ot = s.t;
        *oc = boxed(AfCurve(s.curve.clone()));
        Ok(())
    })
}

/// Extinction time and point of a run that stopped at the area floor.
///
/// # Safety
/// `traj` must be live; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn af_trajectory_extinction(traj: *const AfTrajectory, time: *mut f64, ox: *mut f64, oy: *mut f64) -> AfStatus {
    guard(|| {
        let tr = deref(traj, "traj")?;
        let (a, b, c) = (out(time, "time")?, out(ox, "ox")?, out(oy, "oy")?);
        let e = estimate_extinction(&tr.0).st()?;
        (*a, *b, *c) = (e.time, e.origin.x, e.origin.y);
        Ok(())
    })
}

// ---- constants

/// Curvature threshold `K` for bounds `C1`, `C2` on the field's derivatives.
///
/// # Safety
/// `k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_curvature_threshold(sigma1: f64, sigma2: f64, c1: f64, c2: f64, k: *mut f64) -> AfStatus {
    guard(|| {
        let o = out(k, "k")?;
        *o = curvature_threshold_k(sigma1, sigma2, c1, c2).st()?.0;
        Ok(())
    })
}

/// Length threshold `M`; writes `+inf` when it is infinite. `x_t0` is used
/// only for case C (pass NaN otherwise).
///
/// # Safety
/// `m` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_length_threshold(case_: AfCase, sigma1: f64, sigma2: f64, c0: f64, c1: f64, x_t0: f64, m: *mut f64) -> AfStatus {
    guard(|| {
        let o = out(m, "m")?;
        let case = match case_ {
            AfCase::A => ConfinementCase::A,
            AfCase::B => ConfinementCase::B,
            AfCase::C => ConfinementCase::C,
        };
        let x = (!x_t0.is_nan()).then_some(x_t0);
        *o = match length_threshold_m(case, sigma1, sigma2, c0, c1, x).st()? {
            LengthThreshold::Finite(v) => v,
            LengthThreshold::Infinite => f64::INFINITY,
        };
        Ok(())
    })
}
