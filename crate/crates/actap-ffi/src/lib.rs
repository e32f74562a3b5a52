//! C ABI over the simulator core: flat functions for the closed-form
//! quantities, and opaque handles for schedules and propagation traces.
//!
//! All functions return [`ActapStatus`]; outputs land in caller-provided
//! buffers whose lengths follow from the chain size (`num_couplings + 1`
//! sites). Handles must be released with the matching `_free` function.

use actap::{
    adiabaticity_peak_closed_form, build_hamiltonian, contrast_fidelity, dark_state, diagonalize,
    propagate, required_tmax, steps_for, ChainSpec, ContrastSpec, CouplingVector, Error,
    EvolutionTrace, PulseSchedule, PulseSpec, StateVector,
};

/// Result code of every C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DegenerateInput = 3,
    NumericalFailure = 4,
}

fn status_of(err: &Error) -> ActapStatus {
    match err {
        Error::Dimension(_) | Error::Domain(_) | Error::Config(_) | Error::Io(_) => {
            ActapStatus::InvalidArgument
        }
        Error::Degenerate(_) | Error::ProtocolState(_) => ActapStatus::DegenerateInput,
        Error::Integrator(_) => ActapStatus::NumericalFailure,
    }
}

/// A chain plus its pulse schedule, ready to propagate.
pub struct ActapSchedule {
    spec: ChainSpec,
    schedule: PulseSchedule,
}

/// Sampled history of one propagation.
pub struct ActapTrace {
    trace: EvolutionTrace,
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn actap_status_message(status: ActapStatus) -> *const core::ffi::c_char {
    let msg: &'static [u8] = match status {
        ActapStatus::Ok => b"ok\0",
        ActapStatus::NullPointer => b"null pointer argument\0",
        ActapStatus::InvalidArgument => b"invalid argument\0",
        ActapStatus::DegenerateInput => b"degenerate input\0",
        ActapStatus::NumericalFailure => b"numerical failure\0",
    };
    msg.as_ptr() as *const core::ffi::c_char
}

/// Protocol time needed for a target peak adiabaticity, in ns.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_required_tmax(
    omega_max: f64,
    a_target: f64,
    out: *mut f64,
) -> ActapStatus {
    if out.is_null() {
        return ActapStatus::NullPointer;
    }
    match required_tmax(omega_max, a_target) {
        Ok(t) => {
            *out = t;
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Peak adiabaticity of the ideal symmetric schedule.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_adiabaticity_peak(
    omega_max: f64,
    t_max: f64,
    out: *mut f64,
) -> ActapStatus {
    if out.is_null() {
        return ActapStatus::NullPointer;
    }
    match adiabaticity_peak_closed_form(omega_max, t_max) {
        Ok(a) => {
            *out = a;
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Endpoint-overlap transfer fidelity under imperfect contrast: the exact
/// product, the first-order value, and the first-order error rate.
///
/// # Safety
/// The three output pointers must each point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_contrast_fidelity(
    omega1_min: f64,
    omega1_max: f64,
    omega2_min: f64,
    omega2_max: f64,
    out_exact: *mut f64,
    out_first_order: *mut f64,
    out_error_rate: *mut f64,
) -> ActapStatus {
    if out_exact.is_null() || out_first_order.is_null() || out_error_rate.is_null() {
        return ActapStatus::NullPointer;
    }
    match ContrastSpec::new(omega1_min, omega1_max, omega2_min, omega2_max) {
        Ok(c) => {
            let f = contrast_fidelity(&c);
            *out_exact = f.exact;
            *out_first_order = f.first_order;
            *out_error_rate = f.first_order_error_rate;
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

unsafe fn couplings_from_raw(
    omegas: *const f64,
    num_couplings: usize,
) -> Result<CouplingVector, ActapStatus> {
    if omegas.is_null() {
        return Err(ActapStatus::NullPointer);
    }
    let values = core::slice::from_raw_parts(omegas, num_couplings).to_vec();
    CouplingVector::new(values).map_err(|e| status_of(&e))
}

/// Real amplitudes of the zero-energy dark state for `num_couplings` TMEs;
/// writes `num_couplings + 1` values.
///
/// # Safety
/// `omegas` must point to `num_couplings` readable f64; `out_amplitudes`
/// must point to `num_couplings + 1` writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_dark_state(
    omegas: *const f64,
    num_couplings: usize,
    out_amplitudes: *mut f64,
) -> ActapStatus {
    if out_amplitudes.is_null() {
        return ActapStatus::NullPointer;
    }
    let om = match couplings_from_raw(omegas, num_couplings) {
        Ok(om) => om,
        Err(s) => return s,
    };
    match dark_state(&om) {
        Ok(state) => {
            let out = core::slice::from_raw_parts_mut(out_amplitudes, num_couplings + 1);
            for (o, a) in out.iter_mut().zip(state.amplitudes()) {
                *o = a.re;
            }
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Ascending eigenvalues of the chain Hamiltonian for `num_couplings` TMEs;
/// writes `num_couplings + 1` values.
///
/// # Safety
/// `omegas` must point to `num_couplings` readable f64; `out_eigenvalues`
/// must point to `num_couplings + 1` writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_eigenvalues(
    omegas: *const f64,
    num_couplings: usize,
    out_eigenvalues: *mut f64,
) -> ActapStatus {
    if out_eigenvalues.is_null() {
        return ActapStatus::NullPointer;
    }
    let om = match couplings_from_raw(omegas, num_couplings) {
        Ok(om) => om,
        Err(s) => return s,
    };
    let num_sites = num_couplings + 1;
    if num_sites < 3 || num_sites.is_multiple_of(2) {
        return ActapStatus::InvalidArgument;
    }
    let spec = match ChainSpec::uniform(num_sites, 0.0, f64::MAX) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    match build_hamiltonian(&spec, &om) {
        Ok(h) => {
            let eigs = diagonalize(&h);
            let out = core::slice::from_raw_parts_mut(out_eigenvalues, num_sites);
            for (o, &e) in out.iter_mut().zip(eigs.eigenvalues().iter()) {
                *o = e;
            }
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds a schedule handle: `sin²`/`cos²` pulses with the given floors and
/// ceilings over `t_max` ns for a chain of `num_sites` sites.
///
/// # Safety
/// `out` must point to a writable pointer slot. The handle must be released
/// with [`actap_schedule_free`].
#[no_mangle]
pub unsafe extern "C" fn actap_schedule_new(
    num_sites: usize,
    odd_min: f64,
    odd_max: f64,
    even_min: f64,
    even_max: f64,
    t_max: f64,
    out: *mut *mut ActapSchedule,
) -> ActapStatus {
    if out.is_null() {
        return ActapStatus::NullPointer;
    }
    if num_sites < 3 || num_sites.is_multiple_of(2) {
        return ActapStatus::InvalidArgument;
    }
    let built = PulseSpec::new(odd_min, odd_max)
        .and_then(|odd| {
            let even = PulseSpec::new(even_min, even_max)?;
            PulseSchedule::new(num_sites - 1, t_max, odd, even)
        })
        .and_then(|schedule| {
            let spec = ChainSpec::new(num_sites, schedule.edge_bounds())?;
            Ok(ActapSchedule { spec, schedule })
        });
    match built {
        Ok(handle) => {
            *out = Box::into_raw(Box::new(handle));
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Replaces the per-edge scale factors (`num_sites - 1` values, all > 0).
///
/// # Safety
/// `handle` must be a live pointer from [`actap_schedule_new`]; `scales`
/// must point to `len` readable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_schedule_set_scales(
    handle: *mut ActapSchedule,
    scales: *const f64,
    len: usize,
) -> ActapStatus {
    if handle.is_null() || scales.is_null() {
        return ActapStatus::NullPointer;
    }
    let handle = &mut *handle;
    let values = core::slice::from_raw_parts(scales, len).to_vec();
    match handle.schedule.clone().with_scales(values) {
        Ok(schedule) => match ChainSpec::new(handle.spec.num_sites(), schedule.edge_bounds()) {
            Ok(spec) => {
                handle.schedule = schedule;
                handle.spec = spec;
                ActapStatus::Ok
            }
            Err(e) => status_of(&e),
        },
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `handle` must come from [`actap_schedule_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn actap_schedule_free(handle: *mut ActapSchedule) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Propagates `|1⟩` through the schedule. `steps = 0` picks the default
/// resolution (20 integrator stages per coupling cycle, at least 100 steps).
///
/// # Safety
/// `handle` must be a live schedule; `out` must point to a writable pointer
/// slot. The trace must be released with [`actap_trace_free`].
#[no_mangle]
pub unsafe extern "C" fn actap_propagate(
    handle: *const ActapSchedule,
    steps: usize,
    out: *mut *mut ActapTrace,
) -> ActapStatus {
    if handle.is_null() || out.is_null() {
        return ActapStatus::NullPointer;
    }
    let handle = &*handle;
    let steps = if steps == 0 {
        steps_for(handle.schedule.max_coupling(), handle.schedule.t_max())
    } else {
        steps
    };
    let initial = match StateVector::basis_state(handle.spec.num_sites(), 1) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    match propagate(&handle.spec, &handle.schedule, &initial, steps) {
        Ok(trace) => {
            *out = Box::into_raw(Box::new(ActapTrace { trace }));
            ActapStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of sampled times in a trace.
///
/// # Safety
/// `trace` must be a live pointer from [`actap_propagate`].
#[no_mangle]
pub unsafe extern "C" fn actap_trace_num_samples(trace: *const ActapTrace) -> usize {
    if trace.is_null() {
        return 0;
    }
    (*trace).trace.times.len()
}

/// Number of chain sites in a trace.
///
/// # Safety
/// `trace` must be a live pointer from [`actap_propagate`].
#[no_mangle]
pub unsafe extern "C" fn actap_trace_num_sites(trace: *const ActapTrace) -> usize {
    if trace.is_null() {
        return 0;
    }
    (*trace)
        .trace
        .populations
        .first()
        .map(|row| row.len())
        .unwrap_or(0)
}

/// Final population of the far end of the chain.
///
/// # Safety
/// `trace` must be a live pointer from [`actap_propagate`].
#[no_mangle]
pub unsafe extern "C" fn actap_trace_transfer_fidelity(trace: *const ActapTrace) -> f64 {
    if trace.is_null() {
        return f64::NAN;
    }
    (*trace).trace.transfer_fidelity
}

/// Copies the sample times (ns) into `out`.
///
/// # Safety
/// `out` must point to `actap_trace_num_samples(trace)` writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_trace_times(trace: *const ActapTrace, out: *mut f64) -> ActapStatus {
    if trace.is_null() || out.is_null() {
        return ActapStatus::NullPointer;
    }
    let times = &(*trace).trace.times;
    core::slice::from_raw_parts_mut(out, times.len()).copy_from_slice(times);
    ActapStatus::Ok
}

/// Copies the site populations into `out`, row-major: sample index varies
/// slowest, site index fastest.
///
/// # Safety
/// `out` must point to `num_samples * num_sites` writable f64.
#[no_mangle]
pub unsafe extern "C" fn actap_trace_populations(
    trace: *const ActapTrace,
    out: *mut f64,
) -> ActapStatus {
    if trace.is_null() || out.is_null() {
        return ActapStatus::NullPointer;
    }
    let populations = &(*trace).trace.populations;
    let num_sites = populations.first().map(|r| r.len()).unwrap_or(0);
    let out = core::slice::from_raw_parts_mut(out, populations.len() * num_sites);
    for (i, row) in populations.iter().enumerate() {
        out[i * num_sites..(i + 1) * num_sites].copy_from_slice(row);
    }
    ActapStatus::Ok
}

/// # Safety
/// `trace` must come from [`actap_propagate`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn actap_trace_free(trace: *mut ActapTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}
