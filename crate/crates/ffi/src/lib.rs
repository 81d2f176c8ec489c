//! C ABI for the train marshalling solver.
//!
//! Instances and solutions are opaque handles owned by this library; create
//! them with the `tmp_instance_*` constructors, query them through the
//! accessor functions, and release them with the matching `*_free` call.
//! Every fallible function returns a [`TmpStatus`] code;
//! [`tmp_last_error_message`] holds a human-readable diagnostic for the most
//! recent failure on the calling thread.
//!
//! The generated header lives at `include/tmp_solver.h`.

use std::cell::RefCell;
use std::ffi::{CStr, CString, c_char};
use std::fmt::Display;

use tmp_solver::oracle::{DEFAULT_MAX_T, oracle_min};
use tmp_solver::preprocess::{shrink, upper_bound};
use tmp_solver::{Instance, Method, parse_instance, simulate_order, solve};

/// Status code of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmpStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input text is not valid UTF-8.
    InvalidUtf8 = 2,
    /// The instance description failed to parse or validate.
    InvalidInstance = 3,
    /// The oracle refused: too many destinations for exhaustive search.
    OracleLimit = 4,
}

/// Solver selection for [`tmp_solve`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmpMethod {
    /// Bottom-up dynamic program.
    BottomUp = 0,
    /// Memoized top-down dynamic program.
    Memoized = 1,
    /// Brute-force search over all block orders (small instances only).
    Oracle = 2,
}

/// Opaque handle to a validated instance.
pub struct TmpInstance {
    inner: Instance,
}

/// Opaque handle to a solved instance.
pub struct TmpSolution {
    k_opt: u32,
    /// Optimal block order as 1-based destination labels.
    order: Vec<u32>,
    /// 1-based track per railcar, in original numbering.
    tracks: Vec<u32>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: TmpStatus, message: impl Display) -> TmpStatus {
    let rendered = CString::new(message.to_string())
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(rendered));
    status
}

/// Diagnostic for the most recent failure on this thread, or null if no
/// failure has occurred. The pointer stays valid until the next failing
/// call on the same thread.
#[unsafe(no_mangle)]
pub extern "C" fn tmp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Parses an instance from NUL-terminated text in the plain instance file
/// format and stores a handle in `*out`.
///
/// # Safety
/// `text` must point to a NUL-terminated byte string and `out` to writable
/// memory for one pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_instance_parse(
    text: *const c_char,
    out: *mut *mut TmpInstance,
) -> TmpStatus {
    if text.is_null() || out.is_null() {
        return fail(TmpStatus::NullArgument, "text and out must be non-null");
    }
    let bytes = unsafe { CStr::from_ptr(text) };
    let Ok(text) = bytes.to_str() else {
        return fail(TmpStatus::InvalidUtf8, "instance text is not valid UTF-8");
    };
    match parse_instance(text) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(TmpInstance { inner })) };
            TmpStatus::Ok
        }
        Err(err) => fail(TmpStatus::InvalidInstance, err),
    }
}

/// Builds an instance from `n` per-railcar destination labels in `1..=t`
/// and stores a handle in `*out`.
///
/// # Safety
/// `labels` must point to `n` readable `uint32_t` values and `out` to
/// writable memory for one pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_instance_from_destinations(
    t: u32,
    labels: *const u32,
    n: usize,
    out: *mut *mut TmpInstance,
) -> TmpStatus {
    if labels.is_null() || out.is_null() {
        return fail(TmpStatus::NullArgument, "labels and out must be non-null");
    }
    let labels = unsafe { std::slice::from_raw_parts(labels, n) };
    match Instance::from_destinations(t, labels) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(TmpInstance { inner })) };
            TmpStatus::Ok
        }
        Err(err) => fail(TmpStatus::InvalidInstance, err),
    }
}

/// Releases an instance handle. Null is ignored.
///
/// # Safety
/// `inst` must be null or a pointer returned by a `tmp_instance_*`
/// constructor that has not been freed yet.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_instance_free(inst: *mut TmpInstance) {
    if !inst.is_null() {
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// Number of railcars, or 0 on a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_instance_car_count(inst: *const TmpInstance) -> u32 {
    unsafe { inst.as_ref() }.map_or(0, |i| i.inner.n())
}

/// Number of destinations, or 0 on a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_instance_destination_count(inst: *const TmpInstance) -> u32 {
    unsafe { inst.as_ref() }.map_or(0, |i| i.inner.t())
}

/// A-priori upper bound `min(t, ceil(n/4 + 1/2))` on the optimal track
/// count, or 0 on a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_instance_upper_bound(inst: *const TmpInstance) -> u32 {
    unsafe { inst.as_ref() }.map_or(0, |i| upper_bound(&i.inner))
}

/// Solves an instance and stores a solution handle in `*out`.
///
/// With `apply_shrink` the optimum-preserving run-collapsing preprocessing
/// runs first; the solution is still reported in the original railcar
/// numbering. [`TmpMethod::Oracle`] refuses instances with more than 8
/// destinations.
///
/// # Safety
/// `inst` must be a live instance handle, `out` writable memory for one
/// pointer, and `method` a declared enumerator.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_solve(
    inst: *const TmpInstance,
    method: TmpMethod,
    apply_shrink: bool,
    out: *mut *mut TmpSolution,
) -> TmpStatus {
    let Some(handle) = (unsafe { inst.as_ref() }) else {
        return fail(TmpStatus::NullArgument, "inst must be non-null");
    };
    if out.is_null() {
        return fail(TmpStatus::NullArgument, "out must be non-null");
    }
    let original = &handle.inner;
    let (reduced, report) = if apply_shrink {
        let (reduced, report) = shrink(original);
        (reduced, Some(report))
    } else {
        (original.clone(), None)
    };
    let (k_opt, order, tracks) = match method {
        TmpMethod::BottomUp => {
            let (result, _) = solve(&reduced, Method::BottomUp);
            (result.k_opt, result.order, result.track_of)
        }
        TmpMethod::Memoized => {
            let (result, _) = solve(&reduced, Method::Memoized);
            (result.k_opt, result.order, result.track_of)
        }
        TmpMethod::Oracle => match oracle_min(&reduced, DEFAULT_MAX_T) {
            Ok(result) => {
                let order = result.best_orders[0].clone();
                let sim =
                    simulate_order(&reduced, &order).expect("oracle orders are permutations");
                (result.k_opt, order, sim.track_of)
            }
            Err(err) => return fail(TmpStatus::OracleLimit, err),
        },
    };
    let tracks = match report {
        Some(report) => report.map_tracks(&tracks),
        None => tracks,
    };
    let solution = TmpSolution {
        k_opt,
        order: order.iter().map(|&id| u32::from(id) + 1).collect(),
        tracks,
    };
    unsafe { *out = Box::into_raw(Box::new(solution)) };
    TmpStatus::Ok
}

/// Minimum number of classification tracks, or 0 on a null handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_solution_k_opt(sol: *const TmpSolution) -> u32 {
    unsafe { sol.as_ref() }.map_or(0, |s| s.k_opt)
}

/// Copies the optimal block order (1-based destination labels) into `buf`
/// and returns the full order length `t`. At most `cap` labels are written;
/// call with `cap = 0` to query the length.
///
/// # Safety
/// `sol` must be a live solution handle and `buf` must point to `cap`
/// writable `uint32_t` values (it may be null when `cap` is 0).
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_solution_order(
    sol: *const TmpSolution,
    buf: *mut u32,
    cap: usize,
) -> usize {
    let Some(sol) = (unsafe { sol.as_ref() }) else {
        return 0;
    };
    unsafe { copy_prefix(&sol.order, buf, cap) };
    sol.order.len()
}

/// Copies the per-railcar track assignment (1-based tracks, original railcar
/// numbering) into `buf` and returns the full length `n`. At most `cap`
/// entries are written; call with `cap = 0` to query the length.
///
/// # Safety
/// `sol` must be a live solution handle and `buf` must point to `cap`
/// writable `uint32_t` values (it may be null when `cap` is 0).
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_solution_tracks(
    sol: *const TmpSolution,
    buf: *mut u32,
    cap: usize,
) -> usize {
    let Some(sol) = (unsafe { sol.as_ref() }) else {
        return 0;
    };
    unsafe { copy_prefix(&sol.tracks, buf, cap) };
    sol.tracks.len()
}

/// Releases a solution handle. Null is ignored.
///
/// # Safety
/// `sol` must be null or a pointer returned by [`tmp_solve`] that has not
/// been freed yet.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn tmp_solution_free(sol: *mut TmpSolution) {
    if !sol.is_null() {
        drop(unsafe { Box::from_raw(sol) });
    }
}

unsafe fn copy_prefix(values: &[u32], buf: *mut u32, cap: usize) {
    let len = values.len().min(cap);
    if len > 0 && !buf.is_null() {
        unsafe { std::ptr::copy_nonoverlapping(values.as_ptr(), buf, len) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn parse(text: &str) -> *mut TmpInstance {
        let c = CString::new(text).unwrap();
        let mut handle: *mut TmpInstance = ptr::null_mut();
        let status = unsafe { tmp_instance_parse(c.as_ptr(), &mut handle) };
        assert_eq!(status, TmpStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    fn last_error() -> String {
        let ptr = tmp_last_error_message();
        assert!(!ptr.is_null());
        unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
    }

    #[test]
    fn parse_solve_roundtrip() {
        let inst = parse("9 3\n1 2 1 3 1 2 3 2 3\n");
        unsafe {
            assert_eq!(tmp_instance_car_count(inst), 9);
            assert_eq!(tmp_instance_destination_count(inst), 3);
            assert_eq!(tmp_instance_upper_bound(inst), 3);

            for method in [TmpMethod::BottomUp, TmpMethod::Memoized, TmpMethod::Oracle] {
                let mut sol: *mut TmpSolution = ptr::null_mut();
                assert_eq!(tmp_solve(inst, method, true, &mut sol), TmpStatus::Ok);
                assert_eq!(tmp_solution_k_opt(sol), 2);

                let mut order = vec![0u32; tmp_solution_order(sol, ptr::null_mut(), 0)];
                assert_eq!(tmp_solution_order(sol, order.as_mut_ptr(), order.len()), 3);
                assert_eq!(order, vec![1, 2, 3]);

                let mut tracks = vec![0u32; tmp_solution_tracks(sol, ptr::null_mut(), 0)];
                assert_eq!(tmp_solution_tracks(sol, tracks.as_mut_ptr(), tracks.len()), 9);
                assert_eq!(tracks, vec![1, 2, 1, 2, 1, 1, 2, 1, 2]);

                tmp_solution_free(sol);
            }
            tmp_instance_free(inst);
        }
    }

    #[test]
    fn shrink_keeps_original_numbering() {
        // Runs collapse to one representative; the track list still covers
        // all five original railcars, run members sharing a track.
        let inst = parse("5 2\n1 1 2 2 1\n");
        unsafe {
            let mut sol: *mut TmpSolution = ptr::null_mut();
            assert_eq!(
                tmp_solve(inst, TmpMethod::Memoized, true, &mut sol),
                TmpStatus::Ok
            );
            let mut tracks = vec![0u32; 5];
            assert_eq!(tmp_solution_tracks(sol, tracks.as_mut_ptr(), 5), 5);
            assert_eq!(tracks[0], tracks[1]);
            assert_eq!(tracks[2], tracks[3]);
            tmp_solution_free(sol);
            tmp_instance_free(inst);
        }
    }

    #[test]
    fn from_destinations_validates() {
        let labels = [1u32, 1, 1];
        let mut handle: *mut TmpInstance = ptr::null_mut();
        let status =
            unsafe { tmp_instance_from_destinations(2, labels.as_ptr(), 3, &mut handle) };
        assert_eq!(status, TmpStatus::InvalidInstance);
        assert!(handle.is_null());
        assert_eq!(last_error(), "destination 2 is never used");
    }

    #[test]
    fn parse_reports_diagnostics() {
        let c = CString::new("3 2\n1 x 2\n").unwrap();
        let mut handle: *mut TmpInstance = ptr::null_mut();
        let status = unsafe { tmp_instance_parse(c.as_ptr(), &mut handle) };
        assert_eq!(status, TmpStatus::InvalidInstance);
        assert!(last_error().contains("railcar 2"));
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            let mut handle: *mut TmpInstance = ptr::null_mut();
            assert_eq!(
                tmp_instance_parse(ptr::null(), &mut handle),
                TmpStatus::NullArgument
            );
            let mut sol: *mut TmpSolution = ptr::null_mut();
            assert_eq!(
                tmp_solve(ptr::null(), TmpMethod::Memoized, true, &mut sol),
                TmpStatus::NullArgument
            );
            assert_eq!(tmp_solution_k_opt(ptr::null()), 0);
            tmp_instance_free(ptr::null_mut());
            tmp_solution_free(ptr::null_mut());
        }
    }

    #[test]
    fn oracle_refuses_large_t() {
        let labels: Vec<u32> = (1..=9).collect();
        let mut inst: *mut TmpInstance = ptr::null_mut();
        unsafe {
            assert_eq!(
                tmp_instance_from_destinations(9, labels.as_ptr(), 9, &mut inst),
                TmpStatus::Ok
            );
            let mut sol: *mut TmpSolution = ptr::null_mut();
            assert_eq!(
                tmp_solve(inst, TmpMethod::Oracle, false, &mut sol),
                TmpStatus::OracleLimit
            );
            assert!(sol.is_null());
            // The dynamic programs handle it fine; nine singleton blocks in
            // arrival order are already grouped.
            assert_eq!(
                tmp_solve(inst, TmpMethod::Memoized, false, &mut sol),
                TmpStatus::Ok
            );
            assert_eq!(tmp_solution_k_opt(sol), 1);
            tmp_solution_free(sol);
            tmp_instance_free(inst);
        }
    }
}
