//! C ABI over the ideal-arithmetic library. A session wraps one
//! parsed problem document; every other call borrows a session,
//! returns a status code, and reports through JSON strings the
//! caller frees with `nb_string_free`.
//!
//! Conventions:
//! - Checks return `Ok` when the property holds and `CheckFailed`
//!   when it does not or is inconclusive; the JSON report carries the
//!   verdict and witness either way.
//! - Any other status means no report was produced; `nb_last_error`
//!   returns a message for the most recent failure on this thread.
//! - Output strings and sessions are owned by the caller once
//!   returned; pointers passed in are never retained.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nashblow::checks::{
    check_divisibility, check_main_equality, check_thm12, check_thm14, nash_chain,
    section1_identity_check, toy_check, CheckVerdict, DEFAULT_ALPHA_MAX, DEFAULT_MAX_STEPS,
    DEFAULT_N_MAX,
};
use nashblow::error::Error;
use nashblow::jideal::{j_ideal, m_ideal, DEFAULT_DET_CAP};
use nashblow::problem::Problem;
use nashblow::variety::{derivation_validate, foliation_validate};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NbStatus {
    /// The call succeeded; for checks, the property holds.
    Ok = 0,
    /// The check ran and the property fails or is inconclusive; the
    /// JSON report has the details.
    CheckFailed = 1,
    /// The input was rejected; `nb_last_error` explains why.
    InvalidInput = 2,
    /// A required pointer argument was null.
    NullArgument = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
    /// An internal invariant failed; the library state is unharmed
    /// but the call produced nothing.
    Internal = 5,
}

/// One loaded problem document plus the candidate cap used by
/// operator applications. Opaque to C.
pub struct NbSession {
    problem: Problem,
    cap: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn error_status(e: &Error) -> NbStatus {
    set_error(&e.to_string());
    NbStatus::InvalidInput
}

/// Message for the most recent failure on the calling thread. The
/// pointer stays valid until the next failing call on this thread;
/// do not free it.
#[no_mangle]
pub extern "C" fn nb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned through an out parameter. Null is allowed.
#[no_mangle]
pub extern "C" fn nb_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe {
            drop(CString::from_raw(s));
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, NbStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(NbStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        NbStatus::InvalidUtf8
    })
}

unsafe fn read_session<'a>(p: *const NbSession) -> Result<&'a NbSession, NbStatus> {
    if p.is_null() {
        set_error("null session argument");
        return Err(NbStatus::NullArgument);
    }
    Ok(&*p)
}

/// Writes `text` through `out` as a fresh C string; a null `out`
/// discards the report and is not an error.
fn emit(out: *mut *mut c_char, text: String) -> Result<(), NbStatus> {
    if out.is_null() {
        return Ok(());
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe {
                *out = c.into_raw();
            }
            Ok(())
        }
        Err(_) => {
            set_error("report contains an interior NUL byte");
            Err(NbStatus::Internal)
        }
    }
}

/// Runs a body that can panic; panics become `Internal` so unwinding
/// never crosses the ABI boundary.
fn guarded<F: FnOnce() -> NbStatus>(body: F) -> NbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            NbStatus::Internal
        }
    }
}

fn verdict_status(v: &CheckVerdict) -> NbStatus {
    if v.holds {
        NbStatus::Ok
    } else {
        NbStatus::CheckFailed
    }
}

fn emit_verdict(
    res: nashblow::Result<CheckVerdict>,
    cap: usize,
    out: *mut *mut c_char,
) -> NbStatus {
    match res {
        Ok(v) => {
            let text = serde_json::to_string(&v).expect("verdict serializes");
            match emit(out, text) {
                Ok(()) => verdict_status(&v),
                Err(s) => s,
            }
        }
        Err(Error::CapExceeded { .. }) => {
            let text = serde_json::json!({
                "holds": false,
                "caps_hit": true,
                "note": format!("candidate cap {cap} exceeded; verdict unavailable"),
            })
            .to_string();
            match emit(out, text) {
                Ok(()) => NbStatus::CheckFailed,
                Err(s) => s,
            }
        }
        Err(e) => error_status(&e),
    }
}

/// Parses a problem document (the same JSON the CLI reads) into a new
/// session with the default candidate cap. On success the caller owns
/// the session and must release it with `nb_session_free`.
#[no_mangle]
pub extern "C" fn nb_session_new(
    doc_json: *const c_char,
    out_session: *mut *mut NbSession,
) -> NbStatus {
    guarded(|| {
        if out_session.is_null() {
            set_error("null out_session argument");
            return NbStatus::NullArgument;
        }
        let text = match unsafe { read_str(doc_json) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Problem::from_str(text) {
            Ok(problem) => {
                let boxed = Box::new(NbSession { problem, cap: DEFAULT_DET_CAP });
                unsafe {
                    *out_session = Box::into_raw(boxed);
                }
                NbStatus::Ok
            }
            Err(e) => error_status(&e),
        }
    })
}

/// Releases a session. Null is allowed.
#[no_mangle]
pub extern "C" fn nb_session_free(session: *mut NbSession) {
    if !session.is_null() {
        unsafe {
            drop(Box::from_raw(session));
        }
    }
}

/// Caps the number of candidate generators an operator application
/// may enumerate; calls that would exceed it report `CheckFailed`
/// with a caps_hit note instead of running forever.
#[no_mangle]
pub extern "C" fn nb_session_set_cap(session: *mut NbSession, cap: usize) -> NbStatus {
    guarded(|| {
        if session.is_null() {
            set_error("null session argument");
            return NbStatus::NullArgument;
        }
        if cap == 0 {
            set_error("cap must be at least 1");
            return NbStatus::InvalidInput;
        }
        unsafe {
            (*session).cap = cap;
        }
        NbStatus::Ok
    })
}

/// Checks tangency of every derivation and validity of the foliation.
/// `Ok` means everything passed; `CheckFailed` means the report lists
/// at least one failing property.
#[no_mangle]
pub extern "C" fn nb_validate(
    session: *const NbSession,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let p = &s.problem;
        let mut tangent = serde_json::Map::new();
        let mut all_tangent = true;
        let mut members_tangent = true;
        for name in p.derivation_names() {
            let d = match p.derivation(name) {
                Ok(d) => d,
                Err(e) => return error_status(&e),
            };
            let ok = match derivation_validate(p.ctx(), d) {
                Ok(ok) => ok,
                Err(e) => return error_status(&e),
            };
            all_tangent &= ok;
            if !ok && p.foliation_names().iter().any(|n| n == name) {
                members_tangent = false;
            }
            tangent.insert(name.to_string(), serde_json::Value::Bool(ok));
        }
        let fol = match p.foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let (generic_rank, lie_closure) = if members_tangent {
            match foliation_validate(p.ctx(), &fol) {
                Ok(rep) => (rep.generic_rank, rep.lie_closure),
                Err(e) => return error_status(&e),
            }
        } else {
            (false, false)
        };
        let valid = members_tangent && generic_rank && lie_closure;
        let text = serde_json::json!({
            "tangent": tangent,
            "generic_rank": generic_rank,
            "lie_closure": lie_closure,
            "valid": valid,
        })
        .to_string();
        match emit(out_json, text) {
            Ok(()) => {
                if valid && all_tangent {
                    NbStatus::Ok
                } else {
                    NbStatus::CheckFailed
                }
            }
            Err(st) => st,
        }
    })
}

fn basis_json(p: &Problem, h: &nashblow::groebner::IdealHandle) -> String {
    serde_json::json!({ "basis": p.basis_texts(h) }).to_string()
}

/// Applies the derivative-ideal operator to a named ideal; the report
/// is the canonical basis of the result.
#[no_mangle]
pub extern "C" fn nb_j_ideal(
    session: *const NbSession,
    ideal_name: *const c_char,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let name = match unsafe { read_str(ideal_name) } {
            Ok(n) => n,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let h = match p.ideal(name) {
            Ok(h) => h,
            Err(e) => return error_status(&e),
        };
        match j_ideal(p.ctx(), &h, &fol, s.cap) {
            Ok(result) => match emit(out_json, basis_json(p, &result)) {
                Ok(()) => NbStatus::Ok,
                Err(st) => st,
            },
            Err(Error::CapExceeded { .. }) => {
                set_error(&format!("candidate cap {} exceeded; basis unavailable", s.cap));
                NbStatus::CheckFailed
            }
            Err(e) => error_status(&e),
        }
    })
}

/// Applies the pure determinant operator to a named generator
/// sequence; the report is the canonical basis of the result.
#[no_mangle]
pub extern "C" fn nb_m_ideal(
    session: *const NbSession,
    ideal_name: *const c_char,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let name = match unsafe { read_str(ideal_name) } {
            Ok(n) => n,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let seq = match p.sequence(name) {
            Ok(q) => q,
            Err(e) => return error_status(&e),
        };
        match m_ideal(p.ctx(), &seq, &fol) {
            Ok(result) => match emit(out_json, basis_json(p, &result)) {
                Ok(()) => NbStatus::Ok,
                Err(st) => st,
            },
            Err(e) => error_status(&e),
        }
    })
}

/// Runs the rank-one cross-product criterion for a named derivation.
#[no_mangle]
pub extern "C" fn nb_toy_check(
    session: *const NbSession,
    derivation_name: *const c_char,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let name = match unsafe { read_str(derivation_name) } {
            Ok(n) => n,
            Err(st) => return st,
        };
        let p = &s.problem;
        let d = match p.derivation(name) {
            Ok(d) => d,
            Err(e) => return error_status(&e),
        };
        match derivation_validate(p.ctx(), d) {
            Ok(true) => {}
            Ok(false) => {
                set_error(&format!("derivation `{name}` is not tangent to the variety"));
                return NbStatus::InvalidInput;
            }
            Err(e) => return error_status(&e),
        }
        emit_verdict(toy_check(p.ctx(), d), s.cap, out_json)
    })
}

/// Product law: I^(r+1) * op(J) sits inside op(I*J).
#[no_mangle]
pub extern "C" fn nb_check_thm12(
    session: *const NbSession,
    i_name: *const c_char,
    j_name: *const c_char,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let (i, j) = match unsafe { (read_str(i_name), read_str(j_name)) } {
            (Ok(i), Ok(j)) => (i, j),
            (Err(st), _) | (_, Err(st)) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let (a, b) = match (p.ideal(i), p.ideal(j)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return error_status(&e),
        };
        emit_verdict(check_thm12(p.ctx(), &a, &b, &fol, s.cap), s.cap, out_json)
    })
}

/// Power law: op(I^N) equals I^((N-1)(r+1)) * op(I).
#[no_mangle]
pub extern "C" fn nb_check_thm14(
    session: *const NbSession,
    ideal_name: *const c_char,
    n: u32,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let name = match unsafe { read_str(ideal_name) } {
            Ok(n) => n,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let h = match p.ideal(name) {
            Ok(h) => h,
            Err(e) => return error_status(&e),
        };
        emit_verdict(check_thm14(p.ctx(), &h, n, &fol, s.cap), s.cap, out_json)
    })
}

/// Scaled-equality scan with `max_n` as the largest exponent; pass 0
/// to use the default bound.
#[no_mangle]
pub extern "C" fn nb_check_main(
    session: *const NbSession,
    ideal_name: *const c_char,
    max_n: u32,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let name = match unsafe { read_str(ideal_name) } {
            Ok(n) => n,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let h = match p.ideal(name) {
            Ok(h) => h,
            Err(e) => return error_status(&e),
        };
        let bound = if max_n == 0 { DEFAULT_N_MAX } else { max_n };
        emit_verdict(check_main_equality(p.ctx(), &h, &fol, bound, s.cap), s.cap, out_json)
    })
}

/// Bounded search for a fractional S with S * op(I) = I^alpha; pass 0
/// to use the default bound.
#[no_mangle]
pub extern "C" fn nb_check_divides(
    session: *const NbSession,
    ideal_name: *const c_char,
    max_alpha: u32,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let name = match unsafe { read_str(ideal_name) } {
            Ok(n) => n,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let h = match p.ideal(name) {
            Ok(h) => h,
            Err(e) => return error_status(&e),
        };
        let bound = if max_alpha == 0 { DEFAULT_ALPHA_MAX } else { max_alpha };
        emit_verdict(check_divisibility(p.ctx(), &h, &fol, bound, s.cap), s.cap, out_json)
    })
}

/// Telescoped identity across chain steps i, i+1, i+2; `n` must be at
/// least the foliation rank plus 2.
#[no_mangle]
pub extern "C" fn nb_check_identity(
    session: *const NbSession,
    i: usize,
    n: u32,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let chain = match nash_chain(p.ctx(), &fol, i + 2, 0, true, s.cap) {
            Ok(c) => c,
            Err(e) => return error_status(&e),
        };
        if chain.truncated && !chain.steps.iter().any(|st| st.index == i) {
            set_error(&format!(
                "candidate cap {} exceeded before chain step {i}; verdict unavailable",
                s.cap
            ));
            return NbStatus::CheckFailed;
        }
        emit_verdict(
            section1_identity_check(p.ctx(), &chain, i, n, &fol, s.cap),
            s.cap,
            out_json,
        )
    })
}

/// Iterates the ideal chain, scanning for the termination equality at
/// every step. Pass 0 for either bound to use its default. `Ok` means
/// the chain terminated within the step bound.
#[no_mangle]
pub extern "C" fn nb_chain(
    session: *const NbSession,
    max_steps: usize,
    max_n: u32,
    continue_past_success: bool,
    out_json: *mut *mut c_char,
) -> NbStatus {
    guarded(|| {
        let s = match unsafe { read_session(session) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let p = &s.problem;
        let fol = match p.validated_foliation() {
            Ok(f) => f,
            Err(e) => return error_status(&e),
        };
        let steps = if max_steps == 0 { DEFAULT_MAX_STEPS } else { max_steps };
        let bound = if max_n == 0 { DEFAULT_N_MAX } else { max_n };
        let rep = match nash_chain(p.ctx(), &fol, steps, bound, continue_past_success, s.cap) {
            Ok(r) => r,
            Err(e) => return error_status(&e),
        };
        let text = serde_json::json!({
            "steps": rep
                .steps
                .iter()
                .map(|st| {
                    serde_json::json!({
                        "index": st.index,
                        "ideal": p.basis_texts(&st.ideal),
                        "derived": p.basis_texts(&st.derived),
                        "equality": st.equality_verdicts,
                        "smallest_passing_n": st.smallest_passing_n,
                    })
                })
                .collect::<Vec<_>>(),
            "terminated_at": rep.terminated_at,
            "truncated": rep.truncated,
        })
        .to_string();
        match emit(out_json, text) {
            Ok(()) => {
                if rep.terminated_at.is_some() {
                    NbStatus::Ok
                } else {
                    NbStatus::CheckFailed
                }
            }
            Err(st) => st,
        }
    })
}
