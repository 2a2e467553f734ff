//! C interface to `vpcp`.
//!
//! Every function returns a [`VpcpStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function. After a non-zero status, `vpcp_last_error` describes the
//! failure on the calling thread.
//!
//! # Safety
//!
//! String arguments must be NUL-terminated. Out pointers must be null or
//! valid for writes. Handles must come from this library and be freed once.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vpcp::gf::Field;
use vpcp::harness::{self, ExperimentConfig, HarnessError};
use vpcp::variety::{GrobnerSet, Variety};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VpcpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    /// An exhaustive run was requested over a space larger than its budget.
    Infeasible = 4,
    /// The experiment ran but its pass criterion failed.
    AssertionFailed = 5,
    Internal = 6,
    Panic = 7,
}

/// A variety together with its Grobner generating set.
pub struct VpcpVariety {
    variety: Variety,
    grobner: GrobnerSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn harness_status(e: &HarnessError) -> VpcpStatus {
    match e {
        HarnessError::Infeasible { .. } => VpcpStatus::Infeasible,
        HarnessError::Assertion(_) => VpcpStatus::AssertionFailed,
        HarnessError::Internal(_) => VpcpStatus::Internal,
        _ => VpcpStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (VpcpStatus, String)>) -> VpcpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VpcpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside vpcp");
            VpcpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VpcpStatus, String)> {
    if p.is_null() {
        return Err((VpcpStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (VpcpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), (VpcpStatus, String)> {
    if p.is_null() {
        return Err((VpcpStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

fn harness_err(e: HarnessError) -> (VpcpStatus, String) {
    (harness_status(&e), e.to_string())
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`) and returns the full message length.
#[no_mangle]
pub unsafe extern "C" fn vpcp_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let bytes = e.borrow();
        let bytes = bytes.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds a variety over `F_q` from a spec such as `ball1:n=3` or
/// `cube:H=0,1;m=2`.
#[no_mangle]
pub unsafe extern "C" fn vpcp_variety_new(q: u32, spec: *const c_char, out: *mut *mut VpcpVariety) -> VpcpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let spec = str_arg(spec, "spec")?;
        let (variety, grobner) = harness::build_variety(q, spec).map_err(harness_err)?;
        *out = Box::into_raw(Box::new(VpcpVariety { variety, grobner }));
        Ok(())
    })
}

/// Releases a variety; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vpcp_variety_free(v: *mut VpcpVariety) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Ambient dimension, number of points, extension degree and Grobner
/// complexity. Any out pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn vpcp_variety_info(
    v: *const VpcpVariety,
    dim: *mut usize,
    size: *mut usize,
    extension_degree: *mut usize,
    grobner_complexity: *mut usize,
) -> VpcpStatus {
    guard(|| {
        let v = v.as_ref().ok_or((VpcpStatus::NullPointer, "variety is null".to_string()))?;
        for (p, x) in [
            (dim, v.variety.dim()),
            (size, v.variety.len()),
            (extension_degree, v.variety.extension_degree()),
            (grobner_complexity, v.grobner.len()),
        ] {
            if !p.is_null() {
                *p = x;
            }
        }
        Ok(())
    })
}

/// Generator `index` in text form; free the string with `vpcp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn vpcp_variety_generator(v: *const VpcpVariety, index: usize, out: *mut *mut c_char) -> VpcpStatus {
    guard(|| {
        out_arg(out, "out")?;
        let v = v.as_ref().ok_or((VpcpStatus::NullPointer, "variety is null".to_string()))?;
        let g = v
            .grobner
            .generators()
            .get(index)
            .ok_or((VpcpStatus::InvalidArgument, format!("generator index {index} out of range")))?;
        *out = CString::new(g.to_string()).expect("no NUL in polynomial text").into_raw();
        Ok(())
    })
}

/// Runs the JSON experiment config and returns the JSON report in `out`.
/// `timing = false` zeroes `elapsed_ms`. A report whose pass flag is false
/// is still returned, with status `AssertionFailed`.
#[no_mangle]
pub unsafe extern "C" fn vpcp_run_experiment(config_json: *const c_char, timing: bool, out: *mut *mut c_char) -> VpcpStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let text = str_arg(config_json, "config_json")?;
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| (VpcpStatus::InvalidArgument, format!("config: {e}")))?;
        let report = harness::run_experiment(&cfg, timing).map_err(harness_err)?;
        let json = serde_json::to_string(&report).map_err(|e| (VpcpStatus::Internal, e.to_string()))?;
        *out = CString::new(json).expect("no NUL in JSON").into_raw();
        if report.pass {
            Ok(())
        } else {
            Err((VpcpStatus::AssertionFailed, "experiment did not meet its pass criterion".into()))
        }
    })
}

/// Releases a string returned by this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vpcp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn field_arg(q: u32) -> Result<Field, (VpcpStatus, String)> {
    Field::new(q).map_err(|e| (VpcpStatus::InvalidArgument, e.to_string()))
}

/// Randomness bits for one zero-on-variety test over `F_q` with `m`
/// variables and `k` generators.
#[no_mangle]
pub unsafe extern "C" fn vpcp_zerotest_bits(q: u32, m: usize, k: usize, out: *mut u64) -> VpcpStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = harness::zerotest_bits(field_arg(q)?, m, k);
        Ok(())
    })
}

/// Randomness bits for `reps` repetitions of the 3-COLOR verifier, where `k`
/// and `k2` are the Grobner complexities of `V` and `V × V`.
#[no_mangle]
pub unsafe extern "C" fn vpcp_pcp_bits(q: u32, m: usize, k: usize, k2: usize, reps: usize, out: *mut u64) -> VpcpStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = harness::pcp_bits(field_arg(q)?, m, k, k2, reps);
        Ok(())
    })
}
