//! C interface to `tripletrep`.
//!
//! Representations are opaque `TrpRep` handles built from the same spec
//! strings the command line accepts. Every call returns a [`TrpStatus`];
//! on failure [`trp_last_error`] describes the problem. Strings handed out
//! by the library are released with [`trp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tripletrep::analysis::{census_report, AnalysisError};
use tripletrep::groups::GroupWord;
use tripletrep::suite::{census_by_name, run_suite, BuiltRep, Suite, SuiteError, SuiteSpec};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    InvalidWord = 4,
    InvalidConfig = 5,
    Failed = 6,
    Panic = 7,
}

/// A representation of a triplet-family group.
pub struct TrpRep {
    inner: BuiltRep,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(TrpStatus, String);

impl Failure {
    fn config(err: SuiteError) -> Self {
        let status = match &err {
            SuiteError::UnknownSuite(_) | SuiteError::InvalidConfig(_) => TrpStatus::InvalidConfig,
            SuiteError::Analysis(AnalysisError::Scalar(_)) => TrpStatus::InvalidConfig,
            SuiteError::BadRepSpec(_) => TrpStatus::InvalidSpec,
            SuiteError::Analysis(_) => TrpStatus::Failed,
        };
        Failure(status, err.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TrpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TrpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TrpStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TrpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(TrpStatus::Failed, "output contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(TrpStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

/// Builds a representation from a spec such as `"mu:n=3,k=1"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn trp_rep_new(spec: *const c_char, out: *mut *mut TrpRep) -> TrpStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let spec = read_str(spec, "spec")?;
        let inner = BuiltRep::from_spec(spec)
            .map_err(|e| Failure(TrpStatus::InvalidSpec, e.to_string()))?;
        *out = Box::into_raw(Box::new(TrpRep { inner }));
        Ok(())
    })
}

/// # Safety
/// `rep` must come from [`trp_rep_new`] and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn trp_rep_free(rep: *mut TrpRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Size of the matrices (or rank of the free group) the representation acts on.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trp_rep_dimension(rep: *const TrpRep, out: *mut usize) -> TrpStatus {
    guard(|| {
        check_out(out)?;
        let rep = rep
            .as_ref()
            .ok_or_else(|| Failure(TrpStatus::NullPointer, "rep is null".into()))?;
        *out = rep.inner.dimension();
        Ok(())
    })
}

/// Image of a word such as `"l1 r2^-1 (l1 l2)^3"`, one matrix row per line.
///
/// # Safety
/// `rep` must be a live handle, `word` nul-terminated and `out` writable.
/// The string written to `out` is released with [`trp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn trp_rep_eval(
    rep: *const TrpRep,
    word: *const c_char,
    out: *mut *mut c_char,
) -> TrpStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let rep = rep
            .as_ref()
            .ok_or_else(|| Failure(TrpStatus::NullPointer, "rep is null".into()))?;
        let word = read_str(word, "word")?;
        let w = GroupWord::parse(word).map_err(|e| Failure(TrpStatus::InvalidWord, e.to_string()))?;
        let text = rep.inner.eval(&w).map_err(|e| match e {
            SuiteError::Analysis(AnalysisError::Group(g)) => Failure(TrpStatus::InvalidWord, g.to_string()),
            other => Failure(TrpStatus::Failed, other.to_string()),
        })?;
        write_string(out, text)
    })
}

/// Counts the defining relations of the representation's group and how
/// many of them hold.
///
/// # Safety
/// `rep` must be a live handle; `passed` and `total` writable.
#[no_mangle]
pub unsafe extern "C" fn trp_rep_check_relations(
    rep: *const TrpRep,
    passed: *mut usize,
    total: *mut usize,
) -> TrpStatus {
    guard(|| {
        check_out(passed)?;
        check_out(total)?;
        let rep = rep
            .as_ref()
            .ok_or_else(|| Failure(TrpStatus::NullPointer, "rep is null".into()))?;
        let checks = rep
            .inner
            .relations()
            .map_err(|e| Failure(TrpStatus::Failed, e.to_string()))?;
        *passed = checks.iter().filter(|c| c.passed).count();
        *total = checks.len();
        Ok(())
    })
}

/// Runs a named suite and writes its JSON report. `n_min = n_max = 0`
/// keeps the suite's default range.
///
/// # Safety
/// `suite` must be nul-terminated and `out` writable. The string written to
/// `out` is released with [`trp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn trp_run_suite(
    suite: *const c_char,
    n_min: usize,
    n_max: usize,
    all_passed: *mut bool,
    out: *mut *mut c_char,
) -> TrpStatus {
    guard(|| {
        check_out(out)?;
        check_out(all_passed)?;
        *out = ptr::null_mut();
        let name = read_str(suite, "suite")?;
        let suite: Suite = name.parse().map_err(Failure::config)?;
        let mut spec = SuiteSpec::new(suite);
        if (n_min, n_max) != (0, 0) {
            spec.n_range = Some((n_min, n_max));
        }
        let report = run_suite(&spec).map_err(Failure::config)?;
        *all_passed = report.all_passed();
        write_string(out, report.to_json())
    })
}

/// Exhaustive census over `F_p` (`kind` is triplet, virtual, welded or l3),
/// written as a JSON report.
///
/// # Safety
/// `kind` must be nul-terminated and `out` writable. The string written to
/// `out` is released with [`trp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn trp_census(
    kind: *const c_char,
    p: u32,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> TrpStatus {
    guard(|| {
        check_out(out)?;
        check_out(passed)?;
        *out = ptr::null_mut();
        let kind = read_str(kind, "kind")?;
        let census = census_by_name(kind, p).map_err(Failure::config)?;
        let report = census_report(&census).map_err(|e| Failure::config(e.into()))?;
        *passed = report.passed();
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure(TrpStatus::Failed, e.to_string()))?;
        write_string(out, json)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn trp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn trp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn trp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
