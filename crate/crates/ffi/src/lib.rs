//! C ABI over `coopkit`.
//!
//! Every entry point returns a [`CkStatus`]. Objects cross the boundary as
//! opaque handles owned by the caller and released with the matching
//! `*_free`; strings returned through `char **` are released with
//! [`ck_string_free`]. After a non-`CK_STATUS_OK` status,
//! [`ck_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coopkit::algebra::{check_sequent, eval_formula, Assignment, Model};
use coopkit::eqchain::{chain_to_json, translate_proof};
use coopkit::kernel::{check_proof, proof_from_json, LogicId, Proof};
use coopkit::pl::{decide_universal, parse_matrix, Ambient};
use coopkit::syntax::{parse_formula, parse_sequent, render_formula, Formula, Sequent};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CkStatus {
    /// The call succeeded and the answer is affirmative.
    Ok = 0,
    /// The call succeeded and the answer is negative: a proof is rejected,
    /// a sequent fails, a sentence has a countermodel.
    Negative = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Internal = 4,
}

/// A parsed formula or sequent.
pub struct CkFormula {
    inner: Parsed,
}

enum Parsed {
    Formula(Formula),
    Sequent(Sequent),
}

pub struct CkProof {
    inner: Proof,
}

pub struct CkModel {
    inner: Model,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Fail(CkStatus, String);

fn invalid(e: impl ToString) -> Fail {
    Fail(CkStatus::InvalidInput, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<CkStatus, Fail>) -> CkStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            CkStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CkStatus::NullPointer, format!("{what} is null")))
}

unsafe fn emit<T>(out: *mut *mut T, value: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CkStatus::NullPointer, "output pointer is null".into()));
    }
    *out = value;
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CkStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(invalid)?.into_raw();
    Ok(())
}

/// The message for the last failed call on this thread, or an empty
/// string. Owned by the library; valid until the next call.
#[no_mangle]
pub extern "C" fn ck_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a formula, or a sequent when `src` contains `|-`.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_formula_parse(src: *const c_char, out: *mut *mut CkFormula) -> CkStatus {
    guard(|| {
        let t = text(src, "text")?;
        let inner = if t.contains("|-") {
            Parsed::Sequent(parse_sequent(t).map_err(invalid)?)
        } else {
            Parsed::Formula(parse_formula(t).map_err(invalid)?)
        };
        emit(out, Box::into_raw(Box::new(CkFormula { inner })))?;
        Ok(CkStatus::Ok)
    })
}

/// Renders a parsed formula or sequent in normal form.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_formula_render(f: *const CkFormula, out: *mut *mut c_char) -> CkStatus {
    guard(|| {
        let s = match &handle(f, "formula")?.inner {
            Parsed::Formula(f) => render_formula(f),
            Parsed::Sequent(s) => s.to_string(),
        };
        emit_string(out, s)?;
        Ok(CkStatus::Ok)
    })
}

/// # Safety
/// `f` is null or a live handle from [`ck_formula_parse`].
#[no_mangle]
pub unsafe extern "C" fn ck_formula_free(f: *mut CkFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Reads a proof in the JSON proof format.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_proof_from_json(json: *const c_char, out: *mut *mut CkProof) -> CkStatus {
    guard(|| {
        let p = proof_from_json(text(json, "json")?).map_err(invalid)?;
        emit(out, Box::into_raw(Box::new(CkProof { inner: p })))?;
        Ok(CkStatus::Ok)
    })
}

/// `CK_STATUS_OK` when the proof checks in `logic` (e.g. `"CLc"`),
/// `CK_STATUS_NEGATIVE` when it is rejected.
///
/// # Safety
/// `p` is a live handle; `logic` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ck_proof_check(p: *const CkProof, logic: *const c_char) -> CkStatus {
    guard(|| {
        let p = handle(p, "proof")?;
        let name = text(logic, "logic")?;
        let l = LogicId::parse(name).ok_or_else(|| invalid(format!("unknown logic `{name}`")))?;
        let r = check_proof(&p.inner, l);
        if r.ok {
            return Ok(CkStatus::Ok);
        }
        let why: Vec<String> = r.failures.iter().map(|f| format!("{:?}: {}", f.path, f.reason)).collect();
        Err(Fail(CkStatus::Negative, why.join("; ")))
    })
}

/// The conclusion of the proof as a sequent string.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_proof_conclusion(p: *const CkProof, out: *mut *mut c_char) -> CkStatus {
    guard(|| {
        emit_string(out, handle(p, "proof")?.inner.conclusion().to_string())?;
        Ok(CkStatus::Ok)
    })
}

/// Translates an LLu proof into an equational chain, written as chain JSON.
/// `CK_STATUS_NEGATIVE` when the proof is outside the translatable fragment.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_proof_translate(p: *const CkProof, out: *mut *mut c_char) -> CkStatus {
    guard(|| {
        match translate_proof(&handle(p, "proof")?.inner) {
            Ok(c) => emit_string(out, chain_to_json(&c))?,
            Err(e) => return Err(Fail(CkStatus::Negative, e.to_string())),
        }
        Ok(CkStatus::Ok)
    })
}

/// # Safety
/// `p` is null or a live handle from [`ck_proof_from_json`].
#[no_mangle]
pub unsafe extern "C" fn ck_proof_free(p: *mut CkProof) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds a model from a spec such as `"dyadic-capped:1"`, `"luk:3"` or
/// `"godel:4"`, or from algebra JSON when `spec` starts with `{`.
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_model_new(spec: *const c_char, out: *mut *mut CkModel) -> CkStatus {
    guard(|| {
        let s = text(spec, "spec")?;
        let m = if s.trim_start().starts_with('{') {
            Model::from_json(s)
        } else {
            Model::from_spec(s)
        }
        .map_err(invalid)?;
        emit(out, Box::into_raw(Box::new(CkModel { inner: m })))?;
        Ok(CkStatus::Ok)
    })
}

/// Evaluates a formula at `assignment` (`"P=1/2,Q=1/4"`) and writes the
/// value. For a sequent, writes `"1"` or `"0"` and returns
/// `CK_STATUS_NEGATIVE` when it fails.
///
/// # Safety
/// `m` and `f` are live handles; `assignment` is a NUL-terminated string
/// or null for the empty assignment; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_model_eval(
    m: *const CkModel,
    f: *const CkFormula,
    assignment: *const c_char,
    out: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let m = &handle(m, "model")?.inner;
        let f = handle(f, "formula")?;
        let spec = if assignment.is_null() { "" } else { text(assignment, "assignment")? };
        let mut asg = Assignment::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| invalid(format!("bad assignment `{part}`")))?;
            asg.insert(k.trim().to_string(), m.parse_value(v.trim()).map_err(invalid)?);
        }
        match &f.inner {
            Parsed::Formula(f) => {
                emit_string(out, eval_formula(f, &asg, m).map_err(invalid)?.to_string())?;
                Ok(CkStatus::Ok)
            }
            Parsed::Sequent(s) => {
                let holds = check_sequent(s, &asg, m).map_err(invalid)?;
                emit_string(out, if holds { "1" } else { "0" }.to_string())?;
                Ok(if holds { CkStatus::Ok } else { CkStatus::Negative })
            }
        }
    })
}

/// # Safety
/// `m` is null or a live handle from [`ck_model_new`].
#[no_mangle]
pub unsafe extern "C" fn ck_model_free(m: *mut CkModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Decides the universal closure of `matrix` (e.g. `"x + y = x => y = 0"`)
/// over `ambient` (`"nonneg"`, `"interval"` or `"wajsberg"`). Writes the
/// verdict as JSON, with exact fractions in any countermodel; returns
/// `CK_STATUS_NEGATIVE` when there is a countermodel.
///
/// # Safety
/// `matrix` and `ambient` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ck_decide(matrix: *const c_char, ambient: *const c_char, out: *mut *mut c_char) -> CkStatus {
    guard(|| {
        let m = parse_matrix(text(matrix, "matrix")?).map_err(invalid)?;
        let a = text(ambient, "ambient")?;
        let ambients = Ambient::parse_set(a).ok_or_else(|| invalid(format!("unknown ambient `{a}`")))?;
        let v = decide_universal(&m, &ambients).map_err(invalid)?;
        emit_string(out, v.to_json().to_string())?;
        Ok(if v.is_valid() { CkStatus::Ok } else { CkStatus::Negative })
    })
}

/// The library version, statically allocated.
#[no_mangle]
pub extern "C" fn ck_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr().cast()
}
