//! C bindings for the exact determinantal-representation library.
//!
//! Conventions shared by every binding:
//!
//! * Fallible functions return [`DetrepStatus`]; `DETREP_STATUS_OK` (0)
//!   signals success, and out-parameters are written only on success.
//! * Strings handed out through out-parameters (and by
//!   [`detrep_last_error_message`]) are NUL-terminated UTF-8 owned by the
//!   caller; release them with [`detrep_string_free`].
//! * On failure a thread-local message describes what went wrong;
//!   [`detrep_last_error_message`] retrieves a copy for the calling
//!   thread.
//! * Mathematical verdicts (definiteness, positivity, census counts) are
//!   carried inside the JSON payloads, never in the status code; the
//!   payloads match the schema files shipped with the core crate.

use detrep::cli::{self, CliError};
use detrep::field::Rational;
use detrep::poly::{parse_form, print_form, TernaryForm, XVARS};
use detrep::quartic::{dixon, quadratic_rep, LinearDetRep, OctadQuadruple, QuarticError};
use detrep::robinson::{det_rep, RobinsonError, TorsionTuple};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every fallible binding.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DetrepStatus {
    /// The call succeeded and out-parameters are populated.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An input failed to parse or violated a precondition.
    Parse = 3,
    /// A construction or certification could not be completed.
    Verify = 4,
    /// An unexpected internal failure.
    Internal = 5,
}

/// Opaque handle to an exact ternary form with rational coefficients.
pub struct DetrepForm(TernaryForm<Rational>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(sanitized).expect("NUL bytes stripped"));
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

/// Runs a binding body, converting any panic into `Internal` instead of
/// unwinding across the C boundary.
fn guarded<F: FnOnce() -> DetrepStatus>(body: F) -> DetrepStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic inside the bindings");
            DetrepStatus::Internal
        }
    }
}

/// # Safety
/// `ptr` must be NULL or point to a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, DetrepStatus> {
    if ptr.is_null() {
        set_error(&format!("argument `{name}` must not be NULL"));
        return Err(DetrepStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("argument `{name}` is not valid UTF-8"));
        DetrepStatus::InvalidUtf8
    })
}

fn write_out_string(out: *mut *mut c_char, text: String) -> DetrepStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            clear_error();
            DetrepStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            DetrepStatus::Internal
        }
    }
}

fn require_out<T>(out: *mut T, name: &str) -> Result<(), DetrepStatus> {
    if out.is_null() {
        set_error(&format!("argument `{name}` must not be NULL"));
        return Err(DetrepStatus::NullArgument);
    }
    Ok(())
}

fn fail_cli(e: &CliError) -> DetrepStatus {
    set_error(e.message());
    match e {
        CliError::Usage(_) => DetrepStatus::Parse,
        CliError::Verify(_) | CliError::Verdict(_) => DetrepStatus::Verify,
    }
}

fn fail_quartic(e: &QuarticError) -> DetrepStatus {
    set_error(&e.to_string());
    match e {
        QuarticError::Input(_) => DetrepStatus::Parse,
        _ => DetrepStatus::Verify,
    }
}

fn fail_robinson(e: &RobinsonError) -> DetrepStatus {
    set_error(&e.to_string());
    match e {
        RobinsonError::TupleSyntax(_) | RobinsonError::WrongType(_) => DetrepStatus::Parse,
        RobinsonError::SynthesisFailure { .. } => DetrepStatus::Verify,
    }
}

// ---------------------------------------------------------------------------
// Strings and error reporting.

/// Releases a string returned by any binding. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a binding of this
/// library, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn detrep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Returns a copy of the calling thread's last error message, or NULL if
/// the previous call on this thread succeeded. Free it with
/// `detrep_string_free`.
#[no_mangle]
pub extern "C" fn detrep_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

// ---------------------------------------------------------------------------
// Form handles.

/// Parses a ternary form in the variables `x0`, `x1`, `x2` with exact
/// rational coefficients (e.g. `"x0^2 - 2/3*x1*x2"`) into a new handle.
///
/// # Safety
/// `text` must be NULL or NUL-terminated; `out` must be a valid location
/// to store the handle.
#[no_mangle]
pub unsafe extern "C" fn detrep_form_parse(
    text: *const c_char,
    out: *mut *mut DetrepForm,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let text = match unsafe { read_str(text, "text") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_form::<Rational>(text, &XVARS) {
            Ok(form) => {
                unsafe { *out = Box::into_raw(Box::new(DetrepForm(form))) };
                clear_error();
                DetrepStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                DetrepStatus::Parse
            }
        }
    })
}

/// Renders a form handle back to its canonical text. Returns NULL if the
/// handle is NULL. Free the result with `detrep_string_free`.
///
/// # Safety
/// `form` must be NULL or a live handle from `detrep_form_parse`.
#[no_mangle]
pub unsafe extern "C" fn detrep_form_render(form: *const DetrepForm) -> *mut c_char {
    if form.is_null() {
        set_error("argument `form` must not be NULL");
        return std::ptr::null_mut();
    }
    let text = print_form(&unsafe { &*form }.0, &XVARS);
    match CString::new(text) {
        Ok(c) => {
            clear_error();
            c.into_raw()
        }
        Err(_) => {
            set_error("rendered form contained an interior NUL byte");
            std::ptr::null_mut()
        }
    }
}

/// Total degree of the form behind the handle; -1 if the handle is NULL.
///
/// # Safety
/// `form` must be NULL or a live handle from `detrep_form_parse`.
#[no_mangle]
pub unsafe extern "C" fn detrep_form_degree(form: *const DetrepForm) -> c_int {
    if form.is_null() {
        set_error("argument `form` must not be NULL");
        return -1;
    }
    clear_error();
    unsafe { &*form }.0.degree() as c_int
}

/// Releases a form handle. NULL is ignored.
///
/// # Safety
/// `form` must be NULL or a live handle from `detrep_form_parse`, and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn detrep_form_free(form: *mut DetrepForm) {
    if !form.is_null() {
        drop(unsafe { Box::from_raw(form) });
    }
}

// ---------------------------------------------------------------------------
// Sextic pipeline.

/// Classifies one sign tuple (10 characters over `{1, i}`); writes the
/// classification JSON (schema `classify.schema.json`).
///
/// # Safety
/// `tuple` must be NULL or NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn detrep_robinson_classify(
    tuple: *const c_char,
    out_json: *mut *mut c_char,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        let text = match unsafe { read_str(tuple, "tuple") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let tuple: TorsionTuple = match text.parse() {
            Ok(t) => t,
            Err(e) => return fail_robinson(&e),
        };
        write_out_string(out_json, cli::tuple_classification_json(&tuple))
    })
}

/// Classifies all 1024 sign tuples; writes the census JSON (schema
/// `classify.schema.json`). Runs on the ambient thread pool.
///
/// # Safety
/// `out_json` must be a valid location to store the string.
#[no_mangle]
pub unsafe extern "C" fn detrep_robinson_census(out_json: *mut *mut c_char) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        write_out_string(out_json, cli::census_json(None))
    })
}

/// Synthesizes the determinantal representation of one sign tuple and
/// writes its report JSON (schema `detrep.schema.json`).
///
/// # Safety
/// `tuple` must be NULL or NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn detrep_robinson_detrep(
    tuple: *const c_char,
    out_json: *mut *mut c_char,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        let text = match unsafe { read_str(tuple, "tuple") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let tuple: TorsionTuple = match text.parse() {
            Ok(t) => t,
            Err(e) => return fail_robinson(&e),
        };
        match det_rep(&tuple) {
            Ok(rep) => write_out_string(out_json, cli::representation_json(&rep)),
            Err(e) => fail_robinson(&e),
        }
    })
}

/// Certifies non-positivity and writes the certificate JSON (schema
/// `certify.schema.json`). Pass NULL to sweep the entire generic class
/// (expensive: 438 syntheses); pass a tuple to certify just that one.
/// The verdict lives in the JSON field `all_not_positive`.
///
/// # Safety
/// `tuple` must be NULL or NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn detrep_robinson_certify(
    tuple: *const c_char,
    out_json: *mut *mut c_char,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        let tuple = if tuple.is_null() {
            None
        } else {
            match unsafe { read_str(tuple, "tuple") } {
                Ok(t) => Some(t),
                Err(status) => return status,
            }
        };
        match cli::certification_json(tuple, None) {
            Ok(json) => write_out_string(out_json, json),
            Err(e) => fail_cli(&e),
        }
    })
}

// ---------------------------------------------------------------------------
// Quartic pipeline.

/// Builds the 2x2 quadratic representation from a 4x4 linear one plus
/// its base points, both given as JSON (`{"matrix": [[...]]}` and
/// `{"points": [[...]]}`); writes the report JSON (schema
/// `quadratic.schema.json`).
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out_json` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn detrep_quartic_construct(
    matrix_json: *const c_char,
    octad_json: *const c_char,
    out_json: *mut *mut c_char,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        let matrix_text = match unsafe { read_str(matrix_json, "matrix_json") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let octad_text = match unsafe { read_str(octad_json, "octad_json") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let rep = match LinearDetRep::from_json(matrix_text) {
            Ok(r) => r,
            Err(e) => return fail_quartic(&e),
        };
        let octad = match OctadQuadruple::from_json(octad_text) {
            Ok(o) => o,
            Err(e) => return fail_quartic(&e),
        };
        match quadratic_rep(&rep, &octad) {
            Ok(q) => write_out_string(out_json, cli::quadratic_json(&q)),
            Err(e) => fail_quartic(&e),
        }
    })
}

/// Completes a 2x2 representation of `quartic` from its entries `a00`
/// and `a10` (form texts); writes the report JSON (schema
/// `quadratic.schema.json`).
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out_json` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn detrep_quartic_dixon(
    quartic: *const c_char,
    a00: *const c_char,
    a10: *const c_char,
    out_json: *mut *mut c_char,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        let parse_arg = |ptr: *const c_char, name: &str| -> Result<TernaryForm<Rational>, DetrepStatus> {
            let text = unsafe { read_str(ptr, name) }?;
            parse_form(text, &XVARS).map_err(|e| {
                set_error(&format!("argument `{name}`: {e}"));
                DetrepStatus::Parse
            })
        };
        let f = match parse_arg(quartic, "quartic") {
            Ok(f) => f,
            Err(status) => return status,
        };
        let a00 = match parse_arg(a00, "a00") {
            Ok(f) => f,
            Err(status) => return status,
        };
        let a10 = match parse_arg(a10, "a10") {
            Ok(f) => f,
            Err(status) => return status,
        };
        match dixon(&f, &a00, &a10) {
            Ok(rep) => write_out_string(out_json, cli::quadratic_json(&rep)),
            Err(e) => fail_quartic(&e),
        }
    })
}

// ---------------------------------------------------------------------------
// Definiteness checks.

/// Evaluates a symmetric matrix of forms (JSON `{"matrix": [[...]]}`,
/// entries over `mu`) at a real point and writes the definiteness report
/// JSON (schema `psd.schema.json`). `eval_point` is either NULL (the
/// default point `1,0,0`) or three comma-separated rationals.
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out_json` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn detrep_psd_check(
    matrix_json: *const c_char,
    eval_point: *const c_char,
    out_json: *mut *mut c_char,
) -> DetrepStatus {
    guarded(|| {
        if let Err(status) = require_out(out_json, "out_json") {
            return status;
        }
        let matrix_text = match unsafe { read_str(matrix_json, "matrix_json") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let point = if eval_point.is_null() {
            None
        } else {
            match unsafe { read_str(eval_point, "eval_point") } {
                Ok(t) => Some(t),
                Err(status) => return status,
            }
        };
        match cli::psd_check_json(matrix_text, point) {
            Ok(json) => write_out_string(out_json, json),
            Err(e) => fail_cli(&e),
        }
    })
}
