//! C ABI over the resparam pipelines: opaque system handles, integer status
//! codes, and JSON strings for structured results.
//!
//! Ownership rules: every `char*` returned by this library is heap-allocated
//! and must be released with `rp_string_free`; systems with `rp_system_free`.
//! `rp_last_error` borrows a thread-local buffer that the next failing call
//! on the same thread overwrites.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use resparam::discvar::{parse_system, BoundaryFilter, ElimMethod, ParametricSystem};
use resparam::pipeline::{
    names_of, parse_box, parse_candidates, run_discriminant, run_eliminate, run_model,
    run_regions, PipelineError, RunManifest,
};
use resparam::rat::parse_rational;
use resparam::regions::{count_solutions, CountMode};
use resparam::reschain::ChainStatus;

/// Status codes mirroring the CLI exit contract, with FFI-specific additions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpStatus {
    RpOk = 0,
    /// Unparseable text: system files, candidates, numbers, enum names.
    RpErrParse = 1,
    /// Elimination degenerated to the zero polynomial.
    RpErrFailedZero = 2,
    /// No parameter value gives the system a common solution.
    RpErrEmptySystem = 3,
    /// A required pointer argument was null.
    RpErrNull = 4,
    /// An argument was not valid UTF-8.
    RpErrUtf8 = 5,
    /// Arguments are well-formed but unusable (wrong dimension, bad range).
    RpErrBadArg = 6,
    /// Internal invariant violation; details via rp_last_error.
    RpErrPanic = 7,
}

/// Opaque parametric system handle.
pub struct RpSystem {
    inner: ParametricSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let clean: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
}

/// Message of the most recent failure on this thread. Borrowed; valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn status_of(e: &PipelineError) -> RpStatus {
    match e {
        PipelineError::Parse(_) => RpStatus::RpErrParse,
        PipelineError::FailedZero(_) => RpStatus::RpErrFailedZero,
        PipelineError::EmptySystem(_) => RpStatus::RpErrEmptySystem,
    }
}

fn fail(e: &PipelineError) -> RpStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Run `f` with panics converted to RpErrPanic, storing the panic text.
fn guarded(f: impl FnOnce() -> RpStatus) -> RpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("panic");
            set_error(msg);
            RpStatus::RpErrPanic
        }
    }
}

unsafe fn utf8_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, RpStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} is null"));
        return Err(RpStatus::RpErrNull);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not UTF-8"));
        RpStatus::RpErrUtf8
    })
}

fn give_string(out: *mut *mut c_char, s: String) -> RpStatus {
    let c = CString::new(s.replace('\0', "")).unwrap();
    unsafe { *out = c.into_raw() };
    RpStatus::RpOk
}

fn parse_method_name(s: &str) -> Result<ElimMethod, RpStatus> {
    match s {
        "dixon" => Ok(ElimMethod::Dixon),
        "chain-simple" => Ok(ElimMethod::ChainSimple),
        "chain-branching" => Ok(ElimMethod::ChainBranching),
        _ => {
            set_error(&format!("unknown method `{s}`"));
            Err(RpStatus::RpErrBadArg)
        }
    }
}

fn parse_mode_name(s: &str) -> Result<CountMode, RpStatus> {
    match s {
        "real" => Ok(CountMode::Real),
        "positive" => Ok(CountMode::Positive),
        "nonnegative" => Ok(CountMode::Nonnegative),
        _ => {
            set_error(&format!("unknown mode `{s}`"));
            Err(RpStatus::RpErrBadArg)
        }
    }
}

fn parse_boundary_name(s: &str) -> Result<BoundaryFilter, RpStatus> {
    match s {
        "all" => Ok(BoundaryFilter::All),
        "multiplicity" => Ok(BoundaryFilter::Multiplicity),
        "zeros" => Ok(BoundaryFilter::Zeros),
        _ => {
            set_error(&format!("unknown boundary `{s}`"));
            Err(RpStatus::RpErrBadArg)
        }
    }
}

fn manifest_for(command: &str, sys: &ParametricSystem) -> RunManifest {
    RunManifest {
        command: command.to_string(),
        input: "(memory)".to_string(),
        method: None,
        boundary: None,
        variable_order: names_of(sys, &sys.variables),
        parameter_order: names_of(sys, &sys.parameters),
        pivot: 0,
        window: None,
        mode: None,
        seed: 0,
        timeout: None,
        outputs: Vec::new(),
    }
}

/// Parse a system file (params/vars/signs headers plus one polynomial per
/// line) into a handle.
#[no_mangle]
pub unsafe extern "C" fn rp_system_parse(text: *const c_char, out: *mut *mut RpSystem) -> RpStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out is null");
            return RpStatus::RpErrNull;
        }
        let src = match utf8_arg(text, "text") {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_system(src) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RpSystem { inner }));
                RpStatus::RpOk
            }
            Err(e) => {
                set_error(&e.to_string());
                RpStatus::RpErrParse
            }
        }
    })
}

/// Build the n-patch population model, n >= 1.
#[no_mangle]
pub unsafe extern "C" fn rp_system_model(patches: usize, out: *mut *mut RpSystem) -> RpStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out is null");
            return RpStatus::RpErrNull;
        }
        if patches < 1 {
            set_error("patch count must be at least 1");
            return RpStatus::RpErrBadArg;
        }
        let inner = resparam::discvar::allee_system(patches);
        *out = Box::into_raw(Box::new(RpSystem { inner }));
        RpStatus::RpOk
    })
}

#[no_mangle]
pub unsafe extern "C" fn rp_system_free(sys: *mut RpSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// The system in its file format. Caller frees with rp_string_free.
#[no_mangle]
pub unsafe extern "C" fn rp_system_format(
    sys: *const RpSystem,
    out: *mut *mut c_char,
) -> RpStatus {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            set_error("sys or out is null");
            return RpStatus::RpErrNull;
        }
        give_string(out, resparam::discvar::format_system(&(*sys).inner))
    })
}

/// Eliminate the variables from the equations; `out_json` gets the artifact
/// produced by the `eliminate` CLI command. Status reflects the outcome:
/// failed-zero and empty-system are reported as their own codes even though
/// the artifact is still written.
#[no_mangle]
pub unsafe extern "C" fn rp_eliminate(
    sys: *const RpSystem,
    method: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> RpStatus {
    guarded(|| {
        if sys.is_null() || out_json.is_null() {
            set_error("sys or out_json is null");
            return RpStatus::RpErrNull;
        }
        let method = match utf8_arg(method, "method").and_then(|s| parse_method_name(s)) {
            Ok(m) => m,
            Err(st) => return st,
        };
        let system = &(*sys).inner;
        let mut manifest = manifest_for("eliminate", system);
        manifest.method = Some(method.to_string());
        manifest.seed = seed;
        match run_eliminate(system, method, seed, &manifest) {
            Ok(run) => {
                let status = match run.status {
                    ChainStatus::Complete => RpStatus::RpOk,
                    ChainStatus::FailedZero => RpStatus::RpErrFailedZero,
                    ChainStatus::EmptySystem => RpStatus::RpErrEmptySystem,
                };
                give_string(out_json, run.json);
                status
            }
            Err(e) => fail(&e),
        }
    })
}

/// Candidate boundary polynomials; `out_json` gets the `discriminant`
/// artifact.
#[no_mangle]
pub unsafe extern "C" fn rp_discriminant(
    sys: *const RpSystem,
    method: *const c_char,
    boundary: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> RpStatus {
    guarded(|| {
        if sys.is_null() || out_json.is_null() {
            set_error("sys or out_json is null");
            return RpStatus::RpErrNull;
        }
        let method = match utf8_arg(method, "method").and_then(|s| parse_method_name(s)) {
            Ok(m) => m,
            Err(st) => return st,
        };
        let boundary = match utf8_arg(boundary, "boundary").and_then(|s| parse_boundary_name(s)) {
            Ok(b) => b,
            Err(st) => return st,
        };
        let system = &(*sys).inner;
        let mut manifest = manifest_for("discriminant", system);
        manifest.method = Some(method.to_string());
        manifest.seed = seed;
        match run_discriminant(system, method, boundary, seed, &manifest) {
            Ok(run) => give_string(out_json, run.json),
            Err(e) => fail(&e),
        }
    })
}

/// Count solutions at one parameter point. `point` is comma-separated exact
/// rationals (decimals allowed), one per parameter; `certified` reports
/// whether every counted box passed verification.
#[no_mangle]
pub unsafe extern "C" fn rp_count_solutions(
    sys: *const RpSystem,
    point: *const c_char,
    mode: *const c_char,
    out_count: *mut usize,
    out_certified: *mut bool,
) -> RpStatus {
    guarded(|| {
        if sys.is_null() || out_count.is_null() || out_certified.is_null() {
            set_error("sys or an out pointer is null");
            return RpStatus::RpErrNull;
        }
        let mode = match utf8_arg(mode, "mode").and_then(|s| parse_mode_name(s)) {
            Ok(m) => m,
            Err(st) => return st,
        };
        let text = match utf8_arg(point, "point") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let system = &(*sys).inner;
        let mut coords = Vec::new();
        for part in text.split(',') {
            match parse_rational(part.trim()) {
                Ok(r) => coords.push(r),
                Err(e) => {
                    set_error(&format!("bad coordinate `{}`: {e}", part.trim()));
                    return RpStatus::RpErrParse;
                }
            }
        }
        if coords.len() != system.parameters.len() {
            set_error(&format!(
                "point has {} coordinates, system has {} parameters",
                coords.len(),
                system.parameters.len()
            ));
            return RpStatus::RpErrBadArg;
        }
        match count_solutions(system, &coords, mode) {
            Ok((count, certified)) => {
                *out_count = count;
                *out_certified = certified;
                RpStatus::RpOk
            }
            Err(e) => {
                set_error(&e.to_string());
                RpStatus::RpErrFailedZero
            }
        }
    })
}

/// Decompose a parameter box into cells with invariant counts. `candidates`
/// is the discriminant JSON or one polynomial per line; `box_bounds` is
/// comma-separated, two per parameter. `out_json` gets the `regions`
/// artifact.
#[no_mangle]
pub unsafe extern "C" fn rp_regions(
    sys: *const RpSystem,
    candidates: *const c_char,
    box_bounds: *const c_char,
    mode: *const c_char,
    out_json: *mut *mut c_char,
) -> RpStatus {
    guarded(|| {
        if sys.is_null() || out_json.is_null() {
            set_error("sys or out_json is null");
            return RpStatus::RpErrNull;
        }
        let mode_v = match utf8_arg(mode, "mode").and_then(|s| parse_mode_name(s)) {
            Ok(m) => m,
            Err(st) => return st,
        };
        let cand_src = match utf8_arg(candidates, "candidates") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let box_src = match utf8_arg(box_bounds, "box_bounds") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let system = &(*sys).inner;
        if system.parameters.len() > 2 {
            set_error("regions supports one or two parameters");
            return RpStatus::RpErrBadArg;
        }
        let cands = match parse_candidates(cand_src, system) {
            Ok(c) => c,
            Err(e) => return fail(&e),
        };
        let windows = match parse_box(box_src, system.parameters.len()) {
            Ok(w) => w,
            Err(e) => return fail(&e),
        };
        let mut manifest = manifest_for("regions", system);
        manifest.mode = Some(mode_v.to_string());
        manifest.window = Some(
            windows
                .iter()
                .flat_map(|iv| {
                    [
                        resparam::rat::format_rational(&iv.lo),
                        resparam::rat::format_rational(&iv.hi),
                    ]
                })
                .collect(),
        );
        match run_regions(system, &cands, &windows, mode_v, &manifest) {
            Ok(run) => give_string(out_json, run.json),
            Err(e) => fail(&e),
        }
    })
}

/// Render the n-patch model file, mirroring the `model` CLI command.
#[no_mangle]
pub unsafe extern "C" fn rp_model(patches: usize, out_text: *mut *mut c_char) -> RpStatus {
    guarded(|| {
        if out_text.is_null() {
            set_error("out_text is null");
            return RpStatus::RpErrNull;
        }
        let (vars, params) = if patches >= 1 {
            (
                (1..=patches).map(|i| format!("x{i}")).collect(),
                vec!["a".to_string(), "b".to_string()],
            )
        } else {
            (Vec::new(), Vec::new())
        };
        let manifest = RunManifest {
            command: "model".to_string(),
            input: patches.to_string(),
            method: None,
            boundary: None,
            variable_order: vars,
            parameter_order: params,
            pivot: 0,
            window: None,
            mode: None,
            seed: 0,
            timeout: None,
            outputs: Vec::new(),
        };
        match run_model(patches, &manifest) {
            Ok(text) => give_string(out_text, text),
            Err(e) => fail(&e),
        }
    })
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn rp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
