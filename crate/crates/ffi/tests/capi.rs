//! Drives the C ABI the way a C caller would: raw pointers in, status codes
//! and heap strings out.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use resparam_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    rp_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(rp_last_error()).to_str().unwrap().to_string()
}

const QUAD: &str = "params: b, c\nvars: x\nx^2 + b*x + c\n2*x + b\n";

#[test]
fn parse_eliminate_free_round_trip() {
    unsafe {
        let src = c(QUAD);
        let mut sys: *mut RpSystem = ptr::null_mut();
        assert_eq!(rp_system_parse(src.as_ptr(), &mut sys), RpStatus::RpOk);
        assert!(!sys.is_null());

        let method = c("dixon");
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            rp_eliminate(sys, method.as_ptr(), 0, &mut json),
            RpStatus::RpOk
        );
        let text = take_string(json);
        assert!(text.contains("\"b^2 - 4*c\""));
        assert!(text.contains("\"formatVersion\": 1"));

        let mut formatted: *mut c_char = ptr::null_mut();
        assert_eq!(rp_system_format(sys, &mut formatted), RpStatus::RpOk);
        let text = take_string(formatted);
        assert!(text.starts_with("params: b, c"));

        rp_system_free(sys);
    }
}

#[test]
fn chain_failure_maps_to_failed_zero_status() {
    unsafe {
        let src = c("params: a\nvars: x, y\nx^2 + y^2 - 1\n");
        let mut sys: *mut RpSystem = ptr::null_mut();
        assert_eq!(rp_system_parse(src.as_ptr(), &mut sys), RpStatus::RpOk);
        let method = c("chain-simple");
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            rp_eliminate(sys, method.as_ptr(), 0, &mut json),
            RpStatus::RpErrFailedZero
        );
        // The artifact is still produced, like the CLI writing JSON on exit 2.
        let text = take_string(json);
        assert!(text.contains("failed-zero"));
        rp_system_free(sys);
    }
}

#[test]
fn parse_errors_set_the_message() {
    unsafe {
        let src = c("params: a\nvars: x\nx^2 +\n");
        let mut sys: *mut RpSystem = ptr::null_mut();
        assert_eq!(rp_system_parse(src.as_ptr(), &mut sys), RpStatus::RpErrParse);
        assert!(sys.is_null());
        assert!(last_error().contains("line 3"));
    }
}

#[test]
fn null_and_bad_arguments_are_rejected() {
    unsafe {
        let mut sys: *mut RpSystem = ptr::null_mut();
        assert_eq!(
            rp_system_parse(ptr::null(), &mut sys),
            RpStatus::RpErrNull
        );
        assert_eq!(rp_system_model(0, &mut sys), RpStatus::RpErrBadArg);

        let src = c(QUAD);
        assert_eq!(rp_system_parse(src.as_ptr(), &mut sys), RpStatus::RpOk);
        let method = c("cylindrical");
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            rp_eliminate(sys, method.as_ptr(), 0, &mut json),
            RpStatus::RpErrBadArg
        );
        assert!(last_error().contains("cylindrical"));
        rp_system_free(sys);
    }
}

#[test]
fn model_and_count_agree_with_the_library() {
    unsafe {
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(rp_model(1, &mut text), RpStatus::RpOk);
        let model = take_string(text);
        assert!(model.contains("vars: x1"));

        let mut sys: *mut RpSystem = ptr::null_mut();
        let src = c(&model);
        assert_eq!(rp_system_parse(src.as_ptr(), &mut sys), RpStatus::RpOk);

        // One patch, a=1/10, b=2/5: x(1-x)(x-b) - 0 with drain 0.
        let point = c("0.1, 0.4");
        let mode = c("nonnegative");
        let mut count = 0usize;
        let mut certified = false;
        assert_eq!(
            rp_count_solutions(sys, point.as_ptr(), mode.as_ptr(), &mut count, &mut certified),
            RpStatus::RpOk
        );
        let expect = resparam::regions::count_solutions(
            &resparam::discvar::allee_system(1),
            &[resparam::rat::rat(1, 10), resparam::rat::rat(2, 5)],
            resparam::regions::CountMode::Nonnegative,
        )
        .unwrap();
        assert_eq!((count, certified), expect);

        let bad_point = c("0.1");
        assert_eq!(
            rp_count_solutions(sys, bad_point.as_ptr(), mode.as_ptr(), &mut count, &mut certified),
            RpStatus::RpErrBadArg
        );
        rp_system_free(sys);
    }
}

#[test]
fn regions_json_flows_from_discriminant_output() {
    unsafe {
        let src = c("params: c, b\nvars: x\nsigns: x>0\nx^2 + b*x + c\n");
        let mut sys: *mut RpSystem = ptr::null_mut();
        assert_eq!(rp_system_parse(src.as_ptr(), &mut sys), RpStatus::RpOk);

        let method = c("chain-branching");
        let boundary = c("all");
        let mut disc: *mut c_char = ptr::null_mut();
        assert_eq!(
            rp_discriminant(sys, method.as_ptr(), boundary.as_ptr(), 0, &mut disc),
            RpStatus::RpOk
        );
        let disc_json = take_string(disc);
        assert!(disc_json.contains("\"candidates\""));

        let cands = c(&disc_json);
        let bounds = c("-3, 3, -3, 3");
        let mode = c("positive");
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            rp_regions(sys, cands.as_ptr(), bounds.as_ptr(), mode.as_ptr(), &mut json),
            RpStatus::RpOk
        );
        let text = take_string(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let counts: Vec<u64> = v["cells"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["count"].as_u64().unwrap())
            .collect();
        assert_eq!(counts, [1, 2, 0, 0]);
        rp_system_free(sys);
    }
}
