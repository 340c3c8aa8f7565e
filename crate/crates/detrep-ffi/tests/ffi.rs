//! Exercises the C ABI from Rust: status codes, ownership hygiene,
//! last-error reporting, JSON payload shapes, and header freshness.

use detrep_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;

fn take_string(ptr: *mut c_char) -> Option<String> {
    if ptr.is_null() {
        return None;
    }
    let text = unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .expect("bindings emit UTF-8")
        .to_string();
    unsafe { detrep_string_free(ptr) };
    Some(text)
}

fn out_string(call: impl FnOnce(*mut *mut c_char) -> DetrepStatus) -> (DetrepStatus, Option<String>) {
    let mut ptr: *mut c_char = std::ptr::null_mut();
    let status = call(&mut ptr);
    (status, take_string(ptr))
}

fn last_error() -> Option<String> {
    take_string(detrep_last_error_message())
}

fn assert_valid(schema_file: &str, body: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../detrep/schemas")
        .join(schema_file);
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).expect("schema file exists"))
            .expect("schema parses");
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let value: serde_json::Value = serde_json::from_str(body).expect("payload is JSON");
    assert!(
        compiled.is_valid(&value),
        "payload violates {schema_file}: {body}"
    );
}

#[test]
fn form_handles_round_trip_and_report_errors() {
    let text = CString::new("x0^2 - 2/3*x1*x2").unwrap();
    let mut form: *mut DetrepForm = std::ptr::null_mut();
    let status = unsafe { detrep_form_parse(text.as_ptr(), &mut form) };
    assert_eq!(status, DetrepStatus::Ok);
    assert!(last_error().is_none());
    assert_eq!(unsafe { detrep_form_degree(form) }, 2);

    let rendered = take_string(unsafe { detrep_form_render(form) }).unwrap();
    let reparse_text = CString::new(rendered.clone()).unwrap();
    let mut reparsed: *mut DetrepForm = std::ptr::null_mut();
    assert_eq!(
        unsafe { detrep_form_parse(reparse_text.as_ptr(), &mut reparsed) },
        DetrepStatus::Ok
    );
    let rendered_again = take_string(unsafe { detrep_form_render(reparsed) }).unwrap();
    assert_eq!(rendered, rendered_again, "rendering must round-trip");
    unsafe {
        detrep_form_free(form);
        detrep_form_free(reparsed);
        detrep_form_free(std::ptr::null_mut());
        detrep_string_free(std::ptr::null_mut());
    }

    let broken = CString::new("x0 +").unwrap();
    let mut sink: *mut DetrepForm = std::ptr::null_mut();
    assert_eq!(
        unsafe { detrep_form_parse(broken.as_ptr(), &mut sink) },
        DetrepStatus::Parse
    );
    assert!(sink.is_null());
    assert!(last_error().is_some());

    assert_eq!(
        unsafe { detrep_form_parse(std::ptr::null(), &mut sink) },
        DetrepStatus::NullArgument
    );
    assert_eq!(
        unsafe { detrep_form_parse(broken.as_ptr(), std::ptr::null_mut()) },
        DetrepStatus::NullArgument
    );

    let invalid = CString::new(vec![0xffu8, 0xfe]).unwrap();
    assert_eq!(
        unsafe { detrep_form_parse(invalid.as_ptr(), &mut sink) },
        DetrepStatus::InvalidUtf8
    );
    assert_eq!(unsafe { detrep_form_degree(std::ptr::null()) }, -1);
    assert!(unsafe { detrep_form_render(std::ptr::null()) }.is_null());
}

#[test]
fn classification_payloads_match_the_schemas() {
    let tuple = CString::new("ii11ii1111").unwrap();
    let (status, body) =
        out_string(|out| unsafe { detrep_robinson_classify(tuple.as_ptr(), out) });
    assert_eq!(status, DetrepStatus::Ok);
    let body = body.unwrap();
    assert!(body.contains("\"M0^0\""));
    assert_valid("classify.schema.json", &body);

    let bad = CString::new("ii11ii111x").unwrap();
    let (status, body) = out_string(|out| unsafe { detrep_robinson_classify(bad.as_ptr(), out) });
    assert_eq!(status, DetrepStatus::Parse);
    assert!(body.is_none());
    assert!(last_error().unwrap().contains("tuple"));

    let (status, census) = out_string(|out| unsafe { detrep_robinson_census(out) });
    assert_eq!(status, DetrepStatus::Ok);
    let census = census.unwrap();
    assert_valid("classify.schema.json", &census);
    let value: serde_json::Value = serde_json::from_str(&census).unwrap();
    assert_eq!(value["total"], 1024);
}

#[test]
fn synthesis_and_certification_payloads_match_the_schemas() {
    let tuple = CString::new("1111111111").unwrap();
    let (status, body) = out_string(|out| unsafe { detrep_robinson_detrep(tuple.as_ptr(), out) });
    assert_eq!(status, DetrepStatus::Ok);
    let body = body.unwrap();
    assert_valid("detrep.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["type"], "M3");
    assert_eq!(value["lambda"], "1");

    let generic = CString::new("iiii111111").unwrap();
    let (status, body) =
        out_string(|out| unsafe { detrep_robinson_certify(generic.as_ptr(), out) });
    assert_eq!(status, DetrepStatus::Ok);
    let body = body.unwrap();
    assert_valid("certify.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["all_not_positive"], true);
    assert_eq!(value["tuple_count"], 1);

    let wrong_type = CString::new("1111111111").unwrap();
    let (status, body) =
        out_string(|out| unsafe { detrep_robinson_certify(wrong_type.as_ptr(), out) });
    assert_eq!(status, DetrepStatus::Parse);
    assert!(body.is_none());
}

#[test]
fn quartic_payloads_round_trip_between_construct_and_dixon() {
    let matrix = CString::new(include_str!("../../detrep/data/quartic_matrix.json")).unwrap();
    let octad = CString::new(include_str!("../../detrep/data/quartic_octad.json")).unwrap();
    let (status, body) = out_string(|out| unsafe {
        detrep_quartic_construct(matrix.as_ptr(), octad.as_ptr(), out)
    });
    assert_eq!(status, DetrepStatus::Ok, "error: {:?}", last_error());
    let body = body.unwrap();
    assert_valid("quadratic.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["normalization"], "6");
    assert_eq!(value["positive"], true);

    let quartic = CString::new(value["target"].as_str().unwrap()).unwrap();
    let a00 = CString::new(value["entries"][0][0].as_str().unwrap()).unwrap();
    let a10 = CString::new(value["entries"][0][1].as_str().unwrap()).unwrap();
    let (status, dixon_body) = out_string(|out| unsafe {
        detrep_quartic_dixon(quartic.as_ptr(), a00.as_ptr(), a10.as_ptr(), out)
    });
    assert_eq!(status, DetrepStatus::Ok, "error: {:?}", last_error());
    let dixon_body = dixon_body.unwrap();
    assert_valid("quadratic.schema.json", &dixon_body);
    let dixon_value: serde_json::Value = serde_json::from_str(&dixon_body).unwrap();
    assert_eq!(dixon_value["completion"], "1");
    assert_eq!(dixon_value["entries"], value["entries"]);

    // A dependent second entry is an input error, not a verification
    // failure.
    let dependent = CString::new("3*x0^2").unwrap();
    let square = CString::new("x0^2").unwrap();
    let plain = CString::new("x0^4").unwrap();
    let (status, none) = out_string(|out| unsafe {
        detrep_quartic_dixon(plain.as_ptr(), square.as_ptr(), dependent.as_ptr(), out)
    });
    assert_eq!(status, DetrepStatus::Parse);
    assert!(none.is_none());

    // A duplicated point pair collapses the base-change matrix.
    let singular = CString::new(
        r#"{"points": [["i","1 + i","0","0"],["-i","1 - i","0","0"],["i","1 + i","0","0"],["-i","1 - i","0","0"]]}"#,
    )
    .unwrap();
    let (status, none) = out_string(|out| unsafe {
        detrep_quartic_construct(matrix.as_ptr(), singular.as_ptr(), out)
    });
    assert_eq!(status, DetrepStatus::Verify);
    assert!(none.is_none());
}

#[test]
fn definiteness_payloads_match_the_schema() {
    let example = CString::new(
        r#"{"matrix": [["4", "-6", "0"], ["-6", "4", "-2"], ["0", "-2", "1"]]}"#,
    )
    .unwrap();
    let (status, body) = out_string(|out| unsafe {
        detrep_psd_check(example.as_ptr(), std::ptr::null(), out)
    });
    assert_eq!(status, DetrepStatus::Ok);
    let body = body.unwrap();
    assert_valid("psd.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["positive_definite"], false);
    assert_eq!(value["minors"], serde_json::json!([1, -1, -1]));

    let forms = CString::new(r#"{"matrix": [["x0", "0"], ["0", "x0"]]}"#).unwrap();
    let point = CString::new("-1,0,0").unwrap();
    let (status, body) = out_string(|out| unsafe {
        detrep_psd_check(forms.as_ptr(), point.as_ptr(), out)
    });
    assert_eq!(status, DetrepStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&body.unwrap()).unwrap();
    assert_eq!(value["positive_definite"], false);

    let asymmetric = CString::new(r#"{"matrix": [["1", "2"], ["3", "1"]]}"#).unwrap();
    let (status, none) = out_string(|out| unsafe {
        detrep_psd_check(asymmetric.as_ptr(), std::ptr::null(), out)
    });
    assert_eq!(status, DetrepStatus::Parse);
    assert!(none.is_none());

    let (status, none) = out_string(|out| unsafe {
        detrep_psd_check(std::ptr::null(), std::ptr::null(), out)
    });
    assert_eq!(status, DetrepStatus::NullArgument);
    assert!(none.is_none());
}

#[test]
fn committed_header_matches_a_fresh_generation() {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let mut regenerated = Vec::new();
    cbindgen::generate(crate_dir)
        .expect("header generation")
        .write(&mut regenerated);
    let regenerated = String::from_utf8(regenerated).expect("header is UTF-8");
    let committed = std::fs::read_to_string(Path::new(crate_dir).join("include/detrep.h"))
        .expect("committed header exists");
    assert_eq!(
        committed, regenerated,
        "include/detrep.h is stale; rebuild the crate to refresh it"
    );
}
