//! End-to-end tests of the `detrep` binary: exit codes, report layouts,
//! schema validity, and byte-level determinism across worker counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn detrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal termination")
}

fn assert_valid(schema_file: &str, body: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(schema_file);
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).expect("schema file exists"))
            .expect("schema file parses");
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let value: serde_json::Value = serde_json::from_str(body).expect("output is JSON");
    assert!(
        compiled.is_valid(&value),
        "output violates {schema_file}: {body}"
    );
}

fn data_path(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

/// A scratch file removed on drop.
struct TempFile {
    path: PathBuf,
}

impl TempFile {
    fn new(name: &str, contents: &str) -> Self {
        let path = std::env::temp_dir().join(format!(
            "detrep-cli-{}-{name}",
            std::process::id()
        ));
        std::fs::write(&path, contents).expect("temp file writes");
        TempFile { path }
    }

    fn empty(name: &str) -> Self {
        let path = std::env::temp_dir().join(format!(
            "detrep-cli-{}-{name}",
            std::process::id()
        ));
        TempFile { path }
    }

    fn as_str(&self) -> String {
        self.path.to_string_lossy().into_owned()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

#[test]
fn usage_errors_exit_with_code_two() {
    let bare = detrep(&[]);
    assert_eq!(code(&bare), 2);

    let bad_tuple = detrep(&["robinson", "classify", "--tuple", "ix11111111"]);
    assert_eq!(code(&bad_tuple), 2);
    assert!(stderr_str(&bad_tuple).contains("tuple"));

    let bad_flag = detrep(&["robinson", "classify", "--workers", "0"]);
    assert_eq!(code(&bad_flag), 2);
}

#[test]
fn classify_names_a_single_tuple() {
    let output = detrep(&["robinson", "classify", "--tuple", "ii11ii1111"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_str(&output), "ii11ii1111  M0^0\n");
}

#[test]
fn classify_census_is_confirmed_deterministic_and_schema_valid() {
    let first = detrep(&[
        "robinson",
        "classify",
        "--expect-paper",
        "--format",
        "json",
        "--workers",
        "1",
    ]);
    assert_eq!(code(&first), 0);
    let again = detrep(&[
        "robinson",
        "classify",
        "--expect-paper",
        "--format",
        "json",
        "--workers",
        "1",
    ]);
    assert_eq!(code(&again), 0);
    assert_eq!(first.stdout, again.stdout, "repeat runs must agree byte-for-byte");

    let parallel = detrep(&[
        "robinson",
        "classify",
        "--expect-paper",
        "--format",
        "json",
        "--workers",
        "4",
    ]);
    assert_eq!(code(&parallel), 0);
    assert_eq!(
        first.stdout, parallel.stdout,
        "worker count must not change the merged output"
    );

    let body = stdout_str(&first);
    assert_valid("classify.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["entries"].as_array().unwrap().len(), 1024);
    assert_eq!(value["total"], 1024);
}

#[test]
fn classify_table_lists_the_seven_counts() {
    let output = detrep(&["robinson", "classify", "--workers", "2"]);
    assert_eq!(code(&output), 0);
    let table = stdout_str(&output);
    for line in [
        "M3    1",
        "M2    10",
        "M1^0  42",
        "M1^1  45",
        "M0^0  438",
        "M0^1  378",
        "M0^2  110",
    ] {
        assert!(table.contains(line), "missing census line `{line}`");
    }
    assert!(table.contains("[M3] 1 tuples"));
    assert!(table.contains("1111111111"));
}

#[test]
fn detrep_reports_the_all_real_tuple() {
    let output = detrep(&[
        "robinson",
        "detrep",
        "--tuple",
        "1111111111",
        "--format",
        "json",
    ]);
    assert_eq!(code(&output), 0);
    let body = stdout_str(&output);
    assert_valid("detrep.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["type"], "M3");
    assert_eq!(value["lambda"], "1");
    assert_eq!(value["verdict"], "POSITIVE");

    let table = detrep(&["robinson", "detrep", "--tuple", "1111111111"]);
    assert_eq!(code(&table), 0);
    assert!(stdout_str(&table).contains("type     M3"));
}

#[test]
fn detrep_rejects_an_eval_point_on_the_curve() {
    let output = detrep(&[
        "robinson",
        "detrep",
        "--tuple",
        "1111111111",
        "--eval-point",
        "1,1,0",
    ]);
    assert_eq!(code(&output), 2);
    assert!(stderr_str(&output).contains("zero locus"));
}

#[test]
fn certify_single_tuple_writes_the_out_file() {
    let inline = detrep(&[
        "robinson",
        "certify",
        "--tuple",
        "iiii111111",
        "--format",
        "json",
    ]);
    assert_eq!(code(&inline), 0);
    let body = stdout_str(&inline);
    assert_valid("certify.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["tuple_count"], 1);
    assert_eq!(value["all_not_positive"], true);
    assert_eq!(value["entries"][0]["verdict"], "NOT_POSITIVE");

    let out_file = TempFile::empty("certify.json");
    let to_file = detrep(&[
        "robinson",
        "certify",
        "--tuple",
        "iiii111111",
        "--format",
        "json",
        "--out",
        &out_file.as_str(),
    ]);
    assert_eq!(code(&to_file), 0);
    assert!(stdout_str(&to_file).is_empty());
    let written = std::fs::read_to_string(&out_file.path).expect("out file written");
    assert_eq!(written, body, "--out must write the same bytes as stdout");
}

#[test]
fn certify_rejects_tuples_outside_the_generic_class() {
    let output = detrep(&["robinson", "certify", "--tuple", "1111111111"]);
    assert_eq!(code(&output), 2);
    assert!(stderr_str(&output).contains("M0"));
}

#[test]
fn construct_and_dixon_round_trip_the_reference_representation() {
    let matrix = data_path("quartic_matrix.json");
    let octad = data_path("quartic_octad.json");
    let construct = detrep(&[
        "quartic",
        "construct",
        "--matrix",
        &matrix,
        "--octad",
        &octad,
        "--format",
        "json",
    ]);
    assert_eq!(code(&construct), 0, "stderr: {}", stderr_str(&construct));
    let body = stdout_str(&construct);
    assert_valid("quadratic.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert!(value["entries"][0][0]
        .as_str()
        .unwrap()
        .starts_with("979*x0^2"));
    assert_eq!(value["normalization"], "6");
    assert_eq!(value["completion"], serde_json::Value::Null);
    assert_eq!(value["determinant_verified"], true);
    assert_eq!(value["positive"], true);

    // Feed the first column back through the completion solver: it must
    // reproduce the remaining entry with a unit scale factor.
    let dixon_input = serde_json::json!({
        "quartic": value["target"],
        "a00": value["entries"][0][0],
        "a10": value["entries"][0][1],
    });
    let input_file = TempFile::new("dixon-input.json", &dixon_input.to_string());
    let dixon = detrep(&[
        "quartic",
        "dixon",
        "--input",
        &input_file.as_str(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&dixon), 0, "stderr: {}", stderr_str(&dixon));
    let dixon_body = stdout_str(&dixon);
    assert_valid("quadratic.schema.json", &dixon_body);
    let dixon_value: serde_json::Value = serde_json::from_str(&dixon_body).unwrap();
    assert_eq!(dixon_value["completion"], "1");
    assert_eq!(dixon_value["normalization"], serde_json::Value::Null);
    assert_eq!(dixon_value["entries"], value["entries"]);
    assert_eq!(dixon_value["target"], value["target"]);
}

#[test]
fn construct_rejects_a_singular_octad_with_code_three() {
    let matrix = data_path("quartic_matrix.json");
    let octad = TempFile::new(
        "singular-octad.json",
        r#"{"points": [["i","1 + i","0","0"],["-i","1 - i","0","0"],["i","1 + i","0","0"],["-i","1 - i","0","0"]]}"#,
    );
    let output = detrep(&[
        "quartic",
        "construct",
        "--matrix",
        &matrix,
        "--octad",
        &octad.as_str(),
    ]);
    assert_eq!(code(&output), 3);
}

#[test]
fn construct_rejects_malformed_matrix_json_with_code_two() {
    let octad = data_path("quartic_octad.json");
    let matrix = TempFile::new("bad-matrix.json", r#"{"matrix": [["x0"]]}"#);
    let output = detrep(&[
        "quartic",
        "construct",
        "--matrix",
        &matrix.as_str(),
        "--octad",
        &octad,
    ]);
    assert_eq!(code(&output), 2);
}

#[test]
fn dixon_distinguishes_usage_and_verification_failures() {
    let dependent = TempFile::new(
        "dixon-dependent.json",
        r#"{"quartic": "x0^4", "a00": "x0^2", "a10": "3*x0^2"}"#,
    );
    let output = detrep(&["quartic", "dixon", "--input", &dependent.as_str()]);
    assert_eq!(code(&output), 2);

    let non_reduced = TempFile::new(
        "dixon-nonreduced.json",
        r#"{"quartic": "x0^4", "a00": "x0^2", "a10": "x0*x1"}"#,
    );
    let output = detrep(&["quartic", "dixon", "--input", &non_reduced.as_str()]);
    assert_eq!(code(&output), 3);
}

#[test]
fn psd_check_reports_minor_signs_and_verdicts() {
    let example = TempFile::new(
        "psd-example.json",
        r#"{"matrix": [["4", "-6", "0"], ["-6", "4", "-2"], ["0", "-2", "1"]]}"#,
    );
    let output = detrep(&["psd", "check", "--matrix", &example.as_str()]);
    assert_eq!(code(&output), 1);
    let table = stdout_str(&output);
    assert!(table.contains("minors   [1, -1, -1]"));
    assert!(table.contains("NOT_POSITIVE_DEFINITE"));

    let identity = TempFile::new(
        "psd-identity.json",
        r#"{"matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}"#,
    );
    let output = detrep(&[
        "psd", "check", "--matrix", &identity.as_str(), "--format", "json",
    ]);
    assert_eq!(code(&output), 0);
    let body = stdout_str(&output);
    assert_valid("psd.schema.json", &body);
    let value: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(value["positive_definite"], true);
    assert_eq!(value["minors"], serde_json::json!([1, 1, 1]));

    let scaled = TempFile::new(
        "psd-mu.json",
        r#"{"matrix": [["mu", "0"], ["0", "mu"]]}"#,
    );
    let output = detrep(&["psd", "check", "--matrix", &scaled.as_str()]);
    assert_eq!(code(&output), 0);

    let asymmetric = TempFile::new(
        "psd-asymmetric.json",
        r#"{"matrix": [["1", "2"], ["3", "1"]]}"#,
    );
    let output = detrep(&["psd", "check", "--matrix", &asymmetric.as_str()]);
    assert_eq!(code(&output), 2);
}

#[test]
fn psd_check_honours_the_evaluation_point() {
    let forms = TempFile::new(
        "psd-forms.json",
        r#"{"matrix": [["x0", "0"], ["0", "x0"]]}"#,
    );
    let default_point = detrep(&["psd", "check", "--matrix", &forms.as_str()]);
    assert_eq!(code(&default_point), 0);

    let negative_side = detrep(&[
        "psd",
        "check",
        "--matrix",
        &forms.as_str(),
        "--eval-point",
        "-1,0,0",
    ]);
    assert_eq!(code(&negative_side), 1);
    assert!(stdout_str(&negative_side).contains("point    (-1, 0, 0)"));

    let malformed = detrep(&[
        "psd",
        "check",
        "--matrix",
        &forms.as_str(),
        "--eval-point",
        "1,0",
    ]);
    assert_eq!(code(&malformed), 2);
}
