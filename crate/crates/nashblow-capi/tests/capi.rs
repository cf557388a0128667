//! Drives the C ABI the way a foreign caller would: status codes,
//! JSON reports, ownership rules, and a real C program compiled
//! against the generated header and the static library.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nashblow_capi::{
    nb_chain, nb_check_divides, nb_check_identity, nb_check_main, nb_check_thm12,
    nb_check_thm14, nb_j_ideal, nb_last_error, nb_m_ideal, nb_session_free, nb_session_new,
    nb_session_set_cap, nb_string_free, nb_toy_check, nb_validate, NbSession, NbStatus,
};

const CUSP: &str = r#"{
    "ring": {"variables": ["x", "y"], "characteristic": 0},
    "defining_ideal": ["y^2 - x^3"],
    "derivations": {"d": ["2*y", "3*x^2"]},
    "foliation": ["d"],
    "ideals": {"J1": ["y", "x^2"], "unit": ["1"]}
}"#;

const LINE3: &str = r#"{
    "ring": {"variables": ["x", "y", "z"], "characteristic": 0},
    "defining_ideal": ["y", "z"],
    "derivations": {"d": ["1", "0", "0"]},
    "foliation": ["d"],
    "ideals": {}
}"#;

const CUSP3: &str = r#"{
    "ring": {"variables": ["x", "y", "z"], "characteristic": 0},
    "defining_ideal": ["y^2 - x^3", "z"],
    "derivations": {"d": ["2*y", "3*x^2", "0"]},
    "foliation": ["d"],
    "ideals": {}
}"#;

fn session(doc: &str) -> *mut NbSession {
    let c = CString::new(doc).unwrap();
    let mut s: *mut NbSession = ptr::null_mut();
    assert_eq!(nb_session_new(c.as_ptr(), &mut s), NbStatus::Ok);
    assert!(!s.is_null());
    s
}

/// Copies and frees an out-string produced by the ABI.
fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let text = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    nb_string_free(p);
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(nb_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn session_reports_operators_and_chain() {
    let s = session(CUSP);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_validate(s, &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["tangent"]["d"], true);

    let name = CString::new("J1").unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_j_ideal(s, name.as_ptr(), &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    let basis: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(basis, ["x*y^2", "y^3"]);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_m_ideal(s, name.as_ptr(), &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["basis"][0], "y^4");

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_chain(s, 3, 6, false, &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["terminated_at"], 1);
    assert_eq!(v["truncated"], false);
    assert_eq!(v["steps"][1]["smallest_passing_n"], 0);

    nb_session_free(s);
}

#[test]
fn check_family_maps_verdicts_to_statuses() {
    let s = session(CUSP);
    let j1 = CString::new("J1").unwrap();
    let unit = CString::new("unit").unwrap();

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_check_thm12(s, j1.as_ptr(), j1.as_ptr(), &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["holds"], true);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_check_thm14(s, j1.as_ptr(), 2, &mut out), NbStatus::Ok);
    nb_string_free(out);

    // The unit ideal never reaches the scan equality: failed check,
    // report still written.
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_check_main(s, unit.as_ptr(), 3, &mut out), NbStatus::CheckFailed);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["kind"], "inconclusive_at_bound");

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_check_main(s, j1.as_ptr(), 0, &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["witness"]["n"], 0);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_check_divides(s, j1.as_ptr(), 0, &mut out), NbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["witness"]["alpha"], 1);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_check_identity(s, 1, 4, &mut out), NbStatus::Ok);
    nb_string_free(out);

    // A null report pointer discards the report but keeps the status.
    assert_eq!(nb_check_thm14(s, j1.as_ptr(), 1, ptr::null_mut()), NbStatus::Ok);

    nb_session_free(s);
}

#[test]
fn toy_criterion_statuses() {
    // Two variables: the criterion is undefined, invalid input.
    let s = session(CUSP);
    let d = CString::new("d").unwrap();
    assert_eq!(nb_toy_check(s, d.as_ptr(), ptr::null_mut()), NbStatus::InvalidInput);
    assert!(last_error().contains("3 variables"));
    nb_session_free(s);

    // A line in three variables passes, the embedded cusp fails.
    let s = session(LINE3);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_toy_check(s, d.as_ptr(), &mut out), NbStatus::Ok);
    nb_string_free(out);
    nb_session_free(s);

    let s = session(CUSP3);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(nb_toy_check(s, d.as_ptr(), &mut out), NbStatus::CheckFailed);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["witness"]["kind"], "non_member");
    nb_session_free(s);
}

#[test]
fn error_statuses_and_messages() {
    // Session construction failures.
    let mut s: *mut NbSession = ptr::null_mut();
    let bad = CString::new("{not json").unwrap();
    assert_eq!(nb_session_new(bad.as_ptr(), &mut s), NbStatus::InvalidInput);
    assert!(last_error().contains("schema violation"));
    let charp = CString::new(r#"{"ring": {"variables": ["x"], "characteristic": 5}}"#).unwrap();
    assert_eq!(nb_session_new(charp.as_ptr(), &mut s), NbStatus::InvalidInput);
    assert!(last_error().contains("characteristic"));
    assert_eq!(nb_session_new(ptr::null(), &mut s), NbStatus::NullArgument);
    let doc = CString::new(CUSP).unwrap();
    assert_eq!(nb_session_new(doc.as_ptr(), ptr::null_mut()), NbStatus::NullArgument);

    // Invalid UTF-8 in a string argument.
    let s = session(CUSP);
    let bad_utf8: [u8; 2] = [0xFF, 0];
    assert_eq!(
        nb_j_ideal(s, bad_utf8.as_ptr() as *const c_char, ptr::null_mut()),
        NbStatus::InvalidUtf8
    );

    // Unknown names.
    let nope = CString::new("nope").unwrap();
    assert_eq!(nb_j_ideal(s, nope.as_ptr(), ptr::null_mut()), NbStatus::InvalidInput);
    assert!(last_error().contains("unknown ideal"));

    // Null session.
    assert_eq!(nb_validate(ptr::null(), ptr::null_mut()), NbStatus::NullArgument);

    // Cap control: zero is rejected, a tiny cap turns the operator
    // application into an inconclusive refusal.
    assert_eq!(nb_session_set_cap(s, 0), NbStatus::InvalidInput);
    assert_eq!(nb_session_set_cap(s, 3), NbStatus::Ok);
    let j1 = CString::new("J1").unwrap();
    assert_eq!(nb_j_ideal(s, j1.as_ptr(), ptr::null_mut()), NbStatus::CheckFailed);
    assert!(last_error().contains("cap 3 exceeded"));

    nb_session_free(s);
    nb_session_free(ptr::null_mut());
    nb_string_free(ptr::null_mut());
}

/// Compiles and runs a C program against the committed header and the
/// static library, proving the ABI is usable from C as shipped.
#[test]
fn c_caller_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(include.join("nashblow.h").exists(), "committed header missing");

    // The static library lands two levels above the test executable.
    let exe = std::env::current_exe().unwrap();
    let debug_dir = exe.parent().unwrap().parent().unwrap();
    let staticlib = debug_dir.join("libnashblow_capi.a");
    assert!(staticlib.exists(), "static library not built at {}", staticlib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_SMOKE).unwrap();
    let exe_path = dir.path().join("smoke");

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe_path)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe_path).output().expect("smoke test runs");
    assert_eq!(run.status.code(), Some(0), "smoke exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}

const C_SMOKE: &str = r#"
#include <nashblow.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    const char *doc =
        "{\"ring\": {\"variables\": [\"x\", \"y\"], \"characteristic\": 0},"
        " \"defining_ideal\": [\"y^2 - x^3\"],"
        " \"derivations\": {\"d\": [\"2*y\", \"3*x^2\"]},"
        " \"foliation\": [\"d\"],"
        " \"ideals\": {\"J1\": [\"y\", \"x^2\"]}}";
    NbSession *s = NULL;
    if (nb_session_new(doc, &s) != NB_STATUS_OK) return 1;
    char *json = NULL;
    if (nb_validate(s, &json) != NB_STATUS_OK) return 2;
    if (strstr(json, "\"valid\":true") == NULL) return 3;
    nb_string_free(json);
    json = NULL;
    if (nb_j_ideal(s, "J1", &json) != NB_STATUS_OK) return 4;
    if (strstr(json, "x*y^2") == NULL) return 5;
    nb_string_free(json);
    json = NULL;
    if (nb_chain(s, 3, 6, false, &json) != NB_STATUS_OK) return 6;
    if (strstr(json, "\"terminated_at\":1") == NULL) return 7;
    nb_string_free(json);
    if (nb_j_ideal(s, "missing", NULL) != NB_STATUS_INVALID_INPUT) return 8;
    if (strstr(nb_last_error(), "unknown ideal") == NULL) return 9;
    if (nb_validate(NULL, NULL) != NB_STATUS_NULL_ARGUMENT) return 10;
    nb_session_free(s);
    printf("ok\n");
    return 0;
}
"#;
