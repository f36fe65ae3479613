use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hypertrace_ffi::*;

fn load(json: &str) -> *mut HtHypergraph {
    let c = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ht_hypergraph_from_json(c.as_ptr(), &mut h) }, HtStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ht_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ht_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

const EDGE3: &str = r#"{"m":3,"n":3,"edges":[[0,1,2]]}"#;
const STAR3: &str = r#"{"m":3,"n":7,"edges":[[0,1,2],[0,3,4],[0,5,6]]}"#;
const PATH3: &str = r#"{"m":3,"n":7,"edges":[[0,1,2],[2,3,4],[4,5,6]]}"#;

#[test]
fn single_edge_trace_through_the_abi() {
    let h = load(EDGE3);
    assert_eq!(unsafe { ht_hypergraph_vertex_count(h) }, 3);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ht_trace(h, 3, &mut s) }, HtStatus::Ok);
    assert_eq!(take_string(s), "9/1");
    assert_eq!(unsafe { ht_trace_bruteforce(h, 3, 1_000_000, 0.0, &mut s) }, HtStatus::Ok);
    assert_eq!(take_string(s), "9/1");
    unsafe { ht_hypergraph_free(h) };
}

#[test]
fn estrada_returns_json_interval() {
    let h = load(r#"{"m":2,"n":2,"edges":[[0,1]]}"#);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ht_estrada(h, 0, &mut s) }, HtStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    let lower: f64 = v["lower"].as_str().unwrap().parse().unwrap();
    let upper: f64 = v["upper"].as_str().unwrap().parse().unwrap();
    let ee = 1f64.exp() + (-1f64).exp();
    assert!(lower <= ee && ee <= upper);
    unsafe { ht_hypergraph_free(h) };
}

#[test]
fn star_beats_path() {
    let (a, b) = (load(STAR3), load(PATH3));
    let mut v = HtVerdict::Inconclusive;
    assert_eq!(unsafe { ht_compare(a, b, 18, &mut v) }, HtStatus::Ok);
    assert_eq!(v, HtVerdict::AGreater);
    assert_eq!(unsafe { ht_compare(b, a, 18, &mut v) }, HtStatus::Ok);
    assert_eq!(v, HtVerdict::BGreater);
    unsafe {
        ht_hypergraph_free(a);
        ht_hypergraph_free(b);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let bad = CString::new(r#"{"m":3,"n":3,"edges":[[0,1]]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ht_hypergraph_from_json(bad.as_ptr(), &mut h) }, HtStatus::InputError);
    assert!(h.is_null());
    assert!(last_error().contains("edge 0"));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ht_trace(ptr::null(), 3, &mut s) }, HtStatus::NullArgument);

    // Two triangles sharing an edge is neither a hypertree nor unicyclic.
    let theta = load(r#"{"m":2,"n":4,"edges":[[0,1],[1,2],[0,2],[1,3],[2,3]]}"#);
    assert_eq!(unsafe { ht_trace(theta, 4, &mut s) }, HtStatus::Unsupported);
    assert!(last_error().contains("oracle --method bruteforce"));
    assert_eq!(unsafe { ht_trace_bruteforce(theta, 12, 10, 0.0, &mut s) }, HtStatus::ResourceExceeded);
    unsafe { ht_hypergraph_free(theta) };
    unsafe { ht_hypergraph_free(ptr::null_mut()) };
    unsafe { ht_string_free(ptr::null_mut()) };
}

#[test]
fn header_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/hypertrace.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "ht_hypergraph_from_json",
        "ht_hypergraph_free",
        "ht_trace",
        "ht_trace_bruteforce",
        "ht_estrada",
        "ht_compare",
        "ht_string_free",
        "ht_last_error_message",
    ] {
        assert!(text.contains(&format!("{name}(")), "{name} missing from header");
    }
    let src = std::env::temp_dir().join(format!("hypertrace_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"hypertrace.h\"\nint main(void) { HtHypergraph *h = 0; return (int)ht_hypergraph_vertex_count(h); }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "generated header failed to compile"),
        Err(e) => eprintln!("skipping C compile check, no C compiler: {e}"),
    }
}
