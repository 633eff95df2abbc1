use std::ffi::{c_char, CStr, CString};
use std::ptr;

use blowup_ffi::*;

// K2 joined with two isolated vertices: K4 minus an edge.
const K4E: &str =
    r#"{"host":{"kind":"complete"},"family":{"kind":"blowup","t":2,"p":[1,0],"q":[0,2]}}"#;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    blowup_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = blowup_last_error();
    assert!(!p.is_null(), "expected an error message");
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn instance(json: &str) -> *mut BlowupInstance {
    let mut h = ptr::null_mut();
    assert_eq!(
        blowup_instance_parse(cs(json).as_ptr(), &mut h),
        BlowupStatus::Ok
    );
    h
}

#[test]
fn tau_resistance_kf_on_k4_minus_edge() {
    unsafe {
        let h = instance(K4E);
        let mut n = 0usize;
        assert_eq!(blowup_instance_vertex_count(h, &mut n), BlowupStatus::Ok);
        assert_eq!(n, 4);

        let (mut c, mut o) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(blowup_instance_tau(h, &mut c, &mut o), BlowupStatus::Ok);
        assert_eq!((take(c), take(o)), ("8".to_string(), "8".to_string()));

        // the two clique vertices are joined by the surviving edge
        assert_eq!(
            blowup_instance_resistance(h, 0, 1, &mut c, &mut o),
            BlowupStatus::Ok
        );
        assert_eq!(take(c), "1/2");
        assert_eq!(take(o), "1/2");
        // the two isolated vertices are the missing edge
        assert_eq!(
            blowup_instance_resistance(h, 2, 3, &mut c, &mut o),
            BlowupStatus::Ok
        );
        assert_eq!(take(c), "1/1");
        take(o);

        assert_eq!(
            blowup_instance_kirchhoff(h, &mut c, &mut o),
            BlowupStatus::Ok
        );
        assert_eq!(take(c), take(o));

        let mut json = ptr::null_mut();
        assert_eq!(
            blowup_instance_report(h, BlowupCommand::Resist, &mut json),
            BlowupStatus::Ok
        );
        let report = take(json);
        assert!(report.contains("\"command\": \"resist\""));
        blowup_instance_free(h);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            blowup_instance_parse(cs("{not json").as_ptr(), &mut h),
            BlowupStatus::Usage
        );
        assert!(h.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            blowup_instance_parse(ptr::null(), &mut h),
            BlowupStatus::NullPointer
        );
        assert_eq!(
            blowup_instance_parse(cs(K4E).as_ptr(), ptr::null_mut()),
            BlowupStatus::NullPointer
        );

        let h = instance(K4E);
        let (mut c, mut o) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            blowup_instance_resistance(h, 1, 1, &mut c, &mut o),
            BlowupStatus::Precondition
        );
        assert!(c.is_null() && o.is_null());
        assert_eq!(
            blowup_instance_resistance(h, 0, 9, &mut c, &mut o),
            BlowupStatus::Usage
        );
        // a successful call clears the message
        let mut n = 0;
        assert_eq!(blowup_instance_vertex_count(h, &mut n), BlowupStatus::Ok);
        assert!(blowup_last_error().is_null());
        blowup_instance_free(h);

        let mut n = 0;
        assert_eq!(
            blowup_instance_vertex_count(ptr::null(), &mut n),
            BlowupStatus::NullPointer
        );
        blowup_instance_free(ptr::null_mut());
        blowup_string_free(ptr::null_mut());
    }
}

#[test]
fn tau_refuses_non_complete_host() {
    unsafe {
        let h = instance(
            r#"{"host":{"kind":"edges","edges":[[0,1],[1,2]]},"family":{"kind":"blowup","t":1,"p":[0,0,0],"q":[1,1,1]}}"#,
        );
        let (mut c, mut o) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            blowup_instance_tau(h, &mut c, &mut o),
            BlowupStatus::Precondition
        );
        blowup_instance_free(h);
    }
}

#[test]
fn network_handle_and_transform() {
    unsafe {
        let triangle = r#"{"vertices":["a","b","c"],"edges":[
            {"u":0,"v":1,"conductance":"1"},
            {"u":1,"v":2,"conductance":"1"},
            {"u":0,"v":2,"conductance":"1"}]}"#;
        let mut net = ptr::null_mut();
        assert_eq!(
            blowup_network_parse(cs(triangle).as_ptr(), &mut net),
            BlowupStatus::Ok
        );
        let mut n = 0;
        assert_eq!(blowup_network_vertex_count(net, &mut n), BlowupStatus::Ok);
        assert_eq!(n, 3);

        let mut s = ptr::null_mut();
        assert_eq!(blowup_network_tau(net, &mut s), BlowupStatus::Ok);
        assert_eq!(take(s), "3/1");
        assert_eq!(
            blowup_network_resistance(net, 0, 2, &mut s),
            BlowupStatus::Ok
        );
        assert_eq!(take(s), "2/3");

        let script = r#"{"steps":[{"op":"delta_to_y","triangle":[0,1,2]}]}"#;
        assert_eq!(
            blowup_network_transform(net, cs(script).as_ptr(), &mut s),
            BlowupStatus::Ok
        );
        let report = take(s);
        assert!(report.contains("\"equal\": true"));
        assert!(!report.contains("\"equal\": false"));

        let bad = r#"{"terminals":[0,1,2],"steps":[{"op":"series","vertex":0}]}"#;
        assert_eq!(
            blowup_network_transform(net, cs(bad).as_ptr(), &mut s),
            BlowupStatus::Precondition
        );
        assert!(last_error().starts_with("step 0"));
        blowup_network_free(net);

        let mut net = ptr::null_mut();
        let bad_edge = r#"{"vertices":["a"],"edges":[{"u":0,"v":3,"conductance":"1"}]}"#;
        assert_eq!(
            blowup_network_parse(cs(bad_edge).as_ptr(), &mut net),
            BlowupStatus::Usage
        );
    }
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/blowup.h"))
        .expect("header generated by build.rs");
    for name in [
        "blowup_last_error",
        "blowup_string_free",
        "blowup_instance_parse",
        "blowup_instance_free",
        "blowup_instance_vertex_count",
        "blowup_instance_tau",
        "blowup_instance_resistance",
        "blowup_instance_kirchhoff",
        "blowup_instance_report",
        "blowup_network_parse",
        "blowup_network_free",
        "blowup_network_vertex_count",
        "blowup_network_tau",
        "blowup_network_resistance",
        "blowup_network_transform",
        "typedef struct BlowupInstance BlowupInstance",
        "BLOWUP_STATUS_MISMATCH = 1",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
