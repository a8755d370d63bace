use std::ffi::{c_char, CStr, CString};
use std::ptr;

use itder_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { itder_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(itder_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn construct(order: usize, choices: Option<&str>) -> *mut ItderHd {
    let c = choices.map(|s| CString::new(s).unwrap());
    let mut hd = ptr::null_mut();
    let st = unsafe { itder_construct(order, c.as_ref().map_or(ptr::null(), |c| c.as_ptr()), &mut hd) };
    assert_eq!(st, ItderStatus::Ok, "{}", last_error());
    hd
}

#[test]
fn construct_and_inspect() {
    let hd = construct(4, Some(r#"["s"]"#));
    assert_eq!(unsafe { itder_hd_order(hd) }, 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { itder_hd_xi(hd, 2, &mut s) }, ItderStatus::Ok);
    assert_eq!(take(s), "t^4*x^2+t^10+t");
    assert_eq!(unsafe { itder_hd_xi(hd, 5, &mut s) }, ItderStatus::InvalidInput);
    assert!(last_error().contains("outside"));
    unsafe { itder_hd_free(hd) };
}

#[test]
fn json_round_trip_and_digest() {
    let hd = construct(4, Some(r#"["s"]"#));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { itder_hd_to_json(hd, &mut s) }, ItderStatus::Ok);
    let json = take(s);
    let c = CString::new(json.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { itder_hd_from_json(c.as_ptr(), &mut back) },
        ItderStatus::Ok
    );
    assert_eq!(unsafe { itder_hd_to_json(back, &mut s) }, ItderStatus::Ok);
    assert_eq!(take(s), json);

    let tampered = CString::new(json.replacen("t^4*x^2+t^10+t", "t^4*x^2+t^10", 1)).unwrap();
    let mut bad = ptr::null_mut();
    assert_eq!(
        unsafe { itder_hd_from_json(tampered.as_ptr(), &mut bad) },
        ItderStatus::DigestMismatch
    );
    assert!(bad.is_null());
    unsafe {
        itder_hd_free(hd);
        itder_hd_free(back);
    }
}

#[test]
fn verify_statuses() {
    let hd = construct(4, Some(r#"["s"]"#));
    let suites = CString::new("iteration,rho").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { itder_verify(hd, suites.as_ptr(), 0, &mut report) },
        ItderStatus::Ok
    );
    let v = take(report);
    assert!(v.contains("\"suite\": \"iteration\""));

    let bogus = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { itder_verify(hd, bogus.as_ptr(), 0, ptr::null_mut()) },
        ItderStatus::InvalidInput
    );
    unsafe { itder_hd_free(hd) };

    let json = r#"{"version":1,"curve":"z^2+z=x^3/F2","N":2,"xi":[{"a":"t","b":"0"},{"a":"0","b":"0"}],"choices":[],"zc_digest":"","provenance":{"tool":"itder","tool_version":"0","choices":[],"digest":"sha256"}}"#;
    let c = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { itder_hd_from_json(c.as_ptr(), &mut h) },
        ItderStatus::DigestMismatch
    );
}

#[test]
fn point_ops() {
    let op = |name: &str, p: &str, q: Option<&str>, n: u64| {
        let (name, p) = (CString::new(name).unwrap(), CString::new(p).unwrap());
        let q = q.map(|q| CString::new(q).unwrap());
        let mut out = ptr::null_mut();
        let st = unsafe {
            itder_point_op(
                2,
                name.as_ptr(),
                p.as_ptr(),
                q.as_ref().map_or(ptr::null(), |q| q.as_ptr()),
                n,
                &mut out,
            )
        };
        let text = if out.is_null() { String::new() } else { take(out) };
        (st, text)
    };
    assert_eq!(
        op("sub", "(1,w)", Some("(1,w+1)"), 0),
        (ItderStatus::Ok, r#"{"x":"w+1","z":"w+1"}"#.to_string())
    );
    assert_eq!(
        op("mul", "(1,w)", None, 3),
        (ItderStatus::Ok, r#"{"x":"0","z":"0"}"#.to_string())
    );
    assert_eq!(op("add", "(1,1)", Some("(0,0)"), 0).0, ItderStatus::InvalidInput);
    assert_eq!(op("on-curve", "(1,1)", None, 0).0, ItderStatus::InvalidInput);
    assert_eq!(op("frobnicate", "(0,0)", None, 0).0, ItderStatus::InvalidInput);
}

#[test]
fn null_arguments() {
    let mut hd = ptr::null_mut();
    assert_eq!(
        unsafe { itder_hd_from_json(ptr::null(), &mut hd) },
        ItderStatus::NullPointer
    );
    assert_eq!(
        unsafe { itder_construct(2, ptr::null(), ptr::null_mut()) },
        ItderStatus::NullPointer
    );
    assert_eq!(unsafe { itder_hd_order(ptr::null()) }, 0);
    unsafe {
        itder_hd_free(ptr::null_mut());
        itder_string_free(ptr::null_mut());
    }
    let bad = CString::new("[\"s^\"]").unwrap();
    assert_eq!(
        unsafe { itder_construct(2, bad.as_ptr(), &mut hd) },
        ItderStatus::InvalidInput
    );
    assert!(last_error().contains("parse"));
    let v = unsafe { CStr::from_ptr(itder_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
