use std::ffi::{CStr, CString};
use std::ptr;

use takiff_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

struct Ctx(*mut TakiffContext);

impl Ctx {
    fn new(ty: &str) -> Self {
        let mut p = ptr::null_mut();
        let status = unsafe { takiff_context_new(c(ty).as_ptr(), ptr::null(), &mut p) };
        assert_eq!(status, TakiffStatus::Ok);
        assert!(!p.is_null());
        Ctx(p)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { takiff_context_free(self.0) }
    }
}

fn last_error() -> String {
    let p = takiff_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { takiff_string_free(p) };
    s
}

#[test]
fn partition_and_rank() {
    let ctx = Ctx::new("A2");
    let mut v = 0u64;
    assert_eq!(
        unsafe { takiff_partition(ctx.0, c("-1,-1").as_ptr(), &mut v) },
        TakiffStatus::Ok
    );
    assert_eq!(v, 2);
    let mut r = 0usize;
    assert_eq!(unsafe { takiff_rank(ctx.0, &mut r) }, TakiffStatus::Ok);
    assert_eq!(r, 2);
}

#[test]
fn sl2_multiplicities() {
    let ctx = Ctx::new("A1");
    let mut v = 0u64;
    let st = unsafe {
        takiff_mult(
            ctx.0,
            c("0").as_ptr(),
            c("0").as_ptr(),
            c("-2").as_ptr(),
            c("0").as_ptr(),
            &mut v,
        )
    };
    assert_eq!(st, TakiffStatus::Ok);
    assert_eq!(v, 2);
    let mut out = ptr::null_mut();
    let st = unsafe { takiff_series_json(ctx.0, c("0").as_ptr(), c("0").as_ptr(), 3, &mut out) };
    assert_eq!(st, TakiffStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let values: Vec<u64> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_u64().unwrap())
        .collect();
    assert_eq!(values, vec![1, 2, 1, 1]);
}

#[test]
fn report_reduce_and_kl() {
    let ctx = Ctx::new("A2");
    let mut out = ptr::null_mut();
    let st = unsafe {
        takiff_mult_report_json(
            ctx.0,
            c("0,0").as_ptr(),
            c("1,-1").as_ptr(),
            c("-1,-1").as_ptr(),
            c("1,-1").as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, TakiffStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["value"], 1);
    assert_eq!(doc["w"], "1");

    let st = unsafe { takiff_reduce_json(ctx.0, c("1,-1").as_ptr(), &mut out) };
    assert_eq!(st, TakiffStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["levi"]["simple_system"], serde_json::json!([[0, 1]]));

    let a3 = Ctx::new("A3");
    let st = unsafe { takiff_kl_polynomial(a3.0, c("2").as_ptr(), c("2132").as_ptr(), &mut out) };
    assert_eq!(st, TakiffStatus::Ok);
    assert_eq!(take_string(out), "1 + q");
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { takiff_context_new(c("Q7").as_ptr(), ptr::null(), &mut p) },
        TakiffStatus::InvalidInput
    );
    assert!(p.is_null());
    assert!(last_error().contains("Q7"));
    assert_eq!(
        unsafe { takiff_context_new(ptr::null(), ptr::null(), &mut p) },
        TakiffStatus::NullArgument
    );

    let ctx = Ctx::new("A2");
    let mut v = 0u64;
    let st = unsafe {
        takiff_mult(
            ctx.0,
            c("1,x").as_ptr(),
            c("0,0").as_ptr(),
            c("0,0").as_ptr(),
            c("0,0").as_ptr(),
            &mut v,
        )
    };
    assert_eq!(st, TakiffStatus::InvalidInput);
    assert!(last_error().contains("position 2"), "{}", last_error());
    let bad = [0xffu8, 0];
    let st = unsafe { takiff_partition(ctx.0, bad.as_ptr().cast(), &mut v) };
    assert_eq!(st, TakiffStatus::InvalidUtf8);
    assert_eq!(
        unsafe { takiff_partition(ptr::null(), c("0,0").as_ptr(), &mut v) },
        TakiffStatus::NullArgument
    );
    assert_eq!(
        unsafe { takiff_partition(ctx.0, c("0,0").as_ptr(), ptr::null_mut()) },
        TakiffStatus::NullArgument
    );
    let mut out = ptr::null_mut();
    let st = unsafe { takiff_kl_polynomial(ctx.0, c("3").as_ptr(), c("e").as_ptr(), &mut out) };
    assert_eq!(st, TakiffStatus::InvalidInput);
    assert!(out.is_null());

    // success clears the error
    assert_eq!(
        unsafe { takiff_partition(ctx.0, c("0,0").as_ptr(), &mut v) },
        TakiffStatus::Ok
    );
    assert!(takiff_last_error().is_null());
    unsafe {
        takiff_context_free(ptr::null_mut());
        takiff_string_free(ptr::null_mut());
    }
}

#[test]
fn persistent_cache_through_the_c_interface() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.tsv");
    let mut p = ptr::null_mut();
    let st =
        unsafe { takiff_context_new(c("B2").as_ptr(), c(path.to_str().unwrap()).as_ptr(), &mut p) };
    assert_eq!(st, TakiffStatus::Ok);
    let ctx = Ctx(p);
    let mut out = ptr::null_mut();
    let st =
        unsafe { takiff_series_json(ctx.0, c("0,0").as_ptr(), c("0,0").as_ptr(), 3, &mut out) };
    assert_eq!(st, TakiffStatus::Ok);
    take_string(out);
    assert_eq!(unsafe { takiff_flush_cache(ctx.0) }, TakiffStatus::Ok);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("takiff-kl-cache\tv1\n"));
    assert!(text.lines().count() > 1);
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/takiff.h")).unwrap();
    for name in [
        "takiff_context_new",
        "takiff_context_free",
        "takiff_rank",
        "takiff_partition",
        "takiff_mult",
        "takiff_mult_report_json",
        "takiff_series_json",
        "takiff_reduce_json",
        "takiff_kl_polynomial",
        "takiff_flush_cache",
        "takiff_string_free",
        "takiff_last_error",
        "typedef struct TakiffContext TakiffContext",
        "TAKIFF_STATUS_INVALID_INPUT = 3",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
