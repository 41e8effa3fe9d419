use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fusionforge_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ff_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn analyze_through_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ff_group_bundled(cstr("J2").as_ptr(), &mut g), FfStatus::Ok);
        let mut order = 0;
        assert_eq!(ff_group_order(g, &mut order), FfStatus::Ok);
        assert_eq!(order, 604800);
        assert_eq!(ff_group_degree(g), 100);

        let mut r = ptr::null_mut();
        assert_eq!(ff_analyze(g, 3, 0, false, &mut r), FfStatus::Ok);
        assert_eq!(ff_report_sylow_order(r), 27);
        let mut out_f = 0;
        assert_eq!(ff_report_out_f_order(r, &mut out_f), FfStatus::Ok);
        assert_eq!(out_f, 2);

        let mut json = ptr::null_mut();
        assert_eq!(ff_report_json(r, &mut json), FfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["prime"], 3);
        ff_string_free(json);
        ff_report_free(r);
        ff_group_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ff_group_bundled(cstr("Ly").as_ptr(), &mut g), FfStatus::UnknownGroup);
        assert!(g.is_null());
        assert!(last_error().contains("Ly"));

        assert_eq!(ff_group_bundled(ptr::null(), &mut g), FfStatus::NullArgument);
        assert_eq!(ff_group_bundled(cstr("S4").as_ptr(), ptr::null_mut()), FfStatus::NullArgument);

        let bad = cstr("[group]\nname = X\ndegree = 4\ngen = (1 2\n");
        assert_eq!(ff_group_parse(bad.as_ptr(), 0, &mut g), FfStatus::Parse);
        assert!(last_error().starts_with("line 4"));

        let ok = cstr("[group]\nname = S3\ndegree = 3\ngen = (1 2 3)\ngen = (1 2)\n");
        assert_eq!(ff_group_parse(ok.as_ptr(), 1, &mut g), FfStatus::Invalid);
        assert_eq!(ff_group_parse(ok.as_ptr(), 0, &mut g), FfStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(ff_analyze(g, 4, 0, false, &mut r), FfStatus::NotPrime);
        ff_group_free(g);
    }
}

#[test]
fn skipped_stage_is_not_computed() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ff_group_bundled(cstr("M22").as_ptr(), &mut g), FfStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(ff_analyze(g, 2, 64, false, &mut r), FfStatus::Ok);
        let mut n = 0usize;
        assert_eq!(ff_report_essential_count(r, &mut n), FfStatus::NotComputed);
        assert!(last_error().contains("bound"));
        assert_eq!(ff_report_z_hat_count(r, &mut n), FfStatus::Ok);
        ff_report_free(r);
        ff_group_free(g);
        ff_group_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_function() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/fusionforge.h")).unwrap();
    for f in [
        "ff_last_error", "ff_version", "ff_group_bundled", "ff_group_parse", "ff_group_order",
        "ff_group_degree", "ff_group_free", "ff_analyze", "ff_report_json", "ff_report_sylow_order",
        "ff_report_out_f_order", "ff_report_essential_count", "ff_report_z_hat_count",
        "ff_report_free", "ff_string_free",
    ] {
        assert!(header.contains(&format!("{}(", f)), "{}", f);
    }
    assert!(header.contains("typedef struct FfGroup FfGroup;"));
}

/// Compiles and runs a C program against the header and static library.
#[test]
fn c_program_links() {
    let Ok(cc) = which_cc() else { return };
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile = target.parent().unwrap().join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = profile.join("libfusionforge_ffi.a");
    if !lib.exists() {
        return;
    }
    let exe = target.join("ffi_smoke");
    let st = Command::new(cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
