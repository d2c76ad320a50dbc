use std::ffi::{CStr, CString};
use std::ptr;

use distpoly_ffi::*;

fn fixture(name: &str) -> CString {
    let p = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let p = dp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn load(scn: &str, dist: &str) -> (*mut DpScenario, *mut DpDistribution) {
    let mut s = ptr::null_mut();
    assert_eq!(dp_scenario_load(fixture(scn).as_ptr(), &mut s), DpStatus::Ok);
    let mut d = ptr::null_mut();
    assert_eq!(dp_distribution_load(s, fixture(dist).as_ptr(), &mut d), DpStatus::Ok);
    (s, d)
}

#[test]
fn pr_box_through_the_c_interface() {
    unsafe {
        let (s, d) = load("c4_m2.scn", "pr_box.dist");
        let (mut nodes, mut edges, mut m) = (0, 0, 0);
        assert_eq!(dp_scenario_info(s, &mut nodes, &mut edges, &mut m), DpStatus::Ok);
        assert_eq!((nodes, edges, m), (4, 4, 2));
        let mut v = false;
        assert_eq!(dp_is_vertex(d, &mut v), DpStatus::Ok);
        assert!(v);
        let mut c = false;
        assert_eq!(dp_is_contextual(d, &mut c), DpStatus::Ok);
        assert!(c);
        let mut count = 0;
        assert_eq!(dp_vertex_count(s, &mut count), DpStatus::Ok);
        assert_eq!(count, 24);
        let mut trees = ptr::null_mut();
        assert_eq!(dp_spanning_tree_count(s, &mut trees), DpStatus::Ok);
        assert_eq!(CStr::from_ptr(trees).to_str().unwrap(), "4");
        dp_string_free(trees);
        // Not a dipole or rose.
        assert_eq!(dp_criterion_is_vertex(d, &mut v, ptr::null_mut()), DpStatus::WrongShape);
        assert!(last_error().contains("Dipole"));
        dp_distribution_free(d);
        dp_scenario_free(s);
    }
}

#[test]
fn criterion_rank() {
    unsafe {
        let (s, d) = load("r3_m4.scn", "r3_tenths.dist");
        let (mut v, mut rank) = (false, 0);
        assert_eq!(dp_criterion_is_vertex(d, &mut v, &mut rank), DpStatus::Ok);
        assert!(v);
        assert_eq!(rank, 7);
        dp_distribution_free(d);
        dp_scenario_free(s);
    }
}

#[test]
fn counts() {
    unsafe {
        let mut n = 0u64;
        assert_eq!(dp_count(DpFamily::Rose, 2, 3, false, 0, &mut n), DpStatus::Ok);
        assert_eq!(n, 56);
        assert_eq!(dp_count(DpFamily::Dipole, 1, 4, true, 0, &mut n), DpStatus::Ok);
        assert_eq!(n, 0);
        assert_eq!(dp_count(DpFamily::Dipole, 3, 3, false, 3, &mut n), DpStatus::BudgetExceeded);
    }
}

#[test]
fn text_round_trip_and_collapse() {
    unsafe {
        let text = CString::new("outcomes 2\nnode a\nnode b\nedge t1 a b\nedge t2 a b\nedge t3 a b\n").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(dp_scenario_parse(text.as_ptr(), &mut s), DpStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(dp_scenario_to_string(s, &mut out), DpStatus::Ok);
        assert_eq!(CStr::from_ptr(out).to_bytes(), text.as_bytes());
        dp_string_free(out);

        let edges = CString::new("t1").unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(dp_collapse(s, edges.as_ptr(), false, &mut q), DpStatus::Ok);
        let (mut nodes, mut loops) = (0, 0);
        assert_eq!(dp_scenario_info(q, &mut nodes, &mut loops, ptr::null_mut()), DpStatus::Ok);
        assert_eq!((nodes, loops), (1, 2));
        dp_scenario_free(q);

        let edges = CString::new("t1,t2").unwrap();
        assert_eq!(dp_collapse(s, edges.as_ptr(), false, &mut q), DpStatus::InvalidInput);
        dp_scenario_free(s);
    }
}

#[test]
fn errors() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(dp_scenario_parse(ptr::null(), &mut s), DpStatus::NullPointer);
        assert_eq!(dp_scenario_load(fixture("missing.scn").as_ptr(), &mut s), DpStatus::Io);
        assert!(last_error().contains("missing.scn"));
        let bad = CString::new("outcomes 2\nnode a\nedge e a q\n").unwrap();
        assert_eq!(dp_scenario_parse(bad.as_ptr(), &mut s), DpStatus::Parse);
        assert!(last_error().contains(":3:"));
        assert!(s.is_null());

        let (sc, _) = load("c4_m2.scn", "uniform_c4.dist");
        let dist = CString::new("edge c1\n1 0\n0 1\n").unwrap();
        let mut d = ptr::null_mut();
        assert_ne!(dp_distribution_parse(sc, dist.as_ptr(), &mut d), DpStatus::Ok);
        dp_scenario_free(sc);
        assert!(!CStr::from_ptr(dp_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_lists_the_interface() {
    let h = std::fs::read_to_string(std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/distpoly.h")).unwrap();
    for name in ["dp_scenario_load", "dp_is_vertex", "dp_count", "dp_last_error", "DP_STATUS_BUDGET_EXCEEDED", "typedef struct DpScenario DpScenario"] {
        assert!(h.contains(name), "{name}");
    }
}
