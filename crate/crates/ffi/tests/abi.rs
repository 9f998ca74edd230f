use std::ffi::CStr;
use std::ptr;

use knodeldom_ffi::*;

fn graph(delta: u32, n: usize) -> *mut KdGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { kd_graph_new(delta, n, &mut g) }, KdStatus::Ok);
    g
}

fn last_error() -> String {
    let p = kd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const fn u(index: usize) -> KdVertex {
    KdVertex { side: KD_SIDE_U, index }
}

const fn v(index: usize) -> KdVertex {
    KdVertex { side: KD_SIDE_V, index }
}

#[test]
fn graph_lifecycle() {
    let g = graph(3, 10);
    unsafe {
        assert_eq!(kd_graph_delta(g), 3);
        assert_eq!(kd_graph_n(g), 10);
        assert_eq!(kd_graph_half(g), 5);
        assert_eq!(kd_graph_edge_count(g), 15);

        let mut buf = [u(0); 3];
        let mut len = 0;
        assert_eq!(kd_graph_neighbors(g, u(5), buf.as_mut_ptr(), 3, &mut len), KdStatus::Ok);
        assert_eq!(&buf[..len], &[v(1), v(3), v(5)]);

        let mut d = 0;
        assert_eq!(kd_index_distance(g, u(1), u(4), &mut d), KdStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(kd_index_distance(g, u(1), v(4), &mut d), KdStatus::Contract);
        kd_graph_free(g);
        kd_graph_free(ptr::null_mut());
        assert_eq!(kd_graph_n(ptr::null()), 0);
    }
}

#[test]
fn invalid_input_is_reported() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(kd_graph_new(4, 8, &mut g), KdStatus::InvalidParameters);
        assert!(g.is_null());
        assert!(last_error().contains("invalid parameters"));
        assert_eq!(kd_graph_new(3, 8, ptr::null_mut()), KdStatus::NullPointer);

        let g = graph(3, 8);
        let mut holds = false;
        let bad_side = KdVertex { side: 7, index: 1 };
        assert_eq!(kd_is_total_dominating(g, &bad_side, 1, &mut holds), KdStatus::InvalidArgument);
        let out_of_range = v(9);
        assert_eq!(kd_is_total_dominating(g, &out_of_range, 1, &mut holds), KdStatus::OutOfRange);
        assert_eq!(kd_is_total_dominating(g, ptr::null(), 2, &mut holds), KdStatus::NullPointer);
        kd_graph_free(g);

        let mut x = 0;
        assert_eq!(kd_gamma_t_formula(7, &mut x), KdStatus::OutOfDomain);
    }
}

#[test]
fn domination_predicates() {
    let g = graph(3, 10);
    let d = [u(1), u(2), v(1), v(2)];
    let mut holds = false;
    unsafe {
        assert_eq!(kd_is_total_dominating(g, d.as_ptr(), d.len(), &mut holds), KdStatus::Ok);
        assert!(holds);
        assert_eq!(kd_is_total_dominating(g, d.as_ptr(), 2, &mut holds), KdStatus::Ok);
        assert!(!holds);
        assert_eq!(kd_is_dominating(g, d.as_ptr(), d.len(), &mut holds), KdStatus::Ok);
        assert!(holds);
        assert_eq!(kd_is_total_dominating(g, ptr::null(), 0, &mut holds), KdStatus::Ok);
        assert!(!holds);
        kd_graph_free(g);
    }
}

#[test]
fn closed_forms_and_construction() {
    let mut x = 0;
    unsafe {
        assert_eq!(kd_gamma_t_formula(12, &mut x), KdStatus::Ok);
        assert_eq!(x, 6);
        assert_eq!(kd_side_lower_bound(12, &mut x), KdStatus::Ok);
        assert_eq!(x, 3);

        let mut len = 0;
        assert_eq!(kd_construct_optimal_tds(12, ptr::null_mut(), 0, &mut len), KdStatus::BufferTooSmall);
        assert_eq!(len, 6);
        let mut buf = vec![u(0); len];
        assert_eq!(kd_construct_optimal_tds(12, buf.as_mut_ptr(), buf.len(), &mut len), KdStatus::Ok);
        assert_eq!(buf, vec![u(1), u(2), u(6), v(1), v(2), v(6)]);
    }
}

#[test]
fn solving() {
    let g = graph(3, 14);
    unsafe {
        let mut opts = kd_solve_options_default();
        opts.strategy = KD_STRATEGY_EXHAUSTIVE;
        opts.threads = 2;
        let mut r = ptr::null_mut();
        assert_eq!(kd_solve(g, &opts, &mut r), KdStatus::Ok);
        assert_eq!(kd_solve_result_optimum(r), 6);
        let mut cert = KdCertificate::BoundMatched;
        assert_eq!(kd_solve_result_certificate(r, &mut cert), KdStatus::Ok);
        assert_eq!(cert, KdCertificate::Exhausted);
        let mut buf = [u(0); 6];
        let mut len = 0;
        assert_eq!(kd_solve_result_witness(r, buf.as_mut_ptr(), 6, &mut len), KdStatus::Ok);
        let mut holds = false;
        kd_is_total_dominating(g, buf.as_ptr(), len, &mut holds);
        assert!(holds);
        kd_solve_result_free(r);

        let mut r = ptr::null_mut();
        assert_eq!(kd_solve(g, ptr::null(), &mut r), KdStatus::Ok);
        let mut cert = KdCertificate::Exhausted;
        kd_solve_result_certificate(r, &mut cert);
        assert_eq!(cert, KdCertificate::BoundMatched);
        kd_solve_result_free(r);

        opts.max_nodes = 5;
        let mut r = ptr::null_mut();
        assert_eq!(kd_solve(g, &opts, &mut r), KdStatus::Incomplete);
        assert!(r.is_null());
        opts.kind = 9;
        assert_eq!(kd_solve(g, &opts, &mut r), KdStatus::InvalidArgument);
        kd_graph_free(g);

        let big = graph(3, 60);
        assert_eq!(kd_solve(big, ptr::null(), &mut r), KdStatus::TooLarge);
        kd_graph_free(big);
    }
}

#[test]
fn version_string() {
    let s = unsafe { CStr::from_ptr(kd_version()) };
    assert_eq!(s.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/knodeldom.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for item in ["KdStatus", "KdVertex", "KdSolveOptions", "KdCertificate", "typedef struct KdGraph KdGraph"] {
        assert!(header.contains(item), "{item} missing from header");
    }
}
