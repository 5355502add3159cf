use std::ffi::{CStr, CString};
use std::ptr;

use graph_energy_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn generate(spec: &str) -> *mut GeGraph {
    let mut g = ptr::null_mut();
    let spec = cstr(spec);
    assert_eq!(unsafe { ge_graph_generate(spec.as_ptr(), &mut g) }, GE_OK);
    g
}

fn last_error() -> String {
    let p = ge_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn build_apply_and_measure() {
    unsafe {
        let edges = [0usize, 1, 1, 2, 2, 3, 3, 0];
        let mut c4 = ptr::null_mut();
        assert_eq!(ge_graph_from_edges(4, edges.as_ptr(), 4, &mut c4), GE_OK);
        assert_eq!((ge_graph_order(c4), ge_graph_size(c4)), (4, 4));

        let mut e = 0.0;
        assert_eq!(ge_energy(c4, GE_MATRIX_RANDIC, &mut e), GE_OK);
        assert!((e - 2.0).abs() < 1e-12);

        let mut shadow = ptr::null_mut();
        let op = cstr("shadow:3");
        assert_eq!(ge_graph_apply(c4, op.as_ptr(), &mut shadow), GE_OK);
        assert_eq!((ge_graph_order(shadow), ge_graph_size(shadow)), (12, 36));

        let mut predicted = 0.0;
        assert_eq!(ge_energy(c4, GE_MATRIX_ADJACENCY, &mut e), GE_OK);
        assert_eq!(
            ge_predict_energy(e, op.as_ptr(), GE_MATRIX_ADJACENCY, &mut predicted),
            GE_OK
        );
        let mut observed = 0.0;
        assert_eq!(ge_energy(shadow, GE_MATRIX_ADJACENCY, &mut observed), GE_OK);
        assert!((predicted - observed).abs() < 1e-9);

        let mut t = 0.0;
        assert_eq!(ge_spanning_trees(c4, &mut t), GE_OK);
        let mut exact = 0u64;
        assert_eq!(ge_matrix_tree_count(c4, &mut exact), GE_OK);
        assert_eq!((t.round(), exact), (4.0, 4));

        let (mut k, mut kf) = (0.0, 0.0);
        assert_eq!(ge_kemeny(c4, &mut k), GE_OK);
        assert_eq!(ge_kirchhoff(c4, &mut kf), GE_OK);
        assert!((k - 2.5).abs() < 1e-12 && (kf - 20.0).abs() < 1e-10);

        ge_graph_free(shadow);
        ge_graph_free(c4);
    }
}

#[test]
fn eigenvalue_buffer_protocol() {
    let g = generate("petersen");
    unsafe {
        let mut len = 0usize;
        assert_eq!(
            ge_eigenvalues(g, GE_MATRIX_ADJACENCY, ptr::null_mut(), 0, &mut len),
            GE_BUFFER_TOO_SMALL
        );
        assert_eq!(len, 10);
        let mut buf = vec![0.0; len];
        assert_eq!(
            ge_eigenvalues(
                g,
                GE_MATRIX_ADJACENCY,
                buf.as_mut_ptr(),
                buf.len(),
                &mut len
            ),
            GE_OK
        );
        assert!((buf[0] + 2.0).abs() < 1e-9 && (buf[9] - 3.0).abs() < 1e-9);
        ge_graph_free(g);
    }
}

#[test]
fn verify_report_and_errata() {
    let g = generate("k:2");
    unsafe {
        let mut out = ptr::null_mut();
        let ops = cstr("splitting:1");
        assert_eq!(
            ge_verify_json(g, ops.as_ptr(), GE_MODE_BOTH, &mut out),
            GE_OK
        );
        let json = CStr::from_ptr(out).to_str().unwrap().to_string();
        ge_string_free(out);
        assert!(json.contains("\"splitting:1/kemeny.as_printed\""));
        assert_eq!(json.matches("\"MISMATCH\"").count(), 2);
        ge_graph_free(g);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = cstr("hexagon:3");
        assert_eq!(ge_graph_generate(bad.as_ptr(), &mut g), GE_PARSE_ERROR);
        assert!(g.is_null());
        assert!(last_error().contains("hexagon"));

        assert_eq!(ge_graph_generate(ptr::null(), &mut g), GE_NULL_POINTER);

        let loops = [1usize, 1];
        assert_eq!(
            ge_graph_from_edges(3, loops.as_ptr(), 1, &mut g),
            GE_DOMAIN_ERROR
        );

        let two_k2 = [0usize, 1, 2, 3];
        assert_eq!(ge_graph_from_edges(4, two_k2.as_ptr(), 2, &mut g), GE_OK);
        let mut k = 0.0;
        assert_eq!(ge_kemeny(g, &mut k), GE_DOMAIN_ERROR);
        assert!(last_error().contains("connected"));
        assert_eq!(ge_energy(g, 42, &mut k), GE_INVALID_ARGUMENT);
        assert_eq!(
            ge_energy(ptr::null(), GE_MATRIX_ADJACENCY, &mut k),
            GE_NULL_POINTER
        );
        assert_eq!(
            ge_energy(g, GE_MATRIX_ADJACENCY, ptr::null_mut()),
            GE_NULL_POINTER
        );

        let h1 = cstr("h1:3");
        let mut h = ptr::null_mut();
        assert_eq!(ge_graph_apply(g, h1.as_ptr(), &mut h), GE_DOMAIN_ERROR);
        ge_graph_free(g);
        ge_graph_free(ptr::null_mut());
        ge_string_free(ptr::null_mut());
        assert_eq!(ge_graph_order(ptr::null()), 0);
    }
}
