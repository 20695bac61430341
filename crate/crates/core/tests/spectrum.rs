mod common;

use cozero::linalg::{jacobi_eigen, symmetric_eigen};
use cozero::spectrum::{compare_multisets, extremes, structural_spectrum, JoinInstance};
use cozero::{CozeroGraph, DenseMatrix, IdealLattice, RingContext, SpectrumMultiset, DEFAULT_TOL};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const TOL: f64 = DEFAULT_TOL;

fn to_nalgebra(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn symmetric_matrix() -> impl Strategy<Value = DenseMatrix> {
    (1usize..=24).prop_flat_map(|n| {
        proptest::collection::vec(-10i32..=10, n * n).prop_map(move |raw| {
            let mut m = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let v = raw[i * n + j] as f64 / 2.0;
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn eigensolvers_agree_with_nalgebra(m in symmetric_matrix()) {
        let reference = sorted(to_nalgebra(&m).symmetric_eigen().eigenvalues.iter().copied().collect());
        let scale = m.frobenius_norm().max(1.0);
        for eig in [symmetric_eigen(&m).unwrap(), jacobi_eigen(&m).unwrap()] {
            for (a, b) in sorted(eig.values.clone()).iter().zip(&reference) {
                prop_assert!((a - b).abs() <= 1e-10 * scale, "{} vs {}", a, b);
            }
            for r in eig.residuals(&m) {
                prop_assert!(r <= 1e-10 * scale);
            }
            // Eigenvectors are orthonormal.
            let v = to_nalgebra(&eig.vectors);
            let gram = v.transpose() * &v;
            prop_assert!((gram - DMatrix::identity(m.rows(), m.rows())).amax() < 1e-10);
        }
    }
}

#[test]
fn join_engine_matches_direct_laplacians() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let frame = common::random_frame(&mut rng, 8, 4);
        let direct = cozero::spectrum::matrix_spectrum(&frame.composed_laplacian(), TOL).unwrap();
        let join = frame.join_instance(TOL).join_spectrum(TOL).unwrap();
        let report = compare_multisets(&direct, &join, TOL).unwrap();
        assert!(report.matches, "case {case}: {frame:?}\n{direct}\n{join}");
    }
}

#[test]
fn quotient_forms_are_similar() {
    let mut rng = StdRng::seed_from_u64(22);
    let mut frames: Vec<JoinInstance> = (0..100)
        .map(|_| common::random_frame(&mut rng, 8, 4).join_instance(TOL))
        .collect();
    for n in [6u64, 9, 12, 27, 30] {
        let l = IdealLattice::enumerate(&RingContext::new(n).unwrap()).unwrap();
        frames.push(JoinInstance::from_reduced_graph(&l.reduced_graph(), TOL));
    }
    for inst in frames {
        let q = inst.quotient_matrix();
        let symmetric = q.eigenvalues().unwrap();
        let general = to_nalgebra(&q.vertex_weighted).complex_eigenvalues();
        assert!(general.iter().all(|z| z.im.abs() < 1e-6));
        let general = sorted(general.iter().map(|z| z.re).collect());
        let scale = q.symmetric.inf_norm().max(1.0);
        for (a, b) in symmetric.iter().zip(&general) {
            assert!((a - b).abs() <= 1e-8 * scale, "{a} vs {b}");
        }
    }
}

/// Checks the invariants every Laplacian spectrum of the graph must satisfy.
fn assert_laplacian_invariants(g: &CozeroGraph, s: &SpectrumMultiset) {
    let n = g.ctx().n();
    assert_eq!(s.dimension(), g.vertex_count(), "n = {n}");
    let two_e = 2.0 * g.edge_count() as f64;
    assert!((s.sum() - two_e).abs() <= 1e-8 * two_e.max(1.0), "n = {n}");
    assert!(s.min().unwrap() >= -TOL, "n = {n}");
    assert_eq!(
        s.zero_multiplicity(),
        g.connectivity_report().component_count,
        "n = {n}"
    );
}

#[test]
fn structural_route_matches_the_oracle() {
    for n in 2..=36 {
        let ctx = RingContext::new(n).unwrap();
        let g = CozeroGraph::build(&ctx).unwrap();
        let oracle = g.oracle_spectrum(TOL).unwrap();
        let structural = structural_spectrum(&ctx, TOL).unwrap();
        let report = compare_multisets(&structural, &oracle, TOL).unwrap();
        assert!(
            report.matches,
            "n = {n}: deviation {:e}",
            report.worst_deviation
        );
        assert!(report.multiplicity_mismatches.is_empty(), "n = {n}");
        assert_laplacian_invariants(&g, &oracle);
        assert_laplacian_invariants(&g, &structural);
    }
}

#[test]
fn spectrum_json_round_trip() {
    let s = structural_spectrum(&RingContext::new(15).unwrap(), TOL).unwrap();
    let json = serde_json::to_string(&s).unwrap();
    let back: SpectrumMultiset = serde_json::from_str(&json).unwrap();
    assert_eq!(back, s);
}

#[test]
fn extremes_of_a_connected_graph() {
    let s = structural_spectrum(&RingContext::new(6).unwrap(), TOL).unwrap();
    let (radius, connectivity) = extremes(&s).unwrap();
    assert_eq!(radius, s.max().unwrap());
    assert!(connectivity > 1.0);
    let s9 = structural_spectrum(&RingContext::new(9).unwrap(), TOL).unwrap();
    let (radius, connectivity) = extremes(&s9).unwrap();
    assert!((radius - 24.0).abs() < TOL && connectivity.abs() < TOL);
}
