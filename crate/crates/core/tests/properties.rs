use proptest::prelude::*;

use bloch_gleason::geometry::{
    gaussian_matrix, measurement_from_unitary, random_ball_vector, random_unitary, seeded_rng, POSITIVITY_TOL,
};
use bloch_gleason::gleason::face_state;
use bloch_gleason::rules::{trace_probability, TabulatedFunction};
use bloch_gleason::text::{format_complex, parse_complex};
use bloch_gleason::{
    bloch_to_density, born_probability, build_basis, density_to_bloch, face_residual, gram_matrix, is_valid_state,
    random_density, rule_probability, scan_face, simplex_decompose, Complex, ComplexMatrix, OutcomeFunction,
};

fn hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let g = gaussian_matrix(n, &mut seeded_rng(seed));
    &g + &g.adjoint()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_cyclic(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix(n, &mut rng);
        let b = gaussian_matrix(n, &mut rng);
        let ab = a.mat_mul(&b).unwrap().trace();
        let ba = b.mat_mul(&a).unwrap().trace();
        let scale = a.max_norm() * b.max_norm() * n as f64;
        prop_assert!((ab - ba).norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn eigenvalues_sum_to_trace(n in 1usize..=8, seed in any::<u64>()) {
        let h = hermitian(n, seed);
        let eig = h.hermitian_eigenvalues(1e-12).unwrap();
        prop_assert_eq!(eig.len(), n);
        prop_assert!(eig.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((eig.iter().sum::<f64>() - h.trace().re).abs() <= 1e-10);
    }

    #[test]
    fn eigenvalues_are_unitarily_invariant(n in 2usize..=6, seed in any::<u64>()) {
        let h = hermitian(n, seed);
        let u = random_unitary(n, seed.wrapping_add(1)).unwrap();
        let conj = u.mat_mul(&h).unwrap().mat_mul(&u.adjoint()).unwrap();
        let a = h.hermitian_eigenvalues(1e-12).unwrap();
        let b = conj.hermitian_eigenvalues(1e-10).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-10, "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn bloch_roundtrip(n in 2usize..=6, seed in any::<u64>()) {
        let basis = build_basis(n).unwrap();
        let d = random_density(n, seed).unwrap();
        let r = density_to_bloch(&d, &basis).unwrap();
        prop_assert!(r.norm() <= 1.0 + 1e-10);
        let back = bloch_to_density(&r, &basis).unwrap();
        prop_assert!(back.max_abs_diff(&d).unwrap() <= 1e-12);
    }

    #[test]
    fn qubit_ball_is_full(seed in any::<u64>()) {
        let basis = build_basis(2).unwrap();
        let r = random_ball_vector(2, &mut seeded_rng(seed));
        prop_assert!(is_valid_state(&r, &basis, POSITIVITY_TOL).unwrap());
    }

    #[test]
    fn measurement_simplex(n in 2usize..=6, seed in any::<u64>()) {
        let basis = build_basis(n).unwrap();
        let m = measurement_from_unitary(&random_unitary(n, seed).unwrap(), &basis).unwrap();
        let g = gram_matrix(&m);
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j { 1.0 } else { -1.0 / (n as f64 - 1.0) };
                prop_assert!((x - expected).abs() <= 1e-10);
            }
        }
        let dim2 = n * n - 1;
        for c in 0..dim2 {
            let s: f64 = m.vertices().iter().map(|v| v.components()[c]).sum();
            prop_assert!(s.abs() <= 1e-10);
        }
        let p = m.projectors();
        let mut sum = ComplexMatrix::zeros(n);
        for (i, a) in p.iter().enumerate() {
            sum = &sum + a;
            for b in p.iter().skip(i + 1) {
                prop_assert!(a.mat_mul(b).unwrap().max_norm() <= 1e-12);
            }
        }
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(n)).unwrap() <= 1e-12);
    }

    #[test]
    fn simplex_decomposition_invariants(n in 2usize..=6, seed in any::<u64>()) {
        let basis = build_basis(n).unwrap();
        let m = measurement_from_unitary(&random_unitary(n, seed).unwrap(), &basis).unwrap();
        let r = density_to_bloch(&random_density(n, seed ^ 0xabcd).unwrap(), &basis).unwrap();
        let s = simplex_decompose(&r, &m).unwrap();
        prop_assert!((s.barycentric.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        prop_assert!(s.barycentric.iter().all(|&w| w >= -1e-10));
        prop_assert!(s.r_parallel.plus(&s.r_perp).minus(&r).norm() <= 1e-10);
        for v in m.vertices() {
            prop_assert!(s.r_perp.dot(v).abs() <= 1e-10);
        }
        for i in 0..n {
            let born = born_probability(&r, &m, i).unwrap();
            prop_assert!((born - trace_probability(&r, &m, i).unwrap()).abs() <= 1e-12);
            prop_assert!((born - s.barycentric[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn rule_sum_tracks_face_residual(n in 3usize..=7, a in 0.0f64..=1.0, t in 0.0f64..=1.0, k in 0usize..4, seed in any::<u64>()) {
        let b = (1.0 - a) * t;
        let f = OutcomeFunction::builtins()[k].clone();
        let basis = build_basis(n).unwrap();
        let m = measurement_from_unitary(&random_unitary(n, seed).unwrap(), &basis).unwrap();
        let r = face_state(&m, a, b).unwrap();
        let total: f64 = (0..n).map(|i| rule_probability(&f, &r, &m, i).unwrap()).sum();
        let nf = n as f64;
        let predicted = (nf - 1.0) / nf * face_residual(&f, n, a, b).unwrap();
        // The sign function jumps at 0; skip points where some overlap sits
        // within rounding of the discontinuity.
        let near_jump = matches!(f, OutcomeFunction::Sign)
            && [a, b, 1.0 - a - b].iter().any(|w| (nf * w - 1.0).abs() < 1e-9);
        if !near_jump {
            prop_assert!((total - 1.0 - predicted).abs() <= 1e-10, "{} vs {}", total - 1.0, predicted);
        }
    }

    #[test]
    fn surviving_tables_satisfy_derived_values(slope_mid in 0.0f64..=2.0, n in 3usize..=6) {
        // Odd tables with f(1) = 1 and a kink at ±0.5; only slope 1 is linear.
        let mid = 0.5 * slope_mid;
        let nodes = vec![(-1.0, -1.0), (-0.5, -mid), (0.0, 0.0), (0.5, mid), (1.0, 1.0)];
        let f = OutcomeFunction::Tabulated(TabulatedFunction::new(nodes).unwrap());
        let rep = scan_face(&f, n, 64).unwrap();
        if rep.max_abs_residual <= 1e-10 {
            prop_assert!(rep.f_zero_defect <= 1e-10);
            prop_assert!(rep.f_minus_defect <= 1e-10);
        }
        if (slope_mid - 1.0).abs() > 1e-3 {
            prop_assert!(rep.max_abs_residual > 1e-10);
        }
    }

    #[test]
    fn complex_text_roundtrip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = Complex::new(re, im);
        prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }
}
