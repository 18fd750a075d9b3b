use linegraph_spectra::analysis::align_signs;
use linegraph_spectra::charpoly::{eval_f, eval_f_closed_form};
use linegraph_spectra::eigen::eig_symmetric;
use linegraph_spectra::graph::{
    build_laplacian, build_perturbation_matrix, build_perturbed_laplacian, LineGraphSpec,
    PerturbationSpec,
};
use linegraph_spectra::spectrum::{
    ascending_position, closed_form_eigenvector, eigenvalue, lambda_prime,
};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..40)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, m1)| (Just(n), Just(m1), (m1 + 1)..=n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laplacian_rows_sum_to_zero(weights in prop::collection::vec(0.01f64..10.0, 1..30)) {
        let l = build_laplacian(&LineGraphSpec::weighted(weights).unwrap()).unwrap();
        for s in l.row_sums() {
            prop_assert!(s.abs() <= 1e-12);
        }
    }

    #[test]
    fn perturbation_is_outer_product((n, m1, m2) in pair(), eps in 0.0f64..1.0) {
        let m = build_perturbation_matrix(&PerturbationSpec::new(m2, m1, eps).unwrap(), n).unwrap();
        let mut u = vec![0.0; n];
        u[m1 - 1] = 1.0;
        u[m2 - 1] = -1.0;
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.get(i, j), u[i] * u[j]);
            }
        }
    }

    #[test]
    fn first_order_shifts_sum_to_two((n, m1, m2) in pair()) {
        let s: f64 = (1..=n).map(|k| lambda_prime(n, k, m1, m2).unwrap()).sum();
        prop_assert!((s - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn first_order_shift_is_rayleigh_quotient((n, m1, m2) in pair(), k_frac in 0.0f64..1.0) {
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let v = closed_form_eigenvector(n, k).unwrap();
        let rq = (v[m1 - 1] - v[m2 - 1]).powi(2);
        prop_assert!((lambda_prime(n, k, m1, m2).unwrap() - rq).abs() <= 1e-12);
    }

    #[test]
    fn recursion_matches_closed_form(lambda in -3.0f64..7.0, n in 1usize..40) {
        let a = eval_f(lambda, n).unwrap();
        let b = eval_f_closed_form(lambda, n).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn closed_form_eigenvalues_match_oracle(n in 2usize..40) {
        let d = eig_symmetric(&build_laplacian(&LineGraphSpec::canonical(n).unwrap()).unwrap()).unwrap();
        for k in 1..=n {
            prop_assert!((eigenvalue(n, k) - d.eigenvalues[ascending_position(n, k)]).abs() <= 1e-12);
        }
    }

    #[test]
    fn perturbed_trace_and_alignment((n, m1, m2) in pair(), eps in 0.0f64..0.5) {
        let a = build_perturbed_laplacian(
            &LineGraphSpec::canonical(n).unwrap(),
            &PerturbationSpec::new(m1, m2, eps).unwrap(),
        )
        .unwrap();
        let d = eig_symmetric(&a).unwrap();
        prop_assert!((d.eigenvalues.iter().sum::<f64>() - a.trace()).abs() <= 1e-10);

        let reference = d.eigenvectors.clone();
        let mut negated: Vec<Vec<f64>> = reference.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        prop_assert_eq!(align_signs(&reference, &mut negated).len(), n);
        prop_assert_eq!(&negated, &reference);
        prop_assert!(align_signs(&reference, &mut negated).is_empty());
    }
}
