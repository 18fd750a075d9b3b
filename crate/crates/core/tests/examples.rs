macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(
    closed_form_spectrum,
    "closed_form_spectrum.rs",
    closed_form_spectrum_runs
);
example!(
    perturbation_prediction,
    "perturbation_prediction.rs",
    perturbation_prediction_runs
);
example!(
    error_convergence,
    "error_convergence.rs",
    error_convergence_runs
);
example!(
    eigenvector_tracking,
    "eigenvector_tracking.rs",
    eigenvector_tracking_runs
);
example!(identity_checks, "identity_checks.rs", identity_checks_runs);
example!(jacobi_oracle, "jacobi_oracle.rs", jacobi_oracle_runs);
example!(svg_figures, "svg_figures.rs", svg_figures_runs);
