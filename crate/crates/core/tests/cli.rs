use linegraph_spectra::cli::{run, EXIT_NUMERICAL};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["linegraph"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const PERTURB: &[&str] = &[
    "perturb",
    "--n",
    "4",
    "--m1",
    "2",
    "--m2",
    "4",
    "--epsilon",
    "0.1",
];
const SWEEP: &[&str] = &[
    "sweep",
    "--n",
    "4",
    "--m1",
    "2",
    "--m2",
    "4",
    "--eps-min",
    "0.02",
    "--eps-max",
    "0.2",
    "--steps",
    "10",
];
const TRACK: &[&str] = &[
    "track",
    "--n",
    "12",
    "--m1",
    "6",
    "--m2",
    "12",
    "--eps-min",
    "0",
    "--eps-max",
    "0.2",
    "--steps",
    "8",
    "--vectors",
    "1,2",
];

fn with_format<'a>(base: &[&'a str], format: &'a str) -> Vec<&'a str> {
    let mut v = base.to_vec();
    v.extend(["--format", format]);
    v
}

#[test]
fn spectrum_csv_has_header_and_full_precision() {
    let (code, out, _) = invoke(&["spectrum", "--n", "4"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("k,theta_k,lambda_closed_form,lambda_oracle,abs_diff")
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    let lambda: f64 = first[2].parse().unwrap();
    assert_eq!(lambda, 2.0 + std::f64::consts::SQRT_2);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn every_command_is_byte_identical_across_runs() {
    let commands: Vec<Vec<&str>> = ["csv", "json", "svg"]
        .iter()
        .flat_map(|f| {
            [
                with_format(&["spectrum", "--n", "7"], f),
                with_format(PERTURB, f),
                with_format(SWEEP, f),
                with_format(TRACK, f),
            ]
        })
        .collect();
    for args in commands {
        let a = invoke(&args);
        let b = invoke(&args);
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn json_outputs_round_trip_floats_exactly() {
    let (code, out, _) = invoke(&with_format(PERTURB, "json"));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&serde_json::to_string(&v).unwrap()).unwrap(),
        v
    );

    let (_, csv_out, _) = invoke(PERTURB);
    let csv_predicted: Vec<f64> = csv_out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let json_predicted: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["predicted"].as_f64().unwrap())
        .collect();
    assert_eq!(csv_predicted, json_predicted);
}

#[test]
fn sweep_reports_constant_and_long_rows() {
    let (code, out, err) = invoke(SWEEP);
    assert_eq!(code, 0);
    assert!(err.contains("fitted C"));
    assert_eq!(out.lines().next(), Some("epsilon,k,E"));
    assert_eq!(out.lines().count(), 1 + 10 * 4);
    let (_, json, _) = invoke(&with_format(SWEEP, "json"));
    let v: Value = serde_json::from_str(&json).unwrap();
    assert!((v["fitted_constant"].as_f64().unwrap() - 0.6453646).abs() < 1e-6);
}

#[test]
fn track_json_carries_ordering_and_events() {
    let (code, out, _) = invoke(&with_format(TRACK, "json"));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ordering"], "eq14-descending");
    assert!(v["flip_events"].is_array());
    assert_eq!(v["degeneracy_flags"].as_array().unwrap().len(), 0);
    assert_eq!(v["steps"].as_array().unwrap().len(), 9);
}

#[test]
fn output_flag_writes_file_and_leaves_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let mut args = with_format(PERTURB, "svg");
    let p = path.to_str().unwrap();
    args.extend(["--output", p]);
    let (code, out, _) = invoke(&args);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains(r#"width="800""#));
}

#[test]
fn invalid_input_exits_one_with_message() {
    for args in [
        &[
            "perturb",
            "--n",
            "4",
            "--m1",
            "4",
            "--m2",
            "4",
            "--epsilon",
            "0.1",
        ][..],
        &[
            "perturb",
            "--n",
            "4",
            "--m1",
            "2",
            "--m2",
            "9",
            "--epsilon",
            "0.1",
        ],
        &["spectrum", "--n", "0"],
        &[
            "sweep",
            "--n",
            "4",
            "--m1",
            "2",
            "--m2",
            "4",
            "--eps-min",
            "0.2",
            "--eps-max",
            "0.02",
            "--steps",
            "10",
        ],
        &["spectrum", "--n", "4", "--format", "xml"],
        &["frobnicate"],
    ] {
        let (code, out, err) = invoke(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn validate_passes_at_small_size() {
    let (code, out, _) = invoke(&["validate", "--max-n", "12"]);
    assert_ne!(code, EXIT_NUMERICAL);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 6);
}
